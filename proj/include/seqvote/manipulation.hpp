#pragma once

#include "seqvote/core.hpp"

namespace seqvote {

// One candidate round winner together with the chain x_1..x_s of distinct
// survivors that realizes it (x_s is the candidate itself).
struct RoundWinnerEntry {
  int alternative = -1;
  std::vector<int> chain;
};

// Per-round sets of achievable amendment winners when k manipulators with a
// common ballot are added, plus the pairwise table "can the coalition make b
// beat c".
struct ManipulatedWinnerTable {
  long long k = 0;
  std::vector<std::vector<RoundWinnerEntry>> rounds;  // rounds[i-1] = W_i

  // T(b,c): with all manipulators preferring b to c, does b get a strict
  // majority over c?
  bool can_beat(int b, int c) const;

  bool round_contains(int round, int alternative) const;  // round is 1-based
  const RoundWinnerEntry* find(int round, int alternative) const;

  int num_alternatives_ = 0;
  std::vector<uint8_t> beat_;  // row b, column c
};

ManipulatedWinnerTable manipulated_winner_table(const Profile& profile, long long k,
                                                const Agenda& agenda);

// Can k added voters make p the successive winner under `agenda`? The
// coalition's canonical ballot ranks p first, everything else in ascending id
// order. Ties from an even manipulated total are evaluated with the
// tie-accepting policy.
std::optional<ManipulationWitness> manipulate_successive(const Profile& profile, long long k,
                                                         int p, const Agenda& agenda);

// Can k added voters make p the amendment winner under `agenda`? Present iff
// p is an m-th-round manipulated winner; the witness ballot ranks the realized
// chain top-down, remaining alternatives below in ascending id order.
std::optional<ManipulationWitness> manipulate_amendment(const Profile& profile, long long k,
                                                        int p, const Agenda& agenda);

// Least k making p win under the given procedure; at most total weight + 1.
// `linear_scan` replaces the binary search with a k = 0,1,2,... scan (debug).
long long min_coalition_size(const Profile& profile, int p, const Agenda& agenda,
                             Procedure procedure, bool linear_scan = false);

// Weighted coalition: equivalent to the unweighted call with k equal to the
// sum of the coalition weights, all manipulators casting the same ballot.
std::optional<ManipulationWitness> manipulate_weighted(const Profile& profile,
                                                       const std::vector<Weight>& coalition_weights,
                                                       int p, const Agenda& agenda,
                                                       Procedure procedure);

}  // namespace seqvote
