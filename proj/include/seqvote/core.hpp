#pragma once

#include "seqvote/types.hpp"

namespace seqvote {

WeightedMajorityGraph build_majority_graph(const Profile& profile);

// True iff the total weight preferring a to b strictly exceeds half the total
// weight of all voters. Incomparable pairs count toward neither side.
bool beats(const Profile& profile, int a, int b);

// True iff a strict weight-majority of voters prefer `a` to every other member
// of `subset`. Voters whose order leaves any needed pair unspecified do not
// count toward a.
bool is_majority_winner(const Profile& profile, int a, const std::vector<int>& subset);

bool is_condorcet_winner(const Profile& profile, int a);

struct WinnerResult {
  int winner = -1;
  RoundTrace trace;
};

// Successive procedure: accepts the first agenda alternative preferred by a
// majority to everything behind it; the last alternative wins by elimination.
WinnerResult successive_winner(const Profile& profile, const Agenda& agenda,
                               TiePolicy policy = TiePolicy::RejectEvenTotal);

// Amendment procedure: the survivor of round i-1 meets the i-th agenda
// alternative in a pairwise majority contest.
WinnerResult amendment_winner(const Profile& profile, const Agenda& agenda,
                              TiePolicy policy = TiePolicy::RejectEvenTotal);

WinnerResult evaluate(const Profile& profile, const Agenda& agenda, Procedure procedure,
                      TiePolicy policy = TiePolicy::RejectEvenTotal);

// Checks that an agenda is a permutation of 0..m-1.
void require_full_agenda(const Profile& profile, const Agenda& agenda);

}  // namespace seqvote
