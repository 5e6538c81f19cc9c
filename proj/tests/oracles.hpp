// Brute-force reference implementations and instance generators used only by
// the tests. Everything here is deliberately naive and independent of the
// library's algorithms.
#pragma once

#include "seqvote/core.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using namespace seqvote;

inline std::vector<std::string> default_labels(int m) {
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  return labels;
}

inline Profile make_profile(int m, const std::vector<std::vector<int>>& rankings) {
  Profile p;
  p.labels = default_labels(m);
  for (const auto& r : rankings) p.voters.push_back({StrictOrder::from_ranking(r)});
  return p;
}

// The three-voter profile used throughout: a>b>c, b>a>c, c>a>b.
inline Profile example1() { return make_profile(3, {{0, 1, 2}, {1, 0, 2}, {2, 0, 1}}); }

inline std::vector<Agenda> all_agendas(int m) {
  Agenda base(m);
  std::iota(base.begin(), base.end(), 0);
  std::vector<Agenda> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

inline std::vector<std::vector<int>> all_rankings(int m) { return all_agendas(m); }

inline Profile random_profile(std::mt19937& rng, int m, int n) {
  Profile p;
  p.labels = default_labels(m);
  std::vector<int> r(m);
  std::iota(r.begin(), r.end(), 0);
  for (int i = 0; i < n; ++i) {
    std::shuffle(r.begin(), r.end(), rng);
    p.voters.push_back({StrictOrder::from_ranking(r)});
  }
  return p;
}

// Direct re-implementation of the two procedures from their definitions.
inline int successive_oracle(const Profile& p, const Agenda& agenda, bool tie_accepts) {
  int m = p.num_alternatives();
  Weight total = p.total_weight();
  for (int i = 0; i < m; ++i) {
    if (i == m - 1) return agenda[i];
    Weight s = 0;
    for (const auto& v : p.voters) {
      bool top = true;
      for (int j = i + 1; j < m; ++j) top = top && v.order.prefers(agenda[i], agenda[j]);
      if (top) s += v.total_weight();
    }
    if (tie_accepts ? 2 * s >= total : 2 * s > total) return agenda[i];
  }
  return -1;
}

inline int amendment_oracle(const Profile& p, const Agenda& agenda) {
  Weight total = p.total_weight();
  int survivor = agenda[0];
  for (size_t i = 1; i < agenda.size(); ++i) {
    Weight s = 0;
    for (const auto& v : p.voters)
      if (v.order.prefers(agenda[i], survivor)) s += v.total_weight();
    if (2 * s > total) survivor = agenda[i];
  }
  return survivor;
}

// Set of alternatives winning under some agenda.
inline std::set<int> controllable_oracle(const Profile& p, Procedure proc, bool tie_accepts) {
  std::set<int> out;
  for (const auto& agenda : all_agendas(p.num_alternatives()))
    out.insert(proc == Procedure::Successive ? successive_oracle(p, agenda, tie_accepts)
                                             : amendment_oracle(p, agenda));
  return out;
}

// Exhaustive coalition-manipulation check: every combination of k manipulator
// ballots (not just a common one).
inline bool manipulable_oracle(const Profile& p, long long k, int target, const Agenda& agenda,
                               Procedure proc) {
  int m = p.num_alternatives();
  auto rankings = all_rankings(m);
  int r = static_cast<int>(rankings.size());
  std::vector<int> choice(static_cast<size_t>(k), 0);
  while (true) {
    Profile manipulated = p;
    for (int c : choice) manipulated.voters.push_back({StrictOrder::from_ranking(rankings[c])});
    int w = proc == Procedure::Successive ? successive_oracle(manipulated, agenda, true)
                                          : amendment_oracle(manipulated, agenda);
    if (w == target) return true;
    int pos = static_cast<int>(choice.size()) - 1;
    while (pos >= 0 && choice[pos] == r - 1) choice[pos--] = 0;
    if (pos < 0) return false;
    ++choice[pos];
  }
}

}  // namespace oracle
