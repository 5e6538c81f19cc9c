#include "seqvote/core.hpp"

#include <algorithm>

namespace seqvote {

namespace {

void require_complete(const Profile& profile) {
  if (!profile.is_complete())
    throw UsageError(
        "profile has partial preference orders; use the possible/necessary winner operations");
}

void check_tie_policy(const Profile& profile, TiePolicy policy) {
  if (policy == TiePolicy::RejectEvenTotal && profile.total_weight() % 2 == 0)
    throw EvenTotalWeightError(
        "total voter weight is even; pass TiePolicy::BreakTies to opt into tie breaking");
}

}  // namespace

void require_full_agenda(const Profile& profile, const Agenda& agenda) {
  int m = profile.num_alternatives();
  if (static_cast<int>(agenda.size()) != m)
    throw UsageError("agenda does not cover all alternatives");
  std::vector<bool> seen(m, false);
  for (int a : agenda) {
    if (a < 0 || a >= m || seen[a]) throw UsageError("agenda is not a permutation of alternatives");
    seen[a] = true;
  }
}

WeightedMajorityGraph build_majority_graph(const Profile& profile) {
  profile.validate();
  int m = profile.num_alternatives();
  WeightedMajorityGraph g(m);
  for (const auto& v : profile.voters)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (v.order.prefers(a, b)) g.weight(a, b) += v.total_weight();
  return g;
}

bool beats(const Profile& profile, int a, int b) {
  if (a == b) throw UsageError("beats() requires two distinct alternatives");
  Weight support = 0;
  for (const auto& v : profile.voters)
    if (v.order.prefers(a, b)) support += v.total_weight();
  return 2 * support > profile.total_weight();
}

bool is_majority_winner(const Profile& profile, int a, const std::vector<int>& subset) {
  if (std::find(subset.begin(), subset.end(), a) == subset.end())
    throw UsageError("alternative is not a member of the queried subset");
  Weight support = 0;
  for (const auto& v : profile.voters) {
    bool tops = true;
    for (int b : subset)
      if (b != a && !v.order.prefers(a, b)) {
        tops = false;
        break;
      }
    if (tops) support += v.total_weight();
  }
  return 2 * support > profile.total_weight();
}

bool is_condorcet_winner(const Profile& profile, int a) {
  require_complete(profile);
  for (int b = 0; b < profile.num_alternatives(); ++b)
    if (b != a && !beats(profile, a, b)) return false;
  return true;
}

WinnerResult successive_winner(const Profile& profile, const Agenda& agenda, TiePolicy policy) {
  profile.validate();
  require_complete(profile);
  require_full_agenda(profile, agenda);
  check_tie_policy(profile, policy);

  int m = profile.num_alternatives();
  Weight total = profile.total_weight();
  WinnerResult result;
  result.trace.procedure = Procedure::Successive;
  for (int i = 0; i < m; ++i) {
    int c = agenda[i];
    Weight support = 0;
    for (const auto& v : profile.voters) {
      bool tops = true;
      for (int j = i + 1; j < m; ++j)
        if (!v.order.prefers(c, agenda[j])) {
          tops = false;
          break;
        }
      if (tops) support += v.total_weight();
    }
    // On a tie (even total only) the alternative under consideration is
    // accepted rather than rejected.
    bool accepted = policy == TiePolicy::BreakTies ? 2 * support >= total : 2 * support > total;
    if (i == m - 1) accepted = true;  // wins by elimination
    result.trace.rounds.push_back({i + 1, c, accepted, accepted ? c : -1});
    if (accepted) {
      result.winner = c;
      break;
    }
  }
  result.trace.winner = result.winner;
  return result;
}

WinnerResult amendment_winner(const Profile& profile, const Agenda& agenda, TiePolicy policy) {
  profile.validate();
  require_complete(profile);
  require_full_agenda(profile, agenda);
  check_tie_policy(profile, policy);

  int m = profile.num_alternatives();
  Weight total = profile.total_weight();
  WinnerResult result;
  result.trace.procedure = Procedure::Amendment;
  int survivor = agenda[0];
  result.trace.rounds.push_back({1, survivor, true, survivor});
  for (int i = 1; i < m; ++i) {
    int challenger = agenda[i];
    Weight support = 0;
    for (const auto& v : profile.voters)
      if (v.order.prefers(challenger, survivor)) support += v.total_weight();
    // Ties (even total only) keep the current survivor.
    bool challenger_wins = 2 * support > total;
    if (challenger_wins) survivor = challenger;
    result.trace.rounds.push_back({i + 1, challenger, challenger_wins, survivor});
  }
  result.winner = survivor;
  result.trace.winner = survivor;
  return result;
}

WinnerResult evaluate(const Profile& profile, const Agenda& agenda, Procedure procedure,
                      TiePolicy policy) {
  return procedure == Procedure::Successive ? successive_winner(profile, agenda, policy)
                                            : amendment_winner(profile, agenda, policy);
}

}  // namespace seqvote
