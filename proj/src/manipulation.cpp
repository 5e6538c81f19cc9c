#include "seqvote/manipulation.hpp"

#include <algorithm>
#include <numeric>

namespace seqvote {

namespace {

void check_inputs(const Profile& profile, long long k, int p, const Agenda& agenda) {
  profile.validate();
  if (!profile.is_complete()) throw UsageError("manipulation requires a complete profile");
  require_full_agenda(profile, agenda);
  if (k < 0) throw UsageError("coalition size must be nonnegative");
  if (p < 0 || p >= profile.num_alternatives())
    throw UsageError("preferred alternative is not on the agenda");
}

Profile with_coalition(const Profile& profile, long long k, const PreferenceOrder& ballot) {
  Profile manipulated = profile;
  if (k > 0) manipulated.voters.push_back({ballot, 1, k});
  return manipulated;
}

// Ballot ranking the ids in `top` first (in order), then the rest ascending.
PreferenceOrder canonical_ballot(int m, const std::vector<int>& top) {
  std::vector<int> ranking = top;
  std::vector<bool> used(m, false);
  for (int a : top) used[a] = true;
  for (int a = 0; a < m; ++a)
    if (!used[a]) ranking.push_back(a);
  return StrictOrder::from_ranking(ranking);
}

}  // namespace

bool ManipulatedWinnerTable::can_beat(int b, int c) const {
  return beat_[static_cast<size_t>(b) * num_alternatives_ + c] != 0;
}

bool ManipulatedWinnerTable::round_contains(int round, int alternative) const {
  return find(round, alternative) != nullptr;
}

const RoundWinnerEntry* ManipulatedWinnerTable::find(int round, int alternative) const {
  if (round < 1 || round > static_cast<int>(rounds.size())) return nullptr;
  for (const auto& e : rounds[round - 1])
    if (e.alternative == alternative) return &e;
  return nullptr;
}

ManipulatedWinnerTable manipulated_winner_table(const Profile& profile, long long k,
                                                const Agenda& agenda) {
  profile.validate();
  if (!profile.is_complete()) throw UsageError("manipulation requires a complete profile");
  require_full_agenda(profile, agenda);
  if (k < 0) throw UsageError("coalition size must be nonnegative");

  int m = profile.num_alternatives();
  Weight n = profile.total_weight();
  auto graph = build_majority_graph(profile);

  ManipulatedWinnerTable table;
  table.k = k;
  table.num_alternatives_ = m;
  table.beat_.assign(static_cast<size_t>(m) * m, 0);
  for (int b = 0; b < m; ++b)
    for (int c = 0; c < m; ++c)
      if (b != c && 2 * (graph.weight(b, c) + k) > n + k)
        table.beat_[static_cast<size_t>(b) * m + c] = 1;

  table.rounds.resize(m);
  table.rounds[0].push_back({agenda[0], {agenda[0]}});
  for (int i = 2; i <= m; ++i) {
    int b = agenda[i - 1];
    // Incumbents survive when b falls short of a strict majority against them
    // (the coalition ranks b below the incumbent's whole chain).
    for (const auto& e : table.rounds[i - 2]) {
      if (2 * graph.weight(b, e.alternative) <= n + k) table.rounds[i - 1].push_back(e);
    }
    // The newcomer enters via the earliest-agenda-position incumbent it can be
    // made to beat; the chain grows by b on top.
    for (const auto& e : table.rounds[i - 2]) {
      if (table.can_beat(b, e.alternative)) {
        auto chain = e.chain;
        chain.push_back(b);
        table.rounds[i - 1].push_back({b, std::move(chain)});
        break;
      }
    }
  }
  return table;
}

std::optional<ManipulationWitness> manipulate_successive(const Profile& profile, long long k,
                                                         int p, const Agenda& agenda) {
  check_inputs(profile, k, p, agenda);
  PreferenceOrder ballot = canonical_ballot(profile.num_alternatives(), {p});
  auto manipulated = with_coalition(profile, k, ballot);
  auto result = successive_winner(manipulated, agenda, TiePolicy::BreakTies);
  if (result.winner != p) return std::nullopt;
  return ManipulationWitness{k, ballot, {}};
}

std::optional<ManipulationWitness> manipulate_amendment(const Profile& profile, long long k,
                                                        int p, const Agenda& agenda) {
  check_inputs(profile, k, p, agenda);
  int m = profile.num_alternatives();
  auto table = manipulated_winner_table(profile, k, agenda);
  const RoundWinnerEntry* entry = table.find(m, p);
  if (!entry) return std::nullopt;

  // Coalition ballot: chain top-down (x_s first), then the rest ascending.
  std::vector<int> top(entry->chain.rbegin(), entry->chain.rend());
  PreferenceOrder ballot = canonical_ballot(m, top);
  auto manipulated = with_coalition(profile, k, ballot);
  auto result = amendment_winner(manipulated, agenda, TiePolicy::BreakTies);
  if (result.winner != p)
    throw std::logic_error("manipulated-winner table produced a non-verifying witness");
  return ManipulationWitness{k, ballot, entry->chain};
}

long long min_coalition_size(const Profile& profile, int p, const Agenda& agenda,
                             Procedure procedure, bool linear_scan) {
  auto succeeds = [&](long long k) {
    return procedure == Procedure::Successive
               ? manipulate_successive(profile, k, p, agenda).has_value()
               : manipulate_amendment(profile, k, p, agenda).has_value();
  };
  long long cap = profile.total_weight() + 1;  // a strict-majority coalition always wins
  if (linear_scan) {
    for (long long k = 0; k <= cap; ++k)
      if (succeeds(k)) return k;
    throw std::logic_error("coalition of total weight + 1 failed to manipulate");
  }
  if (!succeeds(cap))
    throw std::logic_error("coalition of total weight + 1 failed to manipulate");
  long long lo = 0, hi = cap;  // succeeds(hi) holds
  while (lo < hi) {
    long long mid = lo + (hi - lo) / 2;
    if (succeeds(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return hi;
}

std::optional<ManipulationWitness> manipulate_weighted(const Profile& profile,
                                                       const std::vector<Weight>& coalition_weights,
                                                       int p, const Agenda& agenda,
                                                       Procedure procedure) {
  for (Weight w : coalition_weights)
    if (w < 1) throw UsageError("coalition weights must be positive");
  long long k = std::accumulate(coalition_weights.begin(), coalition_weights.end(), 0LL);
  return procedure == Procedure::Successive ? manipulate_successive(profile, k, p, agenda)
                                            : manipulate_amendment(profile, k, p, agenda);
}

}  // namespace seqvote
