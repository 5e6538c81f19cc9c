#include <doctest.h>

#include "oracles.hpp"
#include "seqvote/uncertainty.hpp"

#include <random>

using namespace seqvote;

namespace {

StrictOrder random_partial(std::mt19937& rng, int m, int keep_percent) {
  std::vector<int> r(m);
  std::iota(r.begin(), r.end(), 0);
  std::shuffle(r.begin(), r.end(), rng);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (static_cast<int>(rng() % 100) < keep_percent) pairs.emplace_back(r[i], r[j]);
  return StrictOrder::from_pairs(m, pairs);
}

Profile random_partial_profile(std::mt19937& rng, int m, int n, int keep_percent) {
  Profile p;
  p.labels = oracle::default_labels(m);
  for (int i = 0; i < n; ++i) p.voters.push_back({random_partial(rng, m, keep_percent)});
  return p;
}

// Exhaustive possible/necessary-winner oracle over all profile and agenda
// completions.
bool enumerate_winner(const Profile& profile, int p, const PartialAgenda& partial, Procedure proc,
                      bool require_all) {
  std::vector<std::vector<StrictOrder>> exts(profile.voters.size());
  for (size_t i = 0; i < profile.voters.size(); ++i)
    profile.voters[i].order.linear_extensions(&exts[i]);
  std::vector<StrictOrder> agenda_orders;
  partial.linear_extensions(&agenda_orders);

  std::vector<size_t> choice(profile.voters.size(), 0);
  while (true) {
    Profile complete = profile;
    for (size_t i = 0; i < choice.size(); ++i) complete.voters[i].order = exts[i][choice[i]];
    for (const auto& ao : agenda_orders) {
      Agenda agenda = ao.as_ranking();
      int w = proc == Procedure::Successive ? oracle::successive_oracle(complete, agenda, false)
                                            : oracle::amendment_oracle(complete, agenda);
      if (require_all && w != p) return false;
      if (!require_all && w == p) return true;
    }
    int pos = static_cast<int>(choice.size()) - 1;
    while (pos >= 0 && choice[pos] + 1 == exts[pos].size()) choice[pos--] = 0;
    if (pos < 0) return require_all;
    ++choice[pos];
  }
}

size_t enumeration_cost(const Profile& profile, const PartialAgenda& partial) {
  size_t cost = 1;
  for (const auto& v : profile.voters) {
    cost *= v.order.count_linear_extensions(100000);
    if (cost > 100000) return cost;
  }
  return cost * partial.count_linear_extensions(1000);
}

bool is_independent_set(const UndirectedGraph& g, unsigned mask) {
  for (auto [u, v] : g.edges)
    if ((mask & (1u << u)) && (mask & (1u << v))) return false;
  return true;
}

bool has_independent_set(const UndirectedGraph& g, int h) {
  for (unsigned mask = 0; mask < (1u << g.num_vertices); ++mask)
    if (__builtin_popcount(mask) == h && is_independent_set(g, mask)) return true;
  return false;
}

bool has_vertex_cover(const UndirectedGraph& g, int h) {
  for (unsigned mask = 0; mask < (1u << g.num_vertices); ++mask) {
    if (__builtin_popcount(mask) != h) continue;
    bool covers = true;
    for (auto [u, v] : g.edges)
      if (!(mask & (1u << u)) && !(mask & (1u << v))) {
        covers = false;
        break;
      }
    if (covers) return true;
  }
  return false;
}

bool has_partition(const std::vector<long long>& numbers) {
  long long sum = std::accumulate(numbers.begin(), numbers.end(), 0LL);
  if (sum % 2 != 0) return false;
  std::set<long long> sums{0};
  for (long long x : numbers) {
    std::set<long long> next = sums;
    for (long long s : sums) next.insert(s + x);
    sums = next;
  }
  return sums.count(sum / 2) > 0;
}

UndirectedGraph figure_graph() {
  UndirectedGraph g;
  g.num_vertices = 6;
  g.edges = {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {0, 4}, {1, 4}, {0, 5}, {1, 5}};
  return g;
}

}  // namespace

TEST_CASE("completions on the worked four-alternative example") {
  Profile p;
  p.labels = oracle::default_labels(4);
  p.voters.push_back({StrictOrder::from_pairs(4, {{1, 2}, {2, 3}})});  // b > c > d
  p.voters.push_back({StrictOrder::from_pairs(4, {{3, 1}})});          // d > b
  Agenda fixed{0, 1, 2, 3};                                            // a > b > c > d

  auto disc = discriminating_completion(p, 2, fixed);
  CHECK(disc.voters[0].order == StrictOrder::from_ranking({0, 1, 2, 3}));
  CHECK(disc.voters[1].order == StrictOrder::from_ranking({0, 3, 1, 2}));

  auto priv = privileging_completion(p, 2, fixed);
  CHECK(priv.voters[0].order == StrictOrder::from_ranking({1, 2, 0, 3}));
  CHECK(priv.voters[1].order == StrictOrder::from_ranking({2, 0, 3, 1}));
}

TEST_CASE("completion properties on random partial profiles") {
  std::mt19937 rng(101);
  for (int t = 0; t < 120; ++t) {
    int m = 2 + static_cast<int>(rng() % 4);
    auto partial = random_partial(rng, m, 20 + static_cast<int>(rng() % 60));
    int c = static_cast<int>(rng() % m);
    Profile p;
    p.labels = oracle::default_labels(m);
    p.voters.push_back({partial});
    Agenda fixed(m);
    std::iota(fixed.begin(), fixed.end(), 0);

    for (bool privilege : {false, true}) {
      auto out = privilege ? privileging_completion(p, c, fixed)
                           : discriminating_completion(p, c, fixed);
      const auto& order = out.voters[0].order;
      CHECK(order.is_linear());
      CHECK(order.extends(partial));
      for (int x = 0; x < m; ++x) {
        if (x == c || partial.comparable(x, c)) continue;
        CHECK(order.prefers(privilege ? c : x, privilege ? x : c));
      }
    }
  }
}

TEST_CASE("feasibility solver on hand-built systems") {
  auto order = StrictOrder::from_ranking({0, 1});
  FeasibilitySystem sys;
  sys.groups.push_back({3, 1, {order, order}});
  sys.groups.push_back({2, 2, {order}});
  sys.constraints.push_back({{{1, 0}, {0}}, 2, 2});   // first class of group 0 exactly 2
  sys.constraints.push_back({{{0, 1}, {1}}, 3, 10});  // rest at least 3
  auto a = solve_feasibility(sys);
  REQUIRE(a.has_value());
  CHECK((*a)[0][0] == 2);
  CHECK((*a)[0][1] == 1);
  CHECK((*a)[1][0] == 2);

  sys.constraints.push_back({{{1, 1}, {0}}, 0, 1});  // group 0 holds 3 voters: infeasible
  CHECK(!solve_feasibility(sys).has_value());

  FeasibilitySystem empty;
  CHECK(solve_feasibility(empty).has_value());
  empty.constraints.push_back({{}, 1, 2});
  CHECK(!solve_feasibility(empty).has_value());
}

TEST_CASE("possible winners match exhaustive enumeration") {
  std::mt19937 rng(211);
  int done = 0;
  while (done < 120) {
    int m = 3 + static_cast<int>(rng() % 2);
    int n = 1 + 2 * static_cast<int>(rng() % 2);  // odd
    auto p = random_partial_profile(rng, m, n, 25 + static_cast<int>(rng() % 50));
    auto agenda = random_partial(rng, m, 30 + static_cast<int>(rng() % 50));
    if (enumeration_cost(p, agenda) > 50000) continue;
    ++done;
    int target = static_cast<int>(rng() % m);

    auto ws = possible_winner_successive(p, target, agenda);
    CHECK(ws.has_value() == enumerate_winner(p, target, agenda, Procedure::Successive, false));
    auto wa = possible_winner_amendment(p, target, agenda);
    CHECK(wa.has_value() == enumerate_winner(p, target, agenda, Procedure::Amendment, false));

    for (const auto& w : {ws, wa}) {
      if (!w) continue;
      CHECK(w->completion.total_weight() == p.total_weight());
      for (size_t i = 0; i < w->completion.voters.size(); ++i)
        CHECK(w->completion.voters[i].order.is_linear());
      CHECK(StrictOrder::from_ranking(w->agenda).extends(agenda));
    }
  }
}

TEST_CASE("necessary winners match exhaustive enumeration") {
  std::mt19937 rng(223);
  int done = 0;
  while (done < 100) {
    int m = 3;
    int n = 1 + 2 * static_cast<int>(rng() % 2);
    auto p = random_partial_profile(rng, m, n, 25 + static_cast<int>(rng() % 50));
    auto agenda = random_partial(rng, m, 30 + static_cast<int>(rng() % 50));
    if (enumeration_cost(p, agenda) > 50000) continue;
    ++done;
    int target = static_cast<int>(rng() % m);

    bool ns = necessary_winner_successive(p, target, agenda);
    CHECK(ns == enumerate_winner(p, target, agenda, Procedure::Successive, true));
    bool na = necessary_winner_amendment(p, target, agenda);
    CHECK(na == enumerate_winner(p, target, agenda, Procedure::Amendment, true));

    // A necessary winner is possible.
    if (ns) CHECK(possible_winner_successive(p, target, agenda).has_value());
    if (na) CHECK(possible_winner_amendment(p, target, agenda).has_value());
  }
}

TEST_CASE("weighted necessary successive winner matches enumeration") {
  std::mt19937 rng(227);
  int done = 0;
  while (done < 60) {
    int m = 3;
    int n = 2 + static_cast<int>(rng() % 3);
    auto p = random_partial_profile(rng, m, n, 30 + static_cast<int>(rng() % 40));
    for (auto& v : p.voters) v.weight = 1 + static_cast<Weight>(rng() % 3);
    if (p.total_weight() % 2 == 0) p.voters[0].weight += 1;
    auto agenda = random_partial(rng, m, 40);
    if (enumeration_cost(p, agenda) > 50000) continue;
    ++done;
    int target = static_cast<int>(rng() % m);
    CHECK(weighted_necessary_winner(p, target, agenda, Procedure::Successive) ==
          enumerate_winner(p, target, agenda, Procedure::Successive, true));
  }
}

TEST_CASE("weighted necessary amendment winner for three alternatives") {
  std::mt19937 rng(229);
  int done = 0;
  while (done < 60) {
    int m = 3;
    int n = 2 + static_cast<int>(rng() % 3);
    auto p = random_partial_profile(rng, m, n, 30 + static_cast<int>(rng() % 40));
    for (auto& v : p.voters) v.weight = 1 + static_cast<Weight>(rng() % 3);
    if (p.total_weight() % 2 == 0) p.voters[0].weight += 1;
    auto agenda = random_partial(rng, m, 40);
    if (enumeration_cost(p, agenda) > 50000) continue;
    ++done;
    int target = static_cast<int>(rng() % m);
    CHECK(weighted_necessary_winner(p, target, agenda, Procedure::Amendment) ==
          enumerate_winner(p, target, agenda, Procedure::Amendment, true));
  }

  auto big = random_partial_profile(rng, 4, 3, 40);
  CHECK_THROWS_AS(
      weighted_necessary_winner(big, 0, random_partial(rng, 4, 40), Procedure::Amendment),
      UsageError);
}

TEST_CASE("independent-set instances decide via the possible winner") {
  Budget budget{12, 100000};
  std::vector<UndirectedGraph> graphs;
  graphs.push_back({3, {{0, 1}, {1, 2}, {0, 2}}});          // triangle
  graphs.push_back({4, {{0, 1}, {1, 2}, {2, 3}}});          // path
  graphs.push_back({5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}});  // star
  for (const auto& g : graphs)
    for (int h = 2; h <= g.num_vertices - 1; ++h) {
      auto inst = generate_is_reduction(g, h);
      CHECK(inst.profile.num_voters() == 2 * g.num_vertices - 3);
      CHECK(possible_winner_successive(inst.profile, inst.p, inst.agenda, budget).has_value() ==
            has_independent_set(g, h));
    }

  auto fig = figure_graph();
  CHECK(has_independent_set(fig, 4));
  CHECK(!has_independent_set(fig, 5));
  auto yes = generate_is_reduction(fig, 4);
  CHECK(yes.profile.num_alternatives() == 10);
  CHECK(yes.profile.num_voters() == 9);
  CHECK(possible_winner_successive(yes.profile, yes.p, yes.agenda, budget).has_value());
  auto no = generate_is_reduction(fig, 5);
  CHECK(!possible_winner_successive(no.profile, no.p, no.agenda, budget).has_value());
}

TEST_CASE("vertex-cover instances decide via the possible winner") {
  Budget budget{12, 100000};
  std::vector<UndirectedGraph> graphs;
  graphs.push_back({3, {{0, 1}, {1, 2}, {0, 2}}});
  graphs.push_back({4, {{0, 1}, {1, 2}, {2, 3}}});
  for (const auto& g : graphs)
    for (int h = 1; h <= g.num_vertices - 1; ++h) {
      auto inst = generate_vc_reduction(g, h);
      CHECK(inst.profile.num_voters() == 2 * g.num_vertices - 1);
      CHECK(possible_winner_amendment(inst.profile, inst.p, inst.agenda, budget).has_value() ==
            has_vertex_cover(g, h));
    }

  auto fig = figure_graph();
  CHECK(has_vertex_cover(fig, 2));
  CHECK(!has_vertex_cover(fig, 1));
  auto yes = generate_vc_reduction(fig, 2);
  CHECK(yes.profile.num_alternatives() == 11);
  CHECK(yes.profile.num_voters() == 11);
  CHECK(possible_winner_amendment(yes.profile, yes.p, yes.agenda, budget).has_value());
  auto no = generate_vc_reduction(fig, 1);
  CHECK(!possible_winner_amendment(no.profile, no.p, no.agenda, budget).has_value());
}

TEST_CASE("partition instances decide via the weighted possible winner") {
  std::vector<std::vector<long long>> cases = {
      {1, 1}, {1, 2, 3}, {1, 1, 2, 2}, {3, 5, 8, 2}, {2, 2, 2}, {4, 4, 4, 4, 8, 8}};
  for (const auto& numbers : cases) {
    auto inst = generate_partition_reduction(numbers);
    CHECK(inst.profile.total_weight() ==
          std::accumulate(numbers.begin(), numbers.end(), 0LL) + 1);
    CHECK(weighted_possible_winner(inst.profile, inst.p, inst.agenda).has_value() ==
          has_partition(numbers));
  }
  CHECK_THROWS_AS(generate_partition_reduction({1, 2}), UsageError);   // odd sum
  CHECK_THROWS_AS(generate_partition_reduction({0, 2}), UsageError);   // nonpositive
}

TEST_CASE("input validation and budgets") {
  std::mt19937 rng(233);
  auto p = random_partial_profile(rng, 3, 2, 40);  // even total weight
  auto agenda = random_partial(rng, 3, 40);
  CHECK_THROWS_AS(possible_winner_successive(p, 0, agenda), EvenTotalWeightError);
  CHECK_THROWS_AS(necessary_winner_successive(p, 0, agenda), EvenTotalWeightError);

  auto wide = random_partial_profile(rng, 8, 3, 40);
  CHECK_THROWS_AS(possible_winner_successive(wide, 0, random_partial(rng, 8, 40)),
                  CapacityError);
  Budget tiny{7, 2};
  auto open = random_partial_profile(rng, 4, 3, 0);  // fully unspecified voters
  CHECK_THROWS_AS(possible_winner_successive(open, 0, random_partial(rng, 4, 40), tiny),
                  CapacityError);
}
