#include <doctest.h>

#include "oracles.hpp"
#include "seqvote/agenda_control.hpp"

#include <random>

using namespace seqvote;

namespace {

// A weighted majority graph realizing a random tournament (total weight 3).
WeightedMajorityGraph random_tournament(std::mt19937& rng, int m) {
  WeightedMajorityGraph g(m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      bool forward = rng() % 2 == 0;
      g.weight(a, b) = forward ? 2 : 1;
      g.weight(b, a) = forward ? 1 : 2;
    }
  return g;
}

}  // namespace

TEST_CASE("successive control on the worked example") {
  auto p = oracle::example1();
  auto wa = control_successive(p, 0);
  REQUIRE(wa.has_value());
  CHECK(wa->agenda.back() == 0);
  CHECK(successive_winner(p, wa->agenda).winner == 0);
  auto wb = control_successive(p, 1);
  REQUIRE(wb.has_value());
  CHECK(successive_winner(p, wb->agenda).winner == 1);
  CHECK(!control_successive(p, 2).has_value());
  CHECK(controllable_set(p, Procedure::Successive) == std::set<int>{0, 1});
}

TEST_CASE("amendment control on the worked example") {
  auto p = oracle::example1();  // a is a Condorcet winner
  auto w = control_amendment(p, 0);
  REQUIRE(w.has_value());
  CHECK(amendment_winner(p, w->agenda).winner == 0);
  CHECK(!control_amendment(p, 1).has_value());
  CHECK(!control_amendment(p, 2).has_value());
  CHECK(controllable_set(p, Procedure::Amendment) == std::set<int>{0});
}

TEST_CASE("scc decomposition is topologically ordered") {
  std::mt19937 rng(7);
  for (int t = 0; t < 60; ++t) {
    int m = 2 + static_cast<int>(rng() % 6);
    auto g = random_tournament(rng, m);
    auto d = scc_decomposition(g);
    int covered = 0;
    for (size_t i = 0; i < d.components.size(); ++i) {
      covered += static_cast<int>(d.components[i].size());
      for (size_t j = i + 1; j < d.components.size(); ++j)
        for (int a : d.components[i])
          for (int b : d.components[j]) CHECK(g.majority_arc(a, b, 3));
    }
    CHECK(covered == m);
    for (int a = 0; a < m; ++a) CHECK(d.components[d.component_of(a)].size() > 0);
  }
}

TEST_CASE("hamiltonian cycles in strong components") {
  std::mt19937 rng(11);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    int m = 3 + static_cast<int>(rng() % 8);
    auto g = random_tournament(rng, m);
    for (const auto& comp : scc_decomposition(g).components) {
      if (comp.size() < 3) continue;
      auto cycle = hamiltonian_cycle(g, comp);
      REQUIRE(cycle.size() == comp.size());
      auto sorted = cycle;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == comp);
      for (size_t i = 0; i < cycle.size(); ++i)
        CHECK(g.majority_arc(cycle[i], cycle[(i + 1) % cycle.size()], 3));
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("controllable sets match brute force over all agendas") {
  std::mt19937 rng(2025);
  for (int t = 0; t < 60; ++t) {
    int m = 3 + static_cast<int>(rng() % 3);
    int n = 3 + 2 * static_cast<int>(rng() % 4);  // odd
    auto p = oracle::random_profile(rng, m, n);
    CHECK(controllable_set(p, Procedure::Successive) ==
          oracle::controllable_oracle(p, Procedure::Successive, false));
    CHECK(controllable_set(p, Procedure::Amendment) ==
          oracle::controllable_oracle(p, Procedure::Amendment, false));
  }
}

TEST_CASE("amendment controllable set is the top strongly connected component") {
  std::mt19937 rng(99);
  for (int t = 0; t < 40; ++t) {
    int m = 3 + static_cast<int>(rng() % 4);
    int n = 3 + 2 * static_cast<int>(rng() % 3);
    auto p = oracle::random_profile(rng, m, n);
    auto d = scc_decomposition(build_majority_graph(p));
    std::set<int> top(d.components.front().begin(), d.components.front().end());
    CHECK(controllable_set(p, Procedure::Amendment) == top);
  }
}

TEST_CASE("even-total successive control still verifies") {
  std::mt19937 rng(5);
  for (int t = 0; t < 40; ++t) {
    int m = 3 + static_cast<int>(rng() % 3);
    int n = 2 + 2 * static_cast<int>(rng() % 3);  // even
    auto p = oracle::random_profile(rng, m, n);
    for (int target = 0; target < m; ++target) {
      auto w = control_successive(p, target);
      if (w) CHECK(successive_winner(p, w->agenda, TiePolicy::BreakTies).winner == target);
    }
  }
}

TEST_CASE("even-total amendment control flag matches brute force") {
  std::mt19937 rng(6);
  for (int t = 0; t < 40; ++t) {
    int m = 3 + static_cast<int>(rng() % 3);
    int n = 2 + 2 * static_cast<int>(rng() % 3);  // even
    auto p = oracle::random_profile(rng, m, n);
    auto reachable = oracle::controllable_oracle(p, Procedure::Amendment, true);
    for (int target = 0; target < m; ++target)
      CHECK(control_amendment_even(p, target) == (reachable.count(target) > 0));
  }
}
