#include <doctest.h>

#include "oracles.hpp"
#include "seqvote/manipulation.hpp"

#include <random>

using namespace seqvote;

TEST_CASE("successive manipulation on the worked example") {
  auto p = oracle::example1();
  Agenda agenda{0, 1, 2};
  // Two c-first voters flip the b-vs-{c} round from 2:2 to 2:3.
  auto w2 = manipulate_successive(p, 2, 2, agenda);
  REQUIRE(w2.has_value());
  CHECK(w2->k == 2);
  CHECK(w2->ballot.as_ranking().front() == 2);
  CHECK(!manipulate_successive(p, 1, 2, agenda).has_value());
  // The sincere winner needs no manipulators.
  CHECK(manipulate_successive(p, 0, 1, agenda).has_value());
}

TEST_CASE("manipulated winner table on the worked example") {
  auto p = oracle::example1();
  Agenda agenda{0, 1, 2};
  auto t0 = manipulated_winner_table(p, 0, agenda);
  for (int round = 1; round <= 3; ++round) {
    REQUIRE(t0.rounds[round - 1].size() == 1);
    CHECK(t0.rounds[round - 1][0].alternative == 0);  // sincere: a all the way
  }
  auto t2 = manipulated_winner_table(p, 2, agenda);
  CHECK(t2.round_contains(3, 2));
  auto t7 = manipulated_winner_table(p, 7, agenda);  // k >= n+1
  CHECK(t7.round_contains(3, 0));
  CHECK(t7.round_contains(3, 1));
  CHECK(t7.round_contains(3, 2));
}

TEST_CASE("amendment manipulation on the worked example") {
  auto p = oracle::example1();
  Agenda agenda{0, 1, 2};
  auto w = manipulate_amendment(p, 2, 2, agenda);
  REQUIRE(w.has_value());
  CHECK(w->round_winners.back() == 2);
  CHECK(manipulate_amendment(p, 0, 0, agenda).has_value());
  CHECK(!manipulate_amendment(p, 1, 1, agenda).has_value());
}

TEST_CASE("canonical ballots are as powerful as arbitrary coalitions") {
  std::mt19937 rng(31);
  for (int t = 0; t < 200; ++t) {
    int m = 2 + static_cast<int>(rng() % 3);
    int n = 1 + static_cast<int>(rng() % 5);
    long long k = rng() % 3;
    auto p = oracle::random_profile(rng, m, n);
    auto agenda = oracle::all_agendas(m)[rng() % oracle::all_agendas(m).size()];
    int target = static_cast<int>(rng() % m);
    CHECK(manipulate_successive(p, k, target, agenda).has_value() ==
          oracle::manipulable_oracle(p, k, target, agenda, Procedure::Successive));
    CHECK(manipulate_amendment(p, k, target, agenda).has_value() ==
          oracle::manipulable_oracle(p, k, target, agenda, Procedure::Amendment));
  }
}

TEST_CASE("monotonicity in the coalition size") {
  std::mt19937 rng(17);
  for (int t = 0; t < 80; ++t) {
    int m = 2 + static_cast<int>(rng() % 4);
    int n = 1 + static_cast<int>(rng() % 6);
    auto p = oracle::random_profile(rng, m, n);
    auto agendas = oracle::all_agendas(m);
    auto agenda = agendas[rng() % agendas.size()];
    int target = static_cast<int>(rng() % m);
    for (auto proc : {Procedure::Successive, Procedure::Amendment}) {
      bool seen = false;
      for (long long k = 0; k <= n + 1; ++k) {
        bool ok = proc == Procedure::Successive
                      ? manipulate_successive(p, k, target, agenda).has_value()
                      : manipulate_amendment(p, k, target, agenda).has_value();
        if (seen) CHECK(ok);
        seen = seen || ok;
      }
      CHECK(seen);  // a coalition outweighing the electorate always succeeds
    }
  }
}

TEST_CASE("minimum coalition size") {
  auto p = oracle::example1();
  Agenda agenda{0, 1, 2};
  CHECK(min_coalition_size(p, 2, agenda, Procedure::Successive) == 2);
  CHECK(min_coalition_size(p, 2, agenda, Procedure::Amendment) == 2);
  CHECK(min_coalition_size(p, 1, agenda, Procedure::Successive) == 0);
  CHECK(min_coalition_size(p, 0, agenda, Procedure::Amendment) == 0);

  std::mt19937 rng(53);
  for (int t = 0; t < 60; ++t) {
    int m = 2 + static_cast<int>(rng() % 3);
    int n = 1 + static_cast<int>(rng() % 5);
    auto pr = oracle::random_profile(rng, m, n);
    auto agendas = oracle::all_agendas(m);
    auto ag = agendas[rng() % agendas.size()];
    int target = static_cast<int>(rng() % m);
    for (auto proc : {Procedure::Successive, Procedure::Amendment})
      CHECK(min_coalition_size(pr, target, ag, proc) ==
            min_coalition_size(pr, target, ag, proc, /*linear_scan=*/true));
  }
}

TEST_CASE("weighted coalitions reduce to the total weight") {
  auto p = oracle::example1();
  Agenda agenda{0, 1, 2};
  auto by_weight = manipulate_weighted(p, {2}, 2, agenda, Procedure::Successive);
  auto by_count = manipulate_successive(p, 2, 2, agenda);
  REQUIRE(by_weight.has_value());
  REQUIRE(by_count.has_value());
  CHECK(by_weight->ballot == by_count->ballot);
  CHECK(manipulate_weighted(p, {1, 1}, 2, agenda, Procedure::Amendment).has_value());
  // Sum exceeding the electorate weight always succeeds.
  for (int target = 0; target < 3; ++target)
    CHECK(manipulate_weighted(p, {3, 1}, target, agenda, Procedure::Amendment).has_value());
  CHECK_THROWS_AS(manipulate_weighted(p, {0}, 2, agenda, Procedure::Successive), UsageError);
}

TEST_CASE("witnesses re-verify under the evaluator") {
  std::mt19937 rng(71);
  for (int t = 0; t < 80; ++t) {
    int m = 2 + static_cast<int>(rng() % 4);
    int n = 1 + static_cast<int>(rng() % 6);
    long long k = rng() % 4;
    auto p = oracle::random_profile(rng, m, n);
    auto agendas = oracle::all_agendas(m);
    auto agenda = agendas[rng() % agendas.size()];
    int target = static_cast<int>(rng() % m);
    for (auto proc : {Procedure::Successive, Procedure::Amendment}) {
      auto w = proc == Procedure::Successive ? manipulate_successive(p, k, target, agenda)
                                             : manipulate_amendment(p, k, target, agenda);
      if (!w) continue;
      Profile manipulated = p;
      if (w->k > 0) manipulated.voters.push_back({w->ballot, 1, w->k});
      CHECK(evaluate(manipulated, agenda, proc, TiePolicy::BreakTies).winner == target);
    }
  }
}
