#include "seqvote/uncertainty.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace seqvote {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

void check_alternative(const Profile& profile, int a) {
  if (a < 0 || a >= profile.num_alternatives()) throw UsageError("unknown alternative id");
}

void require_odd_total(const Profile& profile) {
  if (profile.total_weight() % 2 == 0)
    throw EvenTotalWeightError("possible/necessary winner computation requires odd total weight");
}

void check_partial_agenda(const Profile& profile, const PartialAgenda& partial) {
  if (partial.num_alternatives() != profile.num_alternatives())
    throw UsageError("partial agenda dimension does not match the profile");
}

// Greedy top-down linear extension: repeatedly place a maximal element of the
// remaining suborder. Discriminating defers c as long as possible;
// privileging places c as soon as its remaining ancestors are gone. Other
// choices follow the fixed-order priority.
StrictOrder complete_order(const StrictOrder& o, int c, const std::vector<int>& priority,
                           bool privilege) {
  int m = o.num_alternatives();
  std::vector<bool> placed(m, false);
  std::vector<int> ranking;
  auto is_maximal = [&](int a) {
    for (int b = 0; b < m; ++b)
      if (!placed[b] && b != a && o.prefers(b, a)) return false;
    return true;
  };
  for (int step = 0; step < m; ++step) {
    int pick = -1;
    if (privilege && !placed[c]) {
      if (is_maximal(c)) {
        pick = c;
      } else {
        // Some ancestor of c is maximal; unblock c first.
        for (int a = 0; a < m; ++a) {
          if (placed[a] || !o.prefers(a, c) || !is_maximal(a)) continue;
          if (pick == -1 || priority[a] < priority[pick]) pick = a;
        }
      }
    } else {
      for (int a = 0; a < m; ++a) {
        if (placed[a] || a == c || !is_maximal(a)) continue;
        if (pick == -1 || priority[a] < priority[pick]) pick = a;
      }
      if (pick == -1) pick = c;  // c is the sole maximal left (discriminating)
    }
    placed[pick] = true;
    ranking.push_back(pick);
  }
  return StrictOrder::from_ranking(ranking);
}

Profile completion_profile(const Profile& profile, int c, const Agenda& fixed_order,
                           bool privilege) {
  profile.validate();
  check_alternative(profile, c);
  require_full_agenda(profile, fixed_order);
  std::vector<int> priority(profile.num_alternatives());
  for (size_t i = 0; i < fixed_order.size(); ++i) priority[fixed_order[i]] = static_cast<int>(i);
  Profile out = profile;
  for (auto& v : out.voters)
    if (!v.order.is_linear()) v.order = complete_order(v.order, c, priority, privilege);
  return out;
}

std::vector<int> ascending_agenda(int m) {
  std::vector<int> a(m);
  std::iota(a.begin(), a.end(), 0);
  return a;
}

std::vector<FeasibilitySystem::Group> build_groups(const Profile& profile, const Budget& budget) {
  std::map<std::pair<std::vector<std::pair<int, int>>, Weight>, size_t> index;
  std::vector<FeasibilitySystem::Group> groups;
  size_t variables = 0;
  for (const auto& v : profile.voters) {
    auto key = std::make_pair(v.order.pairs(), v.weight);
    auto it = index.find(key);
    if (it != index.end()) {
      groups[it->second].count += v.multiplicity;
      continue;
    }
    FeasibilitySystem::Group g;
    g.count = v.multiplicity;
    g.weight = v.weight;
    size_t room = budget.max_variables - variables;
    if (v.order.linear_extensions(&g.completions, room + 1) > room)
      throw CapacityError("completion count exceeds the configured budget");
    variables += g.completions.size();
    index.emplace(std::move(key), groups.size());
    groups.push_back(std::move(g));
  }
  return groups;
}

// Adds "winner must beat loser": weighted margin of loser over winner <= -1.
void add_beat_constraint(FeasibilitySystem& sys, int winner, int loser) {
  FeasibilitySystem::LinearConstraint c;
  c.lb = -kInf;
  c.ub = -1;
  for (const auto& g : sys.groups) {
    std::vector<long long> row;
    for (const auto& comp : g.completions)
      row.push_back(comp.prefers(loser, winner) ? g.weight
                                                : (comp.prefers(winner, loser) ? -g.weight : 0));
    c.coef.push_back(std::move(row));
  }
  sys.constraints.push_back(std::move(c));
}

// Adds a bound on the weighted count of completions ranking `a` above every
// member of `rest`.
void add_first_place_constraint(FeasibilitySystem& sys, int a, const std::vector<int>& rest,
                                long long lb, long long ub) {
  FeasibilitySystem::LinearConstraint c;
  c.lb = lb;
  c.ub = ub;
  for (const auto& g : sys.groups) {
    std::vector<long long> row;
    for (const auto& comp : g.completions) {
      bool tops = true;
      for (int b : rest)
        if (b != a && !comp.prefers(a, b)) {
          tops = false;
          break;
        }
      row.push_back(tops ? g.weight : 0);
    }
    c.coef.push_back(std::move(row));
  }
  sys.constraints.push_back(std::move(c));
}

Profile assignment_to_profile(const Profile& profile,
                              const std::vector<FeasibilitySystem::Group>& groups,
                              const FeasibleAssignment& assignment) {
  Profile out;
  out.labels = profile.labels;
  for (size_t g = 0; g < groups.size(); ++g)
    for (size_t k = 0; k < groups[g].completions.size(); ++k)
      if (assignment[g][k] > 0)
        out.voters.push_back({groups[g].completions[k], groups[g].weight, assignment[g][k]});
  return out;
}

}  // namespace

Profile discriminating_completion(const Profile& profile, int c, const Agenda& fixed_order) {
  return completion_profile(profile, c, fixed_order, false);
}

Profile privileging_completion(const Profile& profile, int c, const Agenda& fixed_order) {
  return completion_profile(profile, c, fixed_order, true);
}

std::optional<FeasibleAssignment> solve_feasibility(const FeasibilitySystem& system) {
  size_t G = system.groups.size();
  size_t C = system.constraints.size();

  // Merge completions with identical constraint columns: any split inside a
  // class is equivalent, so branch over classes only.
  struct Class {
    std::vector<long long> coef;  // one entry per constraint
    size_t first;                 // canonical representative completion
  };
  std::vector<std::vector<Class>> classes(G);
  for (size_t g = 0; g < G; ++g) {
    std::map<std::vector<long long>, size_t> seen;
    for (size_t k = 0; k < system.groups[g].completions.size(); ++k) {
      std::vector<long long> col(C);
      for (size_t c = 0; c < C; ++c) col[c] = system.constraints[c].coef[g][k];
      if (seen.find(col) == seen.end()) {
        seen.emplace(col, classes[g].size());
        classes[g].push_back({std::move(col), k});
      }
    }
  }

  // Per constraint, extreme contributions of all groups from g onward.
  std::vector<std::vector<long long>> suf_min(G + 1, std::vector<long long>(C, 0));
  std::vector<std::vector<long long>> suf_max(G + 1, std::vector<long long>(C, 0));
  for (size_t g = G; g-- > 0;) {
    for (size_t c = 0; c < C; ++c) {
      long long lo = kInf, hi = -kInf;
      for (const auto& cl : classes[g]) {
        lo = std::min(lo, cl.coef[c]);
        hi = std::max(hi, cl.coef[c]);
      }
      if (classes[g].empty()) lo = hi = 0;
      suf_min[g][c] = suf_min[g + 1][c] + system.groups[g].count * lo;
      suf_max[g][c] = suf_max[g + 1][c] + system.groups[g].count * hi;
    }
  }

  std::vector<long long> cur(C, 0);
  std::vector<std::vector<long long>> class_counts(G);
  for (size_t g = 0; g < G; ++g) class_counts[g].assign(classes[g].size(), 0);

  // Can the remaining freedom still satisfy every constraint? `rem` voters of
  // group g are undistributed over classes k0.. of that group.
  auto viable = [&](size_t g, size_t k0, long long rem) {
    for (size_t c = 0; c < C; ++c) {
      long long lo = 0, hi = 0;
      if (rem > 0) {
        long long clo = kInf, chi = -kInf;
        for (size_t k = k0; k < classes[g].size(); ++k) {
          clo = std::min(clo, classes[g][k].coef[c]);
          chi = std::max(chi, classes[g][k].coef[c]);
        }
        lo = rem * clo;
        hi = rem * chi;
      }
      long long base = cur[c] + (g < G ? suf_min[g + 1][c] : 0);
      long long top = cur[c] + (g < G ? suf_max[g + 1][c] : 0);
      if (rem > 0) {
        base += lo;
        top += hi;
      }
      if (base > system.constraints[c].ub || top < system.constraints[c].lb) return false;
    }
    return true;
  };

  // DFS: groups in order; inside a group, distribute its count over classes.
  auto dfs_group = [&](auto&& self, size_t g) -> bool {
    if (g == G) return true;  // viability checks guarantee satisfaction
    if (classes[g].empty()) return system.groups[g].count == 0 && self(self, g + 1);
    auto dfs_class = [&](auto&& inner, size_t k, long long rem) -> bool {
      if (k + 1 == classes[g].size()) {
        class_counts[g][k] = rem;
        for (size_t c = 0; c < C; ++c) cur[c] += rem * classes[g][k].coef[c];
        bool ok = viable(g, classes[g].size(), 0) && self(self, g + 1);
        for (size_t c = 0; c < C; ++c) cur[c] -= rem * classes[g][k].coef[c];
        if (!ok) class_counts[g][k] = 0;
        return ok;
      }
      for (long long n = 0; n <= rem; ++n) {
        class_counts[g][k] = n;
        for (size_t c = 0; c < C; ++c) cur[c] += n * classes[g][k].coef[c];
        bool ok = viable(g, k + 1, rem - n) && inner(inner, k + 1, rem - n);
        for (size_t c = 0; c < C; ++c) cur[c] -= n * classes[g][k].coef[c];
        if (ok) return true;
        class_counts[g][k] = 0;
      }
      return false;
    };
    return dfs_class(dfs_class, 0, system.groups[g].count);
  };

  if (!viable(0, 0, 0) && G == 0) return std::nullopt;
  if (G == 0) {
    for (size_t c = 0; c < C; ++c)
      if (system.constraints[c].lb > 0 || system.constraints[c].ub < 0) return std::nullopt;
    return FeasibleAssignment{};
  }
  if (!dfs_group(dfs_group, 0)) return std::nullopt;

  FeasibleAssignment out(G);
  for (size_t g = 0; g < G; ++g) {
    out[g].assign(system.groups[g].completions.size(), 0);
    for (size_t k = 0; k < classes[g].size(); ++k)
      out[g][classes[g][k].first] = class_counts[g][k];
  }
  return out;
}

bool necessary_winner_successive(const Profile& profile, int p, const PartialAgenda& partial) {
  profile.validate();
  check_alternative(profile, p);
  check_partial_agenda(profile, partial);
  require_odd_total(profile);

  int m = profile.num_alternatives();
  Agenda fixed = ascending_agenda(m);

  std::vector<int> not_prec{p};
  std::vector<int> prec;
  for (int c = 0; c < m; ++c) {
    if (c == p) continue;
    (partial.prefers(c, p) ? prec : not_prec).push_back(c);
  }

  Profile disc = discriminating_completion(profile, p, fixed);
  if (!is_majority_winner(disc, p, not_prec)) return false;

  for (int c : prec) {
    std::vector<int> behind{c};
    for (int x = 0; x < m; ++x)
      if (x != c && partial.prefers(c, x)) behind.push_back(x);
    Profile priv = privileging_completion(profile, c, fixed);
    if (is_majority_winner(priv, c, behind)) return false;
  }
  return true;
}

namespace {

std::optional<PossibleWinnerWitness> possible_winner_engine(const Profile& profile, int p,
                                                            const PartialAgenda& partial,
                                                            Procedure procedure,
                                                            const Budget& budget) {
  profile.validate();
  check_alternative(profile, p);
  check_partial_agenda(profile, partial);
  require_odd_total(profile);
  int m = profile.num_alternatives();
  if (m > budget.max_alternatives)
    throw CapacityError("alternative count exceeds the configured budget");

  auto groups = build_groups(profile, budget);
  Weight total = profile.total_weight();
  long long half = total / 2;  // total is odd

  std::vector<StrictOrder> agenda_orders;
  partial.linear_extensions(&agenda_orders);

  for (const auto& order : agenda_orders) {
    Agenda agenda = order.as_ranking();
    int y = static_cast<int>(std::find(agenda.begin(), agenda.end(), p) - agenda.begin());

    if (procedure == Procedure::Successive) {
      FeasibilitySystem sys;
      sys.groups = groups;
      for (int i = 0; i < y; ++i) {
        std::vector<int> suffix(agenda.begin() + i, agenda.end());
        add_first_place_constraint(sys, agenda[i], suffix, -kInf, half);
      }
      std::vector<int> suffix(agenda.begin() + y, agenda.end());
      add_first_place_constraint(sys, p, suffix, half + 1, kInf);
      if (auto assignment = solve_feasibility(sys)) {
        PossibleWinnerWitness w{assignment_to_profile(profile, groups, *assignment), agenda};
        if (successive_winner(w.completion, agenda).winner != p)
          throw std::logic_error("feasible completion failed to re-verify");
        return w;
      }
      continue;
    }

    // Amendment: guess, for rounds 2..y-1 (0-based 1..y-1), whether the
    // incumbent survives or the agenda alternative takes over.
    int free_rounds = std::max(0, y - 1);
    for (unsigned mask = 0; mask < (1u << free_rounds); ++mask) {
      FeasibilitySystem sys;
      sys.groups = groups;
      int survivor = agenda[0];
      for (int i = 1; i < y; ++i) {
        if (mask & (1u << (i - 1))) {
          add_beat_constraint(sys, agenda[i], survivor);
          survivor = agenda[i];
        } else {
          add_beat_constraint(sys, survivor, agenda[i]);
        }
      }
      if (y > 0) add_beat_constraint(sys, p, survivor);
      for (int i = y + 1; i < m; ++i) add_beat_constraint(sys, p, agenda[i]);
      if (auto assignment = solve_feasibility(sys)) {
        PossibleWinnerWitness w{assignment_to_profile(profile, groups, *assignment), agenda};
        if (amendment_winner(w.completion, agenda).winner != p)
          throw std::logic_error("feasible completion failed to re-verify");
        return w;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<PossibleWinnerWitness> possible_winner_successive(const Profile& profile, int p,
                                                                const PartialAgenda& partial,
                                                                const Budget& budget) {
  return possible_winner_engine(profile, p, partial, Procedure::Successive, budget);
}

std::optional<PossibleWinnerWitness> possible_winner_amendment(const Profile& profile, int p,
                                                               const PartialAgenda& partial,
                                                               const Budget& budget) {
  return possible_winner_engine(profile, p, partial, Procedure::Amendment, budget);
}

bool necessary_winner_amendment(const Profile& profile, int p, const PartialAgenda& partial,
                                const Budget& budget) {
  profile.validate();
  check_alternative(profile, p);
  for (int q = 0; q < profile.num_alternatives(); ++q)
    if (q != p && possible_winner_amendment(profile, q, partial, budget)) return false;
  return true;
}

std::optional<PossibleWinnerWitness> weighted_possible_winner(const Profile& profile, int p,
                                                              const PartialAgenda& partial,
                                                              Procedure procedure,
                                                              const Budget& budget) {
  return possible_winner_engine(profile, p, partial, procedure, budget);
}

bool weighted_necessary_winner(const Profile& profile, int p, const PartialAgenda& partial,
                               Procedure procedure) {
  if (procedure == Procedure::Successive) return necessary_winner_successive(profile, p, partial);

  profile.validate();
  check_alternative(profile, p);
  check_partial_agenda(profile, partial);
  require_odd_total(profile);
  int m = profile.num_alternatives();
  if (m > 3)
    throw UsageError(
        "undecided: weighted necessary amendment winner is only supported for up to 3 "
        "alternatives (coNP-hard regime)");
  Weight total = profile.total_weight();

  // Weight preferring a to b, minimized resp. maximized over completions.
  auto min_weight = [&](int a, int b) {
    Weight w = 0;
    for (const auto& v : profile.voters)
      if (v.order.prefers(a, b)) w += v.total_weight();
    return w;
  };
  auto max_weight = [&](int a, int b) { return total - min_weight(b, a); };

  std::vector<StrictOrder> agenda_orders;
  partial.linear_extensions(&agenda_orders);
  for (const auto& order : agenda_orders) {
    Agenda agenda = order.as_ranking();
    int y = static_cast<int>(std::find(agenda.begin(), agenda.end(), p) - agenda.begin());
    if (y <= 1) {
      // p survives from the start: p must be a necessary Condorcet winner.
      for (int c = 0; c < m; ++c)
        if (c != p && 2 * min_weight(p, c) < total) return false;
    } else {
      // p enters last (m == 3): some completion must not let either earlier
      // alternative beat both its rival and p.
      for (int qi = 0; qi < 2; ++qi) {
        int q = agenda[qi], other = agenda[1 - qi];
        if (2 * max_weight(q, other) > total && 2 * max_weight(q, p) > total) return false;
      }
    }
  }
  return true;
}

namespace {

void check_graph(const UndirectedGraph& graph) {
  for (auto [u, v] : graph.edges) {
    if (u < 0 || v < 0 || u >= graph.num_vertices || v >= graph.num_vertices)
      throw UsageError("edge references unknown vertex");
    if (u == v) throw UsageError("self-loops are not allowed");
  }
}

std::vector<std::vector<int>> incident_edges(const UndirectedGraph& graph) {
  std::vector<std::vector<int>> inc(graph.num_vertices);
  for (size_t j = 0; j < graph.edges.size(); ++j) {
    inc[graph.edges[j].first].push_back(static_cast<int>(j));
    inc[graph.edges[j].second].push_back(static_cast<int>(j));
  }
  return inc;
}

std::vector<std::pair<int, int>> chain_pairs(const std::vector<int>& chain) {
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i + 1 < chain.size(); ++i) pairs.emplace_back(chain[i], chain[i + 1]);
  return pairs;
}

std::vector<std::string> edge_labels(int s) {
  std::vector<std::string> labels;
  for (int j = 1; j <= s; ++j) labels.push_back("c" + std::to_string(j));
  return labels;
}

}  // namespace

ReductionInstance generate_is_reduction(const UndirectedGraph& graph, int h) {
  check_graph(graph);
  int r = graph.num_vertices;
  int s = static_cast<int>(graph.edges.size());
  if (r < 3) throw UsageError("independent-set reduction requires at least 3 vertices");
  if (h < 2 || h > r - 1) throw UsageError("independent-set reduction requires 2 <= h <= r-1");

  int m = s + 2;
  int p = s, d = s + 1;
  ReductionInstance inst;
  inst.profile.labels = edge_labels(s);
  inst.profile.labels.push_back("p");
  inst.profile.labels.push_back("d");

  auto inc = incident_edges(graph);
  for (int i = 0; i < r; ++i) {
    // Chain: incident edges, then p, then the non-incident edges; d above
    // exactly the non-incident edges.
    std::vector<char> is_inc(s, 0);
    for (int j : inc[i]) is_inc[j] = 1;
    std::vector<int> chain = inc[i];
    chain.push_back(p);
    auto pairs = chain_pairs(chain);
    int prev = p;
    for (int j = 0; j < s; ++j) {
      if (is_inc[j]) continue;
      pairs.emplace_back(prev, j);
      pairs.emplace_back(d, j);
      prev = j;
    }
    inst.profile.voters.push_back({StrictOrder::from_pairs(m, pairs)});
  }
  std::vector<int> edge_chain(s);
  std::iota(edge_chain.begin(), edge_chain.end(), 0);
  auto aux = edge_chain;
  aux.push_back(d);
  aux.push_back(p);
  if (h - 2 > 0)
    inst.profile.voters.push_back({StrictOrder::from_ranking(aux), 1, h - 2});
  auto aux2 = edge_chain;
  aux2.push_back(p);
  aux2.push_back(d);
  if (r - h - 1 > 0)
    inst.profile.voters.push_back({StrictOrder::from_ranking(aux2), 1, r - h - 1});

  auto agenda = edge_chain;
  agenda.push_back(p);
  agenda.push_back(d);
  inst.agenda = StrictOrder::from_ranking(agenda);
  inst.p = p;
  return inst;
}

ReductionInstance generate_vc_reduction(const UndirectedGraph& graph, int h) {
  check_graph(graph);
  int r = graph.num_vertices;
  int s = static_cast<int>(graph.edges.size());
  if (r < 1) throw UsageError("vertex-cover reduction requires at least 1 vertex");
  if (h < 1 || h > r - 1) throw UsageError("vertex-cover reduction requires 1 <= h <= r-1");

  int m = s + 3;
  int p = s, b = s + 1, d = s + 2;
  ReductionInstance inst;
  inst.profile.labels = edge_labels(s);
  inst.profile.labels.push_back("p");
  inst.profile.labels.push_back("b");
  inst.profile.labels.push_back("d");

  auto inc = incident_edges(graph);
  for (int i = 0; i < r; ++i) {
    // Non-incident edges on top, then two incomparable chains:
    // incident edges > d, and b > p.
    std::vector<char> is_inc(s, 0);
    for (int j : inc[i]) is_inc[j] = 1;
    std::vector<int> non_inc;
    for (int j = 0; j < s; ++j)
      if (!is_inc[j]) non_inc.push_back(j);
    std::vector<int> chain1 = inc[i];
    chain1.push_back(d);
    auto pairs = chain_pairs(non_inc);
    auto c1 = chain_pairs(chain1);
    pairs.insert(pairs.end(), c1.begin(), c1.end());
    pairs.emplace_back(b, p);
    if (!non_inc.empty()) {
      pairs.emplace_back(non_inc.back(), chain1.front());
      pairs.emplace_back(non_inc.back(), b);
    }
    inst.profile.voters.push_back({StrictOrder::from_pairs(m, pairs)});
  }
  std::vector<int> edge_chain(s);
  std::iota(edge_chain.begin(), edge_chain.end(), 0);
  std::vector<int> aux{p};
  aux.insert(aux.end(), edge_chain.begin(), edge_chain.end());
  aux.push_back(b);
  aux.push_back(d);
  if (r - h - 1 > 0)
    inst.profile.voters.push_back({StrictOrder::from_ranking(aux), 1, r - h - 1});
  std::vector<int> aux2{p, d};
  aux2.insert(aux2.end(), edge_chain.begin(), edge_chain.end());
  aux2.push_back(b);
  inst.profile.voters.push_back({StrictOrder::from_ranking(aux2), 1, h});

  std::vector<int> agenda{b, d, p};
  for (int j = s - 1; j >= 0; --j) agenda.push_back(j);
  inst.agenda = StrictOrder::from_ranking(agenda);
  inst.p = p;
  return inst;
}

ReductionInstance generate_partition_reduction(const std::vector<long long>& numbers) {
  long long sum = 0;
  for (long long x : numbers) {
    if (x <= 0) throw UsageError("partition reduction requires positive integers");
    sum += x;
  }
  if (sum % 2 != 0) throw UsageError("partition reduction requires an even total sum");

  ReductionInstance inst;
  inst.profile.labels = {"a", "b", "p"};
  int a = 0, b = 1, p = 2;
  for (long long x : numbers)
    inst.profile.voters.push_back({StrictOrder::from_pairs(3, {{a, p}}), x, 1});
  inst.profile.voters.push_back({StrictOrder::from_ranking({p, b, a}), 1, 1});
  inst.agenda = StrictOrder::from_ranking({a, b, p});
  inst.p = p;
  return inst;
}

}  // namespace seqvote
