#include "seqvote/agenda_control.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace seqvote {

namespace {

// Strict-majority arc test on the weighted graph.
bool arc(const WeightedMajorityGraph& g, Weight total, int a, int b) {
  return 2 * g.weight(a, b) > total;
}

void require_tournament(const WeightedMajorityGraph& g, Weight total) {
  int m = g.num_alternatives();
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (arc(g, total, a, b) == arc(g, total, b, a))
        throw UsageError("majority digraph is not a tournament (even total weight or ties)");
}

// Kosaraju over the strict-majority digraph.
std::vector<std::vector<int>> strong_components(const WeightedMajorityGraph& g, Weight total) {
  int m = g.num_alternatives();
  std::vector<int> order;
  std::vector<bool> visited(m, false);
  // Iterative DFS, finish-time order.
  for (int s = 0; s < m; ++s) {
    if (visited[s]) continue;
    std::vector<std::pair<int, int>> stack{{s, 0}};
    visited[s] = true;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      bool descended = false;
      for (int v = next; v < m; ++v) {
        if (v == u || visited[v] || !arc(g, total, u, v)) continue;
        next = v + 1;
        visited[v] = true;
        stack.emplace_back(v, 0);
        descended = true;
        break;
      }
      if (!descended) {
        order.push_back(u);
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(m, -1);
  std::vector<std::vector<int>> components;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != -1) continue;
    std::vector<int> members;
    std::vector<int> stack{*it};
    comp[*it] = static_cast<int>(components.size());
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (int v = 0; v < m; ++v) {
        if (v == u || comp[v] != -1 || !arc(g, total, v, u)) continue;
        comp[v] = comp[u];
        stack.push_back(v);
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  return components;
}

}  // namespace

int SccDecomposition::component_of(int alternative) const {
  for (size_t i = 0; i < components.size(); ++i)
    for (int a : components[i])
      if (a == alternative) return static_cast<int>(i);
  throw UsageError("alternative not present in decomposition");
}

SccDecomposition scc_decomposition(const WeightedMajorityGraph& graph) {
  Weight total = graph.total_weight();
  require_tournament(graph, total);
  SccDecomposition d;
  d.components = strong_components(graph, total);
  // The condensation of a tournament is a linear order; sort components so
  // arcs point forward.
  std::sort(d.components.begin(), d.components.end(),
            [&](const std::vector<int>& a, const std::vector<int>& b) {
              return arc(graph, total, a.front(), b.front());
            });
  return d;
}

std::vector<int> hamiltonian_cycle(const WeightedMajorityGraph& graph,
                                   const std::vector<int>& component) {
  Weight total = graph.total_weight();
  require_tournament(graph, total);
  int t = static_cast<int>(component.size());
  if (t < 3) throw UsageError("Hamiltonian cycle requires a component of size >= 3");
  auto beats_arc = [&](int a, int b) { return arc(graph, total, a, b); };

  // Seed with a 3-cycle; one exists in every strongly connected tournament.
  std::vector<int> cycle;
  for (int i = 0; i < t && cycle.empty(); ++i)
    for (int j = 0; j < t && cycle.empty(); ++j)
      for (int k = 0; k < t && cycle.empty(); ++k) {
        if (i == j || j == k || i == k) continue;
        int a = component[i], b = component[j], c = component[k];
        if (beats_arc(a, b) && beats_arc(b, c) && beats_arc(c, a)) cycle = {a, b, c};
      }
  if (cycle.empty()) throw UsageError("component is not strongly connected (no 3-cycle)");

  std::vector<bool> in_cycle_flag(graph.num_alternatives(), false);
  for (int v : cycle) in_cycle_flag[v] = true;
  std::vector<int> outside;
  for (int v : component)
    if (!in_cycle_flag[v]) outside.push_back(v);

  auto insert_single = [&](int v) -> bool {
    int len = static_cast<int>(cycle.size());
    for (int i = 0; i < len; ++i) {
      int x = cycle[i], y = cycle[(i + 1) % len];
      if (beats_arc(x, v) && beats_arc(v, y)) {
        cycle.insert(cycle.begin() + i + 1, v);
        return true;
      }
    }
    return false;
  };

  while (!outside.empty()) {
    bool extended = false;
    for (size_t i = 0; i < outside.size(); ++i) {
      if (insert_single(outside[i])) {
        in_cycle_flag[outside[i]] = true;
        outside.erase(outside.begin() + i);
        extended = true;
        break;
      }
    }
    if (extended) continue;
    // No single vertex is insertable: each outside vertex either beats all of
    // the cycle or loses to all of it. Strong connectivity forces an arc from
    // a dominated vertex w to a dominating vertex u; splice w -> u between any
    // consecutive cycle pair.
    bool spliced = false;
    for (size_t wi = 0; wi < outside.size() && !spliced; ++wi) {
      int w = outside[wi];
      if (!beats_arc(cycle.front(), w)) continue;  // need cycle -> w
      for (size_t ui = 0; ui < outside.size() && !spliced; ++ui) {
        int u = outside[ui];
        if (u == w || !beats_arc(u, cycle.front()) || !beats_arc(w, u)) continue;
        cycle.insert(cycle.begin() + 1, {w, u});
        in_cycle_flag[w] = in_cycle_flag[u] = true;
        outside.erase(std::remove_if(outside.begin(), outside.end(),
                                     [&](int v) { return in_cycle_flag[v]; }),
                      outside.end());
        spliced = true;
      }
    }
    if (!spliced) throw UsageError("component is not strongly connected");
  }
  return cycle;
}

std::optional<ControlWitness> control_successive(const Profile& profile, int p) {
  profile.validate();
  if (!profile.is_complete()) throw UsageError("agenda control requires a complete profile");
  if (p < 0 || p >= profile.num_alternatives()) throw UsageError("unknown preferred alternative");

  int m = profile.num_alternatives();
  Weight total = profile.total_weight();
  std::vector<bool> in_set(m, false);
  in_set[p] = true;
  Agenda agenda{p};  // built back to front: later additions go in front

  while (static_cast<int>(agenda.size()) < m) {
    std::vector<int> addable;
    for (int c = 0; c < m; ++c) {
      if (in_set[c]) continue;
      // c is addable iff it would be rejected when facing the set built so
      // far. With tie-accepting successive semantics this must be a strict
      // minority, which also covers even total weight.
      Weight support = 0;
      for (const auto& v : profile.voters) {
        bool tops = true;
        for (int a = 0; a < m; ++a)
          if (in_set[a] && !v.order.prefers(c, a)) {
            tops = false;
            break;
          }
        if (tops) support += v.total_weight();
      }
      if (2 * support < total) addable.push_back(c);
    }
    if (addable.empty()) return std::nullopt;  // Lemma-style impossibility
    for (int c : addable) {
      agenda.insert(agenda.begin(), c);
      in_set[c] = true;
    }
  }
  return ControlWitness{agenda, p};
}

std::optional<ControlWitness> control_amendment(const Profile& profile, int p) {
  profile.validate();
  if (!profile.is_complete()) throw UsageError("agenda control requires a complete profile");
  if (p < 0 || p >= profile.num_alternatives()) throw UsageError("unknown preferred alternative");

  auto graph = build_majority_graph(profile);
  auto d = scc_decomposition(graph);
  const auto& top = d.components.front();
  if (std::find(top.begin(), top.end(), p) == top.end()) return std::nullopt;

  Agenda agenda;
  if (top.size() == 1) {
    agenda.push_back(p);
  } else {
    auto cycle = hamiltonian_cycle(graph, top);
    int t = static_cast<int>(cycle.size());
    int idx = static_cast<int>(std::find(cycle.begin(), cycle.end(), p) - cycle.begin());
    // Reversed cycle orientation: predecessor of p first, p last.
    for (int j = 1; j <= t; ++j) agenda.push_back(cycle[(idx - j % t + t) % t]);
  }
  for (int a = 0; a < profile.num_alternatives(); ++a)
    if (std::find(agenda.begin(), agenda.end(), a) == agenda.end()) agenda.push_back(a);
  assert(amendment_winner(profile, agenda).winner == p);
  return ControlWitness{agenda, p};
}

bool control_amendment_even(const Profile& profile, int p) {
  profile.validate();
  if (!profile.is_complete()) throw UsageError("agenda control requires a complete profile");
  if (p < 0 || p >= profile.num_alternatives()) throw UsageError("unknown preferred alternative");
  auto graph = build_majority_graph(profile);
  Weight total = profile.total_weight();
  int m = profile.num_alternatives();
  if (m > 20) throw CapacityError("even-total amendment control supports at most 20 alternatives");

  // Fold semantics: a challenger replaces the survivor only on a strict
  // majority. Reachable (used-set, survivor) states; p is controllable iff
  // some agenda folds to survivor p with every alternative used.
  std::vector<std::vector<char>> reach(1u << m, std::vector<char>(m, 0));
  for (int a = 0; a < m; ++a) reach[1u << a][a] = 1;
  unsigned full = (1u << m) - 1;
  for (unsigned mask = 1; mask <= full; ++mask)
    for (int s = 0; s < m; ++s) {
      if (!reach[mask][s]) continue;
      for (int x = 0; x < m; ++x) {
        if (mask & (1u << x)) continue;
        int next = arc(graph, total, x, s) ? x : s;
        reach[mask | (1u << x)][next] = 1;
      }
    }
  return reach[full][p] != 0;
}

std::set<int> controllable_set(const Profile& profile, Procedure procedure) {
  std::set<int> out;
  for (int p = 0; p < profile.num_alternatives(); ++p) {
    auto w = procedure == Procedure::Successive ? control_successive(profile, p)
                                                : control_amendment(profile, p);
    if (w) out.insert(p);
  }
  return out;
}

}  // namespace seqvote
