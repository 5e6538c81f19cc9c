#pragma once

#include "seqvote/core.hpp"

namespace seqvote {

// Deterministic completion of a partial profile relative to a target
// alternative c. Pairs not involving c follow `fixed_order` (greedy top-down,
// so existing preferences are never contradicted); pairs involving c are
// resolved against c (discriminating) or in favor of c (privileging).
Profile discriminating_completion(const Profile& profile, int c, const Agenda& fixed_order);
Profile privileging_completion(const Profile& profile, int c, const Agenda& fixed_order);

// Ceilings for the exact possible-winner searches; exceeding one raises
// CapacityError. The problems are NP-hard, exactness is only practical for
// few alternatives.
struct Budget {
  int max_alternatives = 7;
  size_t max_variables = 10000;  // sum over voter groups of completion counts
};

struct PossibleWinnerWitness {
  Profile completion;  // complete profile realizing the win
  Agenda agenda;       // agenda completion realizing the win
};

// Voters grouped by (partial order, weight); each group distributes its count
// over the linear completions of its order, subject to linear constraints on
// the weighted completion counts.
struct FeasibilitySystem {
  struct Group {
    long long count = 0;  // number of voters in the group
    Weight weight = 1;    // per-voter weight
    std::vector<StrictOrder> completions;
  };
  struct LinearConstraint {
    std::vector<std::vector<long long>> coef;  // [group][completion]
    long long lb;                              // lb <= sum <= ub
    long long ub;
  };
  std::vector<Group> groups;
  std::vector<LinearConstraint> constraints;
};

// Per group, per completion: how many of the group's voters take it.
using FeasibleAssignment = std::vector<std::vector<long long>>;

// Exact search (branch and bound over completion classes with identical
// constraint columns); deterministic first-found assignment.
std::optional<FeasibleAssignment> solve_feasibility(const FeasibilitySystem& system);

// Is p the successive winner for every completion of profile and agenda?
// Decided by the discriminating/privileging majority tests; handles weighted
// voters. Requires odd total weight.
bool necessary_winner_successive(const Profile& profile, int p, const PartialAgenda& partial);

// Does some completion of profile and agenda make p win? Iterates agenda
// completions in lexicographic order and solves one feasibility system each
// (amendment: one per valid round-winner guess); first witness returned.
std::optional<PossibleWinnerWitness> possible_winner_successive(const Profile& profile, int p,
                                                                const PartialAgenda& partial,
                                                                const Budget& budget = {});
std::optional<PossibleWinnerWitness> possible_winner_amendment(const Profile& profile, int p,
                                                               const PartialAgenda& partial,
                                                               const Budget& budget = {});

// p is a necessary amendment winner iff no other alternative possibly wins.
bool necessary_winner_amendment(const Profile& profile, int p, const PartialAgenda& partial,
                                const Budget& budget = {});

// Weighted possible winner; same exact framework, budget-guarded (the
// decision is NP-hard already for three alternatives).
std::optional<PossibleWinnerWitness> weighted_possible_winner(
    const Profile& profile, int p, const PartialAgenda& partial,
    Procedure procedure = Procedure::Successive, const Budget& budget = {});

// Weighted necessary winner. Successive: any m. Amendment: m <= 3 only
// (possible-Condorcet analysis); larger m raises UsageError ("undecided").
bool weighted_necessary_winner(const Profile& profile, int p, const PartialAgenda& partial,
                               Procedure procedure);

struct UndirectedGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

struct ReductionInstance {
  Profile profile;
  int p = -1;
  PartialAgenda agenda;
};

// Hardness-construction instance generators.
// Independent set (successive possible winner): edge alternatives + {p, d},
// 2r-3 voters, agenda c_1 > ... > c_s > p > d.
ReductionInstance generate_is_reduction(const UndirectedGraph& graph, int h);
// Vertex cover (amendment possible winner): edge alternatives + {p, b, d},
// 2r-1 voters, agenda b > d > p > c_s > ... > c_1.
ReductionInstance generate_vc_reduction(const UndirectedGraph& graph, int h);
// Partition (weighted successive possible winner): alternatives {a, b, p},
// one weighted number voter per integer plus a unit dummy, agenda a > b > p.
ReductionInstance generate_partition_reduction(const std::vector<long long>& numbers);

}  // namespace seqvote
