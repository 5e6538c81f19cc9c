#pragma once

#include "seqvote/core.hpp"

#include <set>

namespace seqvote {

struct SccDecomposition {
  // Components in topological order: every majority arc between two
  // components points from an earlier to a later one.
  std::vector<std::vector<int>> components;

  int component_of(int alternative) const;
};

// Decomposes the strict-majority digraph into strongly connected components.
// Requires the digraph to be a tournament (complete profile, odd total
// weight); throws UsageError otherwise.
SccDecomposition scc_decomposition(const WeightedMajorityGraph& graph);

// Finds a Hamiltonian cycle of the majority tournament restricted to
// `component`, which must be strongly connected with size >= 3. The returned
// sequence is cyclic: each consecutive pair and (last, first) is a majority
// arc.
std::vector<int> hamiltonian_cycle(const WeightedMajorityGraph& graph,
                                   const std::vector<int>& component);

// Agenda making p the successive winner, built back to front; absent iff at
// some iteration every remaining alternative is a majority winner against the
// set built so far. Works for odd and even total weight.
std::optional<ControlWitness> control_successive(const Profile& profile, int p);

// Agenda making p the amendment winner; present iff p lies in the topmost
// strongly connected component of the majority tournament. Requires odd total
// weight.
std::optional<ControlWitness> control_amendment(const Profile& profile, int p);

// Experimental even-total variant under the status-quo tie policy (a tied
// challenge keeps the current survivor). Decides by exact reachability over
// (used-set, survivor) states; throws CapacityError for more than 20
// alternatives. Decision only.
bool control_amendment_even(const Profile& profile, int p);

std::set<int> controllable_set(const Profile& profile, Procedure procedure);

}  // namespace seqvote
