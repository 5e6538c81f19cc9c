#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seqvote {

// Thrown when an operation is called with arguments that violate its
// preconditions (unknown alternative, partial input where a complete one is
// required, and so on).
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the default tie policy when the total voter weight is even.
class EvenTotalWeightError : public UsageError {
 public:
  explicit EvenTotalWeightError(const std::string& what) : UsageError(what) {}
};

// Thrown when an exact search would exceed the configured instance budget.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

using Weight = long long;

// A strict partial order over alternatives 0..m-1, stored as its transitive
// closure. Construction rejects cycles. Used both for voter preferences and
// for (partial) agendas.
class StrictOrder {
 public:
  StrictOrder() : m_(0) {}
  explicit StrictOrder(int m) : m_(m), rel_(static_cast<size_t>(m) * m, 0) {}

  // Builds the transitive closure of `pairs` over 0..m-1; throws UsageError on
  // out-of-range ids, reflexive pairs, or cycles.
  static StrictOrder from_pairs(int m, const std::vector<std::pair<int, int>>& pairs);

  // Linear order from a ranking, ranking[0] being the most preferred.
  // `ranking` must be a permutation of 0..m-1.
  static StrictOrder from_ranking(const std::vector<int>& ranking);

  int num_alternatives() const { return m_; }

  bool prefers(int a, int b) const { return rel_[static_cast<size_t>(a) * m_ + b] != 0; }
  bool comparable(int a, int b) const { return prefers(a, b) || prefers(b, a); }

  int pair_count() const;
  bool is_linear() const { return pair_count() == m_ * (m_ - 1) / 2; }

  // For a linear order, the ranking (best first).
  std::vector<int> as_ranking() const;

  std::vector<std::pair<int, int>> pairs() const;

  // Returns a copy extended with `extra` pairs (closure recomputed).
  StrictOrder extended(const std::vector<std::pair<int, int>>& extra) const;

  // True iff `other` contains every pair of *this (over the same m).
  bool extends(const StrictOrder& base) const;

  // Enumerates all linear extensions; stops early once `limit` extensions have
  // been produced (0 = no limit). Returns the number produced.
  size_t linear_extensions(std::vector<StrictOrder>* out, size_t limit = 0) const;

  // Counts linear extensions, capped at `cap`.
  size_t count_linear_extensions(size_t cap) const;

  bool operator==(const StrictOrder& other) const { return m_ == other.m_ && rel_ == other.rel_; }

 private:
  void set(int a, int b) { rel_[static_cast<size_t>(a) * m_ + b] = 1; }
  int m_;
  std::vector<uint8_t> rel_;
};

using PreferenceOrder = StrictOrder;
using PartialAgenda = StrictOrder;

// A full agenda: the sequence in which alternatives are considered.
using Agenda = std::vector<int>;

struct Voter {
  PreferenceOrder order;
  Weight weight = 1;        // per-voter integer weight, >= 1
  long long multiplicity = 1;  // identical voters stored as one group

  Weight total_weight() const { return weight * multiplicity; }
};

struct Profile {
  std::vector<std::string> labels;  // index = alternative id
  std::vector<Voter> voters;

  int num_alternatives() const { return static_cast<int>(labels.size()); }
  long long num_voters() const;     // sum of multiplicities
  Weight total_weight() const;      // sum of weight * multiplicity

  // True iff every voter's order is linear.
  bool is_complete() const;

  int alternative_id(const std::string& label) const;  // throws UsageError

  void validate() const;  // invariant checks; throws UsageError
};

// Arc weight matrix: entry (a,b) = total weight of voters preferring a to b.
class WeightedMajorityGraph {
 public:
  WeightedMajorityGraph() : m_(0) {}
  explicit WeightedMajorityGraph(int m) : m_(m), w_(static_cast<size_t>(m) * m, 0) {}

  int num_alternatives() const { return m_; }
  Weight weight(int a, int b) const { return w_[static_cast<size_t>(a) * m_ + b]; }
  Weight& weight(int a, int b) { return w_[static_cast<size_t>(a) * m_ + b]; }

  // Total voter weight (only meaningful for complete profiles, where
  // weight(a,b) + weight(b,a) is the same for every pair).
  Weight total_weight() const { return m_ < 2 ? 0 : weight(0, 1) + weight(1, 0); }

  // Strict majority arc a -> b.
  bool majority_arc(int a, int b, Weight total) const { return 2 * weight(a, b) > total; }

 private:
  int m_;
  std::vector<Weight> w_;
};

enum class Procedure { Successive, Amendment };

// RejectEvenTotal: operations throw EvenTotalWeightError when the total voter
// weight is even. BreakTies: successive accepts an alternative supported by
// exactly half the weight; amendment keeps the current survivor on a tie.
enum class TiePolicy { RejectEvenTotal, BreakTies };

struct RoundRecord {
  int round = 0;        // 1-based
  int alternative = 0;  // the alternative considered this round
  bool kept = false;    // successive: accepted; amendment: challenger survived
  int survivor = 0;     // amendment: round winner; successive: accepted alternative or -1
};

struct RoundTrace {
  Procedure procedure = Procedure::Successive;
  std::vector<RoundRecord> rounds;
  int winner = -1;
};

struct ControlWitness {
  Agenda agenda;
  int target = -1;
};

struct ManipulationWitness {
  long long k = 0;
  PreferenceOrder ballot;            // linear; cast by all manipulators
  std::vector<int> round_winners;    // amendment: realized chain x_1..x_s (x_s = p)
};

std::string procedure_name(Procedure p);
Procedure procedure_from_name(const std::string& name);  // throws UsageError

}  // namespace seqvote
