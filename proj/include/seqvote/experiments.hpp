#pragma once

#include "seqvote/types.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace seqvote {

using Rational = boost::multiprecision::cpp_rational;

// Agendas evaluated for one profile: all m! permutations when m <= 8,
// otherwise min(n^2, 8!) distinct uniform draws. Deterministic in the seed.
struct AgendaSample {
  std::uint64_t seed = 0;
  std::vector<Agenda> agendas;
};

AgendaSample sample_agendas(int m, long long n, std::uint64_t seed);

// (number of controllable alternatives - 1) / (m - 1). Requires a complete
// profile with odd total weight and m >= 2.
Rational control_vulnerability_ratio(const Profile& profile, Procedure procedure);

// Average over agendas and non-winning alternatives of the minimum coalition
// size (capped at n+1), normalized by n+1. 1 = fully resistant.
Rational manipulation_resistance_ratio(const Profile& profile, const AgendaSample& sample,
                                       Procedure procedure);

// Average coalition size needed for the "second winner": the alternative that
// wins once the sincere winner is removed from profile and agenda.
Rational second_winner_coalition_ratio(const Profile& profile, const AgendaSample& sample,
                                       Procedure procedure);

// Average over agendas of the smallest coalition making any non-winner win.
Rational smallest_coalition_ratio(const Profile& profile, const AgendaSample& sample,
                                  Procedure procedure);

struct RatioReport {
  struct Row {
    std::string profile;  // file name
    int m = 0;
    long long n = 0;
    Procedure procedure = Procedure::Successive;
    bool control_defined = false;  // control metrics need an odd voter count
    Rational control_vulnerability;
    Rational manipulation_resistance;
    Rational second_winner;
    Rational smallest_coalition;
  };
  struct Aggregate {
    Procedure procedure = Procedure::Successive;
    std::string metric;
    std::string bucket;
    std::string mean;  // "arithmetic" | "geometric"
    long long count = 0;
    Rational exact;    // arithmetic mean only
    double value = 0;  // both means
  };
  std::vector<Row> rows;
  std::vector<Aggregate> aggregates;
  std::vector<std::string> warnings;  // per-file problems; the run continues
};

struct ExperimentConfig {
  std::string corpus;  // directory of Preflib files
  std::vector<Procedure> procedures{Procedure::Successive, Procedure::Amendment};
  std::uint64_t seed = 1;
  int control_bucket = 5;        // control metric buckets: m < bound vs m >= bound
  int manipulation_bucket = 9;   // manipulation metric buckets likewise
};

// Plain key=value text (keys: corpus, procedures, seed, control_bucket,
// manipulation_bucket; '#' comments). Unknown keys raise UsageError.
ExperimentConfig parse_config(const std::string& text);

// Parses every file in the corpus directory (sorted by name), computes all
// ratios per profile and procedure, and aggregates arithmetic (exact) and
// geometric (0-annihilating) means per metric bucket.
RatioReport run_experiment(const ExperimentConfig& config);

// One header row; exact ratios rendered as "numerator/denominator".
std::string report_csv(const RatioReport& report);
std::string report_json(const RatioReport& report);

}  // namespace seqvote
