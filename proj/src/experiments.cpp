#include "seqvote/experiments.hpp"

#include "seqvote/agenda_control.hpp"
#include "seqvote/core.hpp"
#include "seqvote/manipulation.hpp"
#include "seqvote/preflib.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace seqvote {

namespace {

constexpr long long kMaxSample = 40320;  // 8!

void require_ratio_input(const Profile& profile) {
  profile.validate();
  if (!profile.is_complete()) throw UsageError("experiment ratios require complete profiles");
  if (profile.num_alternatives() < 2)
    throw UsageError("experiment ratios require at least 2 alternatives");
}

// Coalition size needed to make c win, capped at n+1.
long long kappa(const Profile& profile, int c, const Agenda& agenda, Procedure procedure) {
  long long cap = profile.num_voters() + 1;
  return std::min(min_coalition_size(profile, c, agenda, procedure), cap);
}

int sincere_winner(const Profile& profile, const Agenda& agenda, Procedure procedure) {
  return evaluate(profile, agenda, procedure, TiePolicy::BreakTies).winner;
}

Profile remove_alternative(const Profile& profile, int r) {
  Profile out;
  for (int a = 0; a < profile.num_alternatives(); ++a)
    if (a != r) out.labels.push_back(profile.labels[a]);
  auto reindex = [&](int a) { return a < r ? a : a - 1; };
  int m = profile.num_alternatives() - 1;
  for (const auto& v : profile.voters) {
    std::vector<std::pair<int, int>> pairs;
    for (auto [a, b] : v.order.pairs())
      if (a != r && b != r) pairs.emplace_back(reindex(a), reindex(b));
    out.voters.push_back({StrictOrder::from_pairs(m, pairs), v.weight, v.multiplicity});
  }
  return out;
}

std::string rational_str(const Rational& r) {
  std::ostringstream out;
  out << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
  return out.str();
}

struct MetricSpec {
  const char* name;
  Rational RatioReport::Row::* field;
  bool control;  // uses the control bucket boundary and odd-voter filter
};

constexpr MetricSpec kMetrics[] = {
    {"control_vulnerability", &RatioReport::Row::control_vulnerability, true},
    {"manipulation_resistance", &RatioReport::Row::manipulation_resistance, false},
    {"second_winner_coalition", &RatioReport::Row::second_winner, false},
    {"smallest_coalition", &RatioReport::Row::smallest_coalition, false},
};

}  // namespace

AgendaSample sample_agendas(int m, long long n, std::uint64_t seed) {
  if (m < 1) throw UsageError("agenda sampling requires at least one alternative");
  AgendaSample sample;
  sample.seed = seed;
  Agenda base(m);
  std::iota(base.begin(), base.end(), 0);
  if (m <= 8) {
    do {
      sample.agendas.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return sample;
  }
  long long want = std::max(1LL, std::min(n > 0 && n < 100000 ? n * n : kMaxSample, kMaxSample));
  std::mt19937_64 rng(seed);
  std::set<Agenda> seen;
  while (static_cast<long long>(seen.size()) < want) {
    std::shuffle(base.begin(), base.end(), rng);
    if (seen.insert(base).second) sample.agendas.push_back(base);
  }
  return sample;
}

Rational control_vulnerability_ratio(const Profile& profile, Procedure procedure) {
  require_ratio_input(profile);
  if (profile.total_weight() % 2 == 0)
    throw EvenTotalWeightError("control vulnerability requires odd total weight");
  auto set = controllable_set(profile, procedure);
  return Rational(static_cast<long long>(set.size()) - 1, profile.num_alternatives() - 1);
}

Rational manipulation_resistance_ratio(const Profile& profile, const AgendaSample& sample,
                                       Procedure procedure) {
  require_ratio_input(profile);
  int m = profile.num_alternatives();
  long long n = profile.num_voters();
  Rational sum = 0;
  for (const auto& agenda : sample.agendas) {
    int w = sincere_winner(profile, agenda, procedure);
    for (int c = 0; c < m; ++c)
      if (c != w) sum += kappa(profile, c, agenda, procedure);
  }
  return sum / (Rational(sample.agendas.size()) * (m - 1) * (n + 1));
}

Rational second_winner_coalition_ratio(const Profile& profile, const AgendaSample& sample,
                                       Procedure procedure) {
  require_ratio_input(profile);
  long long n = profile.num_voters();
  Rational sum = 0;
  for (const auto& agenda : sample.agendas) {
    int w = sincere_winner(profile, agenda, procedure);
    Profile rest = remove_alternative(profile, w);
    Agenda restricted;
    for (int a : agenda)
      if (a != w) restricted.push_back(a < w ? a : a - 1);
    int second = sincere_winner(rest, restricted, procedure);
    int original = second < w ? second : second + 1;
    sum += kappa(profile, original, agenda, procedure);
  }
  return sum / (Rational(sample.agendas.size()) * (n + 1));
}

Rational smallest_coalition_ratio(const Profile& profile, const AgendaSample& sample,
                                  Procedure procedure) {
  require_ratio_input(profile);
  int m = profile.num_alternatives();
  long long n = profile.num_voters();
  Rational sum = 0;
  for (const auto& agenda : sample.agendas) {
    int w = sincere_winner(profile, agenda, procedure);
    long long best = n + 1;
    for (int c = 0; c < m; ++c)
      if (c != w) best = std::min(best, kappa(profile, c, agenda, procedure));
    sum += best;
  }
  return sum / (Rational(sample.agendas.size()) * (n + 1));
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto strip = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      size_t e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    auto line = strip(raw);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(number) + ": expected key=value");
    auto key = strip(line.substr(0, eq));
    auto value = strip(line.substr(eq + 1));
    try {
      if (key == "corpus") {
        config.corpus = value;
      } else if (key == "seed") {
        config.seed = std::stoull(value);
      } else if (key == "control_bucket") {
        config.control_bucket = std::stoi(value);
      } else if (key == "manipulation_bucket") {
        config.manipulation_bucket = std::stoi(value);
      } else if (key == "procedures") {
        config.procedures.clear();
        std::istringstream list(value);
        std::string name;
        while (std::getline(list, name, ','))
          config.procedures.push_back(procedure_from_name(strip(name)));
      } else {
        throw UsageError("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw UsageError("config line " + std::to_string(number) + ": bad value for " + key);
    }
  }
  return config;
}

RatioReport run_experiment(const ExperimentConfig& config) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(config.corpus))
    throw UsageError("corpus directory not found: " + config.corpus);

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(config.corpus))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw UsageError("corpus directory is empty: " + config.corpus);

  RatioReport report;
  for (const auto& path : files) {
    std::string name = path.filename().string();
    Profile profile;
    try {
      std::ifstream in(path);
      std::ostringstream text;
      text << in.rdbuf();
      profile = parse_preflib(text.str());
      if (!profile.is_complete())
        throw UsageError("profile has partial orders; experiments use complete profiles");
      if (profile.num_alternatives() < 2) throw UsageError("fewer than 2 alternatives");
    } catch (const std::exception& e) {
      report.warnings.push_back(name + ": " + e.what());
      continue;
    }

    int m = profile.num_alternatives();
    long long n = profile.num_voters();
    auto sample = sample_agendas(m, n, config.seed);
    for (auto procedure : config.procedures) {
      RatioReport::Row row;
      row.profile = name;
      row.m = m;
      row.n = n;
      row.procedure = procedure;
      if (profile.total_weight() % 2 == 1) {
        row.control_defined = true;
        row.control_vulnerability = control_vulnerability_ratio(profile, procedure);
      }
      row.manipulation_resistance = manipulation_resistance_ratio(profile, sample, procedure);
      row.second_winner = second_winner_coalition_ratio(profile, sample, procedure);
      row.smallest_coalition = smallest_coalition_ratio(profile, sample, procedure);
      report.rows.push_back(std::move(row));
    }
  }
  if (report.rows.empty()) throw UsageError("no usable profiles in corpus: " + config.corpus);

  for (auto procedure : config.procedures) {
    for (const auto& metric : kMetrics) {
      int bound = metric.control ? config.control_bucket : config.manipulation_bucket;
      for (bool high : {false, true}) {
        std::vector<Rational> values;
        for (const auto& row : report.rows) {
          if (row.procedure != procedure) continue;
          if (metric.control && !row.control_defined) continue;
          if ((row.m >= bound) != high) continue;
          values.push_back(row.*metric.field);
        }
        if (values.empty()) continue;
        std::string bucket = high ? "m>=" + std::to_string(bound)
                                  : "m<=" + std::to_string(bound - 1);
        RatioReport::Aggregate arith{procedure, metric.name, bucket, "arithmetic",
                                     static_cast<long long>(values.size()), 0, 0};
        for (const auto& v : values) arith.exact += v;
        arith.exact /= static_cast<long long>(values.size());
        arith.value = arith.exact.convert_to<double>();
        report.aggregates.push_back(arith);

        RatioReport::Aggregate geo{procedure, metric.name, bucket, "geometric",
                                   static_cast<long long>(values.size()), 0, 0};
        bool any_zero = false;
        double log_sum = 0;
        for (const auto& v : values) {
          if (v == 0) {
            any_zero = true;
            break;
          }
          log_sum += std::log(v.convert_to<double>());
        }
        geo.value = any_zero ? 0.0 : std::exp(log_sum / static_cast<double>(values.size()));
        report.aggregates.push_back(geo);
      }
    }
  }
  return report;
}

std::string report_csv(const RatioReport& report) {
  std::ostringstream out;
  out << "profile,m,n,procedure,control_vulnerability,manipulation_resistance,"
         "second_winner_coalition,smallest_coalition\n";
  for (const auto& row : report.rows) {
    out << row.profile << "," << row.m << "," << row.n << "," << procedure_name(row.procedure)
        << "," << (row.control_defined ? rational_str(row.control_vulnerability) : "") << ","
        << rational_str(row.manipulation_resistance) << "," << rational_str(row.second_winner)
        << "," << rational_str(row.smallest_coalition) << "\n";
  }
  return out.str();
}

std::string report_json(const RatioReport& report) {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json r{{"profile", row.profile},
                     {"m", row.m},
                     {"n", row.n},
                     {"procedure", procedure_name(row.procedure)},
                     {"manipulation_resistance", rational_str(row.manipulation_resistance)},
                     {"second_winner_coalition", rational_str(row.second_winner)},
                     {"smallest_coalition", rational_str(row.smallest_coalition)}};
    if (row.control_defined)
      r["control_vulnerability"] = rational_str(row.control_vulnerability);
    j["rows"].push_back(std::move(r));
  }
  j["aggregates"] = nlohmann::json::array();
  for (const auto& agg : report.aggregates) {
    nlohmann::json a{{"procedure", procedure_name(agg.procedure)},
                     {"metric", agg.metric},
                     {"bucket", agg.bucket},
                     {"mean", agg.mean},
                     {"count", agg.count},
                     {"value", agg.value}};
    if (agg.mean == "arithmetic") a["exact"] = rational_str(agg.exact);
    j["aggregates"].push_back(std::move(a));
  }
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

}  // namespace seqvote
