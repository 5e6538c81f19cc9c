#include <CLI11.hpp>
#include <json.hpp>

#include "seqvote/agenda_control.hpp"
#include "seqvote/core.hpp"
#include "seqvote/experiments.hpp"
#include "seqvote/manipulation.hpp"
#include "seqvote/preflib.hpp"
#include "seqvote/uncertainty.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace seqvote;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw UsageError("cannot read file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Profile load_profile(const std::string& path) { return parse_preflib(read_file(path)); }

// An agenda argument is either a file path or inline text; ';' separates
// chains inline.
PartialAgenda load_agenda(const std::string& value, const Profile& profile) {
  std::string text = std::filesystem::is_regular_file(value) ? read_file(value) : value;
  std::replace(text.begin(), text.end(), ';', '\n');
  return parse_agenda(text, profile);
}

Agenda full_agenda(const std::string& value, const Profile& profile) {
  auto order = load_agenda(value, profile);
  if (!order.is_linear())
    throw UsageError("this command needs a full agenda covering every alternative");
  return order.as_ranking();
}

std::string join_labels(const Profile& profile, const std::vector<int>& ids, const char* sep) {
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) out += sep;
    out += profile.labels[ids[i]];
  }
  return out;
}

json trace_json(const Profile& profile, const RoundTrace& trace) {
  json rounds = json::array();
  for (const auto& r : trace.rounds)
    rounds.push_back({{"round", r.round},
                      {"alternative", profile.labels[r.alternative]},
                      {"kept", r.kept},
                      {"survivor", r.survivor >= 0 ? profile.labels[r.survivor] : ""}});
  return {{"procedure", procedure_name(trace.procedure)},
          {"winner", trace.winner >= 0 ? profile.labels[trace.winner] : ""},
          {"rounds", rounds}};
}

json order_json(const Profile& profile, const StrictOrder& order) {
  if (order.is_linear()) return join_labels(profile, order.as_ranking(), ">");
  json pairs = json::array();
  for (auto [a, b] : order.pairs())
    pairs.push_back(profile.labels[a] + ">" + profile.labels[b]);
  return pairs;
}

UndirectedGraph load_graph(const std::string& path) {
  UndirectedGraph g;
  std::istringstream in(read_file(path));
  std::string raw;
  int line = 0;
  bool have_count = false;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream fields(raw);
    std::string first;
    if (!(fields >> first) || first[0] == '#') continue;
    if (!have_count) {
      g.num_vertices = std::stoi(first);
      have_count = true;
      continue;
    }
    int u = std::stoi(first), v = 0;
    if (!(fields >> v)) throw ParseError(line, "expected 'u v' edge line");
    g.edges.emplace_back(u - 1, v - 1);
  }
  if (!have_count) throw UsageError("graph file is empty: " + path);
  return g;
}

// A weighted instance (from the partition generator) that the Preflib format
// cannot carry; rendered as JSON.
json instance_json(const ReductionInstance& inst) {
  json voters = json::array();
  for (const auto& v : inst.profile.voters)
    voters.push_back({{"order", order_json(inst.profile, v.order)},
                      {"weight", v.weight},
                      {"multiplicity", v.multiplicity}});
  return {{"labels", inst.profile.labels},
          {"voters", voters},
          {"target", inst.profile.labels[inst.p]},
          {"agenda", order_json(inst.profile, inst.agenda)}};
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out.good()) throw UsageError("cannot write file: " + path);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Successive and amendment parliamentary voting procedures: winners, agenda "
               "control, manipulation, possible/necessary winners, experiments"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::string profile_path, agenda_arg, procedure_name_arg = "successive", target_label;
  std::string format = "text", ties = "reject";
  long long k = -1;
  std::string weights_arg;
  int max_alternatives = Budget{}.max_alternatives;
  long long max_variables = static_cast<long long>(Budget{}.max_variables);

  auto add_common = [&](CLI::App* cmd, bool need_agenda) {
    cmd->add_option("--profile", profile_path, "Preflib profile file")->required();
    cmd->add_option("--procedure", procedure_name_arg, "successive|amendment");
    cmd->add_option("--format", format, "text|json");
    if (need_agenda) cmd->add_option("--agenda", agenda_arg, "agenda text or file")->required();
    return cmd;
  };

  auto* winner = add_common(app.add_subcommand("winner", "Evaluate a full agenda"), true);
  winner->add_option("--ties", ties, "reject|break (even total weight)");
  winner->callback([&] {
    auto profile = load_profile(profile_path);
    auto agenda = full_agenda(agenda_arg, profile);
    auto policy = ties == "break" ? TiePolicy::BreakTies : TiePolicy::RejectEvenTotal;
    auto result = evaluate(profile, agenda, procedure_from_name(procedure_name_arg), policy);
    if (format == "json")
      std::cout << json{{"winner", profile.labels[result.winner]},
                        {"agenda", join_labels(profile, agenda, ">")},
                        {"trace", trace_json(profile, result.trace)}}
                       .dump(2)
                << "\n";
    else
      std::cout << profile.labels[result.winner] << "\n";
  });

  auto* control = add_common(app.add_subcommand("control", "Find an agenda making the target win"),
                             false);
  control->add_option("--target", target_label, "preferred alternative")->required();
  control->callback([&] {
    auto profile = load_profile(profile_path);
    int p = profile.alternative_id(target_label);
    auto procedure = procedure_from_name(procedure_name_arg);
    auto witness = procedure == Procedure::Successive ? control_successive(profile, p)
                                                      : control_amendment(profile, p);
    if (format == "json") {
      json out{{"target", target_label},
               {"procedure", procedure_name(procedure)},
               {"controllable", witness.has_value()}};
      if (witness) out["agenda"] = join_labels(profile, witness->agenda, ">");
      std::cout << out.dump(2) << "\n";
    } else if (witness) {
      std::cout << join_labels(profile, witness->agenda, ">") << "\n";
    } else {
      std::cout << target_label << " is not controllable\n";
    }
    if (!witness) exit_code = 1;
  });

  auto* manipulate =
      add_common(app.add_subcommand("manipulate", "Find a coalition making the target win"), true);
  manipulate->add_option("--target", target_label, "desired winner")->required();
  auto* k_opt = manipulate->add_option("--k", k, "number of unit-weight manipulators");
  auto* w_opt = manipulate->add_option("--weights", weights_arg,
                                       "comma-separated manipulator weights");
  k_opt->excludes(w_opt);
  manipulate->callback([&] {
    auto profile = load_profile(profile_path);
    auto agenda = full_agenda(agenda_arg, profile);
    int p = profile.alternative_id(target_label);
    auto procedure = procedure_from_name(procedure_name_arg);
    std::optional<ManipulationWitness> witness;
    if (!weights_arg.empty()) {
      std::vector<Weight> weights;
      std::istringstream list(weights_arg);
      std::string tok;
      while (std::getline(list, tok, ',')) weights.push_back(std::stoll(tok));
      witness = manipulate_weighted(profile, weights, p, agenda, procedure);
    } else {
      if (k < 0) throw UsageError("manipulate needs --k or --weights");
      witness = procedure == Procedure::Successive ? manipulate_successive(profile, k, p, agenda)
                                                   : manipulate_amendment(profile, k, p, agenda);
    }
    if (format == "json") {
      json out{{"target", target_label},
               {"procedure", procedure_name(procedure)},
               {"manipulable", witness.has_value()}};
      if (witness) {
        out["k"] = witness->k;
        out["ballot"] = join_labels(profile, witness->ballot.as_ranking(), ">");
        if (!witness->round_winners.empty())
          out["round_winners"] = join_labels(profile, witness->round_winners, ",");
      }
      std::cout << out.dump(2) << "\n";
    } else if (witness) {
      std::cout << witness->k << " x " << join_labels(profile, witness->ballot.as_ranking(), ">")
                << "\n";
    } else {
      std::cout << target_label << " cannot be made the winner\n";
    }
    if (!witness) exit_code = 1;
  });

  auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--max-alternatives", max_alternatives, "budget: alternative ceiling");
    cmd->add_option("--max-variables", max_variables, "budget: completion-variable ceiling");
  };

  auto* possible = add_common(
      app.add_subcommand("possible", "Can the target win some completion?"), true);
  possible->add_option("--target", target_label, "alternative")->required();
  add_budget(possible);
  possible->callback([&] {
    auto profile = load_profile(profile_path);
    auto partial = load_agenda(agenda_arg, profile);
    int p = profile.alternative_id(target_label);
    Budget budget{max_alternatives, static_cast<size_t>(max_variables)};
    auto witness = weighted_possible_winner(profile, p, partial,
                                            procedure_from_name(procedure_name_arg), budget);
    if (format == "json") {
      json out{{"target", target_label}, {"possible", witness.has_value()}};
      if (witness) {
        out["agenda"] = join_labels(profile, witness->agenda, ">");
        json completion = json::array();
        for (const auto& v : witness->completion.voters)
          completion.push_back({{"order", order_json(profile, v.order)},
                                {"weight", v.weight},
                                {"multiplicity", v.multiplicity}});
        out["completion"] = completion;
      }
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << (witness ? "possible winner" : "not a possible winner") << "\n";
    }
    if (!witness) exit_code = 1;
  });

  auto* necessary = add_common(
      app.add_subcommand("necessary", "Does the target win every completion?"), true);
  necessary->add_option("--target", target_label, "alternative")->required();
  add_budget(necessary);
  necessary->callback([&] {
    auto profile = load_profile(profile_path);
    auto partial = load_agenda(agenda_arg, profile);
    int p = profile.alternative_id(target_label);
    auto procedure = procedure_from_name(procedure_name_arg);
    bool yes;
    if (procedure == Procedure::Successive) {
      yes = necessary_winner_successive(profile, p, partial);
    } else {
      bool weighted = false;
      for (const auto& v : profile.voters) weighted = weighted || v.weight != 1;
      yes = weighted
                ? weighted_necessary_winner(profile, p, partial, procedure)
                : necessary_winner_amendment(profile, p, partial,
                                             Budget{max_alternatives,
                                                    static_cast<size_t>(max_variables)});
    }
    if (format == "json")
      std::cout << json{{"target", target_label}, {"necessary", yes}}.dump(2) << "\n";
    else
      std::cout << (yes ? "necessary winner" : "not a necessary winner") << "\n";
    if (!yes) exit_code = 1;
  });

  auto* experiment = app.add_subcommand("experiment", "Run the ratio pipeline over a corpus");
  std::string config_path, corpus_dir, csv_path, json_path, procedures_arg;
  std::uint64_t seed = 0;
  bool seed_set = false;
  experiment->add_option("--config", config_path, "key=value config file");
  experiment->add_option("--corpus", corpus_dir, "directory of Preflib files");
  experiment->add_option("--seed", seed, "agenda sampling seed")->each([&](const std::string&) {
    seed_set = true;
  });
  experiment->add_option("--procedures", procedures_arg, "comma list: successive,amendment");
  experiment->add_option("--csv", csv_path, "row-level CSV output path ('-' = stdout)");
  experiment->add_option("--json", json_path, "aggregate JSON output path ('-' = stdout)");
  experiment->callback([&] {
    ExperimentConfig config;
    if (!config_path.empty()) config = parse_config(read_file(config_path));
    if (!corpus_dir.empty()) config.corpus = corpus_dir;
    if (seed_set) config.seed = seed;
    if (!procedures_arg.empty()) config = [&] {
      auto c = config;
      c.procedures.clear();
      std::istringstream list(procedures_arg);
      std::string name;
      while (std::getline(list, name, ',')) c.procedures.push_back(procedure_from_name(name));
      return c;
    }();
    if (config.corpus.empty()) throw UsageError("experiment needs --corpus or a config file");
    auto report = run_experiment(config);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    if (csv_path.empty() && json_path.empty()) csv_path = "-";
    if (!csv_path.empty()) write_output(csv_path, report_csv(report));
    if (!json_path.empty()) write_output(json_path, report_json(report));
  });

  auto* generate = app.add_subcommand("generate", "Emit hardness-construction instances");
  generate->require_subcommand(1);
  std::string graph_path, out_path, numbers_arg;
  int h = 0;
  auto make_graph_cmd = [&](const char* name, const char* help) {
    auto* cmd = generate->add_subcommand(name, help);
    cmd->set_help_flag("--help", "print help");  // frees -h/--h for the size parameter
    cmd->add_option("--graph", graph_path, "graph file: vertex count, then 'u v' lines")
        ->required();
    cmd->add_option("--h", h, "solution size parameter")->required();
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--format", format, "text|json");
    return cmd;
  };
  auto emit_instance = [&](const ReductionInstance& inst) {
    // Preflib text when the orders are layer-representable, JSON otherwise
    // (the reduction voters may hold two parallel chains, which the Preflib
    // grammar cannot express).
    if (format != "json") {
      try {
        std::string text = "# agenda: " +
                           join_labels(inst.profile, inst.agenda.as_ranking(), ">") +
                           "\n# target: " + inst.profile.labels[inst.p] + "\n" +
                           write_preflib(inst.profile);
        write_output(out_path, text);
        return;
      } catch (const UsageError&) {
      }
    }
    write_output(out_path, instance_json(inst).dump(2) + "\n");
  };
  make_graph_cmd("is-reduction", "independent set -> successive possible winner")->callback([&] {
    emit_instance(generate_is_reduction(load_graph(graph_path), h));
  });
  make_graph_cmd("vc-reduction", "vertex cover -> amendment possible winner")->callback([&] {
    emit_instance(generate_vc_reduction(load_graph(graph_path), h));
  });
  auto* partition = generate->add_subcommand(
      "partition", "number partition -> weighted successive possible winner (JSON)");
  partition->add_option("--numbers", numbers_arg, "comma-separated positive integers")
      ->required();
  partition->add_option("--out", out_path, "output path (default stdout)");
  partition->callback([&] {
    std::vector<long long> numbers;
    std::istringstream list(numbers_arg);
    std::string tok;
    while (std::getline(list, tok, ',')) numbers.push_back(std::stoll(tok));
    write_output(out_path, instance_json(generate_partition_reduction(numbers)).dump(2) + "\n");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
