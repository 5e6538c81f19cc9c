#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seqvote/agenda_control.hpp"
#include "seqvote/core.hpp"
#include "seqvote/experiments.hpp"
#include "seqvote/manipulation.hpp"
#include "seqvote/preflib.hpp"
#include "seqvote/uncertainty.hpp"

#include <algorithm>
#include <numeric>

namespace py = pybind11;
using namespace seqvote;

namespace {

// Agenda text mirrors the CLI: chains of labels joined by '>', with ';'
// separating multiple chains.
PartialAgenda agenda_from_text(const Profile& profile, const std::string& text) {
  std::string t = text;
  std::replace(t.begin(), t.end(), ';', '\n');
  return parse_agenda(t, profile);
}

Agenda full_agenda_from_text(const Profile& profile, const std::string& text) {
  auto order = agenda_from_text(profile, text);
  if (!order.is_linear()) throw UsageError("a full agenda covering every alternative is required");
  return order.as_ranking();
}

std::vector<std::string> labels_of(const Profile& profile, const std::vector<int>& ids) {
  std::vector<std::string> out;
  for (int a : ids) out.push_back(profile.labels[a]);
  return out;
}

TiePolicy tie_policy(const std::string& name) {
  if (name == "reject") return TiePolicy::RejectEvenTotal;
  if (name == "break") return TiePolicy::BreakTies;
  throw UsageError("unknown tie policy '" + name + "' (use reject|break)");
}

py::dict trace_dict(const Profile& profile, const WinnerResult& result) {
  py::list rounds;
  for (const auto& r : result.trace.rounds) {
    py::dict d;
    d["round"] = r.round;
    d["alternative"] = profile.labels[r.alternative];
    d["kept"] = r.kept;
    d["survivor"] = r.survivor >= 0 ? py::object(py::str(profile.labels[r.survivor]))
                                    : py::object(py::none());
    rounds.append(d);
  }
  py::dict out;
  out["winner"] = profile.labels[result.winner];
  out["procedure"] = procedure_name(result.trace.procedure);
  out["rounds"] = rounds;
  return out;
}

py::list completion_list(const Profile& completion) {
  py::list voters;
  for (const auto& v : completion.voters) {
    py::dict d;
    d["ranking"] = labels_of(completion, v.order.as_ranking());
    d["weight"] = v.weight;
    d["multiplicity"] = v.multiplicity;
    voters.append(d);
  }
  return voters;
}

}  // namespace

PYBIND11_MODULE(_seqvote, m) {
  m.doc() = "Successive and amendment parliamentary voting procedures";

  auto usage = py::register_exception<UsageError>(m, "UsageError");
  py::register_exception<EvenTotalWeightError>(m, "EvenTotalWeightError", usage.ptr());
  py::register_exception<ParseError>(m, "ParseError", usage.ptr());
  py::register_exception<CapacityError>(m, "CapacityError");

  py::class_<Profile>(m, "Profile")
      .def_property_readonly("labels", [](const Profile& p) { return p.labels; })
      .def_property_readonly("num_alternatives", &Profile::num_alternatives)
      .def_property_readonly("num_voters", &Profile::num_voters)
      .def_property_readonly("total_weight", &Profile::total_weight)
      .def_property_readonly("is_complete", &Profile::is_complete)
      .def("__repr__", [](const Profile& p) {
        return "<Profile m=" + std::to_string(p.num_alternatives()) +
               " n=" + std::to_string(p.num_voters()) + ">";
      });

  m.def("profile_from_rankings",
        [](const std::vector<std::string>& labels,
           const std::vector<std::vector<std::string>>& rankings,
           const std::vector<Weight>& weights) {
          Profile p;
          p.labels = labels;
          for (size_t i = 0; i < rankings.size(); ++i) {
            std::vector<int> ranking;
            for (const auto& label : rankings[i]) ranking.push_back(p.alternative_id(label));
            Weight w = i < weights.size() ? weights[i] : 1;
            p.voters.push_back({StrictOrder::from_ranking(ranking), w, 1});
          }
          p.validate();
          return p;
        },
        py::arg("labels"), py::arg("rankings"), py::arg("weights") = std::vector<Weight>{});

  m.def("parse_preflib", &parse_preflib, py::arg("text"));
  m.def("write_preflib", &write_preflib, py::arg("profile"));

  m.def("winner",
        [](const Profile& profile, const std::string& agenda, const std::string& procedure,
           const std::string& ties) {
          auto result = evaluate(profile, full_agenda_from_text(profile, agenda),
                                 procedure_from_name(procedure), tie_policy(ties));
          return trace_dict(profile, result);
        },
        py::arg("profile"), py::arg("agenda"), py::arg("procedure") = "successive",
        py::arg("ties") = "reject");

  m.def("control",
        [](const Profile& profile, const std::string& target,
           const std::string& procedure) -> py::object {
          int p = profile.alternative_id(target);
          auto witness = procedure_from_name(procedure) == Procedure::Successive
                             ? control_successive(profile, p)
                             : control_amendment(profile, p);
          if (!witness) return py::none();
          return py::cast(labels_of(profile, witness->agenda));
        },
        py::arg("profile"), py::arg("target"), py::arg("procedure") = "successive");

  m.def("controllable_set",
        [](const Profile& profile, const std::string& procedure) {
          std::vector<std::string> out;
          for (int a : controllable_set(profile, procedure_from_name(procedure)))
            out.push_back(profile.labels[a]);
          return out;
        },
        py::arg("profile"), py::arg("procedure") = "successive");

  m.def("manipulate",
        [](const Profile& profile, long long k, const std::string& target,
           const std::string& agenda, const std::string& procedure) -> py::object {
          int p = profile.alternative_id(target);
          auto full = full_agenda_from_text(profile, agenda);
          auto witness = procedure_from_name(procedure) == Procedure::Successive
                             ? manipulate_successive(profile, k, p, full)
                             : manipulate_amendment(profile, k, p, full);
          if (!witness) return py::none();
          py::dict out;
          out["k"] = witness->k;
          out["ballot"] = labels_of(profile, witness->ballot.as_ranking());
          out["round_winners"] = labels_of(profile, witness->round_winners);
          return out;
        },
        py::arg("profile"), py::arg("k"), py::arg("target"), py::arg("agenda"),
        py::arg("procedure") = "successive");

  m.def("min_coalition_size",
        [](const Profile& profile, const std::string& target, const std::string& agenda,
           const std::string& procedure) {
          return min_coalition_size(profile, profile.alternative_id(target),
                                    full_agenda_from_text(profile, agenda),
                                    procedure_from_name(procedure));
        },
        py::arg("profile"), py::arg("target"), py::arg("agenda"),
        py::arg("procedure") = "successive");

  m.def("possible_winner",
        [](const Profile& profile, const std::string& target, const std::string& agenda,
           const std::string& procedure, int max_alternatives,
           long long max_variables) -> py::object {
          Budget budget{max_alternatives, static_cast<size_t>(max_variables)};
          auto witness =
              weighted_possible_winner(profile, profile.alternative_id(target),
                                       agenda_from_text(profile, agenda),
                                       procedure_from_name(procedure), budget);
          if (!witness) return py::none();
          py::dict out;
          out["agenda"] = labels_of(profile, witness->agenda);
          out["completion"] = completion_list(witness->completion);
          return out;
        },
        py::arg("profile"), py::arg("target"), py::arg("agenda"),
        py::arg("procedure") = "successive",
        py::arg("max_alternatives") = Budget{}.max_alternatives,
        py::arg("max_variables") = static_cast<long long>(Budget{}.max_variables));

  m.def("necessary_winner",
        [](const Profile& profile, const std::string& target, const std::string& agenda,
           const std::string& procedure, int max_alternatives, long long max_variables) {
          int p = profile.alternative_id(target);
          auto partial = agenda_from_text(profile, agenda);
          if (procedure_from_name(procedure) == Procedure::Successive)
            return necessary_winner_successive(profile, p, partial);
          bool weighted = false;
          for (const auto& v : profile.voters) weighted = weighted || v.weight != 1;
          if (weighted)
            return weighted_necessary_winner(profile, p, partial, Procedure::Amendment);
          return necessary_winner_amendment(
              profile, p, partial, Budget{max_alternatives, static_cast<size_t>(max_variables)});
        },
        py::arg("profile"), py::arg("target"), py::arg("agenda"),
        py::arg("procedure") = "successive",
        py::arg("max_alternatives") = Budget{}.max_alternatives,
        py::arg("max_variables") = static_cast<long long>(Budget{}.max_variables));

  m.def("discriminating_completion",
        [](const Profile& profile, const std::string& target) {
          Agenda fixed(profile.num_alternatives());
          std::iota(fixed.begin(), fixed.end(), 0);
          return discriminating_completion(profile, profile.alternative_id(target), fixed);
        },
        py::arg("profile"), py::arg("target"));

  m.def("privileging_completion",
        [](const Profile& profile, const std::string& target) {
          Agenda fixed(profile.num_alternatives());
          std::iota(fixed.begin(), fixed.end(), 0);
          return privileging_completion(profile, profile.alternative_id(target), fixed);
        },
        py::arg("profile"), py::arg("target"));

  m.def("run_experiment",
        [](const std::string& corpus, std::uint64_t seed) {
          ExperimentConfig config;
          config.corpus = corpus;
          config.seed = seed;
          auto report = run_experiment(config);
          return py::make_tuple(report_csv(report), report_json(report));
        },
        py::arg("corpus"), py::arg("seed") = 1);
}
