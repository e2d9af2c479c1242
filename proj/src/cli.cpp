#include "bellbound/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "bellbound/serialize.hpp"

namespace bellbound {

namespace {

Expression load_expression(const std::string& spec) {
  if (spec == "lg") return lg_three_station();
  if (spec == "lg-two-station") return lg_two_station();
  if (spec == "singlet-pairs") return singlet_pair_expression();
  std::ifstream in(spec);
  if (!in) {
    throw std::invalid_argument("cannot open expression file '" + spec + "'");
  }
  const Json j = Json::parse(in);
  if (j.contains("expression")) {
    return expression_from_json(j.at("expression"));
  }
  return expression_from_json(j);
}

std::vector<double> parse_targets(const std::string& csv) {
  std::vector<double> targets;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double value = std::stod(item, &used);
    if (used != item.size()) {
      throw std::invalid_argument("bad target value '" + item + "'");
    }
    targets.push_back(value);
  }
  if (targets.empty()) {
    throw std::invalid_argument("no targets given");
  }
  return targets;
}

std::string format_signed(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

void print_bounds_text(const Expression& expr, LabelingScheme scheme,
                       const BoundResult& bound, const CyclicityReport& cycle,
                       std::ostream& out) {
  out << "labeling:       " << to_string(scheme) << "\n"
      << "terms:          " << expr.terms.size() << "\n"
      << "variables:      " << bound.variable_count << "\n"
      << "min:            " << bound.min << "\n"
      << "max:            " << bound.max << "\n"
      << "trivial range:  [" << bound.trivial_min << ", " << bound.trivial_max
      << "]\n"
      << "nontrivial:     " << (bound.nontrivial ? "yes" : "no") << "\n"
      << "has_cycle:      " << (cycle.has_cycle ? "yes" : "no") << "\n";
  out << "witness_min:   ";
  for (const auto& [key, value] : bound.witness_min) {
    out << ' ' << key << '=' << (value > 0 ? "+1" : "-1");
  }
  out << "\n";
}

void print_report_text(const ScenarioReport& report, std::ostream& out) {
  out << "scenario:   " << report.scenario << "\n"
      << "trials:     " << report.config.trials << "\n"
      << "seed:       " << report.config.seed << "\n"
      << "gamma_mean: " << format_signed(report.stats.gamma_mean) << "\n";
  out << "per-term:\n";
  for (std::size_t i = 0; i < report.stats.per_term.size(); ++i) {
    const auto& stats = report.stats.per_term[i];
    out << "  term " << i << ": estimate " << format_signed(stats.estimate)
        << "  count " << stats.count << "  std_error "
        << format_signed(stats.std_error) << "\n";
  }
  out << "singles:\n";
  for (const auto& [key, mean] : report.stats.singles) {
    out << "  " << key << ": " << format_signed(mean) << "\n";
  }
  out << "verdicts:\n";
  for (const auto& assessment : report.schemes) {
    out << "  " << to_string(assessment.scheme) << ": bound ["
        << assessment.bound.min << ", " << assessment.bound.max << "] "
        << (assessment.verdict.verdict == Verdict::Violated ? "VIOLATED"
                                                            : "respected")
        << " (margin " << format_signed(assessment.verdict.margin) << ")\n";
  }
}

void write_report_csv(const ScenarioReport& report, std::ostream& out) {
  out << "term,estimate,count,std_error\n";
  for (std::size_t i = 0; i < report.stats.per_term.size(); ++i) {
    const auto& stats = report.stats.per_term[i];
    out << i << ',' << stats.estimate << ',' << stats.count << ','
        << stats.std_error << '\n';
  }
}

void emit_run_outputs(const ScenarioReport& report, const std::string& out_dir,
                      const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << scenario_report_to_json(report, false).dump(2) << "\n";
  } else if (format == "csv") {
    write_report_csv(report, out);
  } else {
    print_report_text(report, out);
  }
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  {
    std::ofstream f(dir / "report.json");
    f << scenario_report_to_json(report, false).dump(2) << "\n";
  }
  {
    std::ofstream f(dir / "log.json");
    f << log_to_json(report.log).dump() << "\n";
  }
  {
    std::ofstream f(dir / "log.csv");
    write_csv(report.log, f);
  }
  {
    std::ofstream f(dir / "log.jsonl");
    write_jsonl(report.log, f);
  }
  {
    std::ofstream f(dir / "summary.txt");
    print_report_text(report, f);
  }
  {
    std::ofstream f(dir / "summary.csv");
    write_report_csv(report, f);
  }
}

int assert_respected_exit(const ScenarioReport& report, LabelingScheme scheme) {
  for (const auto& assessment : report.schemes) {
    if (assessment.scheme == scheme &&
        assessment.verdict.verdict == Verdict::Violated) {
      return kExitViolated;
    }
  }
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Boole/Bell inequality bounds, labeling schemes, and "
               "outcome-model simulation"};
  app.name("bellbound");
  app.require_subcommand(0, 1);

  // ---- run ----------------------------------------------------------------
  auto* run_cmd = app.add_subcommand(
      "run", "Run a named scenario (or an experiment file) and report "
             "correlations, bounds, and verdicts");
  std::string scenario_name;
  std::string experiment_file;
  std::string out_dir = []() {
    const char* env = std::getenv("BELLBOUND_OUT_DIR");
    return env ? std::string(env) : std::string();
  }();
  std::string run_format = "json";
  std::string run_labeling = "setting-only";
  std::uint64_t n_override = 0;
  std::uint64_t seed_override = 0;
  std::string rotation_override;
  unsigned threads = 1;
  bool list_only = false;
  bool assert_respected = false;
  run_cmd->add_option("scenario", scenario_name, "Scenario name");
  run_cmd->add_option("--experiment", experiment_file,
                      "Experiment definition JSON file (instead of a named "
                      "scenario)");
  run_cmd->add_option("--n", n_override, "Trial count override")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", seed_override, "Seed override");
  run_cmd->add_option("--rotation", rotation_override,
                      "Term rotation: round-robin | uniform-random")
      ->check(CLI::IsMember({"round-robin", "uniform-random"}));
  run_cmd->add_option("--threads", threads, "Worker threads")
      ->check(CLI::Range(1u, 64u));
  run_cmd->add_option("--labeling", run_labeling,
                      "Scheme checked by --assert-respected");
  run_cmd->add_option("--out", out_dir,
                      "Output directory for report.json, log.csv, log.jsonl, "
                      "summary.txt (default: $BELLBOUND_OUT_DIR)");
  run_cmd->add_option("--format", run_format, "Stdout format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  run_cmd->add_flag("--list", list_only, "List registered scenarios and exit");
  run_cmd->add_flag("--assert-respected", assert_respected,
                    "Exit 3 when the selected labeling's verdict is violated");

  // ---- bounds -------------------------------------------------------------
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "Tight algebraic bounds of an expression under a labeling "
                "scheme");
  std::string bounds_expr = "lg";
  std::string bounds_labeling = "setting-only";
  std::string bounds_format = "json";
  std::size_t bounds_cap = 24;
  bounds_cmd->add_option("--expr", bounds_expr,
                         "lg | lg-two-station | singlet-pairs | JSON file");
  bounds_cmd->add_option("--labeling", bounds_labeling, "Labeling scheme");
  bounds_cmd->add_option("--cap", bounds_cap, "Variable-count cap");
  bounds_cmd->add_option("--format", bounds_format, "Stdout format")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  // ---- feasible -----------------------------------------------------------
  auto* feasible_cmd = app.add_subcommand(
      "feasible", "Decide whether target correlations admit one joint "
                  "distribution");
  std::string feasible_expr = "lg";
  std::string feasible_labeling = "setting-only";
  std::string feasible_format = "json";
  std::string targets_csv;
  feasible_cmd->add_option("--expr", feasible_expr,
                           "lg | lg-two-station | singlet-pairs | JSON file");
  feasible_cmd->add_option("--labeling", feasible_labeling, "Labeling scheme");
  feasible_cmd
      ->add_option("--targets", targets_csv,
                   "Comma-separated per-term expectations, e.g. -1,-1,-1")
      ->required();
  feasible_cmd->add_option("--format", feasible_format, "Stdout format")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  // ---- label --------------------------------------------------------------
  auto* label_cmd = app.add_subcommand(
      "label", "Show the logical variable key of every expression slot");
  std::string label_expr = "lg";
  std::string label_labeling = "setting-only";
  std::string label_format = "json";
  label_cmd->add_option("--expr", label_expr,
                        "lg | lg-two-station | singlet-pairs | JSON file");
  label_cmd->add_option("--labeling", label_labeling, "Labeling scheme");
  label_cmd->add_option("--format", label_format, "Stdout format")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  // ---- report -------------------------------------------------------------
  auto* report_cmd = app.add_subcommand(
      "report", "Recompute correlations and verdicts from a stored trial "
                "log");
  std::string report_log;
  std::string report_expr;
  std::string report_format = "json";
  report_cmd->add_option("--log", report_log, "Trial log JSON file")
      ->required();
  report_cmd->add_option("--expr", report_expr,
                         "lg | lg-two-station | singlet-pairs | JSON file "
                         "(default: recovered from the log's schedule)");
  report_cmd->add_option("--format", report_format, "Stdout format")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      out << app.help("", e.get_name() == "CallForAllHelp"
                              ? CLI::AppFormatMode::All
                              : CLI::AppFormatMode::Normal);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed()) {
      if (list_only) {
        for (const auto& info : list_scenarios()) {
          out << info.name << "\t" << info.description << "\n";
        }
        return kExitOk;
      }
      const LabelingScheme selected = scheme_from_string(run_labeling);
      ScenarioReport report;
      if (!experiment_file.empty()) {
        std::ifstream in(experiment_file);
        if (!in) {
          throw std::invalid_argument("cannot open experiment file '" +
                                      experiment_file + "'");
        }
        ExperimentDef def = experiment_from_json(Json::parse(in));
        if (run_cmd->count("--n")) def.config.trials = n_override;
        if (run_cmd->count("--seed")) def.config.seed = seed_override;
        def.config.threads = threads;
        // Overrides require rebuilding the schedule.
        def.schedule =
            def.schedule.kind == GroupingKind::AllTermsEachTrial
                ? build_codated_schedule(def.expr, def.config.trials)
                : build_rotated_schedule(def.expr, def.config.trials,
                                         def.config.rotation, def.config.seed);
        report = run_experiment(def.name, def.settings, def.expr, def.schedule,
                                *def.model, def.config);
      } else {
        if (scenario_name.empty()) {
          err << "error: give a scenario name, --experiment, or --list\n";
          return kExitUsage;
        }
        ScenarioOverrides overrides;
        if (run_cmd->count("--n")) overrides.trials = n_override;
        if (run_cmd->count("--seed")) overrides.seed = seed_override;
        if (!rotation_override.empty()) {
          overrides.rotation = rotation_override == "round-robin"
                                   ? TermRotation::RoundRobin
                                   : TermRotation::UniformRandom;
        }
        overrides.threads = threads;
        report = run_scenario(scenario_name, overrides);
      }
      emit_run_outputs(report, out_dir, run_format, out);
      return assert_respected ? assert_respected_exit(report, selected)
                              : kExitOk;
    }

    if (bounds_cmd->parsed()) {
      const Expression expr = load_expression(bounds_expr);
      const LabelingScheme scheme = scheme_from_string(bounds_labeling);
      const BoundResult bound = enumerate_bounds(expr, scheme, bounds_cap);
      const CyclicityReport cycle = detect_cyclicity(expr, scheme);
      if (bounds_format == "json") {
        Json j = bound_to_json(bound);
        j["labeling"] = to_string(scheme);
        j["cyclicity"] = cyclicity_to_json(cycle);
        out << j.dump(2) << "\n";
      } else if (bounds_format == "csv") {
        out << "labeling,min,max,trivial_min,trivial_max,nontrivial,"
               "variable_count,has_cycle\n"
            << to_string(scheme) << ',' << bound.min << ',' << bound.max << ','
            << bound.trivial_min << ',' << bound.trivial_max << ','
            << (bound.nontrivial ? 1 : 0) << ',' << bound.variable_count << ','
            << (cycle.has_cycle ? 1 : 0) << "\n";
      } else {
        print_bounds_text(expr, scheme, bound, cycle, out);
      }
      return kExitOk;
    }

    if (feasible_cmd->parsed()) {
      FeasibilityProblem problem;
      problem.expr = load_expression(feasible_expr);
      problem.scheme = scheme_from_string(feasible_labeling);
      problem.targets = parse_targets(targets_csv);
      const FeasibilityVerdict verdict = check_feasibility(problem);
      if (feasible_format == "json") {
        out << feasibility_to_json(verdict).dump(2) << "\n";
      } else if (feasible_format == "csv") {
        out << "feasible,witness_atoms,has_certificate\n"
            << (verdict.feasible ? 1 : 0) << ',' << verdict.witness.size()
            << ',' << (verdict.certificate ? 1 : 0) << "\n";
      } else {
        out << "feasible: " << (verdict.feasible ? "yes" : "no") << "\n";
        for (const auto& atom : verdict.witness) {
          out << "  p=" << format_signed(atom.probability) << " ";
          for (const auto& [key, value] : atom.assignment) {
            out << ' ' << key << '=' << (value > 0 ? "+1" : "-1");
          }
          out << "\n";
        }
        if (verdict.certificate) {
          out << "certificate: bound [" << verdict.certificate->min << ", "
              << verdict.certificate->max << "] excludes the target sum\n";
        }
      }
      return kExitOk;
    }

    if (label_cmd->parsed()) {
      const Expression expr = load_expression(label_expr);
      const LabelingScheme scheme = scheme_from_string(label_labeling);
      const auto labels = slot_labels(expr, scheme);
      const std::size_t distinct = distinct_variable_count(expr, scheme);
      if (label_format == "json") {
        Json slots = Json::array();
        for (std::size_t t = 0; t < labels.size(); ++t) {
          for (std::size_t s = 0; s < labels[t].size(); ++s) {
            slots.push_back({{"term", t},
                             {"slot", s},
                             {"setting", expr.terms[t].slots[s].setting},
                             {"station", expr.terms[t].slots[s].station},
                             {"key", labels[t][s]}});
          }
        }
        out << Json{{"labeling", to_string(scheme)},
                    {"distinct_variables", distinct},
                    {"slots", std::move(slots)}}
                   .dump(2)
            << "\n";
      } else if (label_format == "csv") {
        out << "term,slot,setting,station,key\n";
        for (std::size_t t = 0; t < labels.size(); ++t) {
          for (std::size_t s = 0; s < labels[t].size(); ++s) {
            out << t << ',' << s << ',' << expr.terms[t].slots[s].setting
                << ',' << expr.terms[t].slots[s].station << ','
                << labels[t][s] << "\n";
          }
        }
      } else {
        out << "labeling: " << to_string(scheme) << "\n";
        for (std::size_t t = 0; t < labels.size(); ++t) {
          for (std::size_t s = 0; s < labels[t].size(); ++s) {
            out << "  term " << t << " slot " << s << ": " << labels[t][s]
                << "\n";
          }
        }
        out << "distinct variables: " << distinct << "\n";
      }
      return kExitOk;
    }

    if (report_cmd->parsed()) {
      std::ifstream in(report_log);
      if (!in) {
        throw std::invalid_argument("cannot open log file '" + report_log +
                                    "'");
      }
      const TrialLog log = log_from_json(Json::parse(in));
      const Expression expr = report_expr.empty()
                                  ? expression_of_schedule(log.schedule)
                                  : load_expression(report_expr);
      const ValidationResult validation = validate_log(log);
      if (!validation.ok()) {
        throw std::invalid_argument("log inconsistent with schedule: " +
                                    validation.violations.front());
      }
      ScenarioReport report;
      report.scenario = "report:" + report_log;
      report.config.trials = log.schedule.trials;
      report.config.seed = log.seed;
      report.stats = mean_correlations(log, expr);
      for (LabelingScheme scheme : kAllSchemes) {
        SchemeAssessment assessment;
        assessment.scheme = scheme;
        assessment.bound = enumerate_bounds(expr, scheme);
        assessment.cyclicity = detect_cyclicity(expr, scheme);
        assessment.verdict = verdict(report.stats, assessment.bound);
        report.schemes.push_back(std::move(assessment));
      }
      if (report_format == "json") {
        out << scenario_report_to_json(report, false).dump(2) << "\n";
      } else if (report_format == "csv") {
        write_report_csv(report, out);
      } else {
        print_report_text(report, out);
      }
      return kExitOk;
    }

    out << app.help();
    return kExitOk;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace bellbound
