// evim: analytical design evaluation, optimisation and trade studies for
// inverter-fed squirrel-cage induction traction motors.
//
// Subcommands
//   evaluate  score one design against one machine spec
//   optimize  maximise efficiency over the bounded design vector
//   study     optimise a (pole count x slot shape x rated speed) grid
//   table     re-render the comparison table from a saved study
//
// Exit codes: 0 success, 2 invalid input, 3 study finished with no feasible
// scenario.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "evim/json_io.hpp"
#include "evim/study.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNoFeasible = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw std::runtime_error("cannot read " + path);
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path);
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file(out_path, content);
  }
}

// Returns false (for exit 2) when the spec violates its own validity rules.
bool check_spec(const evim::MotorSpec& spec, const evim::MaterialCatalog& materials) {
  const auto violations = evim::validate_spec(spec, materials);
  for (const evim::Violation& v : violations) {
    std::cerr << "error: invalid spec (" << v.code << "): " << v.message << "\n";
  }
  return violations.empty();
}

std::string trace_csv(const evim::SearchResult& search) {
  std::ostringstream out;
  out << "iteration,kind,step_scale,value";
  for (int i = 0; i < evim::DesignVector::kCount; ++i) {
    out << ',' << evim::DesignVector::name(i);
  }
  out << '\n';
  char buf[64];
  const auto g17 = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const evim::TracePoint& t : search.trace) {
    out << t.iteration << ',' << evim::to_string(t.kind) << ',' << g17(t.step_scale)
        << ',' << g17(t.value);
    for (double x : t.x) out << ',' << g17(x);
    out << '\n';
  }
  return out.str();
}

int run_evaluate(const std::string& spec_path, const std::string& design_path,
                 const std::string& out_path) {
  const evim::MotorSpec spec = evim::motor_spec_from_json(read_file(spec_path));
  const evim::MaterialCatalog materials = evim::MaterialCatalog::defaults();
  if (!check_spec(spec, materials)) return kExitInvalidInput;
  const evim::DesignVector design = evim::design_from_json(read_file(design_path));

  const evim::EvalResult eval = evim::evaluate_design(spec, design, materials);
  evim::ConstraintReport constraints;
  bool have_constraints = false;
  if (eval.ok()) {
    constraints = evim::evaluate_constraints(*eval.report,
                                             evim::default_constraints(spec));
    have_constraints = true;
  } else {
    std::cerr << "note: design not evaluable (" << evim::to_string(*eval.failure)
              << "): " << eval.detail << "\n";
  }
  emit(evim::evaluation_to_json(spec, design, eval,
                                have_constraints ? &constraints : nullptr),
       out_path);
  return kExitOk;
}

int run_optimize(const std::string& spec_path, const std::string& out_path,
                 const std::string& trace_path, const evim::OptimizeOptions& options) {
  const evim::MotorSpec spec = evim::motor_spec_from_json(read_file(spec_path));
  const evim::MaterialCatalog materials = evim::MaterialCatalog::defaults();
  if (!check_spec(spec, materials)) return kExitInvalidInput;

  const evim::OptimizeResult result = evim::optimize_design(
      spec, evim::default_constraints(spec), materials, evim::ModelParams{}, options);

  if (!trace_path.empty()) {
    write_file(trace_path, trace_csv(result.start_results.at(
                               static_cast<std::size_t>(result.winning_start))));
  }
  if (!result.constraint_report.feasible) {
    std::cerr << "note: best design is infeasible; see constraints in the output\n";
  }
  emit(evim::optimization_to_json(spec, result), out_path);
  return kExitOk;
}

int run_study(const std::string& config_path, const std::string& out_dir,
              bool force_curves, bool quiet) {
  evim::StudyConfig config;
  if (!config_path.empty()) {
    config = evim::study_config_from_json(read_file(config_path));
  }
  if (force_curves) config.curves = true;

  const evim::StudyReport report = evim::run_study(config);

  std::filesystem::create_directories(out_dir);
  write_file((std::filesystem::path(out_dir) / "report.json").string(),
             evim::study_report_to_json(report));
  evim::write_study_outputs(report, out_dir);

  for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";
  if (!quiet) {
    std::cout << evim::emit_design_table(report, evim::TableFormat::Text);
    if (report.best.has_value()) {
      std::cout << '\n' << report.best->rationale;
    }
    std::cout << "\noutputs written to " << out_dir << "\n";
  }
  if (report.scenarios.empty()) return kExitOk;  // nothing requested, nothing failed
  return report.best.has_value() ? kExitOk : kExitNoFeasible;
}

int run_table(const std::string& study_dir, const std::string& format) {
  const std::string report_path =
      (std::filesystem::path(study_dir) / "report.json").string();
  const evim::StudyReport report = evim::study_report_from_json(read_file(report_path));
  const evim::TableFormat table_format =
      format == "csv" ? evim::TableFormat::Csv : evim::TableFormat::Text;
  std::cout << evim::emit_design_table(report, table_format);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Analytical evaluation and efficiency optimisation of inverter-fed "
      "squirrel-cage induction traction motors"};
  app.require_subcommand(1);

  // evaluate
  std::string eval_spec, eval_design, eval_out;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score one design against a spec");
  evaluate->add_option("--spec", eval_spec, "Machine spec JSON file")->required();
  evaluate->add_option("--design", eval_design, "Design vector JSON file")->required();
  evaluate->add_option("--out", eval_out, "Write the report here instead of stdout");

  // optimize
  std::string opt_spec, opt_out, opt_trace;
  evim::OptimizeOptions opt_options;
  CLI::App* optimize = app.add_subcommand("optimize", "Maximise efficiency for one spec");
  optimize->add_option("--spec", opt_spec, "Machine spec JSON file")->required();
  optimize->add_option("--out", opt_out, "Write the result here instead of stdout");
  optimize->add_option("--trace", opt_trace, "Write the winning start's move trace CSV");
  optimize->add_option("--starts", opt_options.multi_starts, "Number of starting points");
  optimize->add_option("--prescan", opt_options.prescan_per_axis,
                       "Coarse grid points per prescan axis (0 = off)");
  optimize->add_option("--restarts", opt_options.restarts, "Polish sweeps per start");
  optimize->add_option("--margin", opt_options.search_margin,
                       "Relative constraint margin used during the search");

  // study
  std::string study_config, study_out = "study_out";
  bool study_curves = false, study_quiet = false;
  CLI::App* study = app.add_subcommand("study", "Optimise a scenario grid and rank it");
  study->add_option("--config", study_config, "Study configuration JSON file");
  study->add_option("--out", study_out, "Output directory (default study_out)");
  study->add_flag("--curves", study_curves, "Also sweep rated speed for curve data");
  study->add_flag("--quiet", study_quiet, "Suppress the stdout table");

  // table
  std::string table_dir, table_format = "text";
  CLI::App* table = app.add_subcommand("table", "Re-render a saved study's table");
  table->add_option("--study", table_dir, "Directory written by the study subcommand")
      ->required();
  table->add_option("--format", table_format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (evaluate->parsed()) return run_evaluate(eval_spec, eval_design, eval_out);
    if (optimize->parsed()) return run_optimize(opt_spec, opt_out, opt_trace, opt_options);
    if (study->parsed())
      return run_study(study_config, study_out, study_curves, study_quiet);
    if (table->parsed()) return run_table(table_dir, table_format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}
