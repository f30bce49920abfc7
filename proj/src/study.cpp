#include "evim/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "evim/parallel.hpp"

namespace evim {

namespace {

std::string format_double(const char* fmt, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, value);
  return buf;
}

// Full-precision rendering: 17 significant digits round-trip a double
// bit-exactly through text.
std::string g17(double value) { return format_double("%.17g", value); }

std::string format_rpm(double rpm) { return format_double("%g", rpm); }

template <typename T>
std::vector<T> unique_in_order(const std::vector<T>& values) {
  std::vector<T> out;
  for (const T& v : values) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

using GroupKey = std::pair<int, int>;  // pole count, slot shape ordinal

GroupKey group_of(const Scenario& sc) {
  return {sc.pole_count, static_cast<int>(sc.rotor_slot_shape)};
}

// Optimises every scenario refine_waves times.  Wave 0 starts from scratch;
// later waves additionally seed each scenario with the incumbent best designs
// of its (pole count, slot shape) group, and an incumbent is only replaced by
// a strictly better result (feasible beats infeasible, then higher
// efficiency), so extra waves can never make a scenario worse.
std::vector<ScenarioResult> optimize_scenarios(
    const std::vector<Scenario>& grid, const StudyConfig& config,
    const std::map<GroupKey, std::vector<DesignVector>>& base_seeds) {
  std::vector<ScenarioResult> results(grid.size());
  const int waves = std::max(1, config.refine_waves);
  for (int wave = 0; wave < waves; ++wave) {
    std::map<GroupKey, std::vector<DesignVector>> seeds = base_seeds;
    if (wave > 0) {
      for (const ScenarioResult& r : results) {
        if (r.optimized) seeds[group_of(r.scenario)].push_back(r.result.best_design);
      }
    }
    parallel_for(
        grid.size(),
        [&](std::size_t i) {
          if (wave > 0 && !results[i].optimized) return;  // config-level failure
          const Scenario& sc = grid[i];
          ScenarioResult candidate;
          candidate.scenario = sc;
          try {
            const MotorSpec spec = make_motor_spec(sc.pole_count, sc.rated_speed_rpm,
                                                   sc.rotor_slot_shape);
            const auto violations = validate_spec(spec, config.materials);
            if (!violations.empty()) {
              std::string msg = "invalid scenario:";
              for (const Violation& v : violations) {
                msg += ' ';
                msg += v.message;
                msg += ';';
              }
              msg.pop_back();
              candidate.error = msg;
            } else {
              const auto constraints = apply_constraint_overrides(
                  default_constraints(spec), config.constraint_overrides);
              OptimizeOptions options = config.optimizer;
              const auto it = seeds.find(group_of(sc));
              if (it != seeds.end()) {
                options.extra_starts.insert(options.extra_starts.end(),
                                            it->second.begin(), it->second.end());
              }
              candidate.result = optimize_design(spec, constraints, config.materials,
                                                 config.params, options, config.bounds);
              candidate.optimized = true;
            }
          } catch (const std::exception& e) {
            candidate.optimized = false;
            candidate.error = e.what();
          }
          bool keep = wave == 0;
          if (!keep && candidate.optimized) {
            const bool cand_ok = candidate.result.constraint_report.feasible;
            const bool inc_ok = results[i].result.constraint_report.feasible;
            keep = (cand_ok && !inc_ok) ||
                   (cand_ok == inc_ok &&
                    candidate.result.report.efficiency_value >
                        results[i].result.report.efficiency_value);
          }
          if (keep) results[i] = std::move(candidate);
        },
        config.optimizer.parallel_starts);
  }
  return results;
}

double fundamental_current_a(const PerformanceReport& p) {
  for (const OperatingSolution& s : p.solutions) {
    if (s.order == 1) return s.stator_current;
  }
  return p.solutions.empty() ? 0.0 : p.solutions.front().stator_current;
}

double stator_current_density_a_mm2(const PerformanceReport& p) {
  const double area_mm2 =
      p.winding.conductor_area * 1.0e6 * static_cast<double>(p.winding.parallel_paths);
  return area_mm2 > 0.0 ? fundamental_current_a(p) / area_mm2 : 0.0;
}

struct TableRow {
  const char* name;      // csv key
  const char* unit;      // text-format annotation, "" = none
  const char* text_fmt;  // printf format for the text rendering
  double (*get)(const PerformanceReport&);
};

std::vector<TableRow> table_rows(SlotShape shape) {
  std::vector<TableRow> rows = {
      {"L", "m", "%.4f",
       [](const PerformanceReport& p) { return p.geometry.core_length; }},
      {"D_o", "m", "%.4f",
       [](const PerformanceReport& p) { return p.geometry.stator_outer_diameter; }},
      {"D", "m", "%.4f",
       [](const PerformanceReport& p) { return p.geometry.stator_inner_diameter; }},
      {"W", "kg", "%.2f",
       [](const PerformanceReport& p) { return p.masses.total; }},
      {"V", "m^3", "%.5f",
       [](const PerformanceReport& p) { return p.masses.active_volume; }},
      {"C", "USD", "%.2f",
       [](const PerformanceReport& p) { return p.cost.total; }},
      {"J", "A/mm^2", "%.2f",
       [](const PerformanceReport& p) { return stator_current_density_a_mm2(p); }},
      {"eta", "%", "%.2f",
       [](const PerformanceReport& p) { return p.efficiency_value * 100.0; }},
      {"pf", "", "%.3f",
       [](const PerformanceReport& p) { return p.power_factor; }},
      {"T", "N.m", "%.2f",
       [](const PerformanceReport& p) { return p.rated_torque; }},
      {"T_pm", "N.m", "%.2f",
       [](const PerformanceReport& p) { return p.breakdown_torque_max_speed; }},
      {"T_pb", "N.m", "%.2f",
       [](const PerformanceReport& p) { return p.breakdown_torque_base; }},
      {"w_s", "m", "%.4f",
       [](const PerformanceReport& p) { return p.geometry.stator_slot_width; }},
      {"d_s", "m", "%.4f",
       [](const PerformanceReport& p) { return p.geometry.stator_slot_depth; }},
  };
  if (shape == SlotShape::Round) {
    // Round bars have one free dimension: the diameter.
    rows.push_back({"w_r=d_r", "m", "%.4f", [](const PerformanceReport& p) {
                      return p.geometry.rotor_slot_width;
                    }});
  } else {
    rows.push_back({"w_r", "m", "%.4f", [](const PerformanceReport& p) {
                      return p.geometry.rotor_slot_width;
                    }});
    rows.push_back({"d_r", "m", "%.4f", [](const PerformanceReport& p) {
                      return p.geometry.rotor_slot_depth;
                    }});
  }
  return rows;
}

const ScenarioResult* find_scenario(const StudyReport& report, int poles,
                                    SlotShape shape, double rpm) {
  for (const ScenarioResult& r : report.scenarios) {
    if (r.scenario.pole_count == poles && r.scenario.rotor_slot_shape == shape &&
        r.scenario.rated_speed_rpm == rpm) {
      return &r;
    }
  }
  return nullptr;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

}  // namespace

std::string Scenario::key() const {
  return std::to_string(pole_count) + "p_" + to_string(rotor_slot_shape) + "_" +
         format_rpm(rated_speed_rpm);
}

OptimizeOptions study_optimizer_defaults() {
  OptimizeOptions options;
  // Comparing scenarios is only fair if each one gets a thorough basin
  // search: more ladder starts plus the coarse prescan over the main
  // geometry/loading axes.
  options.multi_starts = 9;
  options.prescan_per_axis = 7;
  return options;
}

std::vector<ConstraintSpec> apply_constraint_overrides(
    std::vector<ConstraintSpec> constraints,
    const std::vector<ConstraintOverride>& overrides) {
  for (const ConstraintOverride& o : overrides) {
    const auto it = std::find_if(
        constraints.begin(), constraints.end(),
        [&](const ConstraintSpec& c) { return c.name == o.name; });
    if (it == constraints.end()) {
      throw std::invalid_argument("unknown constraint override: " + o.name);
    }
    it->bound = o.bound;
    it->active = o.active;
  }
  return constraints;
}

StudyReport run_study(const StudyConfig& config) {
  StudyReport out;
  out.config = config;

  std::vector<Scenario> grid;
  for (int poles : config.pole_counts) {
    for (SlotShape shape : config.slot_shapes) {
      for (double rpm : config.rated_speeds_rpm) {
        grid.push_back({poles, shape, rpm});
      }
    }
  }
  if (grid.empty()) {
    out.warnings.push_back("scenario grid is empty; nothing to optimise");
    return out;
  }

  out.scenarios = optimize_scenarios(grid, config, {});

  try {
    out.best = select_best(out);
  } catch (const NoFeasibleScenario& e) {
    out.warnings.push_back(e.what());
  }

  if (config.curves) {
    if (!(config.curve_step_rpm > 0.0)) {
      out.warnings.push_back("curve_step_rpm must be positive; sweep skipped");
      return out;
    }
    std::vector<Scenario> sweep;
    for (int poles : unique_in_order(config.pole_counts)) {
      const auto range = config.curve_ranges.find(poles);
      if (range == config.curve_ranges.end()) {
        out.warnings.push_back("no curve range configured for " +
                               std::to_string(poles) +
                               "-pole machines; sweep skipped");
        continue;
      }
      const CurveRange& cr = range->second;
      if (!(cr.min_rpm > 0.0) || !(cr.max_rpm >= cr.min_rpm)) {
        out.warnings.push_back("invalid curve range for " + std::to_string(poles) +
                               "-pole machines; sweep skipped");
        continue;
      }
      for (double rpm = cr.min_rpm; rpm < cr.max_rpm - 1e-9;
           rpm += config.curve_step_rpm) {
        sweep.push_back({poles, SlotShape::Rectangular, rpm});
      }
      sweep.push_back({poles, SlotShape::Rectangular, cr.max_rpm});
    }
    if (!sweep.empty()) {
      // Seed each pole count's sweep with its rectangular-slot grid winners
      // so the sweep explores the same design families as the table.
      std::map<GroupKey, std::vector<DesignVector>> seeds;
      for (const ScenarioResult& r : out.scenarios) {
        if (r.optimized && r.scenario.rotor_slot_shape == SlotShape::Rectangular) {
          seeds[group_of(r.scenario)].push_back(r.result.best_design);
        }
      }
      out.curve_points = optimize_scenarios(sweep, config, seeds);
      for (const ScenarioResult& r : out.curve_points) {
        if (!r.optimized) {
          out.warnings.push_back("curve point " + r.scenario.key() +
                                 " failed: " + r.error);
        }
      }
    }
  }
  return out;
}

BestSelection select_best(const StudyReport& report) {
  const auto better = [](const ScenarioResult& a, const ScenarioResult& b) {
    const PerformanceReport& pa = a.result.report;
    const PerformanceReport& pb = b.result.report;
    if (pa.efficiency_value != pb.efficiency_value) {
      return pa.efficiency_value > pb.efficiency_value;
    }
    if (pa.masses.total != pb.masses.total) return pa.masses.total < pb.masses.total;
    if (pa.cost.total != pb.cost.total) return pa.cost.total < pb.cost.total;
    return a.scenario.key() < b.scenario.key();
  };

  const ScenarioResult* best = nullptr;
  int feasible = 0;
  for (const ScenarioResult& r : report.scenarios) {
    if (!r.optimized || !r.result.constraint_report.feasible) continue;
    ++feasible;
    if (best == nullptr || better(r, *best)) best = &r;
  }
  if (best == nullptr) {
    throw NoFeasibleScenario("no scenario produced a feasible optimised design");
  }

  std::string lines;
  for (const ScenarioResult& r : report.scenarios) {
    lines += r.scenario.key() + ": ";
    if (!r.optimized) {
      lines += "failed (" + r.error + ")\n";
      continue;
    }
    const PerformanceReport& p = r.result.report;
    lines += "efficiency " + format_double("%.4f", p.efficiency_value) + ", mass " +
             format_double("%.2f", p.masses.total) + " kg, cost " +
             format_double("%.2f", p.cost.total);
    if (r.result.constraint_report.feasible) {
      lines += ", feasible";
    } else {
      lines += ", infeasible (";
      bool first = true;
      for (const ConstraintResult& c : r.result.constraint_report.results) {
        if (c.satisfied) continue;
        if (!first) lines += ", ";
        lines += c.spec.name;
        first = false;
      }
      lines += ")";
    }
    lines += "\n";
  }

  BestSelection sel;
  sel.scenario = best->scenario;
  sel.efficiency = best->result.report.efficiency_value;
  sel.rationale = "selected " + best->scenario.key() +
                  ": highest efficiency among " + std::to_string(feasible) +
                  " feasible of " + std::to_string(report.scenarios.size()) +
                  " scenarios (ties favour lower mass, then lower cost)\n" + lines;
  return sel;
}

std::string emit_design_table(const StudyReport& report, TableFormat format) {
  std::ostringstream out;
  const std::vector<int> poles = unique_in_order(report.config.pole_counts);
  const std::vector<SlotShape> shapes = unique_in_order(report.config.slot_shapes);
  const std::vector<double> speeds = unique_in_order(report.config.rated_speeds_rpm);

  bool first_section = true;
  for (SlotShape shape : shapes) {
    if (!first_section) out << '\n';
    first_section = false;

    std::vector<std::string> columns;
    std::vector<const ScenarioResult*> cells;
    for (int p : poles) {
      for (double rpm : speeds) {
        columns.push_back(std::to_string(p) + "p " + format_rpm(rpm));
        cells.push_back(find_scenario(report, p, shape, rpm));
      }
    }
    const std::vector<TableRow> rows = table_rows(shape);

    if (format == TableFormat::Csv) {
      out << "section," << to_string(shape) << '\n';
      out << "parameter";
      for (const std::string& c : columns) out << ',' << c;
      out << '\n';
      for (const TableRow& row : rows) {
        out << row.name;
        for (const ScenarioResult* cell : cells) {
          out << ',';
          if (cell != nullptr && cell->optimized) {
            out << g17(row.get(cell->result.report));
          }
        }
        out << '\n';
      }
    } else {
      // Aligned text rendering with unit annotations.
      std::vector<std::string> labels;
      labels.reserve(rows.size());
      for (const TableRow& row : rows) {
        std::string label = row.name;
        if (row.unit[0] != '\0') label += std::string(" (") + row.unit + ")";
        labels.push_back(label);
      }
      std::size_t label_width = std::string("parameter").size();
      for (const std::string& l : labels) label_width = std::max(label_width, l.size());

      std::vector<std::vector<std::string>> body(rows.size());
      std::vector<std::size_t> widths(columns.size());
      for (std::size_t c = 0; c < columns.size(); ++c) widths[c] = columns[c].size();
      for (std::size_t r = 0; r < rows.size(); ++r) {
        body[r].resize(columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
          const ScenarioResult* cell = cells[c];
          body[r][c] = (cell != nullptr && cell->optimized)
                           ? format_double(rows[r].text_fmt,
                                           rows[r].get(cell->result.report))
                           : std::string("-");
          widths[c] = std::max(widths[c], body[r][c].size());
        }
      }

      out << "rotor slots: " << to_string(shape) << '\n';
      out << std::string(label_width, ' ');
      for (std::size_t c = 0; c < columns.size(); ++c) {
        out << "  " << std::string(widths[c] - columns[c].size(), ' ') << columns[c];
      }
      out << '\n';
      std::size_t total = label_width;
      for (std::size_t w : widths) total += 2 + w;
      out << std::string(total, '-') << '\n';
      for (std::size_t r = 0; r < rows.size(); ++r) {
        out << labels[r] << std::string(label_width - labels[r].size(), ' ');
        for (std::size_t c = 0; c < columns.size(); ++c) {
          out << "  " << std::string(widths[c] - body[r][c].size(), ' ') << body[r][c];
        }
        out << '\n';
      }
    }
  }
  return out.str();
}

DesignTable parse_design_table(const std::string& csv) {
  DesignTable table;
  DesignTableSection* section = nullptr;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      section = nullptr;
      continue;
    }
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields[0] == "section") {
      table.sections.emplace_back();
      section = &table.sections.back();
      section->slot_shape = fields.size() > 1 ? fields[1] : "";
      continue;
    }
    if (section == nullptr) {
      throw std::invalid_argument("design table row outside any section: " + line);
    }
    if (fields[0] == "parameter") {
      section->columns.assign(fields.begin() + 1, fields.end());
      continue;
    }
    std::vector<double> values;
    values.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i].empty()) {
        values.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      char* end = nullptr;
      const double v = std::strtod(fields[i].c_str(), &end);
      if (end == nullptr || *end != '\0') {
        throw std::invalid_argument("bad numeric cell '" + fields[i] + "' in row " +
                                    fields[0]);
      }
      values.push_back(v);
    }
    section->rows.emplace_back(fields[0], std::move(values));
  }
  return table;
}

std::map<std::string, std::string> emit_speed_curves(const StudyReport& report) {
  std::map<std::string, std::string> files;
  if (report.curve_points.empty()) return files;

  struct Param {
    const char* name;
    double (*get)(const PerformanceReport&);
  };
  static const Param kParams[] = {
      {"stator_inner_diameter",
       [](const PerformanceReport& p) { return p.geometry.stator_inner_diameter; }},
      {"core_length",
       [](const PerformanceReport& p) { return p.geometry.core_length; }},
      {"volume", [](const PerformanceReport& p) { return p.masses.active_volume; }},
      {"weight", [](const PerformanceReport& p) { return p.masses.total; }},
      {"inertia", [](const PerformanceReport& p) { return p.rotor_inertia_kgm2; }},
      {"cost", [](const PerformanceReport& p) { return p.cost.total; }},
      {"breakdown_torque_base",
       [](const PerformanceReport& p) { return p.breakdown_torque_base; }},
      {"breakdown_torque_max",
       [](const PerformanceReport& p) { return p.breakdown_torque_max_speed; }},
      {"efficiency", [](const PerformanceReport& p) { return p.efficiency_value; }},
      {"power_factor", [](const PerformanceReport& p) { return p.power_factor; }},
  };

  std::vector<int> poles;
  for (const ScenarioResult& r : report.curve_points) {
    if (std::find(poles.begin(), poles.end(), r.scenario.pole_count) == poles.end()) {
      poles.push_back(r.scenario.pole_count);
    }
  }

  for (int p : poles) {
    std::vector<const ScenarioResult*> points;
    for (const ScenarioResult& r : report.curve_points) {
      if (r.scenario.pole_count == p && r.optimized) points.push_back(&r);
    }
    std::sort(points.begin(), points.end(),
              [](const ScenarioResult* a, const ScenarioResult* b) {
                return a->scenario.rated_speed_rpm < b->scenario.rated_speed_rpm;
              });
    for (const Param& param : kParams) {
      std::string content = "rated_speed_rpm,value,pole_count\n";
      for (const ScenarioResult* r : points) {
        content += format_rpm(r->scenario.rated_speed_rpm) + "," +
                   g17(param.get(r->result.report)) + "," + std::to_string(p) + "\n";
      }
      files["curves_" + std::string(param.name) + "_" + std::to_string(p) +
            "p.csv"] = std::move(content);
    }
  }
  return files;
}

std::vector<std::string> write_study_outputs(const StudyReport& report,
                                             const std::string& directory) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  std::vector<std::string> written;

  const auto write_file = [&](const std::string& name, const std::string& content) {
    const fs::path path = fs::path(directory) / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
    written.push_back(path.string());
  };

  write_file("design_table.csv", emit_design_table(report, TableFormat::Csv));
  write_file("design_table.txt", emit_design_table(report, TableFormat::Text));
  for (const auto& [name, content] : emit_speed_curves(report)) {
    write_file(name, content);
  }
  return written;
}

}  // namespace evim
