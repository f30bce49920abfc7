#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evim/errors.hpp"
#include "evim/optimizer.hpp"

namespace evim {

// Batch design study: optimises one machine per (pole count, rotor slot
// shape, rated speed) combination, ranks the winners, and renders the
// comparison table plus optional rated-speed sweep curves.

struct Scenario {
  int pole_count = 2;
  SlotShape rotor_slot_shape = SlotShape::Rectangular;
  double rated_speed_rpm = 1800.0;

  // Stable identifier, e.g. "2p_rectangular_1800".
  std::string key() const;
};

struct ScenarioResult {
  Scenario scenario;
  bool optimized = false;  // false => error explains why nothing was produced
  std::string error;
  OptimizeResult result;
};

// Re-bounds or deactivates one named constraint from the default set.
struct ConstraintOverride {
  std::string name;
  double bound = 0.0;
  bool active = true;
};

// Applies overrides by constraint name; throws std::invalid_argument when a
// name does not exist in the set (silent typos would loosen the study).
std::vector<ConstraintSpec> apply_constraint_overrides(
    std::vector<ConstraintSpec> constraints,
    const std::vector<ConstraintOverride>& overrides);

// Optimiser settings used for study scenarios.  Heavier than the bare
// single-design defaults: more starts plus the coarse prescan, because the
// study's value is comparing basins fairly across scenarios.
OptimizeOptions study_optimizer_defaults();

struct CurveRange {
  double min_rpm = 0.0;
  double max_rpm = 0.0;
};

struct StudyConfig {
  std::vector<int> pole_counts{2, 4};
  std::vector<SlotShape> slot_shapes{SlotShape::Rectangular, SlotShape::Round};
  std::vector<double> rated_speeds_rpm{1600.0, 1800.0, 2000.0};

  // Rated-speed sweep (rectangular rotor slots only).  The sweep covers
  // min..max in curve_step_rpm increments and always includes the endpoint.
  bool curves = false;
  double curve_step_rpm = 200.0;
  std::map<int, CurveRange> curve_ranges{{2, {1400.0, 2800.0}},
                                         {4, {1400.0, 2100.0}}};

  // Scenarios are re-optimised this many times; from the second wave on,
  // every scenario is additionally seeded with the incumbent best designs of
  // all scenarios sharing its (pole count, slot shape) group, so one basin
  // discovery propagates across rated speeds.
  int refine_waves = 3;

  OptimizeOptions optimizer = study_optimizer_defaults();
  MaterialCatalog materials = MaterialCatalog::defaults();
  ModelParams params;
  std::vector<ConstraintOverride> constraint_overrides;
  std::optional<VariableBounds> bounds;  // defaults to default_bounds(spec)
};

struct BestSelection {
  Scenario scenario;
  double efficiency = 0.0;
  std::string rationale;  // per-scenario ranking summary, one line each
};

struct StudyReport {
  StudyConfig config;
  std::vector<ScenarioResult> scenarios;    // grid order: poles, shape, speed
  std::vector<ScenarioResult> curve_points; // rectangular-slot sweeps
  std::optional<BestSelection> best;        // empty when nothing feasible
  std::vector<std::string> warnings;
};

// Runs the full scenario grid (and the sweeps when config.curves).  Scenario
// failures are captured per entry, never thrown; an empty grid returns an
// empty report with a warning.
StudyReport run_study(const StudyConfig& config);

// Highest-efficiency feasible scenario; ties broken by lower total mass,
// then lower material cost, then scenario key.  The result is invariant
// under reordering of report.scenarios.  Throws NoFeasibleScenario (see
// errors.hpp) when no scenario produced a feasible design.
BestSelection select_best(const StudyReport& report);

enum class TableFormat { Csv, Text };

// Comparison table of the optimised designs: one section per rotor slot
// shape, one column per (pole count, rated speed), one row per reported
// parameter.  Csv renders full-precision values that survive a text
// round-trip bit-exactly; Text renders an aligned human-readable table.
std::string emit_design_table(const StudyReport& report, TableFormat format);

struct DesignTableSection {
  std::string slot_shape;
  std::vector<std::string> columns;  // e.g. "2p 1600"
  std::vector<std::pair<std::string, std::vector<double>>> rows;
};

struct DesignTable {
  std::vector<DesignTableSection> sections;
};

// Parses emit_design_table(..., Csv) output back into numbers.  Cells left
// empty for failed scenarios come back as quiet NaN.
DesignTable parse_design_table(const std::string& csv);

// Rated-speed sweep series, one CSV per (parameter, pole count):
// "curves_<parameter>_<poles>p.csv" -> "rated_speed_rpm,value,pole_count".
// Empty when the report holds no curve points.
std::map<std::string, std::string> emit_speed_curves(const StudyReport& report);

// Writes design_table.csv, design_table.txt and any curve CSVs under
// directory (created if missing); returns the paths written.
std::vector<std::string> write_study_outputs(const StudyReport& report,
                                             const std::string& directory);

}  // namespace evim
