#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "evim/constraints.hpp"
#include "evim/performance.hpp"

namespace evim {

// Direct pattern search (exploratory moves along coordinates, acceleration
// along the improving direction, step halving on failure).  Works on plain
// vectors so it can be tested on analytic functions independently of the
// motor model.

using Objective = std::function<double(const std::vector<double>&)>;

enum class MoveKind { Exploratory, Pattern, Reduce };
enum class Termination { StepTolerance, EvalBudget };

std::string to_string(MoveKind kind);
std::string to_string(Termination t);

struct TracePoint {
  int iteration = 0;
  std::vector<double> x;
  double value = 0.0;
  double step_scale = 1.0;  // current step size relative to the initial step
  MoveKind kind = MoveKind::Exploratory;
};

struct SearchOptions {
  double initial_step = 0.10;     // fraction of each variable's bound range
  double step_reduction = 0.5;    // multiplier applied when no move improves
  double tolerance = 1e-4;        // stop when step_scale falls below this
  int max_evaluations = 20000;
  double acceleration = 1.0;      // pattern move length multiplier
  std::vector<bool> frozen;       // per-variable: true = never perturbed
  bool record_trace = true;
};

struct SearchResult {
  std::vector<double> best_x;
  double best_value = 0.0;
  int evaluations = 0;
  int iterations = 0;
  Termination termination = Termination::StepTolerance;
  bool converged = false;  // step tolerance reached within the budget
  std::vector<TracePoint> trace;
};

// Polls +/- step along each coordinate in index order, keeping strict
// improvements.  Candidates are clamped to the bounds; a candidate equal to
// the current point (fully clamped away) is not evaluated.
std::vector<double> exploratory_step(const Objective& f,
                                     const std::vector<double>& base,
                                     double& base_value,
                                     const std::vector<double>& step,
                                     const std::vector<double>& lower,
                                     const std::vector<double>& upper,
                                     const std::vector<bool>& frozen,
                                     int& evaluations);

SearchResult hooke_jeeves(const Objective& f,
                          std::vector<double> start,
                          const std::vector<double>& lower,
                          const std::vector<double>& upper,
                          const SearchOptions& options = {});

// Exhaustive evaluation over an axis-aligned grid; the reference optimum for
// low-dimensional cross-checks.  Inactive variables stay at their start
// value.  Ties resolve to the lexicographically smallest index tuple.
struct GridResult {
  std::vector<double> best_x;
  double best_value = 0.0;
  std::vector<std::size_t> best_index;
};

GridResult grid_search(const Objective& f,
                       const std::vector<double>& start,
                       const std::vector<double>& lower,
                       const std::vector<double>& upper,
                       const std::vector<bool>& active,
                       std::size_t points_per_axis,
                       bool parallel = true);

// ---- Motor-design objective -------------------------------------------

struct ObjectiveConfig {
  double penalty_weight = 100.0;       // multiplies the squared violation sum
  double infeasible_objective = 1e6;   // designs that fail to evaluate
};

// Builds a minimisation objective: -efficiency plus a quadratic penalty on
// constraint violations.  Designs that fail to evaluate at all score
// infeasible_objective plus the failure-stage ordinal, so the search still
// sees a (coarse) preference ordering among broken candidates.
Objective design_objective(const MotorSpec& spec,
                           const MaterialCatalog& materials,
                           const std::vector<ConstraintSpec>& constraints,
                           const ModelParams& params,
                           const ObjectiveConfig& config);

struct OptimizeOptions {
  SearchOptions search;
  ObjectiveConfig objective;
  int multi_starts = 5;           // evenly spaced interior starting points
  int max_penalty_rounds = 3;     // penalty weight doublings when infeasible
  int restarts = 2;               // fresh-step polish sweeps per start
  // Coarse deterministic scan over bore diameter, core length, airgap flux
  // density, a common slot scale and a common yoke scale (this many points
  // per axis, 0 = off); the best prescan_keep grid points join the start
  // list.  Cheap insurance against basin misses when the landscape is
  // plateaued by integer turn counts or a one-sided copper/iron split.
  int prescan_per_axis = 0;
  int prescan_keep = 3;
  // Constraints are tightened by this relative margin during the search (the
  // exterior penalty converges slightly outside whatever bound it sees), so
  // incumbents land strictly inside the true bounds.  Kept small because the
  // breakdown-torque floors carry a steep efficiency price per unit of
  // margin.  Classification always uses the true bounds.
  double search_margin = 5.0e-4;
  bool parallel_starts = true;
  // Caller-supplied additional starting designs (clamped and canonicalised);
  // the study runner uses these to share candidate families across scenarios.
  std::vector<DesignVector> extra_starts;
};

struct OptimizeResult {
  DesignVector best_design;
  PerformanceReport report;
  ConstraintReport constraint_report;
  double objective_value = 0.0;
  int evaluations = 0;
  int penalty_rounds = 0;      // extra rounds that were actually run
  double penalty_weight = 0.0; // weight in force for the winning round
  int winning_start = 0;
  std::vector<SearchResult> start_results;  // last round, one per start
};

// Full design optimisation: multi-start pattern search on the bounded design
// vector, maximising efficiency subject to the constraint set.  If every
// start converges to an infeasible point the penalty weight is doubled and
// all starts rerun, up to max_penalty_rounds times.  Never throws for
// infeasible outcomes: the result carries constraint_report.feasible so
// callers can flag the scenario.  bounds defaults to default_bounds(spec).
OptimizeResult optimize_design(const MotorSpec& spec,
                               const std::vector<ConstraintSpec>& constraints,
                               const MaterialCatalog& materials = MaterialCatalog::defaults(),
                               const ModelParams& params = {},
                               const OptimizeOptions& options = {},
                               const std::optional<VariableBounds>& bounds = std::nullopt);

// Starting points used by optimize_design: interior designs at fixed
// fractions of the bound range (0.3 .. 0.7 for the default five starts).
std::vector<DesignVector> default_starts(const MotorSpec& spec,
                                         const VariableBounds& bounds,
                                         int count);

}  // namespace evim
