#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evim/performance.hpp"

namespace evim {

// One inequality requirement on an evaluated design.  Each constraint reads a
// scalar off the performance report and compares it against a bound; all
// bounds are closed (meeting the bound exactly is feasible).
enum class Sense { AtLeast, AtMost };

std::string to_string(Sense s);

struct ConstraintSpec {
  std::string name;     // stable identifier, e.g. "power_factor"
  std::string field;    // report field the constraint reads
  Sense sense = Sense::AtLeast;
  double bound = 0.0;
  bool active = true;
};

// Extracts a named scalar from a performance report.  Throws UnknownField for
// names that are not part of the reporting surface.
double report_field(const PerformanceReport& report, const std::string& field);

// Names accepted by report_field, in reporting order.
const std::vector<std::string>& report_field_names();

struct ConstraintResult {
  ConstraintSpec spec;
  double value = 0.0;      // field value, or cap sentinel when unevaluable
  double violation = 0.0;  // normalised violation, 0 when satisfied
  bool satisfied = true;
  bool evaluated = true;   // false when the design never produced a report
};

struct ConstraintReport {
  std::vector<ConstraintResult> results;
  bool feasible = true;
  double total_violation = 0.0;  // sum of normalised violations

  double penalty(double weight) const { return weight * quadratic_sum(); }
  double quadratic_sum() const;
};

// The default requirement set for a traction drive rated at spec.rated_power.
// All eight constraints are active; callers may deactivate or re-bound them.
std::vector<ConstraintSpec> default_constraints(const MotorSpec& spec);

// Evaluates the constraint set against a successful design evaluation.
ConstraintReport evaluate_constraints(const PerformanceReport& report,
                                      const std::vector<ConstraintSpec>& constraints,
                                      const ModelParams& params = {});

// Sentinel report for designs that failed to evaluate: every active
// constraint is marked unsatisfied with its violation capped.
ConstraintReport infeasible_constraint_report(const std::vector<ConstraintSpec>& constraints,
                                              const ModelParams& params = {});

}  // namespace evim
