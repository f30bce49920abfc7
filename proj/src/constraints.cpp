#include "evim/constraints.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "evim/errors.hpp"

namespace evim {

std::string to_string(Sense s) {
  return s == Sense::AtLeast ? "at_least" : "at_most";
}

namespace {

using FieldFn = std::function<double(const PerformanceReport&)>;

const std::map<std::string, FieldFn>& field_table() {
  static const std::map<std::string, FieldFn> table = {
      {"efficiency", [](const PerformanceReport& r) { return r.efficiency_value; }},
      {"power_factor", [](const PerformanceReport& r) { return r.power_factor; }},
      {"rated_torque", [](const PerformanceReport& r) { return r.rated_torque; }},
      {"rated_slip", [](const PerformanceReport& r) { return r.rated_slip; }},
      {"breakdown_torque", [](const PerformanceReport& r) { return r.breakdown_torque_base; }},
      {"breakdown_torque_max_speed",
       [](const PerformanceReport& r) { return r.breakdown_torque_max_speed; }},
      {"breakdown_to_rated_ratio",
       [](const PerformanceReport& r) { return r.breakdown_to_rated_ratio; }},
      {"temperature_rise", [](const PerformanceReport& r) { return r.temperature_rise_c; }},
      {"rotor_tip_speed_max", [](const PerformanceReport& r) { return r.tip_speed_at_max_ms; }},
      {"rotor_time_constant", [](const PerformanceReport& r) { return r.rotor_time_constant_s; }},
      {"stator_tooth_flux_density",
       [](const PerformanceReport& r) { return r.stator_tooth_flux_density; }},
      {"input_power", [](const PerformanceReport& r) { return r.input_power_w; }},
      {"shaft_power", [](const PerformanceReport& r) { return r.shaft_power_w; }},
      {"total_loss", [](const PerformanceReport& r) { return r.losses.total; }},
      {"total_mass", [](const PerformanceReport& r) { return r.masses.total; }},
      {"material_cost", [](const PerformanceReport& r) { return r.cost.total; }},
      {"rotor_inertia", [](const PerformanceReport& r) { return r.rotor_inertia_kgm2; }},
      {"inertia_constant", [](const PerformanceReport& r) { return r.inertia_constant_s; }},
  };
  return table;
}

}  // namespace

double report_field(const PerformanceReport& report, const std::string& field) {
  const auto& table = field_table();
  auto it = table.find(field);
  if (it == table.end()) {
    throw UnknownField("unknown report field '" + field + "'");
  }
  return it->second(report);
}

const std::vector<std::string>& report_field_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : field_table()) out.push_back(name);
    return out;
  }();
  return names;
}

double ConstraintReport::quadratic_sum() const {
  double sum = 0.0;
  for (const auto& r : results) sum += r.violation * r.violation;
  return sum;
}

std::vector<ConstraintSpec> default_constraints(const MotorSpec& spec) {
  const double rated_torque = spec.rated_torque_target();
  return {
      {"power_factor", "power_factor", Sense::AtLeast, 0.85, true},
      {"temperature_rise", "temperature_rise", Sense::AtMost, 75.0, true},
      {"rated_torque", "rated_torque", Sense::AtLeast, rated_torque, true},
      {"breakdown_ratio", "breakdown_to_rated_ratio", Sense::AtLeast, 1.5, true},
      {"breakdown_torque_max_speed", "breakdown_torque_max_speed", Sense::AtLeast, 3.5, true},
      {"rotor_tip_speed", "rotor_tip_speed_max", Sense::AtMost, 120.0, true},
      {"rotor_time_constant", "rotor_time_constant", Sense::AtMost, 4.0, true},
      {"stator_tooth_flux", "stator_tooth_flux_density", Sense::AtMost, 1.2, true},
  };
}

namespace {

// Violations are normalised by |bound| so that one "unit" means the same
// relative excursion for every constraint; absolute fallback for zero bounds.
double normalised_violation(Sense sense, double bound, double value) {
  const double short_fall = sense == Sense::AtLeast ? bound - value : value - bound;
  if (short_fall <= 0.0) return 0.0;
  const double scale = std::abs(bound) > 1e-12 ? std::abs(bound) : 1.0;
  return short_fall / scale;
}

}  // namespace

ConstraintReport evaluate_constraints(const PerformanceReport& report,
                                      const std::vector<ConstraintSpec>& constraints,
                                      const ModelParams& params) {
  ConstraintReport out;
  for (const auto& c : constraints) {
    if (!c.active) continue;
    ConstraintResult r;
    r.spec = c;
    r.value = report_field(report, c.field);
    double v = normalised_violation(c.sense, c.bound, r.value);
    if (!std::isfinite(v)) v = params.infeasible_violation_cap;
    r.violation = std::min(v, params.infeasible_violation_cap);
    r.satisfied = r.violation == 0.0;
    out.results.push_back(r);
    out.total_violation += r.violation;
    out.feasible = out.feasible && r.satisfied;
  }
  return out;
}

ConstraintReport infeasible_constraint_report(const std::vector<ConstraintSpec>& constraints,
                                              const ModelParams& params) {
  ConstraintReport out;
  for (const auto& c : constraints) {
    if (!c.active) continue;
    ConstraintResult r;
    r.spec = c;
    r.value = 0.0;
    r.violation = params.infeasible_violation_cap;
    r.satisfied = false;
    r.evaluated = false;
    out.results.push_back(r);
    out.total_violation += r.violation;
  }
  out.feasible = out.results.empty();
  return out;
}

}  // namespace evim
