#include "evim/json_io.hpp"

#include <cstdlib>
#include <set>
#include <utility>

#include <json.hpp>

namespace evim {

namespace {

using Json = nlohmann::ordered_json;

// Strict object reader: every field is optional (the C++ default applies),
// but keys that were never requested make finish() throw, so misspelled
// options fail loudly instead of silently reverting to defaults.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw JsonError(path_ + ": expected an object");
  }

  const std::string& path() const { return path_; }

  const Json* take(const char* key) {
    const auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    seen_.insert(key);
    return &*it;
  }

  std::string child(const char* key) const { return path_ + "." + key; }

  void read(const char* key, double& out) {
    if (const Json* v = take(key)) {
      if (!v->is_number()) throw JsonError(child(key) + ": expected a number");
      out = v->get<double>();
    }
  }

  void read(const char* key, int& out) {
    if (const Json* v = take(key)) {
      if (!v->is_number_integer()) throw JsonError(child(key) + ": expected an integer");
      out = v->get<int>();
    }
  }

  void read(const char* key, bool& out) {
    if (const Json* v = take(key)) {
      if (!v->is_boolean()) throw JsonError(child(key) + ": expected a boolean");
      out = v->get<bool>();
    }
  }

  void read(const char* key, std::string& out) {
    if (const Json* v = take(key)) {
      if (!v->is_string()) throw JsonError(child(key) + ": expected a string");
      out = v->get<std::string>();
    }
  }

  void finish() {
    for (const auto& item : j_.items()) {
      if (seen_.find(item.key()) == seen_.end()) {
        throw JsonError(path_ + ": unknown key '" + item.key() + "'");
      }
    }
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

const Json& element(const Json& arr, std::size_t i) { return arr[i]; }

void require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw JsonError(path + ": expected an array");
}

double number_at(const Json& j, const std::string& path) {
  if (!j.is_number()) throw JsonError(path + ": expected a number");
  return j.get<double>();
}

int integer_at(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw JsonError(path + ": expected an integer");
  return j.get<int>();
}

std::string string_at(const Json& j, const std::string& path) {
  if (!j.is_string()) throw JsonError(path + ": expected a string");
  return j.get<std::string>();
}

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// ---- enums --------------------------------------------------------------

SlotShape slot_shape_from(const std::string& s, const std::string& path) {
  if (s == "rectangular") return SlotShape::Rectangular;
  if (s == "round") return SlotShape::Round;
  throw JsonError(path + ": unknown slot shape '" + s + "'");
}

Rotation rotation_from(const std::string& s, const std::string& path) {
  if (s == "forward") return Rotation::Forward;
  if (s == "backward") return Rotation::Backward;
  throw JsonError(path + ": unknown rotation '" + s + "'");
}

Sense sense_from(const std::string& s, const std::string& path) {
  if (s == "at_least") return Sense::AtLeast;
  if (s == "at_most") return Sense::AtMost;
  throw JsonError(path + ": unknown sense '" + s + "'");
}

// ---- design vector and bounds --------------------------------------------

Json design_to_obj(const DesignVector& d) {
  Json o = Json::object();
  for (int i = 0; i < DesignVector::kCount; ++i) o[DesignVector::name(i)] = d[i];
  return o;
}

// All 11 variables are required: a design with a silently-defaulted
// dimension is never what the caller meant.
DesignVector design_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  DesignVector d;
  for (int i = 0; i < DesignVector::kCount; ++i) {
    const Json* v = r.take(DesignVector::name(i));
    if (v == nullptr) {
      throw JsonError(path + ": missing design variable '" +
                      DesignVector::name(i) + "'");
    }
    d[i] = number_at(*v, r.child(DesignVector::name(i)));
  }
  r.finish();
  return d;
}

Json named_array_to_obj(const std::array<double, DesignVector::kCount>& a) {
  Json o = Json::object();
  for (int i = 0; i < DesignVector::kCount; ++i) o[DesignVector::name(i)] = a[i];
  return o;
}

void named_array_from_obj(const Json& j, const std::string& path,
                          std::array<double, DesignVector::kCount>& out) {
  ObjectReader r(j, path);
  for (int i = 0; i < DesignVector::kCount; ++i) {
    const Json* v = r.take(DesignVector::name(i));
    if (v == nullptr) {
      throw JsonError(path + ": missing variable '" + DesignVector::name(i) + "'");
    }
    out[static_cast<std::size_t>(i)] = number_at(*v, r.child(DesignVector::name(i)));
  }
  r.finish();
}

Json bounds_to_obj(const VariableBounds& b) {
  Json o;
  o["lower"] = named_array_to_obj(b.lower);
  o["upper"] = named_array_to_obj(b.upper);
  return o;
}

VariableBounds bounds_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  VariableBounds b;
  const Json* lower = r.take("lower");
  const Json* upper = r.take("upper");
  if (lower == nullptr || upper == nullptr) {
    throw JsonError(path + ": bounds need both 'lower' and 'upper'");
  }
  named_array_from_obj(*lower, r.child("lower"), b.lower);
  named_array_from_obj(*upper, r.child("upper"), b.upper);
  r.finish();
  return b;
}

// ---- spec, materials, model params ----------------------------------------

Json spectrum_to_obj(const HarmonicSpectrum& s) {
  Json arr = Json::array();
  for (const HarmonicEntry& e : s.entries) {
    Json o;
    o["order"] = e.order;
    o["amplitude"] = e.amplitude;
    o["rotation"] = to_string(e.rotation);
    arr.push_back(std::move(o));
  }
  return arr;
}

HarmonicSpectrum spectrum_from_obj(const Json& j, const std::string& path) {
  require_array(j, path);
  HarmonicSpectrum s;
  s.entries.clear();
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = index_path(path, i);
    ObjectReader r(element(j, i), p);
    HarmonicEntry e;
    r.read("order", e.order);
    r.read("amplitude", e.amplitude);
    std::string rot = to_string(e.rotation);
    r.read("rotation", rot);
    e.rotation = rotation_from(rot, p + ".rotation");
    r.finish();
    s.entries.push_back(e);
  }
  return s;
}

Json motor_spec_to_obj(const MotorSpec& spec) {
  Json o;
  o["rated_power_w"] = spec.rated_power_w;
  o["rated_voltage_line_v"] = spec.rated_voltage_line_v;
  o["pole_count"] = spec.pole_count;
  o["rated_speed_rpm"] = spec.rated_speed_rpm;
  o["max_speed_rpm"] = spec.max_speed_rpm;
  o["stator_slots"] = spec.stator_slots;
  o["rotor_slots"] = spec.rotor_slots;
  o["stator_slot_shape"] = to_string(spec.stator_slot_shape);
  o["rotor_slot_shape"] = to_string(spec.rotor_slot_shape);
  o["phases"] = spec.phases;
  o["spectrum"] = spectrum_to_obj(spec.spectrum);
  return o;
}

MotorSpec motor_spec_from_obj(const Json& j, const std::string& path,
                              bool top_level = false) {
  ObjectReader r(j, path);
  if (top_level) {
    int version = kSchemaVersion;
    r.read("schema_version", version);
    if (version != kSchemaVersion) {
      throw JsonError(path + ".schema_version: unsupported version " +
                      std::to_string(version));
    }
  }
  MotorSpec spec;
  r.read("rated_power_w", spec.rated_power_w);
  r.read("rated_voltage_line_v", spec.rated_voltage_line_v);
  r.read("pole_count", spec.pole_count);
  r.read("rated_speed_rpm", spec.rated_speed_rpm);
  r.read("max_speed_rpm", spec.max_speed_rpm);
  r.read("stator_slots", spec.stator_slots);
  r.read("rotor_slots", spec.rotor_slots);
  std::string shape = to_string(spec.stator_slot_shape);
  r.read("stator_slot_shape", shape);
  spec.stator_slot_shape = slot_shape_from(shape, r.child("stator_slot_shape"));
  shape = to_string(spec.rotor_slot_shape);
  r.read("rotor_slot_shape", shape);
  spec.rotor_slot_shape = slot_shape_from(shape, r.child("rotor_slot_shape"));
  r.read("phases", spec.phases);
  if (const Json* v = r.take("spectrum")) {
    spec.spectrum = spectrum_from_obj(*v, r.child("spectrum"));
  }
  r.finish();
  return spec;
}

Json materials_to_obj(const MaterialCatalog& m) {
  Json o;
  o["lamination_thickness_mm"] = m.lamination_thickness_mm;
  o["lamination_resistivity_ohm_cm"] = m.lamination_resistivity_ohm_cm;
  o["hysteresis_coefficient"] = m.hysteresis_coefficient;
  o["eddy_coefficient"] = m.eddy_coefficient;
  o["steinmetz_exponent"] = m.steinmetz_exponent;
  o["sigma_h"] = m.sigma_h;
  Json perm = Json::object();
  for (const auto& [order, value] : m.harmonic_permeability) {
    perm[std::to_string(order)] = value;
  }
  o["harmonic_permeability"] = std::move(perm);
  o["steel_density"] = m.steel_density;
  o["copper_density"] = m.copper_density;
  o["aluminum_density"] = m.aluminum_density;
  o["steel_price"] = m.steel_price;
  o["copper_price"] = m.copper_price;
  o["aluminum_price"] = m.aluminum_price;
  o["copper_resistivity"] = m.copper_resistivity;
  o["aluminum_resistivity"] = m.aluminum_resistivity;
  return o;
}

MaterialCatalog materials_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  MaterialCatalog m;
  r.read("lamination_thickness_mm", m.lamination_thickness_mm);
  r.read("lamination_resistivity_ohm_cm", m.lamination_resistivity_ohm_cm);
  r.read("hysteresis_coefficient", m.hysteresis_coefficient);
  r.read("eddy_coefficient", m.eddy_coefficient);
  r.read("steinmetz_exponent", m.steinmetz_exponent);
  r.read("sigma_h", m.sigma_h);
  if (const Json* v = r.take("harmonic_permeability")) {
    const std::string p = r.child("harmonic_permeability");
    if (!v->is_object()) throw JsonError(p + ": expected an object");
    m.harmonic_permeability.clear();
    for (const auto& item : v->items()) {
      char* end = nullptr;
      const long order = std::strtol(item.key().c_str(), &end, 10);
      if (end == item.key().c_str() || *end != '\0') {
        throw JsonError(p + ": key '" + item.key() + "' is not a harmonic order");
      }
      m.harmonic_permeability[static_cast<int>(order)] =
          number_at(item.value(), p + "." + item.key());
    }
  }
  r.read("steel_density", m.steel_density);
  r.read("copper_density", m.copper_density);
  r.read("aluminum_density", m.aluminum_density);
  r.read("steel_price", m.steel_price);
  r.read("copper_price", m.copper_price);
  r.read("aluminum_price", m.aluminum_price);
  r.read("copper_resistivity", m.copper_resistivity);
  r.read("aluminum_resistivity", m.aluminum_resistivity);
  r.finish();
  return m;
}

Json params_to_obj(const ModelParams& p) {
  Json o;
  o["slot_fill_factor"] = p.slot_fill_factor;
  o["end_turn_pitch_coeff"] = p.end_turn_pitch_coeff;
  o["end_turn_const_m"] = p.end_turn_const_m;
  o["lamination_stacking"] = p.lamination_stacking;
  o["shaft_diameter_fraction"] = p.shaft_diameter_fraction;
  o["inertia_allowance"] = p.inertia_allowance;
  o["slot_opening_fraction"] = p.slot_opening_fraction;
  o["slot_opening_min_m"] = p.slot_opening_min_m;
  o["round_slot_permeance"] = p.round_slot_permeance;
  o["end_leakage_permeance"] = p.end_leakage_permeance;
  o["ring_leakage_permeance"] = p.ring_leakage_permeance;
  o["cooling_h_w_per_m2k"] = p.cooling_h_w_per_m2k;
  o["stray_fraction"] = p.stray_fraction;
  o["stray_split_pulsation"] = p.stray_split_pulsation;
  o["stray_split_skew"] = p.stray_split_skew;
  o["stray_split_zigzag"] = p.stray_split_zigzag;
  o["stray_split_bar_leakage"] = p.stray_split_bar_leakage;
  o["breakdown_model"] = p.breakdown_model;
  o["infeasible_violation_cap"] = p.infeasible_violation_cap;
  return o;
}

ModelParams params_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  ModelParams p;
  r.read("slot_fill_factor", p.slot_fill_factor);
  r.read("end_turn_pitch_coeff", p.end_turn_pitch_coeff);
  r.read("end_turn_const_m", p.end_turn_const_m);
  r.read("lamination_stacking", p.lamination_stacking);
  r.read("shaft_diameter_fraction", p.shaft_diameter_fraction);
  r.read("inertia_allowance", p.inertia_allowance);
  r.read("slot_opening_fraction", p.slot_opening_fraction);
  r.read("slot_opening_min_m", p.slot_opening_min_m);
  r.read("round_slot_permeance", p.round_slot_permeance);
  r.read("end_leakage_permeance", p.end_leakage_permeance);
  r.read("ring_leakage_permeance", p.ring_leakage_permeance);
  r.read("cooling_h_w_per_m2k", p.cooling_h_w_per_m2k);
  r.read("stray_fraction", p.stray_fraction);
  r.read("stray_split_pulsation", p.stray_split_pulsation);
  r.read("stray_split_skew", p.stray_split_skew);
  r.read("stray_split_zigzag", p.stray_split_zigzag);
  r.read("stray_split_bar_leakage", p.stray_split_bar_leakage);
  r.read("breakdown_model", p.breakdown_model);
  r.read("infeasible_violation_cap", p.infeasible_violation_cap);
  r.finish();
  return p;
}

// ---- optimizer options -----------------------------------------------------

Json optimize_options_to_obj(const OptimizeOptions& o) {
  Json s;
  s["initial_step"] = o.search.initial_step;
  s["step_reduction"] = o.search.step_reduction;
  s["tolerance"] = o.search.tolerance;
  s["max_evaluations"] = o.search.max_evaluations;
  s["acceleration"] = o.search.acceleration;
  s["record_trace"] = o.search.record_trace;

  Json obj;
  obj["penalty_weight"] = o.objective.penalty_weight;
  obj["infeasible_objective"] = o.objective.infeasible_objective;

  Json out;
  out["search"] = std::move(s);
  out["objective"] = std::move(obj);
  out["multi_starts"] = o.multi_starts;
  out["max_penalty_rounds"] = o.max_penalty_rounds;
  out["restarts"] = o.restarts;
  out["prescan_per_axis"] = o.prescan_per_axis;
  out["prescan_keep"] = o.prescan_keep;
  out["search_margin"] = o.search_margin;
  out["parallel_starts"] = o.parallel_starts;
  Json extra = Json::array();
  for (const DesignVector& d : o.extra_starts) extra.push_back(design_to_obj(d));
  out["extra_starts"] = std::move(extra);
  return out;
}

OptimizeOptions optimize_options_from_obj(const Json& j, const std::string& path,
                                          const OptimizeOptions& defaults) {
  ObjectReader r(j, path);
  OptimizeOptions o = defaults;
  if (const Json* v = r.take("search")) {
    ObjectReader rs(*v, r.child("search"));
    rs.read("initial_step", o.search.initial_step);
    rs.read("step_reduction", o.search.step_reduction);
    rs.read("tolerance", o.search.tolerance);
    rs.read("max_evaluations", o.search.max_evaluations);
    rs.read("acceleration", o.search.acceleration);
    rs.read("record_trace", o.search.record_trace);
    rs.finish();
  }
  if (const Json* v = r.take("objective")) {
    ObjectReader ro(*v, r.child("objective"));
    ro.read("penalty_weight", o.objective.penalty_weight);
    ro.read("infeasible_objective", o.objective.infeasible_objective);
    ro.finish();
  }
  r.read("multi_starts", o.multi_starts);
  r.read("max_penalty_rounds", o.max_penalty_rounds);
  r.read("restarts", o.restarts);
  r.read("prescan_per_axis", o.prescan_per_axis);
  r.read("prescan_keep", o.prescan_keep);
  r.read("search_margin", o.search_margin);
  r.read("parallel_starts", o.parallel_starts);
  if (const Json* v = r.take("extra_starts")) {
    const std::string p = r.child("extra_starts");
    require_array(*v, p);
    o.extra_starts.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      o.extra_starts.push_back(design_from_obj(element(*v, i), index_path(p, i)));
    }
  }
  r.finish();
  return o;
}

// ---- constraints ------------------------------------------------------------

Json constraint_result_to_obj(const ConstraintResult& c) {
  Json o;
  o["name"] = c.spec.name;
  o["field"] = c.spec.field;
  o["sense"] = to_string(c.spec.sense);
  o["bound"] = c.spec.bound;
  o["active"] = c.spec.active;
  o["value"] = c.value;
  o["violation"] = c.violation;
  o["satisfied"] = c.satisfied;
  o["evaluated"] = c.evaluated;
  return o;
}

ConstraintResult constraint_result_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  ConstraintResult c;
  r.read("name", c.spec.name);
  r.read("field", c.spec.field);
  std::string sense = to_string(c.spec.sense);
  r.read("sense", sense);
  c.spec.sense = sense_from(sense, r.child("sense"));
  r.read("bound", c.spec.bound);
  r.read("active", c.spec.active);
  r.read("value", c.value);
  r.read("violation", c.violation);
  r.read("satisfied", c.satisfied);
  r.read("evaluated", c.evaluated);
  r.finish();
  return c;
}

Json constraint_report_to_obj(const ConstraintReport& report) {
  Json o;
  o["feasible"] = report.feasible;
  o["total_violation"] = report.total_violation;
  Json results = Json::array();
  for (const ConstraintResult& c : report.results) {
    results.push_back(constraint_result_to_obj(c));
  }
  o["results"] = std::move(results);
  return o;
}

ConstraintReport constraint_report_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  ConstraintReport report;
  r.read("feasible", report.feasible);
  r.read("total_violation", report.total_violation);
  if (const Json* v = r.take("results")) {
    const std::string p = r.child("results");
    require_array(*v, p);
    for (std::size_t i = 0; i < v->size(); ++i) {
      report.results.push_back(constraint_result_from_obj(element(*v, i), index_path(p, i)));
    }
  }
  r.finish();
  return report;
}

// ---- performance report -------------------------------------------------

Json geometry_to_obj(const DerivedGeometry& g) {
  Json o;
  o["stator_inner_diameter"] = g.stator_inner_diameter;
  o["rotor_outer_diameter"] = g.rotor_outer_diameter;
  o["stator_outer_diameter"] = g.stator_outer_diameter;
  o["core_length"] = g.core_length;
  o["airgap_length"] = g.airgap_length;
  o["pole_pitch"] = g.pole_pitch;
  o["stator_slot_pitch_bore"] = g.stator_slot_pitch_bore;
  o["rotor_slot_pitch_surface"] = g.rotor_slot_pitch_surface;
  o["stator_tooth_width"] = g.stator_tooth_width;
  o["rotor_tooth_width"] = g.rotor_tooth_width;
  o["stator_slot_width"] = g.stator_slot_width;
  o["stator_slot_depth"] = g.stator_slot_depth;
  o["rotor_slot_width"] = g.rotor_slot_width;
  o["rotor_slot_depth"] = g.rotor_slot_depth;
  o["stator_slot_area"] = g.stator_slot_area;
  o["rotor_slot_area"] = g.rotor_slot_area;
  o["stator_yoke_depth"] = g.stator_yoke_depth;
  o["rotor_yoke_depth"] = g.rotor_yoke_depth;
  o["end_ring_cross_section"] = g.end_ring_cross_section;
  o["end_ring_mean_diameter"] = g.end_ring_mean_diameter;
  o["shaft_diameter"] = g.shaft_diameter;
  o["mean_turn_length"] = g.mean_turn_length;
  return o;
}

DerivedGeometry geometry_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  DerivedGeometry g;
  r.read("stator_inner_diameter", g.stator_inner_diameter);
  r.read("rotor_outer_diameter", g.rotor_outer_diameter);
  r.read("stator_outer_diameter", g.stator_outer_diameter);
  r.read("core_length", g.core_length);
  r.read("airgap_length", g.airgap_length);
  r.read("pole_pitch", g.pole_pitch);
  r.read("stator_slot_pitch_bore", g.stator_slot_pitch_bore);
  r.read("rotor_slot_pitch_surface", g.rotor_slot_pitch_surface);
  r.read("stator_tooth_width", g.stator_tooth_width);
  r.read("rotor_tooth_width", g.rotor_tooth_width);
  r.read("stator_slot_width", g.stator_slot_width);
  r.read("stator_slot_depth", g.stator_slot_depth);
  r.read("rotor_slot_width", g.rotor_slot_width);
  r.read("rotor_slot_depth", g.rotor_slot_depth);
  r.read("stator_slot_area", g.stator_slot_area);
  r.read("rotor_slot_area", g.rotor_slot_area);
  r.read("stator_yoke_depth", g.stator_yoke_depth);
  r.read("rotor_yoke_depth", g.rotor_yoke_depth);
  r.read("end_ring_cross_section", g.end_ring_cross_section);
  r.read("end_ring_mean_diameter", g.end_ring_mean_diameter);
  r.read("shaft_diameter", g.shaft_diameter);
  r.read("mean_turn_length", g.mean_turn_length);
  r.finish();
  return g;
}

Json masses_to_obj(const MassBreakdown& m) {
  Json o;
  o["stator_iron"] = m.stator_iron;
  o["rotor_iron"] = m.rotor_iron;
  o["stator_copper"] = m.stator_copper;
  o["rotor_aluminum"] = m.rotor_aluminum;
  o["total"] = m.total;
  o["stator_tooth_iron"] = m.stator_tooth_iron;
  o["stator_yoke_iron"] = m.stator_yoke_iron;
  o["rotor_tooth_iron"] = m.rotor_tooth_iron;
  o["rotor_yoke_iron"] = m.rotor_yoke_iron;
  o["active_volume"] = m.active_volume;
  return o;
}

MassBreakdown masses_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  MassBreakdown m;
  r.read("stator_iron", m.stator_iron);
  r.read("rotor_iron", m.rotor_iron);
  r.read("stator_copper", m.stator_copper);
  r.read("rotor_aluminum", m.rotor_aluminum);
  r.read("total", m.total);
  r.read("stator_tooth_iron", m.stator_tooth_iron);
  r.read("stator_yoke_iron", m.stator_yoke_iron);
  r.read("rotor_tooth_iron", m.rotor_tooth_iron);
  r.read("rotor_yoke_iron", m.rotor_yoke_iron);
  r.read("active_volume", m.active_volume);
  r.finish();
  return m;
}

Json cost_to_obj(const CostBreakdown& c) {
  Json o;
  o["steel"] = c.steel;
  o["copper"] = c.copper;
  o["aluminum"] = c.aluminum;
  o["total"] = c.total;
  return o;
}

CostBreakdown cost_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  CostBreakdown c;
  r.read("steel", c.steel);
  r.read("copper", c.copper);
  r.read("aluminum", c.aluminum);
  r.read("total", c.total);
  r.finish();
  return c;
}

Json winding_to_obj(const WindingSpec& w) {
  Json o;
  o["turns_per_phase"] = w.turns_per_phase;
  o["winding_factor"] = w.winding_factor;
  o["conductors_per_slot"] = w.conductors_per_slot;
  o["conductor_area"] = w.conductor_area;
  o["parallel_paths"] = w.parallel_paths;
  o["flux_per_pole"] = w.flux_per_pole;
  return o;
}

WindingSpec winding_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  WindingSpec w;
  r.read("turns_per_phase", w.turns_per_phase);
  r.read("winding_factor", w.winding_factor);
  r.read("conductors_per_slot", w.conductors_per_slot);
  r.read("conductor_area", w.conductor_area);
  r.read("parallel_paths", w.parallel_paths);
  r.read("flux_per_pole", w.flux_per_pole);
  r.finish();
  return w;
}

Json circuit_model_to_obj(const CircuitModel& c) {
  Json o;
  o["base_frequency_hz"] = c.base_frequency_hz;
  o["stator_resistance"] = c.stator_resistance;
  o["rotor_bar_resistance"] = c.rotor_bar_resistance;
  o["rotor_ring_resistance"] = c.rotor_ring_resistance;
  o["stator_leakage_x1"] = c.stator_leakage_x1;
  o["rotor_leakage_x1"] = c.rotor_leakage_x1;
  o["magnetizing_x1"] = c.magnetizing_x1;
  o["bar_depth"] = c.bar_depth;
  o["bar_resistivity"] = c.bar_resistivity;
  o["carter"] = c.carter;
  o["effective_airgap"] = c.effective_airgap;
  return o;
}

CircuitModel circuit_model_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  CircuitModel c;
  r.read("base_frequency_hz", c.base_frequency_hz);
  r.read("stator_resistance", c.stator_resistance);
  r.read("rotor_bar_resistance", c.rotor_bar_resistance);
  r.read("rotor_ring_resistance", c.rotor_ring_resistance);
  r.read("stator_leakage_x1", c.stator_leakage_x1);
  r.read("rotor_leakage_x1", c.rotor_leakage_x1);
  r.read("magnetizing_x1", c.magnetizing_x1);
  r.read("bar_depth", c.bar_depth);
  r.read("bar_resistivity", c.bar_resistivity);
  r.read("carter", c.carter);
  r.read("effective_airgap", c.effective_airgap);
  r.finish();
  return c;
}

Json harmonic_circuit_to_obj(const HarmonicCircuit& c) {
  Json o;
  o["order"] = c.order;
  o["frequency_hz"] = c.frequency_hz;
  o["stator_resistance"] = c.stator_resistance;
  o["rotor_resistance"] = c.rotor_resistance;
  o["stator_leakage_reactance"] = c.stator_leakage_reactance;
  o["rotor_leakage_reactance"] = c.rotor_leakage_reactance;
  o["magnetizing_reactance"] = c.magnetizing_reactance;
  o["skin_factor"] = c.skin_factor;
  return o;
}

HarmonicCircuit harmonic_circuit_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  HarmonicCircuit c;
  r.read("order", c.order);
  r.read("frequency_hz", c.frequency_hz);
  r.read("stator_resistance", c.stator_resistance);
  r.read("rotor_resistance", c.rotor_resistance);
  r.read("stator_leakage_reactance", c.stator_leakage_reactance);
  r.read("rotor_leakage_reactance", c.rotor_leakage_reactance);
  r.read("magnetizing_reactance", c.magnetizing_reactance);
  r.read("skin_factor", c.skin_factor);
  r.finish();
  return c;
}

Json solution_to_obj(const OperatingSolution& s) {
  Json o;
  o["order"] = s.order;
  o["voltage"] = s.voltage;
  o["slip"] = s.slip;
  o["stator_current"] = s.stator_current;
  o["rotor_current"] = s.rotor_current;
  o["airgap_emf"] = s.airgap_emf;
  o["power_factor"] = s.power_factor;
  return o;
}

OperatingSolution solution_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  OperatingSolution s;
  r.read("order", s.order);
  r.read("voltage", s.voltage);
  r.read("slip", s.slip);
  r.read("stator_current", s.stator_current);
  r.read("rotor_current", s.rotor_current);
  r.read("airgap_emf", s.airgap_emf);
  r.read("power_factor", s.power_factor);
  r.finish();
  return s;
}

Json losses_to_obj(const LossBreakdown& l) {
  Json core;
  core["hysteresis"] = l.core.hysteresis;
  core["eddy"] = l.core.eddy;
  core["total"] = l.core.total;
  Json core_detail = Json::array();
  for (const CoreLossDetail& d : l.core.detail) {
    Json o;
    o["order"] = d.order;
    o["part"] = d.part;
    o["hysteresis"] = d.hysteresis;
    o["eddy"] = d.eddy;
    core_detail.push_back(std::move(o));
  }
  core["detail"] = std::move(core_detail);

  Json ohmic;
  ohmic["stator"] = l.ohmic.stator;
  ohmic["rotor"] = l.ohmic.rotor;
  ohmic["total"] = l.ohmic.total;
  Json ohmic_detail = Json::array();
  for (const OhmicLossDetail& d : l.ohmic.detail) {
    Json o;
    o["order"] = d.order;
    o["stator"] = d.stator;
    o["rotor"] = d.rotor;
    ohmic_detail.push_back(std::move(o));
  }
  ohmic["detail"] = std::move(ohmic_detail);

  Json stray;
  stray["pulsation"] = l.stray.pulsation;
  stray["skew"] = l.stray.skew;
  stray["zigzag"] = l.stray.zigzag;
  stray["bar_leakage"] = l.stray.bar_leakage;
  stray["total"] = l.stray.total;

  Json o;
  o["core"] = std::move(core);
  o["ohmic"] = std::move(ohmic);
  o["mechanical"] = l.mechanical;
  o["stray"] = std::move(stray);
  o["total"] = l.total;
  return o;
}

LossBreakdown losses_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  LossBreakdown l;
  if (const Json* v = r.take("core")) {
    ObjectReader rc(*v, r.child("core"));
    rc.read("hysteresis", l.core.hysteresis);
    rc.read("eddy", l.core.eddy);
    rc.read("total", l.core.total);
    if (const Json* d = rc.take("detail")) {
      const std::string p = rc.child("detail");
      require_array(*d, p);
      for (std::size_t i = 0; i < d->size(); ++i) {
        ObjectReader rd(element(*d, i), index_path(p, i));
        CoreLossDetail entry;
        rd.read("order", entry.order);
        rd.read("part", entry.part);
        rd.read("hysteresis", entry.hysteresis);
        rd.read("eddy", entry.eddy);
        rd.finish();
        l.core.detail.push_back(std::move(entry));
      }
    }
    rc.finish();
  }
  if (const Json* v = r.take("ohmic")) {
    ObjectReader ro(*v, r.child("ohmic"));
    ro.read("stator", l.ohmic.stator);
    ro.read("rotor", l.ohmic.rotor);
    ro.read("total", l.ohmic.total);
    if (const Json* d = ro.take("detail")) {
      const std::string p = ro.child("detail");
      require_array(*d, p);
      for (std::size_t i = 0; i < d->size(); ++i) {
        ObjectReader rd(element(*d, i), index_path(p, i));
        OhmicLossDetail entry;
        rd.read("order", entry.order);
        rd.read("stator", entry.stator);
        rd.read("rotor", entry.rotor);
        rd.finish();
        l.ohmic.detail.push_back(entry);
      }
    }
    ro.finish();
  }
  r.read("mechanical", l.mechanical);
  if (const Json* v = r.take("stray")) {
    ObjectReader rs(*v, r.child("stray"));
    rs.read("pulsation", l.stray.pulsation);
    rs.read("skew", l.stray.skew);
    rs.read("zigzag", l.stray.zigzag);
    rs.read("bar_leakage", l.stray.bar_leakage);
    rs.read("total", l.stray.total);
    rs.finish();
  }
  r.read("total", l.total);
  r.finish();
  return l;
}

Json performance_to_obj(const PerformanceReport& p) {
  Json o;
  o["design"] = design_to_obj(p.design);
  o["geometry"] = geometry_to_obj(p.geometry);
  o["masses"] = masses_to_obj(p.masses);
  o["cost"] = cost_to_obj(p.cost);
  o["winding"] = winding_to_obj(p.winding);
  o["circuit_model"] = circuit_model_to_obj(p.circuit_model);
  Json circuits = Json::array();
  for (const HarmonicCircuit& c : p.circuits) circuits.push_back(harmonic_circuit_to_obj(c));
  o["circuits"] = std::move(circuits);
  Json solutions = Json::array();
  for (const OperatingSolution& s : p.solutions) solutions.push_back(solution_to_obj(s));
  o["solutions"] = std::move(solutions);
  o["losses"] = losses_to_obj(p.losses);
  o["rated_slip"] = p.rated_slip;
  o["input_power_w"] = p.input_power_w;
  o["circuit_input_power_w"] = p.circuit_input_power_w;
  o["shaft_power_w"] = p.shaft_power_w;
  o["efficiency"] = p.efficiency_value;
  o["power_factor"] = p.power_factor;
  o["rated_torque"] = p.rated_torque;
  o["rated_torque_legacy"] = p.rated_torque_legacy;
  o["breakdown_torque_base"] = p.breakdown_torque_base;
  o["breakdown_torque_legacy"] = p.breakdown_torque_legacy;
  o["breakdown_slip"] = p.breakdown_slip;
  o["breakdown_torque_max_speed"] = p.breakdown_torque_max_speed;
  o["breakdown_to_rated_ratio"] = p.breakdown_to_rated_ratio;
  o["temperature_rise_c"] = p.temperature_rise_c;
  o["rotor_inertia_kgm2"] = p.rotor_inertia_kgm2;
  o["inertia_constant_s"] = p.inertia_constant_s;
  o["stator_tooth_flux_density"] = p.stator_tooth_flux_density;
  o["rotor_time_constant_s"] = p.rotor_time_constant_s;
  o["tip_speed_at_max_ms"] = p.tip_speed_at_max_ms;
  return o;
}

PerformanceReport performance_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  PerformanceReport p;
  if (const Json* v = r.take("design")) p.design = design_from_obj(*v, r.child("design"));
  if (const Json* v = r.take("geometry")) p.geometry = geometry_from_obj(*v, r.child("geometry"));
  if (const Json* v = r.take("masses")) p.masses = masses_from_obj(*v, r.child("masses"));
  if (const Json* v = r.take("cost")) p.cost = cost_from_obj(*v, r.child("cost"));
  if (const Json* v = r.take("winding")) p.winding = winding_from_obj(*v, r.child("winding"));
  if (const Json* v = r.take("circuit_model")) {
    p.circuit_model = circuit_model_from_obj(*v, r.child("circuit_model"));
  }
  if (const Json* v = r.take("circuits")) {
    const std::string pth = r.child("circuits");
    require_array(*v, pth);
    for (std::size_t i = 0; i < v->size(); ++i) {
      p.circuits.push_back(harmonic_circuit_from_obj(element(*v, i), index_path(pth, i)));
    }
  }
  if (const Json* v = r.take("solutions")) {
    const std::string pth = r.child("solutions");
    require_array(*v, pth);
    for (std::size_t i = 0; i < v->size(); ++i) {
      p.solutions.push_back(solution_from_obj(element(*v, i), index_path(pth, i)));
    }
  }
  if (const Json* v = r.take("losses")) p.losses = losses_from_obj(*v, r.child("losses"));
  r.read("rated_slip", p.rated_slip);
  r.read("input_power_w", p.input_power_w);
  r.read("circuit_input_power_w", p.circuit_input_power_w);
  r.read("shaft_power_w", p.shaft_power_w);
  r.read("efficiency", p.efficiency_value);
  r.read("power_factor", p.power_factor);
  r.read("rated_torque", p.rated_torque);
  r.read("rated_torque_legacy", p.rated_torque_legacy);
  r.read("breakdown_torque_base", p.breakdown_torque_base);
  r.read("breakdown_torque_legacy", p.breakdown_torque_legacy);
  r.read("breakdown_slip", p.breakdown_slip);
  r.read("breakdown_torque_max_speed", p.breakdown_torque_max_speed);
  r.read("breakdown_to_rated_ratio", p.breakdown_to_rated_ratio);
  r.read("temperature_rise_c", p.temperature_rise_c);
  r.read("rotor_inertia_kgm2", p.rotor_inertia_kgm2);
  r.read("inertia_constant_s", p.inertia_constant_s);
  r.read("stator_tooth_flux_density", p.stator_tooth_flux_density);
  r.read("rotor_time_constant_s", p.rotor_time_constant_s);
  r.read("tip_speed_at_max_ms", p.tip_speed_at_max_ms);
  r.finish();
  return p;
}

// ---- optimizer result ------------------------------------------------------

Json optimize_result_to_obj(const OptimizeResult& res) {
  Json o;
  o["best_design"] = design_to_obj(res.best_design);
  o["performance"] = performance_to_obj(res.report);
  o["constraints"] = constraint_report_to_obj(res.constraint_report);
  o["objective_value"] = res.objective_value;
  o["evaluations"] = res.evaluations;
  o["penalty_rounds"] = res.penalty_rounds;
  o["penalty_weight"] = res.penalty_weight;
  o["winning_start"] = res.winning_start;
  return o;
}

OptimizeResult optimize_result_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  OptimizeResult res;
  if (const Json* v = r.take("best_design")) {
    res.best_design = design_from_obj(*v, r.child("best_design"));
  }
  if (const Json* v = r.take("performance")) {
    res.report = performance_from_obj(*v, r.child("performance"));
  }
  if (const Json* v = r.take("constraints")) {
    res.constraint_report = constraint_report_from_obj(*v, r.child("constraints"));
  }
  r.read("objective_value", res.objective_value);
  r.read("evaluations", res.evaluations);
  r.read("penalty_rounds", res.penalty_rounds);
  r.read("penalty_weight", res.penalty_weight);
  r.read("winning_start", res.winning_start);
  r.finish();
  return res;
}

// ---- study ------------------------------------------------------------------

Json scenario_to_obj(const Scenario& sc) {
  Json o;
  o["pole_count"] = sc.pole_count;
  o["rotor_slot_shape"] = to_string(sc.rotor_slot_shape);
  o["rated_speed_rpm"] = sc.rated_speed_rpm;
  return o;
}

Scenario scenario_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  Scenario sc;
  r.read("pole_count", sc.pole_count);
  std::string shape = to_string(sc.rotor_slot_shape);
  r.read("rotor_slot_shape", shape);
  sc.rotor_slot_shape = slot_shape_from(shape, r.child("rotor_slot_shape"));
  r.read("rated_speed_rpm", sc.rated_speed_rpm);
  r.finish();
  return sc;
}

Json scenario_result_to_obj(const ScenarioResult& r) {
  Json o;
  o["scenario"] = scenario_to_obj(r.scenario);
  o["optimized"] = r.optimized;
  o["error"] = r.error;
  o["result"] = r.optimized ? optimize_result_to_obj(r.result) : Json(nullptr);
  return o;
}

ScenarioResult scenario_result_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  ScenarioResult out;
  if (const Json* v = r.take("scenario")) {
    out.scenario = scenario_from_obj(*v, r.child("scenario"));
  }
  r.read("optimized", out.optimized);
  r.read("error", out.error);
  if (const Json* v = r.take("result")) {
    if (!v->is_null()) out.result = optimize_result_from_obj(*v, r.child("result"));
  }
  r.finish();
  return out;
}

Json study_config_to_obj(const StudyConfig& c) {
  Json o;
  Json poles = Json::array();
  for (int p : c.pole_counts) poles.push_back(p);
  o["pole_counts"] = std::move(poles);
  Json shapes = Json::array();
  for (SlotShape s : c.slot_shapes) shapes.push_back(to_string(s));
  o["slot_shapes"] = std::move(shapes);
  Json speeds = Json::array();
  for (double s : c.rated_speeds_rpm) speeds.push_back(s);
  o["rated_speeds_rpm"] = std::move(speeds);
  o["curves"] = c.curves;
  o["curve_step_rpm"] = c.curve_step_rpm;
  Json ranges = Json::object();
  for (const auto& [poles_key, range] : c.curve_ranges) {
    Json rr;
    rr["min_rpm"] = range.min_rpm;
    rr["max_rpm"] = range.max_rpm;
    ranges[std::to_string(poles_key)] = std::move(rr);
  }
  o["curve_ranges"] = std::move(ranges);
  o["refine_waves"] = c.refine_waves;
  o["optimizer"] = optimize_options_to_obj(c.optimizer);
  o["materials"] = materials_to_obj(c.materials);
  o["params"] = params_to_obj(c.params);
  Json overrides = Json::array();
  for (const ConstraintOverride& ov : c.constraint_overrides) {
    Json vv;
    vv["name"] = ov.name;
    vv["bound"] = ov.bound;
    vv["active"] = ov.active;
    overrides.push_back(std::move(vv));
  }
  o["constraint_overrides"] = std::move(overrides);
  o["bounds"] = c.bounds.has_value() ? bounds_to_obj(*c.bounds) : Json(nullptr);
  return o;
}

StudyConfig study_config_from_obj(const Json& j, const std::string& path,
                                  bool top_level = false) {
  ObjectReader r(j, path);
  if (top_level) {
    int version = kSchemaVersion;
    r.read("schema_version", version);
    if (version != kSchemaVersion) {
      throw JsonError(path + ".schema_version: unsupported version " +
                      std::to_string(version));
    }
  }
  StudyConfig c;
  if (const Json* v = r.take("pole_counts")) {
    const std::string p = r.child("pole_counts");
    require_array(*v, p);
    c.pole_counts.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      c.pole_counts.push_back(integer_at(element(*v, i), index_path(p, i)));
    }
  }
  if (const Json* v = r.take("slot_shapes")) {
    const std::string p = r.child("slot_shapes");
    require_array(*v, p);
    c.slot_shapes.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string ip = index_path(p, i);
      c.slot_shapes.push_back(slot_shape_from(string_at(element(*v, i), ip), ip));
    }
  }
  if (const Json* v = r.take("rated_speeds_rpm")) {
    const std::string p = r.child("rated_speeds_rpm");
    require_array(*v, p);
    c.rated_speeds_rpm.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      c.rated_speeds_rpm.push_back(number_at(element(*v, i), index_path(p, i)));
    }
  }
  r.read("curves", c.curves);
  r.read("curve_step_rpm", c.curve_step_rpm);
  if (const Json* v = r.take("curve_ranges")) {
    const std::string p = r.child("curve_ranges");
    if (!v->is_object()) throw JsonError(p + ": expected an object");
    c.curve_ranges.clear();
    for (const auto& item : v->items()) {
      char* end = nullptr;
      const long poles = std::strtol(item.key().c_str(), &end, 10);
      if (end == item.key().c_str() || *end != '\0') {
        throw JsonError(p + ": key '" + item.key() + "' is not a pole count");
      }
      ObjectReader rr(item.value(), p + "." + item.key());
      CurveRange range;
      rr.read("min_rpm", range.min_rpm);
      rr.read("max_rpm", range.max_rpm);
      rr.finish();
      c.curve_ranges[static_cast<int>(poles)] = range;
    }
  }
  r.read("refine_waves", c.refine_waves);
  if (const Json* v = r.take("optimizer")) {
    c.optimizer = optimize_options_from_obj(*v, r.child("optimizer"),
                                            study_optimizer_defaults());
  }
  if (const Json* v = r.take("materials")) {
    c.materials = materials_from_obj(*v, r.child("materials"));
  }
  if (const Json* v = r.take("params")) {
    c.params = params_from_obj(*v, r.child("params"));
  }
  if (const Json* v = r.take("constraint_overrides")) {
    const std::string p = r.child("constraint_overrides");
    require_array(*v, p);
    c.constraint_overrides.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      ObjectReader ro(element(*v, i), index_path(p, i));
      ConstraintOverride ov;
      ro.read("name", ov.name);
      ro.read("bound", ov.bound);
      ro.read("active", ov.active);
      ro.finish();
      c.constraint_overrides.push_back(std::move(ov));
    }
  }
  if (const Json* v = r.take("bounds")) {
    if (!v->is_null()) c.bounds = bounds_from_obj(*v, r.child("bounds"));
  }
  r.finish();
  return c;
}

Json study_report_to_obj(const StudyReport& report) {
  Json o;
  o["schema_version"] = kSchemaVersion;
  o["config"] = study_config_to_obj(report.config);
  Json scenarios = Json::array();
  for (const ScenarioResult& r : report.scenarios) {
    scenarios.push_back(scenario_result_to_obj(r));
  }
  o["scenarios"] = std::move(scenarios);
  Json curves = Json::array();
  for (const ScenarioResult& r : report.curve_points) {
    curves.push_back(scenario_result_to_obj(r));
  }
  o["curve_points"] = std::move(curves);
  if (report.best.has_value()) {
    Json b;
    b["scenario"] = scenario_to_obj(report.best->scenario);
    b["efficiency"] = report.best->efficiency;
    b["rationale"] = report.best->rationale;
    o["best"] = std::move(b);
  } else {
    o["best"] = nullptr;
  }
  Json warnings = Json::array();
  for (const std::string& w : report.warnings) warnings.push_back(w);
  o["warnings"] = std::move(warnings);
  return o;
}

StudyReport study_report_from_obj(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  int version = kSchemaVersion;
  r.read("schema_version", version);
  if (version != kSchemaVersion) {
    throw JsonError(path + ".schema_version: unsupported version " +
                    std::to_string(version));
  }
  StudyReport report;
  if (const Json* v = r.take("config")) {
    report.config = study_config_from_obj(*v, r.child("config"));
  }
  if (const Json* v = r.take("scenarios")) {
    const std::string p = r.child("scenarios");
    require_array(*v, p);
    for (std::size_t i = 0; i < v->size(); ++i) {
      report.scenarios.push_back(scenario_result_from_obj(element(*v, i), index_path(p, i)));
    }
  }
  if (const Json* v = r.take("curve_points")) {
    const std::string p = r.child("curve_points");
    require_array(*v, p);
    for (std::size_t i = 0; i < v->size(); ++i) {
      report.curve_points.push_back(
          scenario_result_from_obj(element(*v, i), index_path(p, i)));
    }
  }
  if (const Json* v = r.take("best")) {
    if (!v->is_null()) {
      ObjectReader rb(*v, r.child("best"));
      BestSelection best;
      if (const Json* s = rb.take("scenario")) {
        best.scenario = scenario_from_obj(*s, rb.child("scenario"));
      }
      rb.read("efficiency", best.efficiency);
      rb.read("rationale", best.rationale);
      rb.finish();
      report.best = std::move(best);
    }
  }
  if (const Json* v = r.take("warnings")) {
    const std::string p = r.child("warnings");
    require_array(*v, p);
    for (std::size_t i = 0; i < v->size(); ++i) {
      report.warnings.push_back(string_at(element(*v, i), index_path(p, i)));
    }
  }
  r.finish();
  return report;
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw JsonError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

MotorSpec motor_spec_from_json(const std::string& text) {
  return motor_spec_from_obj(parse_text(text), "spec", /*top_level=*/true);
}

DesignVector design_from_json(const std::string& text) {
  const Json j = parse_text(text);
  if (!j.is_object()) throw JsonError("design: expected an object");
  Json stripped = j;
  if (const auto it = stripped.find("schema_version"); it != stripped.end()) {
    if (!it->is_number_integer() || it->get<int>() != kSchemaVersion) {
      throw JsonError("design.schema_version: unsupported version");
    }
    stripped.erase(it);
  }
  return design_from_obj(stripped, "design");
}

StudyConfig study_config_from_json(const std::string& text) {
  return study_config_from_obj(parse_text(text), "study_config", /*top_level=*/true);
}

StudyReport study_report_from_json(const std::string& text) {
  return study_report_from_obj(parse_text(text), "study_report");
}

std::string motor_spec_to_json(const MotorSpec& spec) {
  Json o;
  o["schema_version"] = kSchemaVersion;
  Json body = motor_spec_to_obj(spec);
  for (auto& item : body.items()) o[item.key()] = std::move(item.value());
  return dump(o);
}

std::string design_to_json(const DesignVector& design) {
  Json o;
  o["schema_version"] = kSchemaVersion;
  Json body = design_to_obj(design);
  for (auto& item : body.items()) o[item.key()] = std::move(item.value());
  return dump(o);
}

std::string study_config_to_json(const StudyConfig& config) {
  Json o;
  o["schema_version"] = kSchemaVersion;
  Json body = study_config_to_obj(config);
  for (auto& item : body.items()) o[item.key()] = std::move(item.value());
  return dump(o);
}

std::string study_report_to_json(const StudyReport& report) {
  return dump(study_report_to_obj(report));
}

std::string evaluation_to_json(const MotorSpec& spec, const DesignVector& design,
                               const EvalResult& eval,
                               const ConstraintReport* constraints) {
  Json o;
  o["schema_version"] = kSchemaVersion;
  o["spec"] = motor_spec_to_obj(spec);
  o["design"] = design_to_obj(design);
  o["ok"] = eval.ok();
  if (eval.ok()) {
    o["performance"] = performance_to_obj(*eval.report);
  } else {
    o["failure_stage"] = eval.failure.has_value() ? to_string(*eval.failure) : "unknown";
    o["detail"] = eval.detail;
  }
  o["constraints"] = constraints != nullptr ? constraint_report_to_obj(*constraints)
                                            : Json(nullptr);
  return dump(o);
}

std::string optimization_to_json(const MotorSpec& spec, const OptimizeResult& result) {
  Json o;
  o["schema_version"] = kSchemaVersion;
  o["spec"] = motor_spec_to_obj(spec);
  Json body = optimize_result_to_obj(result);
  for (auto& item : body.items()) o[item.key()] = std::move(item.value());
  return dump(o);
}

}  // namespace evim
