#include "evim/spec_model.hpp"

#include <algorithm>
#include <cmath>

namespace evim {

const char* to_string(SlotShape s) {
    return s == SlotShape::Rectangular ? "rectangular" : "round";
}

const char* to_string(Rotation r) {
    return r == Rotation::Forward ? "forward" : "backward";
}

Rotation default_rotation(int order) {
    // 1, 7, 13, ... -> forward; 5, 11, 17, ... -> backward.
    return (order % 6 == 1) ? Rotation::Forward : Rotation::Backward;
}

HarmonicSpectrum HarmonicSpectrum::vsi_default() {
    HarmonicSpectrum s;
    s.entries = {
        {1, 1.000, Rotation::Forward},
        {5, 0.972, Rotation::Backward},
        {7, 0.088, Rotation::Forward},
        {11, 0.019, Rotation::Backward},
        {13, 0.015, Rotation::Forward},
        {17, 0.050, Rotation::Backward},
    };
    return s;
}

const HarmonicEntry* HarmonicSpectrum::find(int order) const {
    for (const auto& e : entries)
        if (e.order == order) return &e;
    return nullptr;
}

double MotorSpec::phase_voltage() const {
    return rated_voltage_line_v / std::sqrt(3.0);
}

double MotorSpec::rated_speed_rad() const {
    return 2.0 * M_PI * rated_speed_rpm / 60.0;
}

double MotorSpec::rated_torque_target() const {
    return rated_power_w / rated_speed_rad();
}

MotorSpec make_motor_spec(int pole_count, double rated_speed_rpm, SlotShape rotor_slot_shape) {
    MotorSpec spec;
    spec.pole_count = pole_count;
    spec.rated_speed_rpm = rated_speed_rpm;
    spec.rotor_slot_shape = rotor_slot_shape;
    if (pole_count == 4) {
        spec.stator_slots = 24;
        spec.rotor_slots = 18;
    }
    return spec;
}

double base_frequency_hz(const MotorSpec& spec) {
    return spec.pole_count * spec.rated_speed_rpm / 120.0;
}

double max_frequency_hz(const MotorSpec& spec) {
    return spec.pole_count * spec.max_speed_rpm / 120.0;
}

std::vector<Violation> validate_spec(const MotorSpec& spec, const MaterialCatalog& m) {
    std::vector<Violation> out;
    auto bad = [&](const char* code, const std::string& msg) { out.push_back({code, msg}); };

    if (!(spec.rated_power_w > 0)) bad("rated_power", "rated power must be positive");
    if (!(spec.rated_voltage_line_v > 0)) bad("rated_voltage", "rated line voltage must be positive");
    if (spec.pole_count != 2 && spec.pole_count != 4)
        bad("pole_count", "pole count must be 2 or 4");
    if (!(spec.rated_speed_rpm > 0)) bad("rated_speed", "rated speed must be positive");
    if (!(spec.max_speed_rpm > spec.rated_speed_rpm))
        bad("rated_speed", "rated speed must be strictly below max speed");
    if (spec.stator_slots <= 0 || spec.rotor_slots <= 0)
        bad("slots", "slot counts must be positive");
    if (spec.stator_slots == spec.rotor_slots)
        bad("slots", "stator and rotor slot counts must differ (cogging)");
    if (spec.phases != 3) bad("phases", "only three-phase machines are modelled");

    // Spectrum: fundamental present first at amplitude 1.0, forward; orders
    // strictly increasing; amplitudes non-negative.
    const auto& e = spec.spectrum.entries;
    if (e.empty() || e.front().order != 1 || e.front().amplitude != 1.0 ||
        e.front().rotation != Rotation::Forward) {
        bad("spectrum", "spectrum must start with the forward fundamental at amplitude 1");
    }
    for (std::size_t i = 1; i < e.size(); ++i) {
        if (e[i].order <= e[i - 1].order) {
            bad("spectrum", "harmonic orders must be strictly increasing");
            break;
        }
    }
    for (const auto& h : e)
        if (h.amplitude < 0) { bad("spectrum", "harmonic amplitudes must be non-negative"); break; }

    if (!(m.lamination_thickness_mm > 0) || !(m.lamination_resistivity_ohm_cm > 0) ||
        !(m.hysteresis_coefficient > 0) || !(m.eddy_coefficient > 0) ||
        !(m.steel_density > 0) || !(m.copper_density > 0) || !(m.aluminum_density > 0) ||
        !(m.copper_resistivity > 0) || !(m.aluminum_resistivity > 0)) {
        bad("materials", "material constants must be positive");
    }
    if (m.steinmetz_exponent < 1.6 || m.steinmetz_exponent > 2.4)
        bad("materials", "Steinmetz exponent outside the plausible 1.6..2.4 range");
    if (m.steel_price < 0 || m.copper_price < 0 || m.aluminum_price < 0)
        bad("materials", "unit prices must be non-negative");

    return out;
}

const char* DesignVector::name(int i) {
    static const char* names[kCount] = {
        "stator_inner_diameter", "core_length",
        "stator_slot_width", "stator_slot_depth",
        "rotor_slot_width", "rotor_slot_depth",
        "stator_yoke_depth", "rotor_yoke_depth",
        "airgap_length", "end_ring_cross_section",
        "airgap_flux_density",
    };
    return names[i];
}

DesignVector DesignVector::canonical_for(const MotorSpec& spec) const {
    DesignVector x = *this;
    if (spec.rotor_slot_shape == SlotShape::Round) x.v[5] = x.v[4]; // depth := width
    return x;
}

bool VariableBounds::contains(const DesignVector& x) const {
    for (int i = 0; i < DesignVector::kCount; ++i)
        if (x.v[i] < lower[i] || x.v[i] > upper[i]) return false;
    return true;
}

DesignVector VariableBounds::clamp(const DesignVector& x) const {
    DesignVector out = x;
    for (int i = 0; i < DesignVector::kCount; ++i)
        out.v[i] = std::clamp(out.v[i], lower[i], upper[i]);
    return out;
}

VariableBounds default_bounds(const MotorSpec&) {
    VariableBounds b;
    auto set = [&](int i, double lo, double hi) { b.lower[i] = lo; b.upper[i] = hi; };
    // Bore ceiling: past ~0.25 m the 120 m/s tip-speed limit at 9000 rpm is
    // violated for any rotor, so larger bores are dead search space.  Core
    // length capped near the same aspect envelope for a packageable frame.
    set(0, 0.06, 0.25);      // stator inner diameter
    set(1, 0.04, 0.22);      // core length
    set(2, 0.003, 0.05);     // stator slot width
    set(3, 0.003, 0.05);     // stator slot depth
    set(4, 0.003, 0.05);     // rotor slot width
    set(5, 0.003, 0.05);     // rotor slot depth
    set(6, 0.005, 0.10);     // stator yoke depth
    set(7, 0.005, 0.05);     // rotor yoke depth
    set(8, 0.0002, 0.002);   // airgap length
    set(9, 1.0e-5, 1.0e-3);  // end ring cross-section
    set(10, 0.3, 1.0);       // airgap flux density
    return b;
}

} // namespace evim
