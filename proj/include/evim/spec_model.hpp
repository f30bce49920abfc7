#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace evim {

enum class SlotShape { Rectangular, Round };
enum class Rotation { Forward, Backward };

const char* to_string(SlotShape s);
const char* to_string(Rotation r);

// One inverter voltage harmonic: amplitude is per-unit of the fundamental
// phase voltage; rotation is the direction of its airgap field.
struct HarmonicEntry {
    int order = 1;
    double amplitude = 1.0;
    Rotation rotation = Rotation::Forward;
};

// Field rotation of a balanced three-phase time harmonic: orders 6k+1 rotate
// forward, 6k-1 backward (triplens are absent from a line-line supply).
Rotation default_rotation(int order);

struct HarmonicSpectrum {
    std::vector<HarmonicEntry> entries;

    // Six-step-style inverter spectrum used throughout the study.
    static HarmonicSpectrum vsi_default();

    std::size_t size() const { return entries.size(); }
    const HarmonicEntry* find(int order) const;
};

// Material and loss-coefficient catalog.  The two core-loss coefficients are
// calibrated so a mid-size design lands near 2% of rated power in iron loss
// with 0.35 mm EV-grade laminations; everything else is a handbook value.
struct MaterialCatalog {
    double lamination_thickness_mm = 0.35;
    double lamination_resistivity_ohm_cm = 5.0e-5; // ~50 uOhm*cm silicon steel

    // Loss coefficients for 0.35 mm silicon-steel laminations, eddy-weighted:
    // the f^2 eddy term is sized so core loss outgrows the winding-loss
    // reduction when a design family is re-rated to a higher base frequency,
    // which is what pushes optimal efficiency down as rated speed rises.
    double hysteresis_coefficient = 1.88e-2; // K_h in P_h = K_h*sigma_h*f*B^k per kg
    double eddy_coefficient = 1.856e-6;      // K_e in P_e = K_e*t^2*f^2*B^2*K_Em/rho per kg
    double steinmetz_exponent = 2.0;        // k
    double sigma_h = 3.0;                   // 0.35 mm sheet factor

    // Optional per-order permeability correction K_Em; missing orders mean 1.0.
    std::map<int, double> harmonic_permeability;

    double steel_density = 7850.0;    // kg/m^3
    double copper_density = 8960.0;
    double aluminum_density = 2700.0;

    double steel_price = 2.0;    // $/kg
    double copper_price = 8.0;
    double aluminum_price = 3.0;

    double copper_resistivity = 2.1e-8;   // Ohm*m, winding at working temperature
    double aluminum_resistivity = 3.3e-8; // Ohm*m, hot cast bar/ring

    static MaterialCatalog defaults() { return MaterialCatalog{}; }
};

// Fixed ratings and topology of one motor variant.  Geometry is *not* here;
// it lives in DesignVector so the optimizer can move it.
struct MotorSpec {
    double rated_power_w = 15.0 * 745.7;  // 15 hp traction rating
    double rated_voltage_line_v = 96.0;   // battery-fed line-line rms, wye
    int pole_count = 2;
    double rated_speed_rpm = 1800.0;
    double max_speed_rpm = 9000.0;
    int stator_slots = 18;
    int rotor_slots = 13;
    SlotShape stator_slot_shape = SlotShape::Rectangular;
    SlotShape rotor_slot_shape = SlotShape::Rectangular;
    HarmonicSpectrum spectrum = HarmonicSpectrum::vsi_default();
    int phases = 3;

    double phase_voltage() const;            // wye: line / sqrt(3)
    int pole_pairs() const { return pole_count / 2; }
    double rated_speed_rad() const;          // mechanical rad/s at rated rpm
    double rated_torque_target() const;      // rated_power / rated_speed_rad
};

// Stamp a spec for one study scenario: slot counts follow the pole count
// (18/13 for 2 poles, 24/18 for 4 poles) unless overridden later.
MotorSpec make_motor_spec(int pole_count, double rated_speed_rpm,
                          SlotShape rotor_slot_shape = SlotShape::Rectangular);

struct Violation {
    std::string code;
    std::string message;
};

std::vector<Violation> validate_spec(const MotorSpec& spec,
                                     const MaterialCatalog& materials = MaterialCatalog::defaults());

double base_frequency_hz(const MotorSpec& spec); // pole_count * rpm / 120
double max_frequency_hz(const MotorSpec& spec);

// The 11 free design variables, SI units (m, m^2, T).
struct DesignVector {
    static constexpr int kCount = 11;

    enum Index : int {
        kStatorInnerDiameter = 0,
        kCoreLength,
        kStatorSlotWidth,
        kStatorSlotDepth,
        kRotorSlotWidth,
        kRotorSlotDepth,
        kStatorYokeDepth,
        kRotorYokeDepth,
        kAirgapLength,
        kEndRingCrossSection,
        kAirgapFluxDensity,
    };

    std::array<double, kCount> v{};

    double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

    double& stator_inner_diameter() { return v[0]; }
    double& core_length() { return v[1]; }
    double& stator_slot_width() { return v[2]; }
    double& stator_slot_depth() { return v[3]; }
    double& rotor_slot_width() { return v[4]; }
    double& rotor_slot_depth() { return v[5]; }
    double& stator_yoke_depth() { return v[6]; }
    double& rotor_yoke_depth() { return v[7]; }
    double& airgap_length() { return v[8]; }
    double& end_ring_cross_section() { return v[9]; }
    double& airgap_flux_density() { return v[10]; }

    double stator_inner_diameter() const { return v[0]; }
    double core_length() const { return v[1]; }
    double stator_slot_width() const { return v[2]; }
    double stator_slot_depth() const { return v[3]; }
    double rotor_slot_width() const { return v[4]; }
    double rotor_slot_depth() const { return v[5]; }
    double stator_yoke_depth() const { return v[6]; }
    double rotor_yoke_depth() const { return v[7]; }
    double airgap_length() const { return v[8]; }
    double end_ring_cross_section() const { return v[9]; }
    double airgap_flux_density() const { return v[10]; }

    static const char* name(int i);

    // Round rotor slots are a single dimension: depth mirrors width.
    DesignVector canonical_for(const MotorSpec& spec) const;
};

struct VariableBounds {
    std::array<double, DesignVector::kCount> lower{};
    std::array<double, DesignVector::kCount> upper{};

    bool contains(const DesignVector& x) const;
    DesignVector clamp(const DesignVector& x) const;
};

// Wide default search box; identical for every slot shape and pole count.
VariableBounds default_bounds(const MotorSpec& spec);

} // namespace evim
