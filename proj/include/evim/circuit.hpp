#pragma once

#include <vector>

#include "evim/geometry.hpp"
#include "evim/model_params.hpp"
#include "evim/spec_model.hpp"

namespace evim {

// Stator winding synthesized from the EMF equation at the base frequency.
struct WindingSpec {
    int turns_per_phase = 0;
    double winding_factor = 0;     // distribution factor, full-pitch single layer
    double conductors_per_slot = 0;
    double conductor_area = 0;     // m^2 of copper per conductor
    int parallel_paths = 1;
    double flux_per_pole = 0;      // Wb, fundamental
};

WindingSpec synthesize_winding(const MotorSpec& spec, const DerivedGeometry& g,
                               double airgap_flux_density,
                               const ModelParams& params = ModelParams{});

// Slip of time-harmonic m when the fundamental runs at slip s1.
double harmonic_slip(int order, double fundamental_slip, Rotation rotation);

// Current-displacement (skin) factor of a rectangular bar of reduced height xi.
double rectangular_bar_skin_factor(double xi);
double bar_reduced_height(double bar_depth, double frequency_hz, double slip,
                          double bar_resistivity);

// Carter's airgap extension for one slotted surface.
double carter_coefficient(double slot_pitch, double slot_opening, double airgap);

// Frequency-independent element set of one machine, referred to the stator.
// Reactances are stored at the base frequency; harmonic m scales them by m.
struct CircuitModel {
    double base_frequency_hz = 0;
    double stator_resistance = 0;      // R_s, skin-free (stranded conductors)
    double rotor_bar_resistance = 0;   // referred, DC, bar portion (skin applies here)
    double rotor_ring_resistance = 0;  // referred, end rings (skin-free)
    double stator_leakage_x1 = 0;      // slot + differential + end, at f_b
    double rotor_leakage_x1 = 0;       // referred slot + differential + ring, at f_b
    double magnetizing_x1 = 0;         // X_m at f_b
    double bar_depth = 0;              // conductor height for the skin factor
    double bar_resistivity = 0;
    double carter = 0;                 // combined Carter coefficient (echo)
    double effective_airgap = 0;       // g * carter (echo)
};

CircuitModel build_circuit_model(const MotorSpec& spec, const DerivedGeometry& g,
                                 const WindingSpec& w, const MaterialCatalog& materials,
                                 const ModelParams& params = ModelParams{});

// Per-harmonic T-circuit elements at a given harmonic slip.
struct HarmonicCircuit {
    int order = 1;
    double frequency_hz = 0;
    double stator_resistance = 0;
    double rotor_resistance = 0;       // skin-corrected at (f_m, s_m)
    double stator_leakage_reactance = 0;
    double rotor_leakage_reactance = 0;
    double magnetizing_reactance = 0;
    double skin_factor = 1.0;          // echo of k_r applied to the bar portion
};

HarmonicCircuit circuit_params(const CircuitModel& model, int order, double slip);

// Steady-state phasor solution of one harmonic branch (magnitudes, rms).
struct OperatingSolution {
    int order = 1;
    double voltage = 0;          // phase rms applied to this harmonic
    double slip = 0;
    double stator_current = 0;
    double rotor_current = 0;    // referred
    double airgap_emf = 0;       // magnitude across the magnetizing branch
    double power_factor = 0;     // cos(angle between V and I_s)
};

OperatingSolution solve_harmonic(const HarmonicCircuit& c, double phase_voltage, double slip);

// Thevenin reduction of stator branch + magnetizing branch at the fundamental.
// voltage_factor scales the applied phase voltage to the Thevenin source.
struct TheveninEquivalent {
    double voltage_factor = 0;
    double resistance = 0;
    double reactance = 0;
};

TheveninEquivalent thevenin_fundamental(const CircuitModel& model);

// Slip at rated load: bisection on shaft power (converted power minus
// friction/windage) against the rated target.  Throws NoRatedPoint when the
// machine cannot deliver the target on the stable branch.
double solve_rated_slip(const MotorSpec& spec, const CircuitModel& model,
                        const DerivedGeometry& g, const ModelParams& params = ModelParams{});

// Shaft torque at fundamental slip s1, all spectrum harmonics included
// (backward harmonics brake).  N*m.
double shaft_torque_at(const MotorSpec& spec, const CircuitModel& model, double s1);

} // namespace evim
