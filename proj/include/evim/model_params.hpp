#pragma once

#include <string>

namespace evim {

// Every empirical coefficient of the analytical model lives here, in one
// place, so a calibration change never hides inside a formula.  Values are
// classical first-cut design constants unless noted otherwise.
struct ModelParams {
    // Stator slot copper fill (bare copper / gross slot area).
    double slot_fill_factor = 0.40;

    // Mean turn length = 2*L + end_turn_pitch_coeff*pole_pitch + end_turn_const_m.
    double end_turn_pitch_coeff = 2.3;
    double end_turn_const_m = 0.08;

    // Lamination stacking factor (iron fraction of the stack length).
    double lamination_stacking = 0.95;

    // Shaft diameter as a fraction of the stator bore; rotor slots must clear it.
    double shaft_diameter_fraction = 0.25;

    // Rotor inertia allowance multiplier on the 0.5*m*r^2 cylinder estimate
    // (covers end rings and shaft stubs).
    double inertia_allowance = 1.0;

    // Effective slot opening for the Carter factor: semi-closed slots modelled
    // as a fraction of the slot width with a manufacturing floor.
    double slot_opening_fraction = 0.35;
    double slot_opening_min_m = 0.0015;

    // Specific slot permeance of a round rotor slot (rectangular uses d/(3w)).
    double round_slot_permeance = 0.66;

    // Specific permeances of the stator end winding and the rotor end ring.
    double end_leakage_permeance = 0.35;
    double ring_leakage_permeance = 0.30;

    // Frame-to-coolant heat transfer coefficient for the lumped thermal model.
    double cooling_h_w_per_m2k = 28.0;

    // Stray load loss as a fraction of rated power, split into the four
    // classical components: pulsation, skew leakage, zigzag, bar leakage.
    double stray_fraction = 0.018;
    double stray_split_pulsation = 0.35;
    double stray_split_skew = 0.15;
    double stray_split_zigzag = 0.35;
    double stray_split_bar_leakage = 0.15;

    // "circuit_max": peak of the fundamental torque-slip curve (closed form).
    // "paper_literal": the legacy 1.5*E/(X_r*omega_s) estimate, kept for
    // side-by-side comparison; it is always reported either way.
    std::string breakdown_model = "circuit_max";

    // Normalized violation assigned to every constraint when a design cannot
    // be evaluated at all (geometry/winding/rated-point failure).
    double infeasible_violation_cap = 10.0;
};

} // namespace evim
