#pragma once

#include "evim/model_params.hpp"
#include "evim/spec_model.hpp"

namespace evim {

// Cross-section geometry derived from a design vector.  All lengths in m,
// areas in m^2.  Throws GeometryInfeasible when teeth vanish or rotor slots
// collide with the shaft allowance.
struct DerivedGeometry {
    double stator_inner_diameter = 0;
    double rotor_outer_diameter = 0;   // bore minus two airgaps
    double stator_outer_diameter = 0;  // bore + 2*slot depth + 2*yoke
    double core_length = 0;
    double airgap_length = 0;

    double pole_pitch = 0;              // pi*D/poles at the bore
    double stator_slot_pitch_bore = 0;
    double rotor_slot_pitch_surface = 0;
    double stator_tooth_width = 0;      // at the mean slot radius
    double rotor_tooth_width = 0;

    double stator_slot_width = 0;
    double stator_slot_depth = 0;
    double rotor_slot_width = 0;
    double rotor_slot_depth = 0;
    double stator_slot_area = 0;
    double rotor_slot_area = 0;         // cage bar cross-section

    double stator_yoke_depth = 0;
    double rotor_yoke_depth = 0;
    double end_ring_cross_section = 0;
    double end_ring_mean_diameter = 0;

    double shaft_diameter = 0;
    double mean_turn_length = 0;        // one stator turn, both end arcs included
};

DerivedGeometry derive_geometry(const MotorSpec& spec, const DesignVector& x,
                                const ModelParams& params = ModelParams{});

// Active-material masses.  The four part masses for the iron-loss model
// (tooth/yoke split per side) are carried alongside the aggregates.
struct MassBreakdown {
    double stator_iron = 0;
    double rotor_iron = 0;
    double stator_copper = 0;
    double rotor_aluminum = 0;
    double total = 0;

    double stator_tooth_iron = 0;
    double stator_yoke_iron = 0;
    double rotor_tooth_iron = 0;
    double rotor_yoke_iron = 0;

    double active_volume = 0; // pi/4 * D_o^2 * L envelope
};

MassBreakdown mass_and_volume(const DerivedGeometry& g, const MotorSpec& spec,
                              const MaterialCatalog& materials,
                              const ModelParams& params = ModelParams{});

struct CostBreakdown {
    double steel = 0;
    double copper = 0;
    double aluminum = 0;
    double total = 0;
};

CostBreakdown material_cost(const MassBreakdown& m, const MaterialCatalog& materials);

// Lumped rotor inertia: allowance * 0.5 * m * r^2 with the slotted-steel +
// aluminum-bar cylinder mass.  kg*m^2.
double rotor_inertia(const DerivedGeometry& g, const MotorSpec& spec,
                     const MaterialCatalog& materials,
                     const ModelParams& params = ModelParams{});

// Rotor surface speed (m/s) at a shaft speed in rpm.
double rotor_tip_speed(const DerivedGeometry& g, double speed_rpm);
double rotor_tip_speed(double rotor_outer_diameter, double speed_rpm);

} // namespace evim
