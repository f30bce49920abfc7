#include "evim/geometry.hpp"

#include <cmath>
#include <sstream>

#include "evim/errors.hpp"

namespace evim {

namespace {

double slot_area(SlotShape shape, double width, double depth) {
    if (shape == SlotShape::Round) {
        // Round slots are punched circles: the width IS the diameter.
        return M_PI * width * width / 4.0;
    }
    return width * depth;
}

double annulus_area(double outer_d, double inner_d) {
    return M_PI / 4.0 * (outer_d * outer_d - inner_d * inner_d);
}

} // namespace

DerivedGeometry derive_geometry(const MotorSpec& spec, const DesignVector& x0,
                                const ModelParams& params) {
    const DesignVector x = x0.canonical_for(spec);

    for (int i = 0; i < DesignVector::kCount; ++i) {
        if (!(x.v[i] > 0) || !std::isfinite(x.v[i])) {
            std::ostringstream os;
            os << "design variable " << DesignVector::name(i) << " must be positive, got " << x.v[i];
            throw GeometryInfeasible(os.str());
        }
    }

    DerivedGeometry g;
    g.stator_inner_diameter = x.stator_inner_diameter();
    g.core_length = x.core_length();
    g.airgap_length = x.airgap_length();
    g.rotor_outer_diameter = g.stator_inner_diameter - 2.0 * g.airgap_length;
    if (g.rotor_outer_diameter <= 0)
        throw GeometryInfeasible("airgap swallows the rotor");

    g.stator_slot_width = x.stator_slot_width();
    g.stator_slot_depth = x.stator_slot_depth();
    g.rotor_slot_width = x.rotor_slot_width();
    g.rotor_slot_depth = x.rotor_slot_depth();
    g.stator_yoke_depth = x.stator_yoke_depth();
    g.rotor_yoke_depth = x.rotor_yoke_depth();
    g.end_ring_cross_section = x.end_ring_cross_section();

    g.stator_outer_diameter =
        g.stator_inner_diameter + 2.0 * g.stator_slot_depth + 2.0 * g.stator_yoke_depth;
    g.pole_pitch = M_PI * g.stator_inner_diameter / spec.pole_count;
    g.stator_slot_pitch_bore = M_PI * g.stator_inner_diameter / spec.stator_slots;
    g.rotor_slot_pitch_surface = M_PI * g.rotor_outer_diameter / spec.rotor_slots;

    // Teeth taper with radius; the flux-carrying width is taken at the mean
    // slot radius (stator slots open outward, rotor slots inward).
    const double stator_mean_d = g.stator_inner_diameter + g.stator_slot_depth;
    const double rotor_mean_d = g.rotor_outer_diameter - g.rotor_slot_depth;
    g.stator_tooth_width = M_PI * stator_mean_d / spec.stator_slots - g.stator_slot_width;
    g.rotor_tooth_width = M_PI * rotor_mean_d / spec.rotor_slots - g.rotor_slot_width;
    if (g.stator_tooth_width <= 0)
        throw GeometryInfeasible("stator tooth width is non-positive");
    if (g.rotor_tooth_width <= 0)
        throw GeometryInfeasible("rotor tooth width is non-positive");

    g.stator_slot_area = slot_area(spec.stator_slot_shape, g.stator_slot_width, g.stator_slot_depth);
    g.rotor_slot_area = slot_area(spec.rotor_slot_shape, g.rotor_slot_width, g.rotor_slot_depth);

    g.shaft_diameter = params.shaft_diameter_fraction * g.stator_inner_diameter;
    const double slot_bottom_radius = g.rotor_outer_diameter / 2.0 - g.rotor_slot_depth;
    if (slot_bottom_radius - g.rotor_yoke_depth < g.shaft_diameter / 2.0)
        throw GeometryInfeasible("rotor slots plus yoke overlap the shaft allowance");

    g.end_ring_mean_diameter = g.rotor_outer_diameter - g.rotor_slot_depth;
    g.mean_turn_length = 2.0 * g.core_length +
                         params.end_turn_pitch_coeff * g.pole_pitch +
                         params.end_turn_const_m;
    return g;
}

MassBreakdown mass_and_volume(const DerivedGeometry& g, const MotorSpec& spec,
                              const MaterialCatalog& materials, const ModelParams& params) {
    MassBreakdown m;
    const double kfe = params.lamination_stacking;
    const double L = g.core_length;

    // Stator iron: tooth annulus minus the slots, plus the yoke annulus.
    const double slot_top_d = g.stator_inner_diameter + 2.0 * g.stator_slot_depth;
    const double stator_tooth_area =
        annulus_area(slot_top_d, g.stator_inner_diameter) - spec.stator_slots * g.stator_slot_area;
    const double stator_yoke_area = annulus_area(g.stator_outer_diameter, slot_top_d);
    m.stator_tooth_iron = stator_tooth_area * L * kfe * materials.steel_density;
    m.stator_yoke_iron = stator_yoke_area * L * kfe * materials.steel_density;
    m.stator_iron = m.stator_tooth_iron + m.stator_yoke_iron;

    // Rotor iron from surface to shaft; the loss model uses the tooth band and
    // one yoke depth below the slots, the rest is near-fluxless core.
    const double slot_bottom_d = g.rotor_outer_diameter - 2.0 * g.rotor_slot_depth;
    const double rotor_tooth_area =
        annulus_area(g.rotor_outer_diameter, slot_bottom_d) - spec.rotor_slots * g.rotor_slot_area;
    const double rotor_iron_area =
        annulus_area(g.rotor_outer_diameter, g.shaft_diameter) - spec.rotor_slots * g.rotor_slot_area;
    const double rotor_yoke_area =
        annulus_area(slot_bottom_d, slot_bottom_d - 2.0 * g.rotor_yoke_depth);
    m.rotor_tooth_iron = rotor_tooth_area * L * kfe * materials.steel_density;
    m.rotor_yoke_iron = rotor_yoke_area * L * kfe * materials.steel_density;
    m.rotor_iron = rotor_iron_area * L * kfe * materials.steel_density;

    // Winding copper: slot fill times half the mean turn per slot pass.
    const double copper_volume =
        spec.stator_slots * g.stator_slot_area * params.slot_fill_factor * (g.mean_turn_length / 2.0);
    m.stator_copper = copper_volume * materials.copper_density;

    // Cage: full bars plus two end rings.
    const double bar_volume = spec.rotor_slots * g.rotor_slot_area * L;
    const double ring_volume = 2.0 * g.end_ring_cross_section * M_PI * g.end_ring_mean_diameter;
    m.rotor_aluminum = (bar_volume + ring_volume) * materials.aluminum_density;

    m.total = m.stator_iron + m.rotor_iron + m.stator_copper + m.rotor_aluminum;
    m.active_volume = M_PI / 4.0 * g.stator_outer_diameter * g.stator_outer_diameter * L;
    return m;
}

CostBreakdown material_cost(const MassBreakdown& m, const MaterialCatalog& materials) {
    CostBreakdown c;
    c.steel = (m.stator_iron + m.rotor_iron) * materials.steel_price;
    c.copper = m.stator_copper * materials.copper_price;
    c.aluminum = m.rotor_aluminum * materials.aluminum_price;
    c.total = c.steel + c.copper + c.aluminum;
    return c;
}

double rotor_inertia(const DerivedGeometry& g, const MotorSpec& spec,
                     const MaterialCatalog& materials, const ModelParams& params) {
    const double r = g.rotor_outer_diameter / 2.0;
    const double cylinder_area = M_PI * r * r;
    const double slots_area = spec.rotor_slots * g.rotor_slot_area;
    const double steel_mass =
        (cylinder_area - slots_area) * g.core_length * materials.steel_density;
    const double bar_mass = slots_area * g.core_length * materials.aluminum_density;
    return params.inertia_allowance * 0.5 * (steel_mass + bar_mass) * r * r;
}

double rotor_tip_speed(const DerivedGeometry& g, double speed_rpm) {
    return rotor_tip_speed(g.rotor_outer_diameter, speed_rpm);
}

double rotor_tip_speed(double rotor_outer_diameter, double speed_rpm) {
    return M_PI * rotor_outer_diameter * speed_rpm / 60.0;
}

} // namespace evim
