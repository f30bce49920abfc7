#include "evim/performance.hpp"

#include <cmath>

#include "evim/errors.hpp"

namespace evim {

FluxDensities flux_densities(const DerivedGeometry& g, const MotorSpec&,
                             double airgap_flux_density, const ModelParams& params) {
    const double kfe = params.lamination_stacking;
    FluxDensities b;
    // Gap flux per slot pitch funnels through one tooth.
    b.stator_tooth = airgap_flux_density * g.stator_slot_pitch_bore /
                     (g.stator_tooth_width * kfe);
    b.rotor_tooth = airgap_flux_density * g.rotor_slot_pitch_surface /
                    (g.rotor_tooth_width * kfe);
    // Half the pole flux returns through each yoke.
    const double flux_per_pole =
        (2.0 / M_PI) * airgap_flux_density * g.pole_pitch * g.core_length;
    b.stator_yoke = flux_per_pole / (2.0 * g.stator_yoke_depth * g.core_length * kfe);
    b.rotor_yoke = flux_per_pole / (2.0 * g.rotor_yoke_depth * g.core_length * kfe);
    return b;
}

CoreLossResult core_losses(const MassBreakdown& masses, const FluxDensities& flux,
                           const HarmonicSpectrum& spectrum, double base_frequency_hz,
                           const MaterialCatalog& mat) {
    CoreLossResult out;
    const double t_mm = mat.lamination_thickness_mm;
    const double eddy_scale = mat.eddy_coefficient * t_mm * t_mm / mat.lamination_resistivity_ohm_cm;
    const double k = mat.steinmetz_exponent;

    const struct { const char* name; double mass; double b1; } parts[] = {
        {"stator_tooth", masses.stator_tooth_iron, flux.stator_tooth},
        {"stator_yoke", masses.stator_yoke_iron, flux.stator_yoke},
        {"rotor_tooth", masses.rotor_tooth_iron, flux.rotor_tooth},
        {"rotor_yoke", masses.rotor_yoke_iron, flux.rotor_yoke},
    };

    for (const auto& h : spectrum.entries) {
        const double fm = h.order * base_frequency_hz;
        double k_em = 1.0;
        if (auto it = mat.harmonic_permeability.find(h.order); it != mat.harmonic_permeability.end())
            k_em = it->second;
        for (const auto& part : parts) {
            // Harmonic flux rides the voltage spectrum: amplitude/order of B1.
            const double b = part.b1 * h.amplitude / h.order;
            // B^k with an exact fast path at the default k = 2 so the scaling
            // identities hold to machine precision.
            const double bk = (k == 2.0) ? b * b : std::pow(b, k);
            const double hyst = part.mass * mat.hysteresis_coefficient * mat.sigma_h * fm * bk;
            const double eddy = part.mass * eddy_scale * (fm * fm) * (b * b) * k_em;
            out.hysteresis += hyst;
            out.eddy += eddy;
            out.detail.push_back({h.order, part.name, hyst, eddy});
        }
    }
    out.total = out.hysteresis + out.eddy;
    return out;
}

OhmicLossResult ohmic_losses(const std::vector<HarmonicCircuit>& circuits,
                             const std::vector<OperatingSolution>& solutions) {
    OhmicLossResult out;
    for (std::size_t i = 0; i < circuits.size() && i < solutions.size(); ++i) {
        const auto& c = circuits[i];
        const auto& s = solutions[i];
        OhmicLossDetail d;
        d.order = c.order;
        d.stator = 3.0 * c.stator_resistance * s.stator_current * s.stator_current;
        d.rotor = 3.0 * c.rotor_resistance * s.rotor_current * s.rotor_current;
        out.stator += d.stator;
        out.rotor += d.rotor;
        out.detail.push_back(d);
    }
    out.total = out.stator + out.rotor;
    return out;
}

double mechanical_losses(const DerivedGeometry& g, double speed_rpm) {
    return mechanical_losses(g.rotor_outer_diameter, g.core_length, speed_rpm);
}

double mechanical_losses(double rotor_outer_diameter, double core_length, double speed_rpm) {
    const double v = M_PI * rotor_outer_diameter * speed_rpm / 60.0;
    return 8.0 * rotor_outer_diameter * (core_length + 0.15) * v * v;
}

StrayLosses stray_losses(const MotorSpec& spec, const ModelParams& params) {
    StrayLosses s;
    const double total = params.stray_fraction * spec.rated_power_w;
    s.pulsation = params.stray_split_pulsation * total;
    s.skew = params.stray_split_skew * total;
    s.zigzag = params.stray_split_zigzag * total;
    s.bar_leakage = params.stray_split_bar_leakage * total;
    s.total = s.pulsation + s.skew + s.zigzag + s.bar_leakage;
    return s;
}

double input_power(const std::vector<OperatingSolution>& solutions) {
    double p = 0.0;
    for (const auto& s : solutions)
        p += 3.0 * s.voltage * s.stator_current * s.power_factor;
    return p;
}

double efficiency(double p_in, double p_loss) {
    if (!(p_in > 0)) throw NonPhysical("input power must be positive");
    if (p_loss > p_in) throw NonPhysical("losses exceed input power");
    return (p_in - p_loss) / p_in;
}

namespace {

double torque_of(const MotorSpec& spec, const HarmonicCircuit& c, const OperatingSolution& s,
                 Rotation rotation) {
    if (s.slip <= 0) return 0.0;
    const double sign = rotation == Rotation::Forward ? 1.0 : -1.0;
    return sign * 3.0 * spec.pole_pairs() * c.rotor_resistance * s.rotor_current *
           s.rotor_current / (2.0 * M_PI * c.frequency_hz * s.slip);
}

Rotation rotation_of(const MotorSpec& spec, int order) {
    if (const HarmonicEntry* e = spec.spectrum.find(order)) return e->rotation;
    return default_rotation(order);
}

} // namespace

double shaft_torque(const MotorSpec& spec, const std::vector<HarmonicCircuit>& circuits,
                    const std::vector<OperatingSolution>& solutions) {
    double t = 0.0;
    for (std::size_t i = 0; i < circuits.size() && i < solutions.size(); ++i)
        t += torque_of(spec, circuits[i], solutions[i], rotation_of(spec, circuits[i].order));
    return t;
}

double shaft_torque_legacy(const MotorSpec& spec, const std::vector<HarmonicCircuit>& circuits,
                           const std::vector<OperatingSolution>& solutions) {
    double t = 0.0;
    for (std::size_t i = 0; i < circuits.size() && i < solutions.size(); ++i) {
        const auto& c = circuits[i];
        const auto& s = solutions[i];
        if (s.slip <= 0) continue;
        t += 1.5 * spec.pole_count * c.rotor_resistance * s.rotor_current * s.rotor_current /
             (c.order * c.frequency_hz * s.slip);
    }
    return t;
}

BreakdownResult breakdown_torque_base(const MotorSpec& spec, const CircuitModel& model,
                                      double airgap_emf_at_rated) {
    BreakdownResult out;
    const TheveninEquivalent th = thevenin_fundamental(model);
    const double v_th = th.voltage_factor * spec.phase_voltage();
    const double x_total = th.reactance + model.rotor_leakage_x1;
    const double u_star = std::hypot(th.resistance, x_total);
    const double omega_e = 2.0 * M_PI * model.base_frequency_hz;

    // Peak of T(s) = 3p/w * Vth^2 * u / ((Rth+u)^2 + X^2) over u = R_r(s)/s.
    // The peak value is independent of R_r, so the slip-dependent skin factor
    // moves the peak slip but not the peak torque.
    out.torque = 3.0 * spec.pole_pairs() * v_th * v_th /
                 (2.0 * omega_e * (th.resistance + u_star));

    double s = (model.rotor_bar_resistance + model.rotor_ring_resistance) / u_star;
    for (int i = 0; i < 6; ++i) {
        const double xi = bar_reduced_height(model.bar_depth, model.base_frequency_hz, s,
                                             model.bar_resistivity);
        const double rr = model.rotor_bar_resistance * rectangular_bar_skin_factor(xi) +
                          model.rotor_ring_resistance;
        s = rr / u_star;
    }
    out.slip = s;

    // Legacy estimate from the airgap EMF and rotor reactance, kept for audit.
    const double omega_sync = omega_e / spec.pole_pairs();
    out.legacy = 1.5 * airgap_emf_at_rated / (model.rotor_leakage_x1 * omega_sync);
    return out;
}

double breakdown_torque_max(double breakdown_base, const MotorSpec& spec) {
    const double ratio = base_frequency_hz(spec) / max_frequency_hz(spec);
    return ratio * ratio * breakdown_base;
}

double inertia_constant(double inertia, const MotorSpec& spec) {
    const double omega = spec.rated_speed_rad();
    return 0.5 * inertia * omega * omega / spec.rated_power_w;
}

double cooling_area(const DerivedGeometry& g) {
    const double d = g.stator_outer_diameter;
    return M_PI * d * (g.core_length + 2.0 * g.pole_pitch) + 2.0 * (M_PI / 4.0) * d * d;
}

double temperature_rise(double ohmic, double core, double stray,
                        const DerivedGeometry& g, const ModelParams& params) {
    return (ohmic + core + stray) / (params.cooling_h_w_per_m2k * cooling_area(g));
}

const char* to_string(InfeasibleStage s) {
    switch (s) {
        case InfeasibleStage::Geometry: return "geometry";
        case InfeasibleStage::Winding: return "winding";
        case InfeasibleStage::RatedPoint: return "rated_point";
    }
    return "unknown";
}

EvalResult evaluate_design(const MotorSpec& spec, const DesignVector& x_in,
                           const MaterialCatalog& materials, const ModelParams& params) {
    EvalResult result;
    const DesignVector x = x_in.canonical_for(spec);

    PerformanceReport r;
    r.design = x;
    try {
        r.geometry = derive_geometry(spec, x, params);
    } catch (const GeometryInfeasible& e) {
        result.failure = InfeasibleStage::Geometry;
        result.detail = e.what();
        return result;
    }
    r.masses = mass_and_volume(r.geometry, spec, materials, params);
    r.cost = material_cost(r.masses, materials);
    r.rotor_inertia_kgm2 = rotor_inertia(r.geometry, spec, materials, params);

    try {
        r.winding = synthesize_winding(spec, r.geometry, x.airgap_flux_density(), params);
    } catch (const WindingInfeasible& e) {
        result.failure = InfeasibleStage::Winding;
        result.detail = e.what();
        return result;
    }

    r.circuit_model = build_circuit_model(spec, r.geometry, r.winding, materials, params);

    try {
        r.rated_slip = solve_rated_slip(spec, r.circuit_model, r.geometry, params);
    } catch (const NoRatedPoint& e) {
        result.failure = InfeasibleStage::RatedPoint;
        result.detail = e.what();
        return result;
    }

    const double v1 = spec.phase_voltage();
    for (const auto& h : spec.spectrum.entries) {
        const double sm = harmonic_slip(h.order, r.rated_slip, h.rotation);
        r.circuits.push_back(circuit_params(r.circuit_model, h.order, sm));
        r.solutions.push_back(solve_harmonic(r.circuits.back(), h.amplitude * v1, sm));
    }

    const FluxDensities flux = flux_densities(r.geometry, spec, x.airgap_flux_density(), params);
    r.stator_tooth_flux_density = flux.stator_tooth;

    const double fb = base_frequency_hz(spec);
    r.losses.core = core_losses(r.masses, flux, spec.spectrum, fb, materials);
    r.losses.ohmic = ohmic_losses(r.circuits, r.solutions);
    const double shaft_rpm = (1.0 - r.rated_slip) * spec.rated_speed_rpm;
    r.losses.mechanical = mechanical_losses(r.geometry, shaft_rpm);
    r.losses.stray = stray_losses(spec, params);
    r.losses.total = r.losses.core.total + r.losses.ohmic.total + r.losses.mechanical +
                     r.losses.stray.total;

    // The circuit carries no iron-loss branch, so the machine draws core and
    // stray loss from the supply on top of the circuit input.  This closes the
    // power balance: input = losses + shaft power.
    r.circuit_input_power_w = input_power(r.solutions);
    r.input_power_w = r.circuit_input_power_w + r.losses.core.total + r.losses.stray.total;
    r.efficiency_value = efficiency(r.input_power_w, r.losses.total);
    r.shaft_power_w = r.input_power_w - r.losses.total;
    r.power_factor = r.solutions.front().power_factor;

    r.rated_torque = shaft_torque(spec, r.circuits, r.solutions);
    r.rated_torque_legacy = shaft_torque_legacy(spec, r.circuits, r.solutions);

    const BreakdownResult bd =
        breakdown_torque_base(spec, r.circuit_model, r.solutions.front().airgap_emf);
    r.breakdown_torque_legacy = bd.legacy;
    r.breakdown_slip = bd.slip;
    r.breakdown_torque_base = params.breakdown_model == "paper_literal" ? bd.legacy : bd.torque;
    r.breakdown_torque_max_speed = breakdown_torque_max(r.breakdown_torque_base, spec);
    r.breakdown_to_rated_ratio =
        r.rated_torque > 0 ? r.breakdown_torque_base / r.rated_torque : 0.0;

    r.temperature_rise_c = temperature_rise(r.losses.ohmic.total, r.losses.core.total,
                                            r.losses.stray.total, r.geometry, params);
    r.inertia_constant_s = inertia_constant(r.rotor_inertia_kgm2, spec);

    const CircuitModel& cm = r.circuit_model;
    r.rotor_time_constant_s = (cm.rotor_leakage_x1 + cm.magnetizing_x1) /
                              (2.0 * M_PI * fb *
                               (cm.rotor_bar_resistance + cm.rotor_ring_resistance));
    r.tip_speed_at_max_ms = rotor_tip_speed(r.geometry, spec.max_speed_rpm);

    result.report = std::move(r);
    return result;
}

} // namespace evim
