#include "evim/circuit.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "evim/errors.hpp"
#include "evim/performance.hpp"

namespace evim {

namespace {

constexpr double kMu0 = 4.0e-7 * M_PI;

// Distribution factor of a full-pitch single-layer winding for harmonic nu.
double distribution_factor(double q, double slot_angle_el, int nu) {
    const double num = std::sin(nu * q * slot_angle_el / 2.0);
    const double den = q * std::sin(nu * slot_angle_el / 2.0);
    return num / den;
}

// Belt (differential) leakage coefficient of the stator winding: energy of
// the 6k+-1 space harmonics relative to the fundamental.
double stator_differential_coefficient(double q, double slot_angle_el) {
    const double kw1 = distribution_factor(q, slot_angle_el, 1);
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        for (int nu : {6 * k - 1, 6 * k + 1}) {
            const double kw = distribution_factor(q, slot_angle_el, nu);
            const double term = kw / (nu * kw1);
            sum += term * term;
        }
    }
    return sum;
}

// Cage differential coefficient: (x/sin x)^2 - 1 with x = pi*p/Q_r.
double cage_differential_coefficient(int pole_pairs, int rotor_slots) {
    const double x = M_PI * pole_pairs / rotor_slots;
    const double r = x / std::sin(x);
    return r * r - 1.0;
}

} // namespace

WindingSpec synthesize_winding(const MotorSpec& spec, const DerivedGeometry& g,
                               double airgap_flux_density, const ModelParams& params) {
    if (!(airgap_flux_density > 0))
        throw WindingInfeasible("airgap flux density must be positive");

    const double q = double(spec.stator_slots) / (3.0 * spec.pole_count);
    const double slot_angle_el = 2.0 * M_PI * spec.pole_pairs() / spec.stator_slots;

    WindingSpec w;
    w.winding_factor = distribution_factor(q, slot_angle_el, 1);

    // Flux per pole of a sinusoidal field: (2/pi) * B_peak * pole_pitch * L.
    w.flux_per_pole = (2.0 / M_PI) * airgap_flux_density * g.pole_pitch * g.core_length;

    const double fb = base_frequency_hz(spec);
    const double emf_per_turn = 4.44 * fb * w.winding_factor * w.flux_per_pole;
    if (!(emf_per_turn > 0)) throw WindingInfeasible("degenerate EMF per turn");

    const long turns = std::lround(spec.phase_voltage() / emf_per_turn);
    if (turns < 1) throw WindingInfeasible("EMF sizing rounds to zero turns per phase");
    w.turns_per_phase = int(turns);

    w.conductors_per_slot = 6.0 * w.turns_per_phase / spec.stator_slots;
    if (w.conductors_per_slot < 1.0)
        throw WindingInfeasible("fewer than one conductor per slot");

    w.conductor_area = g.stator_slot_area * params.slot_fill_factor / w.conductors_per_slot;
    if (!(w.conductor_area > 0))
        throw WindingInfeasible("no copper area available in the slot");

    w.parallel_paths = 1;
    return w;
}

double harmonic_slip(int order, double fundamental_slip, Rotation rotation) {
    const double shaft = 1.0 - fundamental_slip;
    if (rotation == Rotation::Forward) return (order - shaft) / order;
    return (order + shaft) / order;
}

double rectangular_bar_skin_factor(double xi) {
    if (xi < 0.1) {
        // Series expansion; the closed form is 0/0-ill-conditioned near zero.
        const double x4 = xi * xi * xi * xi;
        return 1.0 + (4.0 / 45.0) * x4;
    }
    const double two_xi = 2.0 * xi;
    return xi * (std::sinh(two_xi) + std::sin(two_xi)) /
           (std::cosh(two_xi) - std::cos(two_xi));
}

double bar_reduced_height(double bar_depth, double frequency_hz, double slip,
                          double bar_resistivity) {
    const double rotor_hz = frequency_hz * slip;
    if (rotor_hz <= 0) return 0.0;
    return bar_depth * std::sqrt(M_PI * kMu0 * rotor_hz / bar_resistivity);
}

double carter_coefficient(double slot_pitch, double slot_opening, double airgap) {
    const double ratio = slot_opening / airgap;
    const double gamma = ratio * ratio / (5.0 + ratio);
    return slot_pitch / (slot_pitch - gamma * airgap);
}

CircuitModel build_circuit_model(const MotorSpec& spec, const DerivedGeometry& g,
                                 const WindingSpec& w, const MaterialCatalog& materials,
                                 const ModelParams& params) {
    CircuitModel m;
    m.base_frequency_hz = base_frequency_hz(spec);
    const double fb = m.base_frequency_hz;
    const double omega = 2.0 * M_PI * fb;
    const int p = spec.pole_pairs();
    const double N = w.turns_per_phase;
    const double Nkw = N * w.winding_factor;

    // Stator phase resistance, stranded conductors (no skin effect).
    m.stator_resistance =
        materials.copper_resistivity * N * g.mean_turn_length / w.conductor_area;

    // Cage referred to the stator.
    const double refer = 12.0 * Nkw * Nkw / spec.rotor_slots;
    const double bar_r = materials.aluminum_resistivity * g.core_length / g.rotor_slot_area;
    const double ring_segment_r = materials.aluminum_resistivity *
                                  (M_PI * g.end_ring_mean_diameter / spec.rotor_slots) /
                                  g.end_ring_cross_section;
    const double ring_angle = M_PI * p / double(spec.rotor_slots);
    const double ring_factor = 2.0 * std::sin(ring_angle) * std::sin(ring_angle);
    m.rotor_bar_resistance = refer * bar_r;
    m.rotor_ring_resistance = refer * ring_segment_r / ring_factor;
    m.bar_depth = g.rotor_slot_depth;
    m.bar_resistivity = materials.aluminum_resistivity;

    // Carter factor of both slotted surfaces; semi-closed openings.
    auto opening = [&](double slot_width) {
        return std::min(slot_width,
                        std::max(params.slot_opening_fraction * slot_width,
                                 params.slot_opening_min_m));
    };
    const double kc_s = carter_coefficient(g.stator_slot_pitch_bore,
                                           opening(g.stator_slot_width), g.airgap_length);
    const double kc_r = carter_coefficient(g.rotor_slot_pitch_surface,
                                           opening(g.rotor_slot_width), g.airgap_length);
    m.carter = kc_s * kc_r;
    m.effective_airgap = g.airgap_length * m.carter;

    // Magnetizing reactance of the three-phase winding across the effective gap.
    m.magnetizing_x1 = 6.0 * kMu0 * fb * Nkw * Nkw * g.stator_inner_diameter *
                       g.core_length / (double(p) * p * m.effective_airgap);

    // Stator leakage: slot + end winding + differential.
    const double lambda_slot_s =
        spec.stator_slot_shape == SlotShape::Round
            ? params.round_slot_permeance
            : g.stator_slot_depth / (3.0 * g.stator_slot_width);
    const double slot_L_s = 12.0 * kMu0 * N * N * g.core_length * lambda_slot_s / spec.stator_slots;
    const double end_length = (g.mean_turn_length - 2.0 * g.core_length) / 2.0;
    const double end_L_s =
        12.0 * kMu0 * N * N * end_length * params.end_leakage_permeance / spec.stator_slots;
    const double q = double(spec.stator_slots) / (3.0 * spec.pole_count);
    const double slot_angle_el = 2.0 * M_PI * p / spec.stator_slots;
    const double sigma_s = stator_differential_coefficient(q, slot_angle_el);
    m.stator_leakage_x1 = omega * (slot_L_s + end_L_s) + sigma_s * m.magnetizing_x1;

    // Rotor leakage (referred): slot + ring + differential.
    const double lambda_slot_r =
        spec.rotor_slot_shape == SlotShape::Round
            ? params.round_slot_permeance
            : g.rotor_slot_depth / (3.0 * g.rotor_slot_width);
    const double slot_L_r = refer * kMu0 * g.core_length * lambda_slot_r;
    const double ring_L = refer * kMu0 * (M_PI * g.end_ring_mean_diameter / spec.rotor_slots) *
                          params.ring_leakage_permeance / ring_factor;
    const double sigma_r = cage_differential_coefficient(p, spec.rotor_slots);
    m.rotor_leakage_x1 = omega * (slot_L_r + ring_L) + sigma_r * m.magnetizing_x1;

    return m;
}

HarmonicCircuit circuit_params(const CircuitModel& model, int order, double slip) {
    HarmonicCircuit c;
    c.order = order;
    c.frequency_hz = order * model.base_frequency_hz;
    c.stator_resistance = model.stator_resistance;
    const double xi = bar_reduced_height(model.bar_depth, c.frequency_hz, slip,
                                         model.bar_resistivity);
    c.skin_factor = rectangular_bar_skin_factor(xi);
    c.rotor_resistance = model.rotor_bar_resistance * c.skin_factor + model.rotor_ring_resistance;
    c.stator_leakage_reactance = order * model.stator_leakage_x1;
    c.rotor_leakage_reactance = order * model.rotor_leakage_x1;
    c.magnetizing_reactance = order * model.magnetizing_x1;
    return c;
}

OperatingSolution solve_harmonic(const HarmonicCircuit& c, double phase_voltage, double slip) {
    if (slip < 0) throw std::invalid_argument("negative slip not modelled");

    OperatingSolution s;
    s.order = c.order;
    s.voltage = phase_voltage;
    s.slip = slip;
    if (phase_voltage == 0.0) return s; // de-energized branch

    using cd = std::complex<double>;
    const cd zs(c.stator_resistance, c.stator_leakage_reactance);
    const cd zm(0.0, c.magnetizing_reactance);

    cd z_total, z_shunt;
    cd ir(0.0, 0.0);
    if (slip == 0.0) {
        // Synchronous: rotor branch open, magnetizing current only.
        z_shunt = zm;
        z_total = zs + zm;
    } else {
        const cd zr(c.rotor_resistance / slip, c.rotor_leakage_reactance);
        z_shunt = zr * zm / (zr + zm);
        z_total = zs + z_shunt;
    }
    if (std::abs(z_total) < 1.0e-12)
        throw SingularCircuit("harmonic branch impedance collapsed to zero");

    const cd is = cd(phase_voltage, 0.0) / z_total;
    const cd emf = is * z_shunt;
    if (slip != 0.0) {
        const cd zr(c.rotor_resistance / slip, c.rotor_leakage_reactance);
        ir = emf / zr;
    }

    s.stator_current = std::abs(is);
    s.rotor_current = std::abs(ir);
    s.airgap_emf = std::abs(emf);
    s.power_factor = s.stator_current > 0 ? is.real() / s.stator_current : 0.0;
    return s;
}

TheveninEquivalent thevenin_fundamental(const CircuitModel& model) {
    using cd = std::complex<double>;
    const cd zs(model.stator_resistance, model.stator_leakage_x1);
    const cd zm(0.0, model.magnetizing_x1);
    const cd zth = zs * zm / (zs + zm);
    TheveninEquivalent t;
    t.voltage_factor = std::abs(zm / (zs + zm));
    t.resistance = zth.real();
    t.reactance = zth.imag();
    return t;
}

namespace {

// Signed torque sum over the whole spectrum at fundamental slip s1.
double torque_sum(const MotorSpec& spec, const CircuitModel& model, double s1) {
    const double v1 = spec.phase_voltage();
    double torque = 0.0;
    for (const auto& h : spec.spectrum.entries) {
        const double sm = harmonic_slip(h.order, s1, h.rotation);
        const HarmonicCircuit c = circuit_params(model, h.order, sm);
        const OperatingSolution sol = solve_harmonic(c, h.amplitude * v1, sm);
        if (sm <= 0) continue;
        const double sign = h.rotation == Rotation::Forward ? 1.0 : -1.0;
        torque += sign * 3.0 * spec.pole_pairs() * c.rotor_resistance *
                  sol.rotor_current * sol.rotor_current /
                  (2.0 * M_PI * c.frequency_hz * sm);
    }
    return torque;
}

// Fundamental breakdown slip with the skin factor folded in by fixed point.
double breakdown_slip(const CircuitModel& model) {
    const TheveninEquivalent th = thevenin_fundamental(model);
    const double x_total = th.reactance + model.rotor_leakage_x1;
    const double u_star = std::hypot(th.resistance, x_total);
    double s = (model.rotor_bar_resistance + model.rotor_ring_resistance) / u_star;
    for (int i = 0; i < 6; ++i) {
        const double xi = bar_reduced_height(model.bar_depth, model.base_frequency_hz, s,
                                             model.bar_resistivity);
        const double rr = model.rotor_bar_resistance * rectangular_bar_skin_factor(xi) +
                          model.rotor_ring_resistance;
        s = rr / u_star;
    }
    return s;
}

} // namespace

double shaft_torque_at(const MotorSpec& spec, const CircuitModel& model, double s1) {
    return torque_sum(spec, model, s1);
}

double solve_rated_slip(const MotorSpec& spec, const CircuitModel& model,
                        const DerivedGeometry& g, const ModelParams&) {
    const double target = spec.rated_power_w;
    const double omega_sync = spec.rated_speed_rad();

    auto shaft_power = [&](double s) {
        const double omega_mech = (1.0 - s) * omega_sync;
        const double shaft_rpm = (1.0 - s) * spec.rated_speed_rpm;
        return torque_sum(spec, model, s) * omega_mech -
               mechanical_losses(g.rotor_outer_diameter, g.core_length, shaft_rpm);
    };

    double hi = std::min(breakdown_slip(model), 0.999);
    double lo = 1.0e-9;
    if (!(hi > lo)) throw NoRatedPoint("breakdown slip collapsed to zero");

    const double tol = 1.0e-6 * target;
    double f_hi = shaft_power(hi) - target;
    if (f_hi < 0) {
        std::ostringstream os;
        os << "machine peaks at " << f_hi + target << " W shaft power, below the "
           << target << " W rating";
        throw NoRatedPoint(os.str());
    }
    double f_lo = shaft_power(lo) - target;
    if (f_lo > 0) return lo; // pathological: rated power at zero slip

    double mid = lo;
    for (int i = 0; i < 200; ++i) {
        mid = 0.5 * (lo + hi);
        const double f_mid = shaft_power(mid) - target;
        if (std::abs(f_mid) < tol) return mid;
        if (f_mid < 0) lo = mid; else hi = mid;
        if (hi - lo < 1.0e-15) break;
    }
    return mid;
}

} // namespace evim
