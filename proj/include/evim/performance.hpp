#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evim/circuit.hpp"
#include "evim/geometry.hpp"
#include "evim/model_params.hpp"
#include "evim/spec_model.hpp"

namespace evim {

// Fundamental peak flux densities in the four iron regions (T).
struct FluxDensities {
    double stator_tooth = 0;
    double stator_yoke = 0;
    double rotor_tooth = 0;
    double rotor_yoke = 0;
};

FluxDensities flux_densities(const DerivedGeometry& g, const MotorSpec& spec,
                             double airgap_flux_density,
                             const ModelParams& params = ModelParams{});

// Iron loss of one region at one harmonic, split hysteresis/eddy.
struct CoreLossDetail {
    int order = 1;
    std::string part;      // "stator_tooth" ...
    double hysteresis = 0; // W
    double eddy = 0;       // W
};

struct CoreLossResult {
    double hysteresis = 0;
    double eddy = 0;
    double total = 0;
    std::vector<CoreLossDetail> detail;
};

// P_h = G*K_h*sigma_h*f*B^k and P_e = G*K_e*t^2*f^2*B^2*K_Em/rho summed over
// regions and spectrum entries; harmonic flux scales as amplitude/order.
CoreLossResult core_losses(const MassBreakdown& masses, const FluxDensities& flux,
                           const HarmonicSpectrum& spectrum, double base_frequency_hz,
                           const MaterialCatalog& materials);

struct OhmicLossDetail {
    int order = 1;
    double stator = 0;
    double rotor = 0;
};

struct OhmicLossResult {
    double stator = 0;
    double rotor = 0;
    double total = 0;
    std::vector<OhmicLossDetail> detail;
};

OhmicLossResult ohmic_losses(const std::vector<HarmonicCircuit>& circuits,
                             const std::vector<OperatingSolution>& solutions);

// Friction + windage drag of the rotor surface: 8*D_r*(L+0.15)*v^2 (W).
double mechanical_losses(const DerivedGeometry& g, double speed_rpm);
double mechanical_losses(double rotor_outer_diameter, double core_length, double speed_rpm);

// Stray load loss, a flat fraction of rated power split four ways.
struct StrayLosses {
    double pulsation = 0;
    double skew = 0;
    double zigzag = 0;
    double bar_leakage = 0;
    double total = 0;
};

StrayLosses stray_losses(const MotorSpec& spec, const ModelParams& params = ModelParams{});

// Electrical input power drawn through the circuit: sum of 3*V*I*cos(phi).
double input_power(const std::vector<OperatingSolution>& solutions);

// eta = (P_in - P_loss)/P_in; throws NonPhysical when P_loss > P_in or P_in <= 0.
double efficiency(double p_in, double p_loss);

// Signed sum of harmonic airgap torques (N*m).
double shaft_torque(const MotorSpec& spec, const std::vector<HarmonicCircuit>& circuits,
                    const std::vector<OperatingSolution>& solutions);

// Legacy estimate kept for audit: sum of 1.5*poles*R_r*I_r^2/(m*f_m*s_m).
double shaft_torque_legacy(const MotorSpec& spec, const std::vector<HarmonicCircuit>& circuits,
                           const std::vector<OperatingSolution>& solutions);

struct BreakdownResult {
    double torque = 0;      // N*m, peak of the fundamental torque-slip curve
    double slip = 0;
    double legacy = 0;      // 1.5*E/(X_r*omega_sync) estimate, for audit
};

BreakdownResult breakdown_torque_base(const MotorSpec& spec, const CircuitModel& model,
                                      double airgap_emf_at_rated);

// Field-weakened peak torque at top speed: (f_b/f_max)^2 * T_pb.
double breakdown_torque_max(double breakdown_base, const MotorSpec& spec);

// Inertia figure H = 0.5*J*omega^2 / rated power (seconds).
double inertia_constant(double inertia, const MotorSpec& spec);

// Lumped frame rise above coolant: electromagnetic losses over h*A.
double temperature_rise(double ohmic, double core, double stray,
                        const DerivedGeometry& g, const ModelParams& params = ModelParams{});
double cooling_area(const DerivedGeometry& g);

struct LossBreakdown {
    CoreLossResult core;
    OhmicLossResult ohmic;
    double mechanical = 0;
    StrayLosses stray;
    double total = 0;
};

struct PerformanceReport {
    DesignVector design;
    DerivedGeometry geometry;
    MassBreakdown masses;
    CostBreakdown cost;
    WindingSpec winding;
    CircuitModel circuit_model;
    std::vector<HarmonicCircuit> circuits;
    std::vector<OperatingSolution> solutions;
    LossBreakdown losses;

    double rated_slip = 0;
    double input_power_w = 0;          // circuit input + iron + stray draw
    double circuit_input_power_w = 0;  // plain sum of 3*V*I*cos(phi)
    double shaft_power_w = 0;
    double efficiency_value = 0;
    double power_factor = 0;           // fundamental displacement factor

    double rated_torque = 0;
    double rated_torque_legacy = 0;
    double breakdown_torque_base = 0;
    double breakdown_torque_legacy = 0;
    double breakdown_slip = 0;
    double breakdown_torque_max_speed = 0;
    double breakdown_to_rated_ratio = 0;

    double temperature_rise_c = 0;
    double rotor_inertia_kgm2 = 0;
    double inertia_constant_s = 0;
    double stator_tooth_flux_density = 0;
    double rotor_time_constant_s = 0;
    double tip_speed_at_max_ms = 0;
};

enum class InfeasibleStage { Geometry = 0, Winding = 1, RatedPoint = 2 };

const char* to_string(InfeasibleStage s);

// Evaluation outcome: either a full report or the stage that failed.
struct EvalResult {
    std::optional<PerformanceReport> report;
    std::optional<InfeasibleStage> failure;
    std::string detail;

    bool ok() const { return report.has_value(); }
};

EvalResult evaluate_design(const MotorSpec& spec, const DesignVector& x,
                           const MaterialCatalog& materials = MaterialCatalog::defaults(),
                           const ModelParams& params = ModelParams{});

} // namespace evim
