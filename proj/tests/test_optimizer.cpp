// Pattern search on analytic functions, the exhaustive grid reference, and
// the penalised motor-design objective wrapper.

#include <doctest.h>

#include <cmath>
#include <vector>

#include "evim/optimizer.hpp"
#include "evim/spec_model.hpp"

namespace {

using namespace evim;

DesignVector feasible_winner() {
    DesignVector x;
    x.stator_inner_diameter() = 0.19899934895833349;
    x.core_length() = 0.19732421875000003;
    x.stator_slot_width() = 0.025380078124999941;
    x.stator_slot_depth() = 0.05;
    x.rotor_slot_width() = 0.025673828124999971;
    x.rotor_slot_depth() = 0.02394804687499999;
    x.stator_yoke_depth() = 0.1;
    x.rotor_yoke_depth() = 0.05;
    x.airgap_length() = 0.00067285156249999962;
    x.end_ring_cross_section() = 0.001;
    x.airgap_flux_density() = 0.41666666666666663;
    return x;
}

} // namespace

TEST_CASE("pattern search drives a separable quadratic to its minimum") {
    const std::vector<double> target = {1.0, -2.0, 0.5, 3.0, -4.0};
    auto f = [&](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += (x[i] - target[i]) * (x[i] - target[i]);
        return s;
    };
    const std::vector<double> lower(5, -5.0), upper(5, 5.0);

    SearchOptions opt;
    opt.tolerance = 1e-6;
    const SearchResult r = hooke_jeeves(f, std::vector<double>(5, 0.0), lower, upper, opt);

    CHECK(r.best_value < 1e-6);
    CHECK(r.converged);
    CHECK(r.termination == Termination::StepTolerance);
    CHECK(r.evaluations < 20000);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(r.best_x[i] == doctest::Approx(target[i]).epsilon(1e-3));
}

TEST_CASE("pattern search solves the banana valley within budget") {
    auto rosenbrock = [](const std::vector<double>& x) {
        const double a = 1.0 - x[0];
        const double b = x[1] - x[0] * x[0];
        return a * a + 100.0 * b * b;
    };
    const std::vector<double> lower = {-2.0, -2.0}, upper = {2.0, 2.0};

    SearchOptions opt;
    opt.tolerance = 1e-8;
    opt.max_evaluations = 20000;
    const SearchResult r = hooke_jeeves(rosenbrock, {-1.2, 1.0}, lower, upper, opt);

    CHECK(r.best_value < 1e-4);
    CHECK(r.evaluations <= 20000);
    CHECK(r.best_x[0] == doctest::Approx(1.0).epsilon(0.05));
    CHECK(r.best_x[1] == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("accepted-move trace is monotone non-increasing and in bounds") {
    auto f = [](const std::vector<double>& x) {
        return std::cos(3.0 * x[0]) + x[0] * x[0] + (x[1] - 0.3) * (x[1] - 0.3);
    };
    const std::vector<double> lower = {-2.0, -2.0}, upper = {2.0, 2.0};
    SearchOptions opt;
    opt.record_trace = true;
    const SearchResult r = hooke_jeeves(f, {1.7, -1.9}, lower, upper, opt);

    REQUIRE(!r.trace.empty());
    for (std::size_t i = 1; i < r.trace.size(); ++i)
        CHECK(r.trace[i].value <= r.trace[i - 1].value); // exact, no epsilon
    for (const auto& t : r.trace) {
        REQUIRE(t.x.size() == 2);
        CHECK(t.x[0] >= lower[0]);
        CHECK(t.x[0] <= upper[0]);
        CHECK(t.x[1] >= lower[1]);
        CHECK(t.x[1] <= upper[1]);
        CHECK(t.step_scale > 0.0);
        CHECK(t.step_scale <= 1.0);
    }
    // The last trace entry carries the final incumbent.
    CHECK(r.trace.back().value == doctest::Approx(r.best_value).epsilon(1e-15));

    SearchOptions silent = opt;
    silent.record_trace = false;
    const SearchResult r2 = hooke_jeeves(f, {1.7, -1.9}, lower, upper, silent);
    CHECK(r2.trace.empty());
    CHECK(r2.best_value == doctest::Approx(r.best_value).epsilon(1e-15));
}

TEST_CASE("search is deterministic and respects bounds and frozen axes") {
    auto f = [](const std::vector<double>& x) { return x[0] + 2.0 * x[1] + 0.1 * x[2]; };
    const std::vector<double> lower = {0.0, -1.0, 3.0}, upper = {4.0, 2.0, 9.0};

    SearchOptions opt;
    opt.frozen = {false, false, true};
    const SearchResult a = hooke_jeeves(f, {2.0, 0.5, 7.0}, lower, upper, opt);
    const SearchResult b = hooke_jeeves(f, {2.0, 0.5, 7.0}, lower, upper, opt);

    // A decreasing linear objective lands exactly on the lower bounds.
    CHECK(a.best_x[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(a.best_x[1] == doctest::Approx(-1.0).epsilon(1e-9));
    // The frozen coordinate never moves.
    CHECK(a.best_x[2] == 7.0);

    // Bit-identical reruns.
    CHECK(a.best_value == b.best_value);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.iterations == b.iterations);
    for (int i = 0; i < 3; ++i) CHECK(a.best_x[i] == b.best_x[i]);
}

TEST_CASE("exploratory step polls both directions per axis in index order") {
    auto f = [](const std::vector<double>& x) { return x[0] * x[0] + x[1] * x[1]; };
    const std::vector<double> lower = {-2.0, -2.0}, upper = {2.0, 2.0};
    const std::vector<bool> frozen = {false, false};

    std::vector<double> base = {1.0, 1.0};
    double value = f(base);
    int evals = 0;
    const std::vector<double> out =
        exploratory_step(f, base, value, {0.5, 0.5}, lower, upper, frozen, evals);

    CHECK(out[0] == doctest::Approx(0.5));
    CHECK(out[1] == doctest::Approx(0.5));
    CHECK(value == doctest::Approx(0.5).epsilon(1e-12));
    // Four polls: +x (worse), -x (accepted), +y (worse), -y (accepted).
    CHECK(evals == 4);

    SUBCASE("fully clamped candidates are not even evaluated") {
        auto rising = [](const std::vector<double>& x) { return x[0] + x[1]; };
        std::vector<double> corner = {-2.0, -2.0};
        double cv = rising(corner);
        int ce = 0;
        const std::vector<double> kept =
            exploratory_step(rising, corner, cv, {0.5, 0.5}, lower, upper, frozen, ce);
        // Minus moves collapse onto the corner itself and are skipped;
        // only the two (worsening) plus moves cost evaluations.
        CHECK(ce == 2);
        CHECK(kept[0] == -2.0);
        CHECK(kept[1] == -2.0);
        CHECK(cv == -4.0);
    }

    SUBCASE("frozen axes are skipped") {
        std::vector<double> start = {1.0, 1.0};
        double sv = f(start);
        int se = 0;
        const std::vector<double> kept = exploratory_step(
            f, start, sv, {0.5, 0.5}, lower, upper, {false, true}, se);
        CHECK(kept[1] == 1.0);
        CHECK(se == 2); // only the x axis was polled
    }
}

TEST_CASE("grid reference hits exact lattice optima and breaks ties low") {
    SUBCASE("21 points on [0,1] contain the exact minimiser of (x-0.3)^2") {
        auto f = [](const std::vector<double>& x) {
            return (x[0] - 0.3) * (x[0] - 0.3);
        };
        const GridResult g =
            grid_search(f, {0.5}, {0.0}, {1.0}, {true}, 21);
        CHECK(g.best_x[0] == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(g.best_value < 1e-24);
        REQUIRE(g.best_index.size() == 1);
        CHECK(g.best_index[0] == 6); // 6/20 = 0.3
    }

    SUBCASE("inactive axes stay at their start value") {
        auto f = [](const std::vector<double>& x) {
            return (x[0] - 1.0) * (x[0] - 1.0) + x[1];
        };
        const GridResult g =
            grid_search(f, {0.0, 0.77}, {0.0, 0.0}, {2.0, 1.0}, {true, false}, 11);
        CHECK(g.best_x[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(g.best_x[1] == 0.77);
        // The index tuple spans active axes only.
        REQUIRE(g.best_index.size() == 1);
        CHECK(g.best_index[0] == 5); // 1.0 on an 11-point [0,2] axis
    }

    SUBCASE("ties resolve to the lexicographically smallest index tuple") {
        auto f = [](const std::vector<double>& x) {
            return (x[0] - 0.5) * (x[0] - 0.5); // flat along the second axis
        };
        const GridResult g =
            grid_search(f, {0.0, 0.0}, {0.0, 0.0}, {1.0, 1.0}, {true, true}, 5);
        CHECK(g.best_index[0] == 2); // 0.5
        CHECK(g.best_index[1] == 0); // first of the tied column
    }

    SUBCASE("serial and parallel sweeps agree bit for bit") {
        auto f = [](const std::vector<double>& x) {
            return std::sin(5.0 * x[0]) * std::cos(3.0 * x[1]) + x[0] * x[1];
        };
        const GridResult a =
            grid_search(f, {0.0, 0.0}, {-1.0, -1.0}, {1.0, 1.0}, {true, true}, 31, true);
        const GridResult b =
            grid_search(f, {0.0, 0.0}, {-1.0, -1.0}, {1.0, 1.0}, {true, true}, 31, false);
        CHECK(a.best_value == b.best_value);
        CHECK(a.best_x == b.best_x);
        CHECK(a.best_index == b.best_index);
    }
}

TEST_CASE("the design objective scores feasible, violating, and broken points") {
    const MotorSpec spec = make_motor_spec(2, 1800.0, SlotShape::Rectangular);
    const MaterialCatalog materials;
    const ModelParams params;
    const auto constraints = default_constraints(spec);
    const ObjectiveConfig config;
    const Objective f = design_objective(spec, materials, constraints, params, config);

    // A fully feasible design scores exactly minus its efficiency.
    const DesignVector winner = feasible_winner();
    const std::vector<double> xw(winner.v.begin(), winner.v.end());
    const EvalResult eval = evaluate_design(spec, winner, materials, params);
    REQUIRE(eval.ok());
    CHECK(f(xw) == doctest::Approx(-eval.report->efficiency_value).epsilon(1e-12));

    // A violating (but evaluable) design pays the quadratic penalty.
    DesignVector mid;
    for (int i = 0; i < DesignVector::kCount; ++i) mid[i] = 0.5;
    const VariableBounds bounds = default_bounds(spec);
    for (int i = 0; i < DesignVector::kCount; ++i)
        mid[i] = bounds.lower[i] + 0.5 * (bounds.upper[i] - bounds.lower[i]);
    const EvalResult mid_eval = evaluate_design(spec, mid, materials, params);
    REQUIRE(mid_eval.ok());
    const ConstraintReport mid_cr = evaluate_constraints(*mid_eval.report, constraints, params);
    CHECK_FALSE(mid_cr.feasible);
    const std::vector<double> xm(mid.v.begin(), mid.v.end());
    CHECK(f(xm) == doctest::Approx(-mid_eval.report->efficiency_value +
                                   config.penalty_weight * mid_cr.quadratic_sum())
                       .epsilon(1e-12));
    CHECK(f(xm) > f(xw));

    // Designs that cannot be evaluated at all sit far above everything and
    // encode the failing stage.
    DesignVector broken = mid;
    broken.stator_slot_width() = 0.04; // geometry failure
    const std::vector<double> xb(broken.v.begin(), broken.v.end());
    CHECK(f(xb) == doctest::Approx(1.0e6 + 0.0));
    CHECK(f(xb) > f(xm));

    DesignVector small = mid;
    small.stator_inner_diameter() = bounds.lower[DesignVector::kStatorInnerDiameter];
    small.core_length() = bounds.lower[DesignVector::kCoreLength];
    small.airgap_flux_density() = bounds.lower[DesignVector::kAirgapFluxDensity];
    const EvalResult small_eval = evaluate_design(spec, small, materials, params);
    if (!small_eval.ok() && small_eval.failure == InfeasibleStage::RatedPoint) {
        const std::vector<double> xs(small.v.begin(), small.v.end());
        CHECK(f(xs) == doctest::Approx(1.0e6 + 2.0));
    }
}

TEST_CASE("default starts ladder the bound range and stay interior") {
    const MotorSpec spec = make_motor_spec(2, 1800.0, SlotShape::Rectangular);
    const VariableBounds bounds = default_bounds(spec);

    const auto five = default_starts(spec, bounds, 5);
    REQUIRE(five.size() == 5);
    const double fracs[5] = {0.3, 0.4, 0.5, 0.6, 0.7};
    for (int k = 0; k < 5; ++k) {
        for (int i = 0; i < DesignVector::kCount; ++i) {
            const double expect =
                bounds.lower[i] + fracs[k] * (bounds.upper[i] - bounds.lower[i]);
            CHECK(five[k][i] == doctest::Approx(expect).epsilon(1e-12));
            CHECK(five[k][i] > bounds.lower[i]);
            CHECK(five[k][i] < bounds.upper[i]);
        }
    }

    const auto one = default_starts(spec, bounds, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0][0] == doctest::Approx(bounds.lower[0] +
                                       0.5 * (bounds.upper[0] - bounds.lower[0]))
                           .epsilon(1e-12));

    // Extra starts beyond five flip the magnetic axes against the ladder.
    const auto seven = default_starts(spec, bounds, 7);
    REQUIRE(seven.size() == 7);
    const int ig = DesignVector::kAirgapLength;
    const double f6 = 0.35;
    CHECK(seven[5][ig] ==
          doctest::Approx(bounds.lower[ig] + (1.0 - f6) * (bounds.upper[ig] - bounds.lower[ig]))
              .epsilon(1e-12));
    CHECK(seven[5][0] ==
          doctest::Approx(bounds.lower[0] + f6 * (bounds.upper[0] - bounds.lower[0]))
              .epsilon(1e-12));
}

TEST_CASE("full design optimisation finds a feasible two-pole machine") {
    const MotorSpec spec = make_motor_spec(2, 1800.0, SlotShape::Rectangular);
    const auto constraints = default_constraints(spec);

    OptimizeOptions opt;
    opt.multi_starts = 2;
    opt.restarts = 1;
    opt.search.tolerance = 1e-3;
    opt.search.max_evaluations = 4000;

    const OptimizeResult r = optimize_design(spec, constraints, MaterialCatalog::defaults(),
                                             ModelParams{}, opt);
    CHECK(r.constraint_report.feasible);
    CHECK(r.report.efficiency_value > 0.80);
    // The recorded objective is scored against margin-tightened bounds, so it
    // sits at or slightly above minus the efficiency, never below.
    CHECK(r.objective_value >= -r.report.efficiency_value - 1e-12);
    CHECK(r.objective_value <= -r.report.efficiency_value + 1e-3);
    CHECK(r.evaluations > 0);
    CHECK(r.penalty_rounds == 0);
    CHECK(r.penalty_weight == doctest::Approx(100.0));
    CHECK(r.winning_start >= 0);
    CHECK(r.winning_start < int(r.start_results.size()));
    REQUIRE(!r.start_results.empty());

    // The winning design respects the variable bounds.
    const VariableBounds bounds = default_bounds(spec);
    for (int i = 0; i < DesignVector::kCount; ++i) {
        CHECK(r.best_design[i] >= bounds.lower[i]);
        CHECK(r.best_design[i] <= bounds.upper[i]);
    }

    SUBCASE("reruns are bit-identical") {
        const OptimizeResult r2 = optimize_design(spec, constraints, MaterialCatalog::defaults(),
                                                  ModelParams{}, opt);
        CHECK(r2.objective_value == r.objective_value);
        CHECK(r2.evaluations == r.evaluations);
        for (int i = 0; i < DesignVector::kCount; ++i)
            CHECK(r2.best_design[i] == r.best_design[i]);
    }

    SUBCASE("parallel and serial start processing agree") {
        OptimizeOptions serial = opt;
        serial.parallel_starts = false;
        const OptimizeResult r2 = optimize_design(spec, constraints, MaterialCatalog::defaults(),
                                                  ModelParams{}, serial);
        CHECK(r2.objective_value == r.objective_value);
        for (int i = 0; i < DesignVector::kCount; ++i)
            CHECK(r2.best_design[i] == r.best_design[i]);
    }
}

TEST_CASE("seeded starts can only improve on the seed design") {
    const MotorSpec spec = make_motor_spec(2, 1800.0, SlotShape::Rectangular);
    const auto constraints = default_constraints(spec);

    OptimizeOptions opt;
    opt.multi_starts = 1;
    opt.restarts = 1;
    opt.search.tolerance = 1e-3;
    opt.search.max_evaluations = 3000;
    opt.extra_starts.push_back(feasible_winner());

    const OptimizeResult r = optimize_design(spec, constraints, MaterialCatalog::defaults(),
                                             ModelParams{}, opt);
    CHECK(r.constraint_report.feasible);
    // Pattern search from the seed only ever accepts strict improvements, so
    // the outcome cannot be worse than the seed's efficiency.
    CHECK(r.report.efficiency_value >= 0.8563 - 1e-4);
    CHECK(r.start_results.size() == 2); // ladder start + seeded start
}

TEST_CASE("impossible requirements are flagged, never thrown") {
    const MotorSpec spec = make_motor_spec(2, 1800.0, SlotShape::Rectangular);
    auto constraints = default_constraints(spec);
    for (auto& c : constraints)
        if (c.name == "power_factor") c.bound = 0.999; // unreachable

    OptimizeOptions opt;
    opt.multi_starts = 1;
    opt.restarts = 1;
    opt.max_penalty_rounds = 2;
    opt.search.tolerance = 5e-3;
    opt.search.max_evaluations = 1200;

    OptimizeResult r;
    CHECK_NOTHROW(r = optimize_design(spec, constraints, MaterialCatalog::defaults(),
                                      ModelParams{}, opt));
    CHECK_FALSE(r.constraint_report.feasible);
    // All penalty escalations were spent: weight = 100 * 2^rounds.
    CHECK(r.penalty_rounds == 2);
    CHECK(r.penalty_weight == doctest::Approx(100.0 * 4.0));
    // The design still evaluated; only the classification failed.
    CHECK(r.report.efficiency_value > 0.0);
}

TEST_CASE("move and termination labels are stable") {
    CHECK(to_string(MoveKind::Exploratory) == "exploratory");
    CHECK(to_string(MoveKind::Pattern) == "pattern");
    CHECK(to_string(MoveKind::Reduce) == "reduce");
    CHECK(to_string(Termination::StepTolerance) == "step_tolerance");
    CHECK(to_string(Termination::EvalBudget) == "eval_budget");
}
