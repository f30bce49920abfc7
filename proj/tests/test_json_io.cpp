// JSON document layer: strict parsing (unknown keys rejected, dotted error
// paths), schema versioning, and loss-free round-trips of every document.

#include <doctest.h>

#include <json.hpp>

#include <string>

#include "evim/json_io.hpp"
#include "evim/study.hpp"

namespace {

using namespace evim;
using nlohmann::json;

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

StudyConfig tiny_config() {
    StudyConfig config;
    config.pole_counts = {2};
    config.slot_shapes = {SlotShape::Rectangular};
    config.rated_speeds_rpm = {1800.0};
    config.refine_waves = 1;
    config.optimizer = OptimizeOptions{};
    config.optimizer.multi_starts = 2;
    config.optimizer.restarts = 1;
    config.optimizer.prescan_per_axis = 0;
    config.optimizer.search.tolerance = 1e-3;
    config.optimizer.search.max_evaluations = 3000;
    return config;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

// Runs the parser and returns the error text (empty when it parsed).
template <typename Fn>
std::string parse_error_of(Fn&& fn) {
    try {
        fn();
    } catch (const JsonError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("motor spec survives a round-trip with nothing left to defaults") {
    MotorSpec spec = make_motor_spec(4, 1600.0, SlotShape::Round);
    spec.rated_power_w = 5000.0;
    spec.rated_voltage_line_v = 120.0;
    spec.max_speed_rpm = 8000.0;
    spec.stator_slots = 24;
    spec.rotor_slots = 18;
    spec.phases = 3;
    spec.spectrum.entries = {{1, 1.0, Rotation::Forward},
                             {5, 0.9, Rotation::Backward},
                             {19, 0.0123, Rotation::Forward}};

    const MotorSpec back = motor_spec_from_json(motor_spec_to_json(spec));
    CHECK(back.rated_power_w == spec.rated_power_w);
    CHECK(back.rated_voltage_line_v == spec.rated_voltage_line_v);
    CHECK(back.pole_count == 4);
    CHECK(back.rated_speed_rpm == 1600.0);
    CHECK(back.max_speed_rpm == 8000.0);
    CHECK(back.stator_slots == 24);
    CHECK(back.rotor_slots == 18);
    CHECK(back.stator_slot_shape == SlotShape::Rectangular);
    CHECK(back.rotor_slot_shape == SlotShape::Round);
    CHECK(back.phases == 3);
    REQUIRE(back.spectrum.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.spectrum.entries[i].order == spec.spectrum.entries[i].order);
        CHECK(back.spectrum.entries[i].amplitude == spec.spectrum.entries[i].amplitude);
        CHECK(back.spectrum.entries[i].rotation == spec.spectrum.entries[i].rotation);
    }
}

TEST_CASE("design vectors round-trip bit-exactly and demand all variables") {
    const DesignVector x = feasible_winner();
    const std::string text = design_to_json(x);
    const DesignVector back = design_from_json(text);
    for (int i = 0; i < DesignVector::kCount; ++i) CHECK(back[i] == x[i]);

    // The document carries exactly the 11 named variables plus the version.
    const json doc = json::parse(text);
    CHECK(doc.size() == DesignVector::kCount + 1);
    CHECK(doc.at("schema_version") == 1);
    for (int i = 0; i < DesignVector::kCount; ++i)
        CHECK(doc.contains(DesignVector::name(i)));

    SUBCASE("a missing variable is an error, not a silent zero") {
        json broken = doc;
        broken.erase("core_length");
        const std::string err =
            parse_error_of([&] { design_from_json(broken.dump()); });
        CHECK(contains(err, "missing design variable"));
        CHECK(contains(err, "core_length"));
    }

    SUBCASE("an extra variable is rejected") {
        json extra = doc;
        extra["stator_bore"] = 0.2;
        const std::string err =
            parse_error_of([&] { design_from_json(extra.dump()); });
        CHECK(contains(err, "unknown key"));
        CHECK(contains(err, "stator_bore"));
    }
}

TEST_CASE("schema version is enforced when present, defaulted when absent") {
    CHECK(motor_spec_from_json("{\"pole_count\": 4}").pole_count == 4);

    const std::string err = parse_error_of(
        [&] { motor_spec_from_json("{\"schema_version\": 99, \"pole_count\": 4}"); });
    CHECK(contains(err, "schema_version"));
    CHECK(contains(err, "99"));

    // Emitted documents always carry the current version.
    const json doc = json::parse(motor_spec_to_json(MotorSpec{}));
    CHECK(doc.at("schema_version") == 1);
}

TEST_CASE("parse errors name the offending dotted path") {
    SUBCASE("unknown top-level key") {
        const std::string err =
            parse_error_of([&] { motor_spec_from_json("{\"bogus\": 1}"); });
        CHECK(contains(err, "unknown key"));
        CHECK(contains(err, "bogus"));
    }
    SUBCASE("unknown nested key") {
        const std::string err = parse_error_of(
            [&] { study_config_from_json("{\"materials\": {\"unobtainium\": 2}}"); });
        CHECK(contains(err, "materials"));
        CHECK(contains(err, "unobtainium"));
    }
    SUBCASE("wrong scalar type") {
        const std::string err = parse_error_of(
            [&] { motor_spec_from_json("{\"pole_count\": \"two\"}"); });
        CHECK(contains(err, "pole_count"));
        CHECK(contains(err, "integer"));
    }
    SUBCASE("wrong enum string") {
        const std::string err = parse_error_of(
            [&] { motor_spec_from_json("{\"rotor_slot_shape\": \"oval\"}"); });
        CHECK(contains(err, "rotor_slot_shape"));
        CHECK(contains(err, "oval"));
    }
    SUBCASE("malformed document") {
        const std::string err =
            parse_error_of([&] { motor_spec_from_json("{not json"); });
        CHECK(contains(err, "invalid JSON"));
    }
    SUBCASE("bounds demand both arrays") {
        const std::string err = parse_error_of([&] {
            study_config_from_json("{\"bounds\": {\"lower\": {}}}");
        });
        CHECK(contains(err, "lower"));
        CHECK(contains(err, "upper"));
    }
}

TEST_CASE("study configuration survives a fully customised round-trip") {
    StudyConfig config;
    config.pole_counts = {4};
    config.slot_shapes = {SlotShape::Round};
    config.rated_speeds_rpm = {1500.0, 1700.0};
    config.curves = true;
    config.curve_step_rpm = 100.0;
    config.curve_ranges = {{4, {1400.0, 1600.0}}};
    config.refine_waves = 2;
    config.optimizer.multi_starts = 3;
    config.optimizer.prescan_per_axis = 2;
    config.optimizer.prescan_keep = 1;
    config.optimizer.restarts = 1;
    config.optimizer.max_penalty_rounds = 1;
    config.optimizer.search_margin = 1e-3;
    config.optimizer.search.tolerance = 5e-4;
    config.optimizer.search.initial_step = 0.2;
    config.optimizer.search.max_evaluations = 1234;
    config.optimizer.objective.penalty_weight = 250.0;
    config.optimizer.parallel_starts = false;
    config.optimizer.extra_starts.push_back(feasible_winner());
    config.materials.steel_price = 3.5;
    config.materials.harmonic_permeability = {{5, 1.1}, {7, 1.3}};
    config.params.slot_fill_factor = 0.45;
    config.params.cooling_h_w_per_m2k = 30.0;
    config.constraint_overrides.push_back({"power_factor", 0.9, true});
    config.constraint_overrides.push_back({"rotor_time_constant", 0.0, false});
    const MotorSpec four_pole = make_motor_spec(4, 1500.0, SlotShape::Round);
    VariableBounds bounds = default_bounds(four_pole);
    bounds.lower[0] = 0.08;
    bounds.upper[0] = 0.21;
    config.bounds = bounds;

    const StudyConfig back = study_config_from_json(study_config_to_json(config));

    CHECK(back.pole_counts == config.pole_counts);
    REQUIRE(back.slot_shapes.size() == 1);
    CHECK(back.slot_shapes[0] == SlotShape::Round);
    CHECK(back.rated_speeds_rpm == config.rated_speeds_rpm);
    CHECK(back.curves == true);
    CHECK(back.curve_step_rpm == 100.0);
    REQUIRE(back.curve_ranges.count(4) == 1);
    CHECK(back.curve_ranges.at(4).min_rpm == 1400.0);
    CHECK(back.curve_ranges.at(4).max_rpm == 1600.0);
    CHECK(back.refine_waves == 2);

    CHECK(back.optimizer.multi_starts == 3);
    CHECK(back.optimizer.prescan_per_axis == 2);
    CHECK(back.optimizer.prescan_keep == 1);
    CHECK(back.optimizer.restarts == 1);
    CHECK(back.optimizer.max_penalty_rounds == 1);
    CHECK(back.optimizer.search_margin == 1e-3);
    CHECK(back.optimizer.search.tolerance == 5e-4);
    CHECK(back.optimizer.search.initial_step == 0.2);
    CHECK(back.optimizer.search.max_evaluations == 1234);
    CHECK(back.optimizer.objective.penalty_weight == 250.0);
    CHECK(back.optimizer.parallel_starts == false);
    REQUIRE(back.optimizer.extra_starts.size() == 1);
    for (int i = 0; i < DesignVector::kCount; ++i)
        CHECK(back.optimizer.extra_starts[0][i] == feasible_winner()[i]);

    CHECK(back.materials.steel_price == 3.5);
    REQUIRE(back.materials.harmonic_permeability.size() == 2);
    CHECK(back.materials.harmonic_permeability.at(5) == 1.1);
    CHECK(back.materials.harmonic_permeability.at(7) == 1.3);
    CHECK(back.params.slot_fill_factor == 0.45);
    CHECK(back.params.cooling_h_w_per_m2k == 30.0);

    REQUIRE(back.constraint_overrides.size() == 2);
    CHECK(back.constraint_overrides[0].name == "power_factor");
    CHECK(back.constraint_overrides[0].bound == 0.9);
    CHECK(back.constraint_overrides[1].active == false);

    REQUIRE(back.bounds.has_value());
    CHECK(back.bounds->lower[0] == 0.08);
    CHECK(back.bounds->upper[0] == 0.21);
    for (int i = 0; i < DesignVector::kCount; ++i) {
        CHECK(back.bounds->lower[i] == bounds.lower[i]);
        CHECK(back.bounds->upper[i] == bounds.upper[i]);
    }
}

TEST_CASE("study reports round-trip losslessly") {
    const StudyReport report = run_study(tiny_config());
    const std::string text = study_report_to_json(report);
    const StudyReport back = study_report_from_json(text);

    // A parsed report renders the exact same tables as the original.
    CHECK(emit_design_table(back, TableFormat::Csv) ==
          emit_design_table(report, TableFormat::Csv));
    CHECK(emit_design_table(back, TableFormat::Text) ==
          emit_design_table(report, TableFormat::Text));

    REQUIRE(back.scenarios.size() == report.scenarios.size());
    CHECK(back.scenarios[0].optimized == report.scenarios[0].optimized);
    CHECK(back.scenarios[0].scenario.key() == report.scenarios[0].scenario.key());
    CHECK(back.scenarios[0].result.report.efficiency_value ==
          report.scenarios[0].result.report.efficiency_value);
    CHECK(back.scenarios[0].result.objective_value ==
          report.scenarios[0].result.objective_value);
    CHECK(back.scenarios[0].result.evaluations == report.scenarios[0].result.evaluations);
    for (int i = 0; i < DesignVector::kCount; ++i)
        CHECK(back.scenarios[0].result.best_design[i] ==
              report.scenarios[0].result.best_design[i]);

    REQUIRE(back.best.has_value() == report.best.has_value());
    CHECK(back.best->scenario.key() == report.best->scenario.key());
    CHECK(back.best->efficiency == report.best->efficiency);
    CHECK(back.best->rationale == report.best->rationale);
    CHECK(back.warnings == report.warnings);
    CHECK(back.config.rated_speeds_rpm == report.config.rated_speeds_rpm);

    // And the re-emitted document is byte-identical.
    CHECK(study_report_to_json(back) == text);

    // Per-start search traces are working data, not part of the document.
    const json doc = json::parse(text);
    const json& result = doc.at("scenarios").at(0).at("result");
    CHECK_FALSE(result.contains("start_results"));
}

TEST_CASE("evaluation documents carry either a report or a failure stage") {
    const MotorSpec spec = make_motor_spec(2, 1800.0, SlotShape::Rectangular);

    SUBCASE("successful evaluation") {
        const EvalResult eval = evaluate_design(spec, feasible_winner());
        REQUIRE(eval.ok());
        const ConstraintReport cr =
            evaluate_constraints(*eval.report, default_constraints(spec));
        const json doc =
            json::parse(evaluation_to_json(spec, feasible_winner(), eval, &cr));

        CHECK(doc.at("schema_version") == 1);
        CHECK(doc.at("ok") == true);
        CHECK(doc.at("spec").at("pole_count") == 2);
        CHECK(doc.at("design").at("core_length").get<double>() ==
              feasible_winner().core_length());
        CHECK(doc.at("performance").at("efficiency").get<double>() ==
              eval.report->efficiency_value);
        CHECK(doc.at("constraints").at("feasible") == true);
        CHECK_FALSE(doc.contains("failure_stage"));
    }

    SUBCASE("failed evaluation") {
        DesignVector bad = feasible_winner();
        bad.stator_slot_width() = 0.05; // teeth vanish
        const EvalResult eval = evaluate_design(spec, bad);
        REQUIRE_FALSE(eval.ok());
        const json doc = json::parse(evaluation_to_json(spec, bad, eval, nullptr));

        CHECK(doc.at("ok") == false);
        CHECK(doc.at("failure_stage") == "geometry");
        CHECK_FALSE(doc.at("detail").get<std::string>().empty());
        CHECK(doc.at("constraints").is_null());
        CHECK_FALSE(doc.contains("performance"));
    }
}

TEST_CASE("optimization documents expose the winning design and bookkeeping") {
    const MotorSpec spec = make_motor_spec(2, 1800.0, SlotShape::Rectangular);
    OptimizeOptions opt;
    opt.multi_starts = 1;
    opt.restarts = 1;
    opt.search.tolerance = 2e-3;
    opt.search.max_evaluations = 1500;
    opt.extra_starts.push_back(feasible_winner());
    const OptimizeResult result =
        optimize_design(spec, default_constraints(spec), MaterialCatalog::defaults(),
                        ModelParams{}, opt);

    const json doc = json::parse(optimization_to_json(spec, result));
    CHECK(doc.at("schema_version") == 1);
    CHECK(doc.at("spec").at("rated_speed_rpm") == 1800.0);
    CHECK(doc.at("best_design").size() == DesignVector::kCount);
    CHECK(doc.at("best_design").at("stator_inner_diameter").get<double>() ==
          result.best_design.stator_inner_diameter());
    CHECK(doc.at("performance").at("efficiency").get<double>() ==
          result.report.efficiency_value);
    CHECK(doc.at("constraints").at("feasible").get<bool>() ==
          result.constraint_report.feasible);
    CHECK(doc.at("objective_value").get<double>() == result.objective_value);
    CHECK(doc.at("evaluations").get<int>() == result.evaluations);
    CHECK(doc.at("penalty_rounds").get<int>() == result.penalty_rounds);
    CHECK(doc.at("penalty_weight").get<double>() == result.penalty_weight);
    CHECK(doc.at("winning_start").get<int>() == result.winning_start);
    CHECK_FALSE(doc.contains("start_results"));
}
