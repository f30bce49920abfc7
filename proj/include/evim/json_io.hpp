#pragma once

#include <string>

#include "evim/errors.hpp"
#include "evim/study.hpp"

namespace evim {

// JSON document formats for the CLI and for persisting study results.
//
// Schema rules, identical for every document:
//  - keys are snake_case and match the C++ field names;
//  - enums are lower-case strings ("rectangular", "forward", "at_least");
//  - design vectors and bounds are objects keyed by variable name;
//  - every field is optional on input and defaults to the C++ default, but
//    unknown keys are rejected so a typo cannot silently change a run;
//  - top-level documents carry "schema_version" (currently 1); a document
//    declaring a different version is rejected.
//
// Per-start search traces (OptimizeResult::start_results) are not
// serialised; use the optimizer trace CSV for move-by-move diagnostics.

// All parse problems surface as ValidationError (errors.hpp); JsonError is
// the local name for the same type.
using JsonError = ValidationError;

inline constexpr int kSchemaVersion = 1;

// Parsers: throw JsonError with a dotted path on malformed text, wrong
// types, unknown keys, or a version mismatch.
MotorSpec motor_spec_from_json(const std::string& text);
DesignVector design_from_json(const std::string& text);
StudyConfig study_config_from_json(const std::string& text);
StudyReport study_report_from_json(const std::string& text);

// Renderers: pretty-printed, stable key order, full double precision.
std::string motor_spec_to_json(const MotorSpec& spec);
std::string design_to_json(const DesignVector& design);
std::string study_config_to_json(const StudyConfig& config);
std::string study_report_to_json(const StudyReport& report);

// CLI result documents.  evaluation_to_json embeds the spec, the design, the
// outcome (performance report or failure stage) and, when the evaluation
// succeeded, the constraint check against the default requirement set.
std::string evaluation_to_json(const MotorSpec& spec, const DesignVector& design,
                               const EvalResult& eval,
                               const ConstraintReport* constraints = nullptr);
std::string optimization_to_json(const MotorSpec& spec, const OptimizeResult& result);

}  // namespace evim
