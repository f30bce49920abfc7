#pragma once

#include <stdexcept>
#include <string>

namespace evim {

// Structured error types for the evaluation pipeline.  The stage ops throw;
// evaluate_design() catches the three design-infeasibility classes and turns
// them into a structured result so optimization loops never unwind.

struct GeometryInfeasible : std::runtime_error {
    explicit GeometryInfeasible(const std::string& what) : std::runtime_error(what) {}
};

struct WindingInfeasible : std::runtime_error {
    explicit WindingInfeasible(const std::string& what) : std::runtime_error(what) {}
};

struct NoRatedPoint : std::runtime_error {
    explicit NoRatedPoint(const std::string& what) : std::runtime_error(what) {}
};

struct SingularCircuit : std::runtime_error {
    explicit SingularCircuit(const std::string& what) : std::runtime_error(what) {}
};

struct NonPhysical : std::runtime_error {
    explicit NonPhysical(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownField : std::runtime_error {
    explicit UnknownField(const std::string& what) : std::runtime_error(what) {}
};

struct NoFeasibleScenario : std::runtime_error {
    explicit NoFeasibleScenario(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed JSON input (unknown keys, bad values, missing files).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace evim
