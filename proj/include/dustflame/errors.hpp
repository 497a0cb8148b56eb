#pragma once

#include <stdexcept>
#include <string>

namespace dustflame {

// Bad input file / bad parameter values. CLI maps this to exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Fatal numerical failure inside a step (singular solve, nonpositive
// temperature, zero face density). CLI maps this to exit code 3.
struct solver_error : std::runtime_error {
    explicit solver_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A quantity left the bounds the scheme is supposed to guarantee by more
// than the consistency tolerance; indicates a defect, not a rounding issue.
struct consistency_error : solver_error {
    explicit consistency_error(const std::string& msg) : solver_error(msg) {}
};

// Explicit sub-step refused the time step; caller may halve dt and retry.
struct cfl_error : solver_error {
    double suggested_dt;
    cfl_error(const std::string& msg, double dt_hint)
        : solver_error(msg), suggested_dt(dt_hint) {}
};

// Front/plateau extraction failed (no established wave).
struct diagnostics_error : std::runtime_error {
    explicit diagnostics_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace dustflame
