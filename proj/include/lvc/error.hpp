#pragma once

#include <stdexcept>
#include <string>

namespace lvc {

// Base for all errors thrown by the library.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

struct division_by_zero : error {
    division_by_zero() : error("division by zero") {}
    explicit division_by_zero(const std::string& ctx) : error("division by zero: " + ctx) {}
};

// Malformed or out-of-contract input (bad parse, wrong shape, missing variable, ...).
struct invalid_input : error {
    explicit invalid_input(const std::string& what) : error(what) {}
};

// Structural degeneracy detected during an exact computation (singular matrix,
// resonance, eigencondition violated, ...).
struct degenerate_input : error {
    explicit degenerate_input(const std::string& what) : error(what) {}
};

// A certification step (sign determination, root inclusion, ...) exhausted its
// refinement budget without reaching a decision.
struct certification_failure : error {
    explicit certification_failure(const std::string& what) : error(what) {}
};

} // namespace lvc
