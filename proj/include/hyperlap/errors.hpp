#pragma once

#include <stdexcept>
#include <string>

namespace hyperlap {

// Adaptive refinement ran out of budget before reaching the requested tolerance.
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

// A quantity that is guaranteed by theory failed its numerical check.
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

// Degenerate metric, point outside the model ball, vanishing projection.
struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hyperlap
