#pragma once

#include <stdexcept>
#include <string>

namespace discplan {

// Malformed or inconsistent input file.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A query point lies outside every free-space component.
struct PointOutsideFreeSpace : std::runtime_error {
    PointOutsideFreeSpace(double x, double y)
        : std::runtime_error("point (" + std::to_string(x) + ", " + std::to_string(y) +
                             ") is outside the free space"),
          px(x), py(y) {}
    double px, py;
};

// No finite-cost perfect matching exists in the assignment problem.
struct NoPerfectMatching : std::runtime_error {
    explicit NoPerfectMatching(const std::string& what) : std::runtime_error(what) {}
};

// An internal guarantee failed; indicates broken input assumptions or a geometry bug,
// never a user error.
struct InvariantViolation : std::logic_error {
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

// A scenario generator could not satisfy the separation constraints at the
// requested density.
struct GenerationFailure : std::runtime_error {
    explicit GenerationFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace discplan
