#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ri {

// Operators and derived functions are never evaluated below this point;
// queries in (0, kEvalFloor) are clamped to it.
inline constexpr double kEvalFloor = 1e-9;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Monotonicity { Nonincreasing, Nondecreasing, None };

inline const char* to_string(Monotonicity m) {
    switch (m) {
        case Monotonicity::Nonincreasing: return "nonincreasing";
        case Monotonicity::Nondecreasing: return "nondecreasing";
        default: return "none";
    }
}

// Clamp an evaluation point into the open interval (0, 1).
inline double clamp_unit(double t) {
    if (t < kEvalFloor) return kEvalFloor;
    if (t > 1.0 - 1e-15) return 1.0 - 1e-15;
    return t;
}

}  // namespace ri
