#pragma once

#include <functional>

#include "ri/common.hpp"

namespace ri {

struct IntegralResult {
    double value = 0.0;
    bool divergent = false;
};

inline IntegralResult divergent_integral() { return {kInf, true}; }

using Integrand = std::function<double(double)>;

// 15-point Gauss-Legendre rule on [a, b].
double gl15(const Integrand& f, double a, double b);

// Adaptive bisection around gl15; relative tolerance against the running total.
double integrate_adaptive(const Integrand& f, double a, double b,
                          double rel_tol = 1e-10, int max_depth = 32);

// Integral over [a, b] split into octave shells [a*2^k, a*2^(k+1)]. Safe for
// integrands that vary over many decades (a may be as small as 1e-300).
double integrate_octaves(const Integrand& f, double a, double b, double rel_tol = 1e-10);

// Integral over (0, t] by dyadic shells descending from t, with divergence
// detection for non-integrable endpoint singularities. The verdict is reliable
// for integrands that near zero behave like a power s^(m-1) with |m| >= ~0.02,
// like 1/(s log(2/s)), or like 1/(s sqrt(log(2/s))).
IntegralResult integrate_to_zero(const Integrand& f, double t, double rel_tol = 1e-10);

// Golden-section maximization of f over [a, b], seeded by a coarse scan so a
// single interior bump cannot be missed. Returns the argmax.
double maximize_scan_golden(const Integrand& f, double a, double b,
                            int scan_points = 33, double x_tol = 1e-12);

}  // namespace ri
