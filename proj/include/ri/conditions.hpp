#pragma once

#include <string>
#include <vector>

#include "ri/profile.hpp"

namespace ri {

struct GridSpec {
    std::size_t points = 10000;
    double t_min = 1e-60;  // lower cluster endpoint
    double t_gap = 1e-12;  // distance of the upper cluster from 1
};

// Log-spaced grid clustered at both endpoints of (0,1).
std::vector<double> condition_grid(const GridSpec& spec = {});

// Superset grid: geometric midpoints inserted and the low end extended
// toward zero, so condition sup-ratios are monotone under refinement and
// slowly divergent ratios reveal themselves as instability.
std::vector<double> refine_grid(const std::vector<double>& grid);

struct ConditionReport {
    std::string condition;
    double sup_ratio = 0.0;         // on the refined grid
    double sup_ratio_coarse = 0.0;  // on the base grid (never larger)
    bool divergent = false;
    std::size_t grid_size = 0;
    bool stable = false;  // sup changed < 5% under one refinement
    double witness = 0.0;
    bool pass = false;
};

ConditionReport check_delta2(const Profile& I, const GridSpec& spec = {});
ConditionReport check_quasiconcave(const Profile& I, const GridSpec& spec = {});
// condition (1): ∫_0^t I(s)/s ds <= C I(t)
ConditionReport check_cond1(const Profile& I, const GridSpec& spec = {});
// average property: ∫_0^t ds/I(s) <= C t/I(t)
ConditionReport check_average(const Profile& I, const GridSpec& spec = {});
// condition (4): ∫_t^1 I(s)/s^2 ds <= C (1/t) ∫_0^t I(s)/s ds
ConditionReport check_cond4(const Profile& I, const GridSpec& spec = {});

struct ClassQReport {
    double c = 0.0;
    double d = 0.0;
    bool member = false;
    bool c_in_range = false;  // c in [1/2, 1)
    ConditionReport cond1, average, cond4;
    std::size_t grid_size = 0;
};

// Constants from the class-Q definition: c is the infimum over grid points
// with I(t)/t^2 > 1 of ∫_t^1 I/s^3 ds / (I(t)/t^2 - 1); d is the supremum of
// (t/I(t)) ∫_t^1 I/s^2 ds. Membership also requires (1-c) d <= c.
// Rejects non-quasiconcave profiles.
ClassQReport classQ_constants(const Profile& I, const GridSpec& spec = {});

}  // namespace ri
