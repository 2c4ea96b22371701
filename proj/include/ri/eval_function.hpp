#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ri/common.hpp"
#include "ri/step_function.hpp"

namespace ri {

// Derived evaluable function on (0,1) with monotonicity metadata and the
// knot set where the underlying formula changes piece.
class EvalFunction {
public:
    EvalFunction() = default;
    EvalFunction(std::function<double(double)> eval, Monotonicity mono,
                 std::string provenance, std::vector<double> knots = {})
        : eval_(std::move(eval)), mono_(mono), provenance_(std::move(provenance)),
          knots_(std::move(knots)) {}

    double operator()(double t) const { return eval_(clamp_unit(t)); }
    Monotonicity monotonicity() const { return mono_; }
    const std::string& provenance() const { return provenance_; }
    const std::vector<double>& knots() const { return knots_; }
    bool valid() const { return static_cast<bool>(eval_); }

private:
    std::function<double(double)> eval_;
    Monotonicity mono_ = Monotonicity::None;
    std::string provenance_;
    std::vector<double> knots_;  // interior formula boundaries, sorted
};

// f** restricted to the pieces of f*: on [left_i, right_i) the maximal
// function is c_i + d_i / t, so f** - f* is exactly d_i / t there.
struct MaximalPieces {
    std::vector<double> left, right, c, d;

    std::size_t size() const { return c.size(); }
    std::size_t find(double t) const;
    double eval(double t) const { auto i = find(t); return c[i] + d[i] / t; }
    double osc(double t) const { return d[find(t)] / t; }
};

// Requires a nonincreasing step function (use rearrange first otherwise).
MaximalPieces maximal_pieces(const StepFunction& fstar);

EvalFunction maximal_fn(const StepFunction& f);   // f**
EvalFunction oscillation(const StepFunction& f);  // f** - f*

// Sampled representation on a sorted grid with dyadic midpoint refinement.
struct GridFunction {
    std::vector<double> grid;     // sorted points in (0,1)
    std::vector<double> samples;  // values at those points

    static GridFunction sample(const std::function<double(double)>& f,
                               std::size_t points = 1024, double t_min = kEvalFloor);
    GridFunction refined(const std::function<double(double)>& f) const;  // dyadic midpoints
};

// Nonnegative function given piecewise by monotone closed forms. Supports the
// distribution function and the nonincreasing rearrangement by bisection on
// the level, or in closed form when a per-piece level inverse is supplied.
class PiecewiseMonotone {
public:
    // eval(i, t) is valid for t in [knots[i], knots[i+1]] and monotone there;
    // knots runs from 0 to 1. level_inverse(i, level), when given, returns the
    // unique t in the piece with eval(i, t) == level.
    PiecewiseMonotone(std::vector<double> knots,
                      std::function<double(std::size_t, double)> eval,
                      std::function<double(std::size_t, double)> level_inverse = nullptr);

    double eval(double t) const;
    double distribution(double level) const;  // |{g > level}|
    double star(double t) const;              // g*(t)
    double sup() const { return sup_; }
    const std::vector<double>& knots() const { return knots_; }

private:
    std::vector<double> knots_;
    std::function<double(std::size_t, double)> eval_;
    std::function<double(std::size_t, double)> inverse_;
    std::vector<double> lo_val_, hi_val_;
    std::vector<bool> increasing_;
    double sup_ = 0.0;
};

// Uniform handle for norm evaluation: a nonnegative derived function exposing
// both direct evaluation (enough for L^p by equimeasurability) and its
// nonincreasing rearrangement (needed by weighted functionals).
class DerivedFunction {
public:
    static DerivedFunction from_step(const StepFunction& f);
    static DerivedFunction from_monotone(const EvalFunction& g);  // nonincreasing g
    static DerivedFunction from_piecewise(PiecewiseMonotone g);

    double eval(double t) const { return eval_(clamp_unit(t)); }
    double star(double t) const { return star_(clamp_unit(t)); }
    const std::vector<double>& knots() const { return knots_; }       // of g
    const std::vector<double>& star_knots() const { return star_knots_; }  // of g*

    bool is_step() const { return step_ != nullptr; }
    const StepFunction& step() const { return *step_; }  // rearranged
    bool nonincreasing() const { return nonincreasing_; }

private:
    std::shared_ptr<const StepFunction> step_;  // rearranged form when exact
    std::function<double(double)> eval_;
    std::function<double(double)> star_;
    std::vector<double> knots_, star_knots_;
    bool nonincreasing_ = false;
};

}  // namespace ri
