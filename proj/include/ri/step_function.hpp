#pragma once

#include <utility>
#include <vector>

#include "ri/common.hpp"

namespace ri {

// Piecewise-constant function on (0,1), the universal input representation.
// Interior breakpoints are strictly increasing and lie in (0,1); there is one
// value per piece (breakpoints.size() + 1 values). Pieces are half-open
// [left, right), so evaluation is right-continuous. Values are finite and
// nonnegative; adjacent pieces with equal values are merged on construction.
class StepFunction {
public:
    StepFunction() : values_{0.0} {}
    StepFunction(std::vector<double> breakpoints, std::vector<double> values);

    static StepFunction constant(double value);
    static StepFunction indicator(double a, double b);  // chi_(a,b)

    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<double>& values() const { return values_; }

    std::size_t piece_count() const { return values_.size(); }
    double piece_left(std::size_t i) const { return i == 0 ? 0.0 : breaks_[i - 1]; }
    double piece_right(std::size_t i) const { return i == breaks_.size() ? 1.0 : breaks_[i]; }
    double piece_value(std::size_t i) const { return values_[i]; }

    // Index of the piece containing t (right-continuous at breakpoints).
    std::size_t piece_index(double t) const;
    double operator()(double t) const { return values_[piece_index(t)]; }

    double max_value() const;
    bool is_zero() const;

    // Cumulative integral at each piece boundary: prefix[i] = integral over (0, piece_left(i)),
    // with one extra entry for the full integral.
    std::vector<double> primitive() const;

    bool operator==(const StepFunction&) const = default;

private:
    std::vector<double> breaks_;  // interior breakpoints, strictly increasing in (0,1)
    std::vector<double> values_;  // one per piece, nonnegative and finite

    void canonicalize();
    void validate() const;
};

bool is_nonincreasing(const StepFunction& f);

// Nonincreasing rearrangement f*: equimeasurable with f, values sorted
// nonincreasing left to right.
StepFunction rearrange(const StepFunction& f);

// Lebesgue measure of {f > level}. Rejects negative levels.
double distribution(const StepFunction& f, double level);

// Exact integral over [a, b]; requires 0 <= a <= b <= 1.
double integrate(const StepFunction& f, double a, double b);
double total_integral(const StepFunction& f);

// Dilation (E_s f)(t) = f(t/s) on (0, min{s,1}), zero beyond.
StepFunction dilate(const StepFunction& f, double scale);

// Optimal decomposition of f at point t: f0 = min{f, f*(t)}, f1 = f - f0.
std::pair<StepFunction, StepFunction> optimal_decomposition(const StepFunction& f, double t);

// Level function f°: slope sequence of the least concave majorant of the
// primitive of f. Always nonincreasing; preserves total mass.
StepFunction level_function(const StepFunction& f);

StepFunction scale(const StepFunction& f, double c);
StepFunction clip_at(const StepFunction& f, double cap);      // min(f, cap)
StepFunction excess_over(const StepFunction& f, double cut);  // max(f - cut, 0)

// Merge breakpoint grids and apply op piecewise. Op takes (f value, g value).
template <class Op>
StepFunction combine(const StepFunction& f, const StepFunction& g, Op op) {
    std::vector<double> merged;
    merged.reserve(f.breakpoints().size() + g.breakpoints().size());
    std::size_t i = 0, j = 0;
    const auto& fb = f.breakpoints();
    const auto& gb = g.breakpoints();
    while (i < fb.size() || j < gb.size()) {
        double next;
        if (j == gb.size() || (i < fb.size() && fb[i] < gb[j]))
            next = fb[i++];
        else if (i == fb.size() || gb[j] < fb[i])
            next = gb[j++];
        else {
            next = fb[i];
            ++i;
            ++j;
        }
        merged.push_back(next);
    }
    std::vector<double> vals;
    vals.reserve(merged.size() + 1);
    double left = 0.0;
    for (std::size_t k = 0; k <= merged.size(); ++k) {
        vals.push_back(op(f(left), g(left)));
        if (k < merged.size()) left = merged[k];
    }
    return StepFunction(std::move(merged), std::move(vals));
}

inline StepFunction add(const StepFunction& f, const StepFunction& g) {
    return combine(f, g, [](double a, double b) { return a + b; });
}

}  // namespace ri
