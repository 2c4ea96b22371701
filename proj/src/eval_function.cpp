#include "ri/eval_function.hpp"

#include <algorithm>
#include <cmath>

namespace ri {

std::size_t MaximalPieces::find(double t) const {
    auto it = std::upper_bound(right.begin(), right.end(), t);
    std::size_t i = static_cast<std::size_t>(it - right.begin());
    return std::min(i, size() - 1);
}

MaximalPieces maximal_pieces(const StepFunction& fstar) {
    if (!is_nonincreasing(fstar))
        throw std::invalid_argument("maximal_pieces: input must be nonincreasing");
    MaximalPieces mp;
    const auto prefix = fstar.primitive();
    for (std::size_t i = 0; i < fstar.piece_count(); ++i) {
        double a = fstar.piece_left(i);
        double v = fstar.piece_value(i);
        mp.left.push_back(a);
        mp.right.push_back(fstar.piece_right(i));
        mp.c.push_back(v);
        mp.d.push_back(std::max(prefix[i] - v * a, 0.0));
    }
    return mp;
}

EvalFunction maximal_fn(const StepFunction& f) {
    auto fstar = rearrange(f);
    auto mp = std::make_shared<MaximalPieces>(maximal_pieces(fstar));
    return EvalFunction([mp](double t) { return mp->eval(t); },
                        Monotonicity::Nonincreasing, "maximal_fn", fstar.breakpoints());
}

EvalFunction oscillation(const StepFunction& f) {
    auto fstar = rearrange(f);
    auto mp = std::make_shared<MaximalPieces>(maximal_pieces(fstar));
    return EvalFunction([mp](double t) { return mp->osc(t); },
                        Monotonicity::None, "oscillation", fstar.breakpoints());
}

GridFunction GridFunction::sample(const std::function<double(double)>& f,
                                  std::size_t points, double t_min) {
    GridFunction g;
    g.grid.reserve(points);
    // log-spaced on (t_min, 1/2], linear on (1/2, 1)
    std::size_t half = points / 2;
    double span = std::log(0.5 / t_min);
    for (std::size_t i = 0; i < half; ++i)
        g.grid.push_back(t_min * std::exp(span * static_cast<double>(i) / (half - 1)));
    for (std::size_t i = 1; i <= points - half; ++i)
        g.grid.push_back(0.5 + 0.5 * static_cast<double>(i) / (points - half + 1));
    std::sort(g.grid.begin(), g.grid.end());
    g.grid.erase(std::unique(g.grid.begin(), g.grid.end()), g.grid.end());
    g.samples.reserve(g.grid.size());
    for (double t : g.grid) g.samples.push_back(f(t));
    return g;
}

GridFunction GridFunction::refined(const std::function<double(double)>& f) const {
    GridFunction g;
    g.grid.reserve(grid.size() * 2);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        g.grid.push_back(grid[i]);
        if (i + 1 < grid.size()) g.grid.push_back(0.5 * (grid[i] + grid[i + 1]));
    }
    g.samples.reserve(g.grid.size());
    for (double t : g.grid) g.samples.push_back(f(t));
    return g;
}

PiecewiseMonotone::PiecewiseMonotone(std::vector<double> knots,
                                     std::function<double(std::size_t, double)> eval,
                                     std::function<double(std::size_t, double)> level_inverse)
    : knots_(std::move(knots)), eval_(std::move(eval)), inverse_(std::move(level_inverse)) {
    if (knots_.size() < 2 || knots_.front() != 0.0 || knots_.back() != 1.0)
        throw std::invalid_argument("PiecewiseMonotone: knots must run from 0 to 1");
    std::size_t n = knots_.size() - 1;
    lo_val_.resize(n);
    hi_val_.resize(n);
    increasing_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double a = std::max(knots_[i], 1e-300);
        double b = knots_[i + 1];
        double va = eval_(i, a), vb = eval_(i, b);
        increasing_[i] = vb > va;
        lo_val_[i] = std::min(va, vb);
        hi_val_[i] = std::max(va, vb);
        sup_ = std::max(sup_, hi_val_[i]);
    }
}

double PiecewiseMonotone::eval(double t) const {
    auto it = std::upper_bound(knots_.begin() + 1, knots_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
    i = std::min(i, knots_.size() - 2);
    return eval_(i, t);
}

double PiecewiseMonotone::distribution(double level) const {
    if (level < 0.0) throw std::invalid_argument("distribution: level must be >= 0");
    double measure = 0.0;
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        double a = std::max(knots_[i], 1e-300);
        double b = knots_[i + 1];
        if (level >= hi_val_[i]) continue;
        if (level < lo_val_[i]) {
            measure += b - a;
            continue;
        }
        double crossing;
        if (inverse_) {
            crossing = std::clamp(inverse_(i, level), a, b);
        } else {
            double lo = a, hi = b;
            for (int it2 = 0; it2 < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++it2) {
                double m = 0.5 * (lo + hi);
                bool above = eval_(i, m) > level;
                // increasing piece: above the level means the crossing is left
                if (above == increasing_[i])
                    hi = m;
                else
                    lo = m;
            }
            crossing = 0.5 * (lo + hi);
        }
        measure += increasing_[i] ? (b - crossing) : (crossing - a);
    }
    return measure;
}

double PiecewiseMonotone::star(double t) const {
    // g*(t) = inf { level >= 0 : |{g > level}| <= t }
    if (t >= 1.0) return 0.0;
    if (distribution(0.0) <= t) return 0.0;
    double lo = 0.0, hi = sup_;
    for (int it = 0; it < 120 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
        double m = 0.5 * (lo + hi);
        if (distribution(m) <= t)
            hi = m;
        else
            lo = m;
    }
    return hi;
}

DerivedFunction DerivedFunction::from_step(const StepFunction& f) {
    DerivedFunction d;
    d.step_ = std::make_shared<StepFunction>(rearrange(f));
    auto orig = std::make_shared<StepFunction>(f);
    auto sp = d.step_;
    d.eval_ = [orig](double t) { return (*orig)(t); };
    d.star_ = [sp](double t) { return (*sp)(t); };
    d.knots_ = orig->breakpoints();
    d.star_knots_ = sp->breakpoints();
    d.nonincreasing_ = is_nonincreasing(f);
    return d;
}

DerivedFunction DerivedFunction::from_monotone(const EvalFunction& g) {
    if (g.monotonicity() != Monotonicity::Nonincreasing)
        throw std::invalid_argument("DerivedFunction::from_monotone: function must be nonincreasing");
    DerivedFunction d;
    d.eval_ = [g](double t) { return g(t); };
    d.star_ = d.eval_;
    d.knots_ = g.knots();
    d.star_knots_ = g.knots();
    d.nonincreasing_ = true;
    return d;
}

DerivedFunction DerivedFunction::from_piecewise(PiecewiseMonotone g) {
    DerivedFunction d;
    auto gp = std::make_shared<PiecewiseMonotone>(std::move(g));
    d.eval_ = [gp](double t) { return gp->eval(t); };
    d.star_ = [gp](double t) { return gp->star(t); };
    d.knots_.assign(gp->knots().begin(), gp->knots().end());
    d.knots_.erase(std::remove_if(d.knots_.begin(), d.knots_.end(),
                                  [](double x) { return x <= 0.0 || x >= 1.0; }),
                   d.knots_.end());
    // knots of g* are not known in closed form; keep the source knots as
    // quadrature hints (g* is at least piecewise smooth).
    d.star_knots_ = d.knots_;
    d.nonincreasing_ = false;
    return d;
}

}  // namespace ri
