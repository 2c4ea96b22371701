#include "ri/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ri {

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breaks_(std::move(breakpoints)), values_(std::move(values)) {
    validate();
    canonicalize();
}

void StepFunction::validate() const {
    if (values_.size() != breaks_.size() + 1)
        throw std::invalid_argument("StepFunction: need one value per piece");
    double prev = 0.0;
    for (double b : breaks_) {
        if (!(b > prev) || !(b < 1.0))
            throw std::invalid_argument("StepFunction: breakpoints must be strictly increasing in (0,1)");
        prev = b;
    }
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("StepFunction: values must be finite and nonnegative");
    }
}

void StepFunction::canonicalize() {
    if (breaks_.empty()) return;
    std::vector<double> nb;
    std::vector<double> nv;
    nb.reserve(breaks_.size());
    nv.reserve(values_.size());
    nv.push_back(values_[0]);
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
        if (values_[i + 1] == nv.back()) continue;  // merge equal neighbours
        nb.push_back(breaks_[i]);
        nv.push_back(values_[i + 1]);
    }
    breaks_ = std::move(nb);
    values_ = std::move(nv);
}

StepFunction StepFunction::constant(double value) { return StepFunction({}, {value}); }

StepFunction StepFunction::indicator(double a, double b) {
    if (!(0.0 <= a && a < b && b <= 1.0))
        throw std::invalid_argument("indicator: need 0 <= a < b <= 1");
    std::vector<double> breaks;
    std::vector<double> vals;
    if (a > 0.0) {
        breaks.push_back(a);
        vals.push_back(0.0);
    }
    vals.push_back(1.0);
    if (b < 1.0) {
        breaks.push_back(b);
        vals.push_back(0.0);
    }
    return StepFunction(std::move(breaks), std::move(vals));
}

std::size_t StepFunction::piece_index(double t) const {
    // first breakpoint strictly greater than t -> piece [b_{i-1}, b_i)
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    return static_cast<std::size_t>(it - breaks_.begin());
}

double StepFunction::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

bool StepFunction::is_zero() const {
    return values_.size() == 1 && values_[0] == 0.0;
}

std::vector<double> StepFunction::primitive() const {
    std::vector<double> prefix(piece_count() + 1, 0.0);
    for (std::size_t i = 0; i < piece_count(); ++i)
        prefix[i + 1] = prefix[i] + values_[i] * (piece_right(i) - piece_left(i));
    return prefix;
}

bool is_nonincreasing(const StepFunction& f) {
    const auto& v = f.values();
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1]) return false;
    return true;
}

StepFunction rearrange(const StepFunction& f) {
    struct Piece {
        double value, length;
    };
    std::vector<Piece> pieces;
    pieces.reserve(f.piece_count());
    for (std::size_t i = 0; i < f.piece_count(); ++i)
        pieces.push_back({f.piece_value(i), f.piece_right(i) - f.piece_left(i)});
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.value > b.value; });
    // merge equal values so the result is canonical by construction
    std::vector<double> breaks, vals;
    double cum = 0.0;
    std::size_t i = 0;
    while (i < pieces.size()) {
        double v = pieces[i].value;
        double len = 0.0;
        while (i < pieces.size() && pieces[i].value == v) len += pieces[i++].length;
        cum += len;
        vals.push_back(v);
        if (i < pieces.size()) breaks.push_back(std::min(cum, std::nextafter(1.0, 0.0)));
    }
    return StepFunction(std::move(breaks), std::move(vals));
}

double distribution(const StepFunction& f, double level) {
    if (level < 0.0) throw std::invalid_argument("distribution: level must be >= 0");
    double measure = 0.0;
    for (std::size_t i = 0; i < f.piece_count(); ++i)
        if (f.piece_value(i) > level) measure += f.piece_right(i) - f.piece_left(i);
    return measure;
}

double integrate(const StepFunction& f, double a, double b) {
    if (!(0.0 <= a && a <= b && b <= 1.0))
        throw std::invalid_argument("integrate: need 0 <= a <= b <= 1");
    double sum = 0.0;
    for (std::size_t i = 0; i < f.piece_count(); ++i) {
        double lo = std::max(a, f.piece_left(i));
        double hi = std::min(b, f.piece_right(i));
        if (hi > lo) sum += f.piece_value(i) * (hi - lo);
    }
    return sum;
}

double total_integral(const StepFunction& f) { return integrate(f, 0.0, 1.0); }

StepFunction dilate(const StepFunction& f, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("dilate: scale must be > 0");
    if (scale == 1.0) return f;
    std::vector<double> breaks, vals;
    for (std::size_t i = 0; i < f.piece_count(); ++i) {
        double right = f.piece_right(i) * scale;
        vals.push_back(f.piece_value(i));
        if (right >= 1.0) {
            // piece straddles 1; the remaining source pieces are invisible
            return StepFunction(std::move(breaks), std::move(vals));
        }
        breaks.push_back(right);
    }
    vals.push_back(0.0);  // zero beyond t = scale < 1
    return StepFunction(std::move(breaks), std::move(vals));
}

std::pair<StepFunction, StepFunction> optimal_decomposition(const StepFunction& f, double t) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("optimal_decomposition: t must be in (0,1)");
    const double cut = rearrange(f)(t);  // f*(t), right-continuous
    return {clip_at(f, cut), excess_over(f, cut)};
}

StepFunction level_function(const StepFunction& f) {
    // Vertices of the (piecewise-linear) primitive F, including (0,0) and (1, F(1)).
    const auto prefix = f.primitive();
    std::vector<double> xs(f.piece_count() + 1), ys(f.piece_count() + 1);
    xs[0] = 0.0;
    ys[0] = 0.0;
    for (std::size_t i = 0; i < f.piece_count(); ++i) {
        xs[i + 1] = f.piece_right(i);
        ys[i + 1] = prefix[i + 1];
    }
    // Upper concave hull by monotone chain; the least concave majorant of a
    // piecewise-linear function is the upper hull of its vertices.
    std::vector<std::size_t> hull;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        while (hull.size() >= 2) {
            std::size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            double cross = (xs[b] - xs[a]) * (ys[k] - ys[a]) - (ys[b] - ys[a]) * (xs[k] - xs[a]);
            if (cross >= 0.0)
                hull.pop_back();  // b below or on chord a-k: not a hull vertex
            else
                break;
        }
        hull.push_back(k);
    }
    std::vector<double> breaks, vals;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        double slope;
        if (hull[h + 1] == hull[h] + 1) {
            slope = f.piece_value(hull[h]);  // chord over one piece: exact value
        } else {
            double dx = xs[hull[h + 1]] - xs[hull[h]];
            slope = std::max((ys[hull[h + 1]] - ys[hull[h]]) / dx, 0.0);
        }
        // hull slopes decrease; clamp away any last-ulp division wobble
        if (!vals.empty() && slope > vals.back()) slope = vals.back();
        vals.push_back(slope);
        if (h + 2 < hull.size()) breaks.push_back(xs[hull[h + 1]]);
    }
    if (vals.empty()) vals.push_back(0.0);
    return StepFunction(std::move(breaks), std::move(vals));
}

StepFunction mapped(const StepFunction& f, double (*fn)(double, double), double arg) {
    std::vector<double> vals(f.values().size());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = fn(f.values()[i], arg);
    return StepFunction(f.breakpoints(), std::move(vals));
}

StepFunction scale(const StepFunction& f, double c) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("scale: factor must be finite and >= 0");
    return mapped(f, [](double v, double a) { return v * a; }, c);
}

StepFunction clip_at(const StepFunction& f, double cap) {
    return mapped(f, [](double v, double a) { return std::min(v, a); }, cap);
}

StepFunction excess_over(const StepFunction& f, double cut) {
    return mapped(f, [](double v, double a) { return std::max(v - a, 0.0); }, cut);
}

}  // namespace ri
