#include "ri/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ri/operators.hpp"
#include "ri/quadrature.hpp"

namespace ri {

namespace {

bool is_inf(double x) { return std::isinf(x); }

// ell_1(t) = 1 + |log t|, ell_2(t) = 1 + log ell_1(t)
double ell1(double t) { return 1.0 + std::abs(std::log(t)); }
double ell2(double t) { return 1.0 + std::log(ell1(t)); }

// value of a nonincreasing function at 0+, with divergence detection
struct ZeroLimit {
    double value;
    bool divergent;
};

ZeroLimit probe_zero_limit(const std::function<double(double)>& g) {
    double probes[5] = {1e-3, 3.1622776601683794e-5, 1e-6, 3.1622776601683791e-8, 1e-9};
    double v[5];
    for (int i = 0; i < 5; ++i) v[i] = g(probes[i]);
    double first_diff = v[1] - v[0];
    double last_diff = v[4] - v[3];
    bool diverging = last_diff > 1e-7 * (std::abs(v[4]) + 1.0) &&
                     last_diff >= 0.5 * std::max(first_diff, 0.0);
    return {v[4], diverging};
}

// ∫_a^b t^(q/p - 1) ell1^(beta q) ell2^(gamma q) dt, a >= 0; may be +inf.
double lz_weight_integral(double p, double q, double beta, double gamma,
                          double a, double b) {
    double e = is_inf(p) ? -1.0 : q / p - 1.0;
    double bq = beta * q, gq = gamma * q;
    if (bq == 0.0 && gq == 0.0) {
        if (e > -1.0) {
            double s = e + 1.0;
            return (std::pow(b, s) - std::pow(a, s)) / s;
        }
        if (a <= 0.0) return kInf;  // t^e not integrable at zero
        return e == -1.0 ? std::log(b / a)
                         : (std::pow(b, e + 1.0) - std::pow(a, e + 1.0)) / (e + 1.0);
    }
    if (e == -1.0 && gq == 0.0) {
        // d/dt (1+log(1/t))^(c+1) = -(c+1) t^-1 (1+log(1/t))^c on (0,1]
        double c1 = bq + 1.0;
        auto F = [&](double t) { return std::pow(1.0 + std::log(1.0 / t), c1); };
        if (c1 == 0.0) {
            if (a <= 0.0) return kInf;
            return std::log(1.0 + std::log(1.0 / a)) - std::log(1.0 + std::log(1.0 / b));
        }
        if (a <= 0.0) return c1 < 0.0 ? -F(b) / c1 : kInf;
        return (F(a) - F(b)) / c1;
    }
    if (e == -1.0 && bq == -1.0) {
        // d ell2 = t^-1 ell1^-1 dt on (0,1]
        double c1 = gq + 1.0;
        auto F = [&](double t) { return std::pow(ell2(t), c1); };
        if (c1 == 0.0) {
            if (a <= 0.0) return kInf;
            return std::log(ell2(a)) - std::log(ell2(b));
        }
        if (a <= 0.0) return c1 < 0.0 ? -F(b) / c1 : kInf;
        return (F(a) - F(b)) / c1;
    }
    auto w = [&](double t) {
        return std::pow(t, e) * std::pow(ell1(t), bq) * std::pow(ell2(t), gq);
    };
    if (a <= 0.0) {
        auto r = integrate_to_zero(w, b, 1e-10);
        return r.divergent ? kInf : r.value;
    }
    return integrate_octaves(w, a, b, 1e-10);
}

// quadrature of h over (0,1) split at knots, shell-handling at the zero end
double integrate_unit(const std::function<double(double)>& h,
                      const std::vector<double>& knots) {
    std::vector<double> ks;
    for (double k : knots)
        if (k > 0.0 && k < 1.0) ks.push_back(k);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    double first = ks.empty() ? 1.0 : ks.front();
    auto head = integrate_to_zero(h, first, 1e-9);
    double sum = head.divergent ? kInf : head.value;
    double lo = first;
    for (std::size_t i = 0; i + 1 <= ks.size(); ++i) {
        double hi = i + 1 < ks.size() ? ks[i + 1] : 1.0;
        sum += integrate_octaves(h, lo, hi, 1e-9);
        lo = hi;
    }
    if (lo < 1.0) sum += integrate_octaves(h, lo, 1.0, 1e-9);
    return sum;
}

// sup of h over (0,1): scan over a log/linear grid merged with knots, golden
// refinement around the best cell
double sup_unit(const std::function<double(double)>& h,
                const std::vector<double>& knots, std::size_t samples = 1024) {
    std::vector<double> g;
    g.reserve(samples + knots.size());
    std::size_t half = samples / 2;
    double span = std::log(0.5 / kEvalFloor);
    for (std::size_t i = 0; i < half; ++i)
        g.push_back(kEvalFloor * std::exp(span * static_cast<double>(i) / (half - 1)));
    for (std::size_t i = 0; i <= samples - half; ++i)
        g.push_back(0.5 + 0.5 * static_cast<double>(i) / (samples - half + 1));
    for (double k : knots)
        if (k > 0.0 && k < 1.0) {
            g.push_back(k);
            g.push_back(std::max(k - 1e-12, kEvalFloor));  // left edges matter for sups
        }
    g.push_back(std::nextafter(1.0, 0.0));
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    double best = 0.0, best_x = g.front();
    for (double x : g) {
        double v = h(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    auto it = std::lower_bound(g.begin(), g.end(), best_x);
    double lo = it == g.begin() ? g.front() : *(it - 1);
    double hi = (it + 1) == g.end() ? g.back() : *(it + 1);
    double x = maximize_scan_golden(h, lo, hi, 8, 1e-13);
    return std::max(best, h(x));
}

}  // namespace

NormFunctional NormFunctional::lp(double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("NormFunctional::lp: p must be in [1, inf]");
    NormFunctional n;
    n.kind_ = Kind::Lp;
    n.p_ = p;
    return n;
}

NormFunctional NormFunctional::lorentz_zygmund(double p, double q, double beta, double gamma) {
    if (!(p >= 1.0) || !(q >= 1.0))
        throw std::invalid_argument("NormFunctional::lorentz_zygmund: p, q must be in [1, inf]");
    NormFunctional n;
    n.kind_ = Kind::LZ;
    n.p_ = p;
    n.q_ = q;
    n.beta_ = beta;
    n.gamma_ = gamma;
    return n;
}

NormFunctional NormFunctional::lambda(const Profile& I) {
    NormFunctional n;
    n.kind_ = Kind::Lambda;
    n.profile_ = std::make_shared<Profile>(I);
    return n;
}

NormFunctional NormFunctional::small_m(const Profile& I) {
    NormFunctional n;
    n.kind_ = Kind::SmallM;
    n.profile_ = std::make_shared<Profile>(I);
    return n;
}

NormFunctional NormFunctional::big_m(const Profile& I) {
    NormFunctional n;
    n.kind_ = Kind::BigM;
    n.profile_ = std::make_shared<Profile>(I);
    return n;
}

NormFunctional NormFunctional::z_norm(const NormFunctional& base, const Profile& I) {
    NormFunctional n;
    n.kind_ = Kind::Z;
    n.base_ = std::make_shared<NormFunctional>(base);
    n.profile_ = std::make_shared<Profile>(I);
    return n;
}

NormFunctional NormFunctional::weak_l1() {
    NormFunctional n;
    n.kind_ = Kind::WeakL1;
    return n;
}

NormFunctional NormFunctional::down_dual(const NormFunctional& base) {
    NormFunctional n;
    n.kind_ = Kind::DownDual;
    n.base_ = std::make_shared<NormFunctional>(base);
    return n;
}

bool NormFunctional::admissible() const {
    switch (kind_) {
        case Kind::Lp:
            return true;
        case Kind::LZ:
            if (p_ == 1.0) return q_ == 1.0 && beta_ >= 0.0 && gamma_ == 0.0;
            if (!is_inf(p_)) return true;  // p in (1, inf), any q
            if (!is_inf(q_)) return beta_ + 1.0 / q_ < 0.0;
            return beta_ <= 0.0;
        case Kind::Lambda:
            return !profile_->int_I_over_s(std::nextafter(1.0, 0.0)).divergent;
        case Kind::BigM:
            return true;  // Marcinkiewicz norm of a quasiconcave profile
        case Kind::DownDual:
            return base_->admissible();
        default:
            return false;  // quasinorm semantics (SmallM, Z, WeakL1)
    }
}

std::string NormFunctional::admissibility_note() const {
    if (admissible()) return {};
    switch (kind_) {
        case Kind::LZ:
            return "Lorentz-Zygmund parameters outside the r.i.-norm range; quasinorm semantics";
        case Kind::SmallM:
            return "m_I is a quasinorm; it is a Banach norm only under the average property";
        case Kind::Z:
            return "Z-norm is an r.i. quasinorm; equivalent to a norm under the average property";
        case Kind::WeakL1:
            return "weak-L1 is a quasinorm";
        case Kind::Lambda:
            return "Lambda_I with non-integrable I(s)/s takes the value +inf on nonzero functions";
        default:
            return "quasinorm semantics";
    }
}

std::string NormFunctional::id() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Lp:
            os << "Lp:";
            if (is_inf(p_))
                os << "inf";
            else
                os << p_;
            break;
        case Kind::LZ:
            os << "LZ:";
            if (is_inf(p_))
                os << "inf";
            else
                os << p_;
            os << ",";
            if (is_inf(q_))
                os << "inf";
            else
                os << q_;
            os << "," << beta_ << "," << gamma_;
            break;
        case Kind::Lambda:
            os << "Lambda:" << profile_->spec();
            break;
        case Kind::SmallM:
            os << "mI:" << profile_->spec();
            break;
        case Kind::BigM:
            os << "MI:" << profile_->spec();
            break;
        case Kind::Z:
            os << "Z:" << base_->id() << "@" << profile_->spec();
            break;
        case Kind::WeakL1:
            os << "weakL1";
            break;
        case Kind::DownDual:
            os << "downdual(" << base_->id() << ")";
            break;
    }
    return os.str();
}

double NormFunctional::operator()(const StepFunction& f) const {
    if (kind_ == Kind::DownDual) {
        auto assoc = associate(*base_);
        if (!assoc.norm)
            throw UnsupportedAssociate("down-dual norm: " + assoc.note);
        return (*assoc.norm)(level_function(f));
    }
    return eval(DerivedFunction::from_step(f));
}

double NormFunctional::eval(const DerivedFunction& g) const {
    switch (kind_) {
        case Kind::Lp: {
            if (g.is_step()) {
                const auto& s = g.step();  // rearranged: deterministic sum order
                if (is_inf(p_)) return s.values().empty() ? 0.0 : s.values()[0];
                double sum = 0.0;
                for (std::size_t i = 0; i < s.piece_count(); ++i)
                    sum += std::pow(s.piece_value(i), p_) * (s.piece_right(i) - s.piece_left(i));
                return p_ == 1.0 ? sum : std::pow(sum, 1.0 / p_);
            }
            if (is_inf(p_)) {
                auto z = probe_zero_limit([&](double t) { return g.star(t); });
                return z.divergent ? kInf : z.value;
            }
            // equimeasurability: ∫ g^p needs no rearrangement
            double sum = integrate_unit([&](double t) { return std::pow(g.eval(t), p_); },
                                        g.knots());
            return p_ == 1.0 ? sum : std::pow(sum, 1.0 / p_);
        }
        case Kind::LZ: {
            if (is_inf(q_)) {
                auto h = [&](double t) {
                    double w = (is_inf(p_) ? 1.0 : std::pow(t, 1.0 / p_)) *
                               std::pow(ell1(t), beta_) * std::pow(ell2(t), gamma_);
                    return w * g.star(t);
                };
                return sup_unit(h, g.star_knots());
            }
            if (g.is_step()) {
                const auto& s = g.step();
                double sum = 0.0;
                for (std::size_t i = 0; i < s.piece_count(); ++i) {
                    double v = s.piece_value(i);
                    if (v == 0.0) continue;
                    double w = lz_weight_integral(p_, q_, beta_, gamma_,
                                                  s.piece_left(i), s.piece_right(i));
                    if (is_inf(w)) return kInf;
                    sum += std::pow(v, q_) * w;
                }
                return std::pow(sum, 1.0 / q_);
            }
            double e = is_inf(p_) ? -1.0 : q_ / p_ - 1.0;
            auto h = [&](double t) {
                double w = std::pow(t, e) * std::pow(ell1(t), beta_ * q_) *
                           std::pow(ell2(t), gamma_ * q_);
                double st = g.star(t);
                return st == 0.0 ? 0.0 : w * std::pow(st, q_);
            };
            double sum = integrate_unit(h, g.star_knots());
            return std::pow(sum, 1.0 / q_);
        }
        case Kind::Lambda: {
            const Profile& I = *profile_;
            if (g.is_step()) {
                const auto& s = g.step();
                double sum = 0.0;
                for (std::size_t i = 0; i < s.piece_count(); ++i) {
                    double v = s.piece_value(i);
                    if (v == 0.0) continue;
                    if (i == 0) {
                        auto head = I.int_I_over_s(s.piece_right(0));
                        if (head.divergent) return kInf;
                        sum += v * head.value;
                    } else {
                        sum += v * I.int_I_over_s_between(s.piece_left(i), s.piece_right(i));
                    }
                }
                return sum;
            }
            return integrate_unit([&](double t) { return I(t) / t * g.star(t); },
                                  g.star_knots());
        }
        case Kind::SmallM: {
            const Profile& I = *profile_;
            if (g.is_step()) {
                const auto& s = g.step();
                double best = 0.0;
                for (std::size_t i = 0; i < s.piece_count(); ++i)
                    best = std::max(best, s.piece_value(i) * I(s.piece_right(i)));
                return best;
            }
            return sup_unit([&](double t) { return I(t) * g.star(t); }, g.star_knots());
        }
        case Kind::BigM: {
            const Profile& I = *profile_;
            if (g.is_step()) {
                auto mp = maximal_pieces(g.step());
                double best = 0.0;
                for (std::size_t i = 0; i < mp.size(); ++i) {
                    double a = std::max(mp.left[i], kEvalFloor);
                    double b = std::min(mp.right[i], std::nextafter(1.0, 0.0));
                    auto h = [&](double t) { return I(t) * (mp.c[i] + mp.d[i] / t); };
                    double x = maximize_scan_golden(h, a, b, 17, 1e-12);
                    best = std::max({best, h(a), h(b), h(x)});
                }
                return best;
            }
            // generic: cumulative of g* on a sampled grid, dyadically refined
            // until the sup settles
            auto star = [&](double t) { return g.star(t); };
            auto sup_on = [&](const GridFunction& grid) {
                double best = 0.0, cum = 0.0, prev = 0.0, prev_v = grid.samples[0];
                for (std::size_t i = 0; i < grid.grid.size(); ++i) {
                    double t = grid.grid[i];
                    cum += 0.5 * (prev_v + grid.samples[i]) * (t - prev);
                    prev = t;
                    prev_v = grid.samples[i];
                    if (t > 0.0) best = std::max(best, (*profile_)(t)*cum / t);
                }
                return best;
            };
            auto grid = GridFunction::sample(star, 1024);
            double best = sup_on(grid);
            for (int pass = 0; pass < 4; ++pass) {
                grid = grid.refined(star);
                double next = sup_on(grid);
                bool settled = std::abs(next - best) <= 1e-8 * std::max(best, 1e-300);
                best = next;
                if (settled) break;
            }
            return best;
        }
        case Kind::Z: {
            EvalFunction s =
                g.is_step() ? apply_SI(*profile_, g.step())
                            : apply_SI_monotone(*profile_,
                                                EvalFunction([g](double t) { return g.star(t); },
                                                             Monotonicity::Nonincreasing,
                                                             "star", g.star_knots()));
            return base_->eval(DerivedFunction::from_monotone(s));
        }
        case Kind::WeakL1: {
            if (g.is_step()) {
                const auto& s = g.step();
                double best = 0.0;
                for (std::size_t i = 0; i < s.piece_count(); ++i)
                    best = std::max(best, s.piece_value(i) * s.piece_right(i));
                return best;
            }
            return sup_unit([&](double t) { return t * g.star(t); }, g.star_knots());
        }
        case Kind::DownDual:
            throw std::invalid_argument(
                "down-dual norms need an explicit step function; use operator()");
    }
    return 0.0;
}

AssociateResult associate(const NormFunctional& N) {
    AssociateResult r;
    switch (N.kind()) {
        case NormFunctional::Kind::Lp: {
            double p = N.p();
            double pd = is_inf(p) ? 1.0 : (p == 1.0 ? kInf : p / (p - 1.0));
            r.norm = NormFunctional::lp(pd);
            r.exact_holder = true;
            r.exact_phi = true;
            return r;
        }
        case NormFunctional::Kind::Lambda: {
            r.norm = NormFunctional::small_m(Profile::tilde_of(N.profile()));
            r.exact_holder = true;  // ∫ f*g* <= sup (s/I) g* · ∫ (I/s) f*
            r.exact_phi = false;
            r.note = "equivalent norms under condition (1)";
            return r;
        }
        case NormFunctional::Kind::SmallM: {
            r.norm = NormFunctional::lambda(Profile::tilde_of(N.profile()));
            r.exact_holder = true;
            r.exact_phi = false;
            r.note = "equivalent norms when the base profile is quasiconcave";
            return r;
        }
        case NormFunctional::Kind::LZ: {
            double p = N.p();
            if (p > 1.0 && !is_inf(p)) {
                double q = N.q();
                double pd = p / (p - 1.0);
                double qd = is_inf(q) ? 1.0 : (q == 1.0 ? kInf : q / (q - 1.0));
                r.norm = NormFunctional::lorentz_zygmund(pd, qd, -N.beta(), -N.gamma());
                r.exact_holder = true;  // pointwise weight factorization
                r.exact_phi = false;
                r.note = "associate up to equivalent norms";
                return r;
            }
            r.note = "no closed-form associate for Lorentz-Zygmund with p = 1 or p = inf";
            return r;
        }
        default:
            r.note = "no closed-form associate for " + N.id();
            return r;
    }
}

double fundamental_function(const NormFunctional& N, double t) {
    if (!(t > 0.0 && t <= 1.0))
        throw std::invalid_argument("fundamental_function: t must be in (0, 1]");
    if (t == 1.0) t = std::nextafter(1.0, 0.0);
    return N(StepFunction::indicator(0.0, t));
}

double down_dual_norm(const NormFunctional& X, const StepFunction& f) {
    auto assoc = associate(X);
    if (!assoc.norm) throw UnsupportedAssociate("down_dual_norm: " + assoc.note);
    return (*assoc.norm)(level_function(f));
}

}  // namespace ri
