#include "ri/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "ri/corpus.hpp"

namespace ri {

namespace {

// class-Q membership warning, cached per profile spec (grid kept moderate;
// the dedicated classQ_constants op is the precise instrument)
bool profile_in_class_q(const Profile& I) {
    static std::mutex mu;
    static std::map<std::string, bool> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(I.spec());
        if (it != cache.end()) return it->second;
    }
    bool member = false;
    if (I.quasiconcave_hint()) {
        GridSpec spec;
        spec.points = 2048;
        spec.t_min = 1e-40;
        try {
            member = classQ_constants(I, spec).member;
        } catch (const std::exception&) {
            member = false;
        }
    }
    std::lock_guard lock(mu);
    cache.emplace(I.spec(), member);
    return member;
}

// weighted oscillation t -> (I(t)/t)(f**(t) - f*(t)) as a piecewise-monotone
// function: on each piece of f* it equals I(t) d_i / t^2, which decreases
// under quasiconcavity
PiecewiseMonotone weighted_oscillation(const Profile& I, const StepFunction& fstar) {
    auto mp = std::make_shared<MaximalPieces>(maximal_pieces(fstar));
    std::vector<double> knots{0.0};
    for (double b : fstar.breakpoints()) knots.push_back(b);
    for (double k : I.formula_knots())
        if (k > 0.0 && k < 1.0) knots.push_back(k);
    knots.push_back(1.0);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    auto cell_d = std::make_shared<std::vector<double>>();
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        cell_d->push_back(mp->d[mp->find(0.5 * (knots[i] + knots[i + 1]))]);

    auto Ip = std::make_shared<Profile>(I);
    auto eval = [Ip, cell_d](std::size_t i, double t) {
        double d = (*cell_d)[i];
        return d == 0.0 ? 0.0 : (*Ip)(t)*d / (t * t);
    };
    std::function<double(std::size_t, double)> inverse;
    if (I.kind() == Profile::Kind::Power) {
        double alpha = I.power_exponent();
        inverse = [cell_d, alpha](std::size_t i, double level) {
            double d = (*cell_d)[i];
            // level = d t^(alpha-2)  =>  t = (level/d)^(1/(alpha-2))
            return std::pow(level / d, 1.0 / (alpha - 2.0));
        };
    }
    return PiecewiseMonotone(std::move(knots), eval, inverse);
}

}  // namespace

NormValue target_norm(const NormFunctional& X, const Profile& I, const StepFunction& f) {
    NormValue out;
    if (!profile_in_class_q(I))
        out.warnings.push_back(
            "profile is outside class Q: the target-norm formula is evaluated but need not "
            "describe the optimal space");
    if (!X.admissible()) out.warnings.push_back("space: " + X.admissibility_note());
    auto fstar = rearrange(f);
    if (fstar.is_zero()) return out;
    auto osc = weighted_oscillation(I, fstar);
    out.value = X.eval(DerivedFunction::from_piecewise(std::move(osc))) + total_integral(f);
    return out;
}

NormValue target_assoc_norm(const NormFunctional& X, const Profile& I, const StepFunction& f) {
    auto assoc = associate(X);
    if (!assoc.norm) throw UnsupportedAssociate("target_assoc_norm: " + assoc.note);
    NormValue out;
    if (!assoc.note.empty()) out.warnings.push_back("associate: " + assoc.note);
    auto fstar = rearrange(f);
    if (fstar.is_zero()) return out;

    // R_I f*(s) = P*(s)/I(s) per piece, split at the interior peak so each
    // cell is monotone
    auto sp = std::make_shared<StepFunction>(fstar);
    auto prefix = std::make_shared<std::vector<double>>(fstar.primitive());
    auto Ip = std::make_shared<Profile>(I);
    auto ratio = [sp, prefix, Ip](double s) {
        std::size_t j = sp->piece_index(s);
        double num = (*prefix)[j] + sp->piece_value(j) * (s - sp->piece_left(j));
        return num / (*Ip)(s);
    };
    std::vector<double> knots{0.0};
    for (double b : fstar.breakpoints()) knots.push_back(b);
    for (double k : I.formula_knots())
        if (k > 0.0 && k < 1.0) knots.push_back(k);
    knots.push_back(1.0);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    std::vector<double> split;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        split.push_back(knots[i]);
        double a = std::max(knots[i], kEvalFloor);
        double x = maximize_scan_golden(ratio, a, knots[i + 1], 17, 1e-13);
        if (x > knots[i] * (1.0 + 1e-12) && x < knots[i + 1] * (1.0 - 1e-12)) split.push_back(x);
    }
    split.push_back(1.0);
    PiecewiseMonotone view(std::move(split),
                           [ratio](std::size_t, double t) { return ratio(t); });
    out.value = assoc.norm->eval(DerivedFunction::from_piecewise(std::move(view)));
    return out;
}

NormValue domain_norm(const NormFunctional& Y, const Profile& I, const StepFunction& f) {
    auto h1 = apply_HI(I, StepFunction::constant(1.0));
    double existence = Y.eval(DerivedFunction::from_monotone(h1));
    if (!std::isfinite(existence))
        throw NoOptimalDomain("H_I 1 is not in the target space: the optimal domain for " +
                              Y.id() + " does not exist");
    NormValue out;
    if (!Y.admissible()) out.warnings.push_back("space: " + Y.admissibility_note());
    auto fstar = rearrange(f);
    if (fstar.is_zero()) return out;
    out.value = Y.eval(DerivedFunction::from_monotone(apply_HI(I, fstar)));
    return out;
}

NormFunctional znorm(const NormFunctional& X, const Profile& I) {
    return NormFunctional::z_norm(X, I);
}

CorpusBound theorem11_norm(const NormFunctional& X, const Profile& I,
                           const StepFunction& f, const Corpus& corpus) {
    auto assoc = associate(X);
    if (!assoc.norm) throw UnsupportedAssociate("theorem11_norm: " + assoc.note);
    auto fstar = rearrange(f);
    CorpusBound out;
    // downward jumps of f* (an exact finite sum for step functions)
    std::vector<std::pair<double, double>> jumps;  // (t_j, size)
    for (std::size_t i = 0; i + 1 < fstar.piece_count(); ++i)
        jumps.emplace_back(fstar.piece_right(i),
                           fstar.piece_value(i) - fstar.piece_value(i + 1));
    double best = 0.0;
    std::size_t best_idx = 0;
    if (!jumps.empty()) {
        for (std::size_t k = 0; k < corpus.members.size(); ++k) {
            const auto& g = corpus.members[k];
            if (g.is_zero()) continue;
            auto gstar = rearrange(g);
            double pairing = 0.0;
            for (auto [t, dv] : jumps) pairing += I(t) * gstar(t) * dv;
            if (pairing == 0.0) continue;
            double denom = assoc.norm->eval(
                DerivedFunction::from_monotone(apply_SI(I, gstar)));
            if (!(denom > 0.0) || !std::isfinite(denom)) continue;
            double val = pairing / denom;
            if (val > best) {
                best = val;
                best_idx = k;
            }
        }
    }
    out.value = best + total_integral(f);
    out.witness = best_idx;
    return out;
}

EmbeddingPreset EmbeddingPreset::john(int n, int m) {
    if (n < 2) throw std::invalid_argument("john: need n >= 2");
    if (!(m >= 1 && m < n)) throw std::invalid_argument("john: need 1 <= m < n");
    EmbeddingPreset p;
    p.kind = Kind::John;
    p.n = n;
    p.m = m;
    p.alpha = 1.0 - 1.0 / n;  // 1/n'
    return p;
}

EmbeddingPreset EmbeddingPreset::mazya(double alpha, int m) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("mazya: need alpha in (0, 1)");
    if (m < 1) throw std::invalid_argument("mazya: need m >= 1");
    if (!(1.0 - m * (1.0 - alpha) > 0.0))
        throw std::invalid_argument("mazya: need 1 - m(1-alpha) > 0");
    EmbeddingPreset p;
    p.kind = Kind::Mazya;
    p.m = m;
    p.alpha = alpha;
    return p;
}

Profile sobolev_preset(const EmbeddingPreset& preset) {
    double exponent = 1.0 - preset.m * (1.0 - preset.alpha);
    if (!(exponent > 0.0))
        throw std::invalid_argument("sobolev_preset: need 1 - m(1-alpha) > 0");
    return Profile::power(exponent);
}

GLZCase glz_equivalent(double p, double q, double beta, double alpha, int m) {
    if (!(alpha > 0.0 && alpha < 1.0) || m < 1 || !(1.0 - m * (1.0 - alpha) > 0.0))
        throw std::invalid_argument("glz_equivalent: invalid (alpha, m)");
    NormFunctional X = NormFunctional::lorentz_zygmund(p, q, beta);
    if (!X.admissible())
        throw std::invalid_argument("glz_equivalent: inadmissible Lorentz-Zygmund parameters");
    double critical = 1.0 / (m * (1.0 - alpha));
    const double eps = 1e-12;
    GLZCase out;
    out.critical_p = critical;
    auto at_critical = std::abs(p - critical) <= eps * critical;
    if ((p == 1.0 && q == 1.0 && beta >= 0.0) || (p > 1.0 && !at_critical && p < critical)) {
        out.branch = 1;
        // weight exponent (q - qpm(1-alpha) - p)/p, i.e. 1/p* = 1/p - m(1-alpha)
        double pstar = 1.0 / (1.0 / p - m * (1.0 - alpha));
        out.equivalent = NormFunctional::lorentz_zygmund(pstar, q, beta);
        std::ostringstream os;
        os << "subcritical: equivalent to LZ(" << pstar << "," << q << "," << beta << ")";
        out.description = os.str();
        return out;
    }
    if (at_critical) {
        if (beta < 1.0 - 1.0 / q - eps) {
            out.branch = 2;
            out.equivalent = NormFunctional::lorentz_zygmund(kInf, q, beta - 1.0);
            out.description = "critical, beta < 1 - 1/q: weight t^-1 l1^(q(beta-1))";
            return out;
        }
        if (q > 1.0 && std::abs(beta - (1.0 - 1.0 / q)) <= eps) {
            out.branch = 3;
            out.equivalent = NormFunctional::lorentz_zygmund(kInf, q, -1.0 / q, -1.0);
            out.description = "critical, beta = 1 - 1/q: weight t^-1 l1^-1 l2^-q";
            return out;
        }
    }
    out.branch = 4;
    out.equivalent = NormFunctional::lp(kInf);  // f*(0+) is the essential sup
    out.description = "supercritical: equivalent to f*(0+)";
    return out;
}

}  // namespace ri
