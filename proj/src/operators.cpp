#include "ri/operators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace ri {

namespace {

struct StarPieces {
    StepFunction fstar;
    std::vector<double> rights;  // piece right endpoints, last is 1
    std::vector<double> lefts;
    std::vector<double> values;
};

StarPieces star_pieces(const StepFunction& f) {
    StarPieces sp{rearrange(f), {}, {}, {}};
    for (std::size_t i = 0; i < sp.fstar.piece_count(); ++i) {
        sp.lefts.push_back(sp.fstar.piece_left(i));
        sp.rights.push_back(sp.fstar.piece_right(i));
        sp.values.push_back(sp.fstar.piece_value(i));
    }
    return sp;
}

// sample grid shared by the *_monotone operators: log-spaced low end plus a
// linear top, merged with extra knots
std::vector<double> sup_grid(std::size_t samples, const std::vector<double>& knots) {
    std::vector<double> g;
    g.reserve(samples + knots.size() + 2);
    std::size_t half = samples / 2;
    double span = std::log(0.5 / kEvalFloor);
    for (std::size_t i = 0; i < half; ++i)
        g.push_back(kEvalFloor * std::exp(span * static_cast<double>(i) / (half - 1)));
    for (std::size_t i = 0; i <= samples - half; ++i)
        g.push_back(0.5 + 0.5 * static_cast<double>(i) / (samples - half));
    for (double k : knots)
        if (k > 0.0 && k < 1.0) g.push_back(k);
    g.push_back(std::nextafter(1.0, 0.0));
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    while (!g.empty() && g.back() >= 1.0) g.pop_back();
    return g;
}

}  // namespace

EvalFunction apply_SI(const Profile& I, const StepFunction& f) {
    auto sp = std::make_shared<StarPieces>(star_pieces(f));
    auto Ip = std::make_shared<Profile>(I);
    // prefix max of v_i * I(b_i): the inner sup over a full piece sits at its
    // right endpoint because I is nondecreasing
    auto pm = std::make_shared<std::vector<double>>();
    double run = 0.0;
    for (std::size_t i = 0; i < sp->values.size(); ++i) {
        run = std::max(run, sp->values[i] * (*Ip)(sp->rights[i]));
        pm->push_back(run);
    }
    auto eval = [sp, Ip, pm](double t) {
        std::size_t j = sp->fstar.piece_index(t);
        double r = sp->values[j] * (*Ip)(t);
        if (j > 0) r = std::max(r, (*pm)[j - 1]);
        return r / (*Ip)(t);
    };
    return EvalFunction(eval, Monotonicity::Nonincreasing, "S_I", sp->fstar.breakpoints());
}

EvalFunction apply_TI(const Profile& I, const StepFunction& f) {
    if (!I.quasiconcave_hint())
        throw std::invalid_argument("apply_TI: profile must be quasiconcave");
    auto sp = std::make_shared<StarPieces>(star_pieces(f));
    auto Ip = std::make_shared<Profile>(I);
    // suffix max of v_i * b_i / I(b_i): s/I(s) is nondecreasing under
    // quasiconcavity, so per-piece sups sit at right endpoints
    auto sm = std::make_shared<std::vector<double>>(sp->values.size(), 0.0);
    double run = 0.0;
    for (std::size_t i = sp->values.size(); i-- > 0;) {
        double b = sp->rights[i];
        run = std::max(run, sp->values[i] * b / (*Ip)(b));
        (*sm)[i] = run;
    }
    auto eval = [sp, Ip, sm](double t) {
        std::size_t j = sp->fstar.piece_index(t);
        return (*Ip)(t) / t * (*sm)[j];
    };
    return EvalFunction(eval, Monotonicity::Nonincreasing, "T_I", sp->fstar.breakpoints());
}

EvalFunction apply_HI(const Profile& I, const StepFunction& f, int order) {
    if (order < 1) throw std::invalid_argument("apply_HI: order must be >= 1");
    auto fp = std::make_shared<StepFunction>(f);
    auto Ip = std::make_shared<Profile>(I);
    // suffix integrals of f/I per piece of f
    auto suffix = std::make_shared<std::vector<double>>(f.piece_count() + 1, 0.0);
    for (std::size_t i = f.piece_count(); i-- > 0;) {
        double w = f.piece_value(i) > 0.0
                       ? f.piece_value(i) * I.int_recip_I_between(f.piece_left(i), f.piece_right(i))
                       : 0.0;
        (*suffix)[i] = (*suffix)[i + 1] + w;
    }
    auto eval1 = [fp, Ip, suffix](double t) {
        std::size_t j = fp->piece_index(t);
        double partial = fp->piece_value(j) > 0.0
                             ? fp->piece_value(j) * Ip->int_recip_I_between(t, fp->piece_right(j))
                             : 0.0;
        return (*suffix)[j + 1] + partial;
    };
    EvalFunction level(eval1, Monotonicity::Nonincreasing, "H_I", f.breakpoints());
    for (int m = 2; m <= order; ++m) {
        // compose on a refined grid: cumulative of g/I accumulated backwards
        auto grid = std::make_shared<std::vector<double>>(
            sup_grid(4096, level.knots()));
        auto cum = std::make_shared<std::vector<double>>(grid->size(), 0.0);
        EvalFunction prev = level;
        auto integrand = [prev, Ip](double s) { return prev(s) / (*Ip)(s); };
        // tail from the last grid point to 1
        double tail = gl15(integrand, grid->back(), 1.0);
        (*cum)[grid->size() - 1] = tail;
        for (std::size_t i = grid->size() - 1; i-- > 0;)
            (*cum)[i] = (*cum)[i + 1] + gl15(integrand, (*grid)[i], (*grid)[i + 1]);
        auto evalm = [grid, cum, integrand](double t) {
            auto it = std::lower_bound(grid->begin(), grid->end(), t);
            if (it == grid->end()) return gl15(integrand, t, 1.0);
            std::size_t i = static_cast<std::size_t>(it - grid->begin());
            return (*cum)[i] + gl15(integrand, t, (*grid)[i]);
        };
        level = EvalFunction(evalm, Monotonicity::Nonincreasing, "H_I^m", level.knots());
    }
    return level;
}

EvalFunction apply_RI(const Profile& I, const StepFunction& f) {
    auto fp = std::make_shared<StepFunction>(f);
    auto Ip = std::make_shared<Profile>(I);
    auto prefix = std::make_shared<std::vector<double>>(f.primitive());
    auto eval = [fp, Ip, prefix](double t) {
        std::size_t j = fp->piece_index(t);
        double num = (*prefix)[j] + fp->piece_value(j) * (t - fp->piece_left(j));
        return num / (*Ip)(t);
    };
    return EvalFunction(eval, Monotonicity::None, "R_I", f.breakpoints());
}

EvalFunction apply_GI(const Profile& I, const StepFunction& f) {
    auto sp = std::make_shared<StarPieces>(star_pieces(f));
    auto Ip = std::make_shared<Profile>(I);
    auto prefix = std::make_shared<std::vector<double>>(sp->fstar.primitive());
    auto ratio = [sp, Ip, prefix](double s) {
        std::size_t j = sp->fstar.piece_index(s);
        double num = (*prefix)[j] + sp->values[j] * (s - sp->lefts[j]);
        return num / (*Ip)(s);
    };
    // split pieces at formula knots so each cell is unimodal for the profiles
    // in the toolkit, then locate per-cell maxima once
    std::vector<double> bounds{0.0};
    for (std::size_t i = 0; i < sp->rights.size(); ++i) bounds.push_back(sp->rights[i]);
    for (double k : I.formula_knots())
        if (k > 0.0 && k < 1.0) bounds.push_back(k);
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    auto cells = std::make_shared<std::vector<double>>(bounds);
    std::size_t n = bounds.size() - 1;
    auto peak_x = std::make_shared<std::vector<double>>(n);
    auto suffix = std::make_shared<std::vector<double>>(n + 1, 0.0);
    std::vector<double> cell_max(n);
    for (std::size_t i = 0; i < n; ++i) {
        double a = std::max(bounds[i], kEvalFloor);
        double b = bounds[i + 1];
        double x = maximize_scan_golden(ratio, a, b, 33, 1e-13);
        (*peak_x)[i] = x;
        cell_max[i] = ratio(x);
    }
    for (std::size_t i = n; i-- > 0;)
        (*suffix)[i] = std::max((*suffix)[i + 1], cell_max[i]);

    auto eval = [cells, peak_x, suffix, ratio](double t) {
        auto it = std::upper_bound(cells->begin() + 1, cells->end(), t);
        std::size_t j = static_cast<std::size_t>(it - cells->begin()) - 1;
        j = std::min(j, cells->size() - 2);
        // sup over [t, cell right]: past the peak the ratio decreases
        double partial = t <= (*peak_x)[j]
                             ? std::max(ratio((*peak_x)[j]), ratio(t))
                             : ratio(t);
        partial = std::max(partial, ratio(std::max((*cells)[j + 1] - 1e-15, t)));
        return std::max(partial, (*suffix)[j + 1]);
    };
    return EvalFunction(eval, Monotonicity::Nonincreasing, "G_I", sp->fstar.breakpoints());
}

EvalFunction apply_H_aux(const Profile& I, const StepFunction& g) {
    auto gp = std::make_shared<StepFunction>(g);
    auto Ip = std::make_shared<Profile>(I);
    auto suffix = std::make_shared<std::vector<double>>(g.piece_count() + 1, 0.0);
    for (std::size_t i = g.piece_count(); i-- > 0;) {
        double w = g.piece_value(i) > 0.0
                       ? g.piece_value(i) * I.int_I_over_s2_between(g.piece_left(i), g.piece_right(i))
                       : 0.0;
        (*suffix)[i] = (*suffix)[i + 1] + w;
    }
    auto eval = [gp, Ip, suffix](double s) {
        std::size_t j = gp->piece_index(s);
        double partial = gp->piece_value(j) > 0.0
                             ? gp->piece_value(j) * Ip->int_I_over_s2_between(s, gp->piece_right(j))
                             : 0.0;
        return s / (*Ip)(s) * ((*suffix)[j + 1] + partial);
    };
    return EvalFunction(eval, Monotonicity::None, "H", g.breakpoints());
}

EvalFunction apply_Rprime(const Profile& I, const StepFunction& f) {
    auto sp = std::make_shared<StarPieces>(star_pieces(f));
    auto Ip = std::make_shared<Profile>(I);
    auto prefix = std::make_shared<std::vector<double>>(sp->values.size() + 1, 0.0);
    for (std::size_t i = 0; i < sp->values.size(); ++i) {
        double w = sp->values[i] > 0.0
                       ? sp->values[i] * I.int_s_over_I_between(sp->lefts[i], sp->rights[i])
                       : 0.0;
        (*prefix)[i + 1] = (*prefix)[i] + w;
    }
    auto eval = [sp, Ip, prefix](double t) {
        std::size_t j = sp->fstar.piece_index(t);
        double num = (*prefix)[j];
        if (sp->values[j] > 0.0)
            num += sp->values[j] * Ip->int_s_over_I_between(sp->lefts[j], t);
        double den = Ip->int_s_over_I(t);
        return den > 0.0 ? num / den : 0.0;
    };
    return EvalFunction(eval, Monotonicity::Nonincreasing, "R_prime", sp->fstar.breakpoints());
}

EvalFunction apply_SI_monotone(const Profile& I, const EvalFunction& g, std::size_t samples) {
    if (g.monotonicity() != Monotonicity::Nonincreasing)
        throw std::invalid_argument("apply_SI_monotone: g must be nonincreasing");
    auto grid = std::make_shared<std::vector<double>>(sup_grid(samples, g.knots()));
    auto Ip = std::make_shared<Profile>(I);
    auto pm = std::make_shared<std::vector<double>>(grid->size(), 0.0);
    double run = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
        run = std::max(run, (*Ip)((*grid)[i]) * g((*grid)[i]));
        (*pm)[i] = run;
    }
    auto eval = [grid, Ip, pm, g](double t) {
        double cand = (*Ip)(t) * g(t);
        auto it = std::upper_bound(grid->begin(), grid->end(), t);
        if (it != grid->begin())
            cand = std::max(cand, (*pm)[static_cast<std::size_t>(it - grid->begin()) - 1]);
        return cand / (*Ip)(t);
    };
    return EvalFunction(eval, Monotonicity::Nonincreasing, "S_I*", g.knots());
}

EvalFunction apply_TI_monotone(const Profile& I, const EvalFunction& g, std::size_t samples) {
    if (g.monotonicity() != Monotonicity::Nonincreasing)
        throw std::invalid_argument("apply_TI_monotone: g must be nonincreasing");
    auto grid = std::make_shared<std::vector<double>>(sup_grid(samples, g.knots()));
    auto Ip = std::make_shared<Profile>(I);
    auto sm = std::make_shared<std::vector<double>>(grid->size(), 0.0);
    double run = 0.0;
    for (std::size_t i = grid->size(); i-- > 0;) {
        double s = (*grid)[i];
        run = std::max(run, s / (*Ip)(s) * g(s));
        (*sm)[i] = run;
    }
    auto eval = [grid, Ip, sm, g](double t) {
        double cand = t / (*Ip)(t) * g(t);
        auto it = std::lower_bound(grid->begin(), grid->end(), t);
        if (it != grid->end())
            cand = std::max(cand, (*sm)[static_cast<std::size_t>(it - grid->begin())]);
        return (*Ip)(t) / t * cand;
    };
    return EvalFunction(eval, Monotonicity::Nonincreasing, "T_I*", g.knots());
}

IntegralResult integral_TI(const Profile& I, const StepFunction& f) {
    auto sp = star_pieces(f);
    std::size_t n = sp.values.size();
    // per-piece sup of (s/I(s)) v_i, with a check that it sits at the right
    // endpoint (otherwise the piecewise-constant sup formula does not apply)
    std::vector<double> piece_sup(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (sp.values[i] == 0.0) continue;
        // profile evaluations are safe far below the operator floor, and
        // supports may sit below it (shrinking-witness sequences)
        double a = std::max(sp.lefts[i], 1e-300);
        double b = sp.rights[i];
        auto w = [&](double s) { return s / I(s); };
        double x = maximize_scan_golden(w, a, b, 33, 1e-13);
        if (w(x) > w(b) * (1.0 + 1e-9))
            throw std::invalid_argument(
                "integral_TI: s/I(s) is not nondecreasing on a support piece");
        piece_sup[i] = sp.values[i] * b / I(b);
    }
    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = std::max(suffix[i + 1], piece_sup[i]);
    if (suffix[0] == 0.0) return {0.0, false};

    // ∫_0^1 (I(t)/t) * N(t) dt with N constant on each piece of f*
    auto first = I.int_I_over_s(sp.rights[0]);
    if (first.divergent && suffix[0] > 0.0) return divergent_integral();
    double total = suffix[0] * first.value;
    for (std::size_t i = 1; i < n; ++i) {
        if (suffix[i] == 0.0) break;
        total += suffix[i] * I.int_I_over_s_between(sp.lefts[i], sp.rights[i]);
    }
    return {total, false};
}

}  // namespace ri
