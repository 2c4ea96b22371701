#include "ri/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ri/csv.hpp"
#include "ri/norms.hpp"
#include "ri/operators.hpp"
#include "ri/optimal.hpp"

namespace ri {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kExactTol = 1e-9;    // exact identities
constexpr double kCoreTol = 1e-12;    // rearrangement-core arithmetic
constexpr double kQuadTol = 1e-6;     // quadrature-backed comparisons

struct SuiteBuilder {
    SuiteResult result;

    void check(const std::string& id, bool pass, double measured, double tolerance,
               std::string witness = {}) {
        result.assertions.push_back({id, pass, measured, tolerance, std::move(witness)});
    }
    // measured must stay below tolerance
    void below(const std::string& id, double measured, double tolerance,
               std::string witness = {}) {
        check(id, measured <= tolerance, measured, tolerance, std::move(witness));
    }
};

// witness text for equivalence assertions: failures always carry the CSV of
// the offending member
std::string equivalence_witness(const EquivalenceReport& rep, const Corpus& corpus, bool pass) {
    std::ostringstream os;
    os << "ratio in [" << format_double(rep.min_ratio) << ", " << format_double(rep.max_ratio)
       << "]";
    if (!pass) {
        if (!rep.mismatch_witness.empty())
            os << "; mismatch witness: " << rep.mismatch_witness;
        else if (rep.argmax < corpus.members.size())
            os << "; argmax witness: " << to_csv(corpus.members[rep.argmax]);
    }
    return os.str();
}

std::vector<double> eval_points(std::size_t count) {
    std::vector<double> pts;
    pts.reserve(count);
    std::size_t half = count / 2;
    double span = std::log(0.5 / 1e-6);
    for (std::size_t i = 0; i < half; ++i)
        pts.push_back(1e-6 * std::exp(span * static_cast<double>(i) / (half - 1)));
    for (std::size_t i = 0; i <= count - half; ++i)
        pts.push_back(0.5 + 0.5 * static_cast<double>(i) / (count - half + 1));
    pts.erase(std::remove_if(pts.begin(), pts.end(),
                             [](double t) { return t <= 0.0 || t >= 1.0; }),
              pts.end());
    std::sort(pts.begin(), pts.end());
    return pts;
}

// ---------------------------------------------------------------- suites ---

SuiteResult suite_core_identities(const SuiteOptions& opts) {
    SuiteBuilder b;
    Corpus corpus = gen_corpus(opts.seed, opts.size);
    auto points = eval_points(200);

    double worst_equi = 0.0, worst_hl = 0.0, worst_sub = 0.0, worst_weak = 0.0;
    double worst_decomp = 0.0;
    bool involution_ok = true;
    Rng rng(opts.seed ^ 0x5DEECE66DULL);
    for (std::size_t i = 0; i < corpus.members.size(); ++i) {
        const auto& f = corpus.members[i];
        auto fstar = rearrange(f);
        if (rearrange(fstar) != fstar) involution_ok = false;
        // equimeasurability on a level grid
        double top = f.max_value();
        for (int k = 0; k <= 20; ++k) {
            double level = top * k / 20.0;
            worst_equi = std::max(worst_equi,
                                  std::abs(distribution(f, level) - distribution(fstar, level)));
        }
        // Hardy-Littlewood and maximal-function subadditivity on random pairs
        const auto& g = corpus.members[rng.index(corpus.members.size())];
        auto prod = combine(f, g, [](double x, double y) { return x * y; });
        auto prod_star = combine(rearrange(f), rearrange(g),
                                 [](double x, double y) { return x * y; });
        worst_hl = std::max(worst_hl, total_integral(prod) - total_integral(prod_star));
        auto sum_fn = add(f, g);
        auto mf = maximal_fn(f);
        auto mg = maximal_fn(g);
        auto ms = maximal_fn(sum_fn);
        auto gstar = rearrange(g);
        auto sstar = rearrange(sum_fn);
        for (double t : points) {
            worst_sub = std::max(worst_sub, ms(t) - mf(t) - mg(t));
            if (2.0 * t < 1.0)
                worst_weak = std::max(worst_weak, sstar(2.0 * t) - fstar(t) - gstar(t));
            double t2 = 0.35 * t;
            if (t + t2 < 1.0)
                worst_weak = std::max(worst_weak, sstar(t + t2) - fstar(t) - gstar(t2));
        }
        // optimal decomposition reproduces the rearrangement identities
        double tcut = rng.uniform(0.05, 0.95);
        auto [f0, f1] = optimal_decomposition(f, tcut);
        double lambda = fstar(tcut);
        auto f0s = rearrange(f0);
        auto f1s = rearrange(f1);
        for (double t : points) {
            worst_decomp = std::max(worst_decomp,
                                    std::abs(f0s(t) - std::min(fstar(t), lambda)));
            double expected1 = t < tcut ? std::max(fstar(t) - lambda, 0.0) : 0.0;
            worst_decomp = std::max(worst_decomp, std::abs(f1s(t) - expected1));
            worst_decomp = std::max(worst_decomp, std::abs(f0s(t) + f1s(t) - fstar(t)));
        }
    }
    b.check("rearrange-involution", involution_ok, involution_ok ? 0.0 : 1.0, 0.0);
    b.below("equimeasurability", worst_equi, kCoreTol);
    b.below("hardy-littlewood", worst_hl, kCoreTol);
    b.below("maximal-subadditivity", worst_sub, kCoreTol);
    b.below("weak-subadditivity", worst_weak, kCoreTol);
    b.below("optimal-decomposition", worst_decomp, kCoreTol);

    // exact operator identities: S_I S_I = S_I and S_I G_I = G_I
    auto idpoints = eval_points(1000);
    Corpus small = gen_corpus(opts.seed + 1, std::min<std::size_t>(opts.size, 100));
    double worst_ss = 0.0, worst_sg = 0.0;
    for (double alpha : {0.5, 2.0 / 3.0}) {
        auto I = Profile::power(alpha);
        for (const auto& f : small.members) {
            auto s1 = apply_SI(I, f);
            auto s2 = apply_SI_monotone(I, s1);
            auto g1 = apply_GI(I, f);
            auto sg = apply_SI_monotone(I, g1);
            for (double t : idpoints) {
                worst_ss = std::max(worst_ss, std::abs(s2(t) - s1(t)));
                worst_sg = std::max(worst_sg, std::abs(sg(t) - g1(t)));
            }
        }
    }
    b.below("SI-idempotent", worst_ss, kExactTol);
    b.below("SI-GI-identity", worst_sg, kExactTol);

    // pointwise domination f* <= f**, f* <= S_I f, f* <= T_I f
    double worst_dom = 0.0;
    auto I = Profile::power(0.5);
    for (std::size_t i = 0; i < std::min<std::size_t>(corpus.members.size(), 50); ++i) {
        const auto& f = corpus.members[i];
        auto fstar = rearrange(f);
        auto mf = maximal_fn(f);
        auto si = apply_SI(I, f);
        auto ti = apply_TI(I, f);
        for (double t : points) {
            worst_dom = std::max(worst_dom, fstar(t) - mf(t));
            worst_dom = std::max(worst_dom, fstar(t) - si(t));
            worst_dom = std::max(worst_dom, fstar(t) - ti(t));
        }
    }
    b.below("pointwise-domination", worst_dom, kCoreTol);
    return b.result;
}

SuiteResult suite_endpoint_bounds(const SuiteOptions& opts) {
    SuiteBuilder b;
    Corpus corpus = gen_corpus(opts.seed, opts.size);
    auto I = Profile::power(0.5);
    auto Itilde = Profile::tilde_of(I);
    auto mI = NormFunctional::small_m(I);
    auto mIt = NormFunctional::small_m(Itilde);
    auto linf = NormFunctional::lp(kInf);

    double worst_inf = 0.0, worst_mi = 0.0, worst_ti = 0.0;
    for (const auto& f : corpus.members) {
        auto si = apply_SI(I, f);
        auto ti = apply_TI(I, f);
        auto dsi = DerivedFunction::from_monotone(si);
        auto dti = DerivedFunction::from_monotone(ti);
        double fs_inf = linf(f);
        worst_inf = std::max(worst_inf, linf.eval(dsi) - fs_inf);
        worst_mi = std::max(worst_mi, std::abs(mI.eval(dsi) - mI(f)));
        worst_ti = std::max(worst_ti, std::abs(mIt.eval(dti) - mIt(f)));
    }
    b.below("SI-Linf-contraction", worst_inf, kExactTol);
    b.below("SI-mI-isometry", worst_mi, kExactTol);
    b.below("TI-mItilde-isometry", worst_ti, kExactTol);

    // R_I and H_I are mutually associate; quadrature panels are split at the
    // kinks of both factors so the integrands stay analytic per panel
    Rng rng(opts.seed ^ 0xDA3E39CB94B95BDBULL);
    auto integrate_kinked = [](const EvalFunction& smooth, const StepFunction& step) {
        std::vector<double> knots = step.breakpoints();
        for (double k : smooth.knots()) knots.push_back(k);
        std::sort(knots.begin(), knots.end());
        knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
        // first-order head below the evaluation floor, else the two sides of
        // the duality identity lose different amounts of mass near zero
        double sum = step(kEvalFloor * 0.5) * kEvalFloor * smooth(kEvalFloor);
        double lo = kEvalFloor;
        knots.push_back(1.0);
        for (double hi : knots) {
            if (hi <= lo) continue;
            double v = step(0.5 * (lo + hi));
            if (v > 0.0)
                sum += v * integrate_octaves([&](double t) { return smooth(t); }, lo, hi, 1e-11);
            lo = hi;
        }
        return sum;
    };
    double worst_dual = 0.0;
    for (int k = 0; k < 40; ++k) {
        const auto& f = corpus.members[rng.index(corpus.members.size())];
        const auto& g = corpus.members[rng.index(corpus.members.size())];
        double lhs = integrate_kinked(apply_RI(I, f), g);
        double rhs = integrate_kinked(apply_HI(I, g), f);
        worst_dual = std::max(worst_dual,
                              std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0}));
    }
    b.below("RI-HI-duality", worst_dual, 1e-8);

    // operator monotonicity: f <= g implies S_I f <= S_I g, T_I f <= T_I g
    auto points = eval_points(100);
    double worst_mono = 0.0;
    for (int k = 0; k < 20; ++k) {
        const auto& f = corpus.members[rng.index(corpus.members.size())];
        const auto& h = corpus.members[rng.index(corpus.members.size())];
        auto g = add(f, h);  // f <= g pointwise
        auto sif = apply_SI(I, f);
        auto sig = apply_SI(I, g);
        auto tif = apply_TI(I, f);
        auto tig = apply_TI(I, g);
        for (double t : points) {
            worst_mono = std::max(worst_mono, sif(t) - sig(t));
            worst_mono = std::max(worst_mono, tif(t) - tig(t));
        }
    }
    b.below("operator-monotonicity", worst_mono, kCoreTol);

    // (T_I f)** <= C (T_I f**): measured constant, stable under doubling
    auto ratio_for = [&](const Corpus& cc) {
        double worst = 0.0;
        for (std::size_t i = 0; i < cc.members.size(); ++i) {
            const auto& f = cc.members[i];
            if (f.is_zero()) continue;
            auto ti = apply_TI(I, f);
            auto tstar = apply_TI_monotone(I, maximal_fn(f));
            // (T_I f)** via the profile primitive (T_I f is nonincreasing)
            auto cum = [&](double t) {
                return integrate_octaves([&](double s) { return ti(s); }, kEvalFloor, t,
                                         1e-9) / t;
            };
            for (double t : {0.01, 0.1, 0.3, 0.7}) {
                double num = cum(t);
                double den = tstar(t);
                if (den > 0.0) worst = std::max(worst, num / den);
            }
        }
        return worst;
    };
    Corpus half = gen_corpus(opts.seed, opts.size / 4);
    Corpus full = gen_corpus(opts.seed, opts.size / 2);
    double c1 = ratio_for(half), c2 = ratio_for(full);
    b.check("TI-maximal-HLP-constant", c2 <= c1 * 1.05 && std::isfinite(c2), c2, c1 * 1.05);

    // H applied to a rearrangement is pointwise dominated: Hg*(s) <= d g*(s),
    // with d the maximal-operator constant (2 for the square-root profile)
    double worst_h = 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(corpus.members.size(), 40); ++i) {
        const auto& g = corpus.members[i];
        auto gstar = rearrange(g);
        auto hg = apply_H_aux(I, gstar);
        for (double s : points)
            worst_h = std::max(worst_h, hg(s) - 2.0 * gstar(s));
    }
    b.below("H-kernel-pointwise-bound", worst_h, 1e-9);

    // quasi-subadditivity constant of S_I, measured rather than asserted
    double sub_const = 0.0;
    for (int k = 0; k < 20; ++k) {
        const auto& f = corpus.members[rng.index(corpus.members.size())];
        const auto& g = corpus.members[rng.index(corpus.members.size())];
        auto ssum = apply_SI(I, add(f, g));
        auto sf = apply_SI(I, f);
        auto sg = apply_SI(I, g);
        for (double t : points) {
            double denom = sf(0.5 * t) + sg(0.5 * t);
            if (denom > 0.0) sub_const = std::max(sub_const, ssum(t) / denom);
        }
    }
    b.check("SI-subadditivity-constant-report", std::isfinite(sub_const), sub_const, kInf,
            "measured constant in S_I(f+g)(t) <= C (S_I f + S_I g)(t/2)");
    return b.result;
}

SuiteResult suite_conditions(const SuiteOptions& opts) {
    (void)opts;
    SuiteBuilder b;
    // delta2 / cond1 / average are analytic for power profiles
    for (double alpha : {0.5, 2.0 / 3.0, 0.9}) {
        auto I = Profile::power(alpha);
        auto d2 = check_delta2(I);
        b.below("delta2-power-" + format_double(alpha),
                std::abs(d2.sup_ratio - std::pow(2.0, alpha)), 1e-9);
        auto c1 = check_cond1(I);
        b.below("cond1-power-" + format_double(alpha), std::abs(c1.sup_ratio - 1.0 / alpha),
                1e-9);
        auto av = check_average(I);
        b.below("average-power-" + format_double(alpha),
                std::abs(av.sup_ratio - 1.0 / (1.0 - alpha)), 1e-9);
        auto c4 = check_cond4(I);
        b.check("cond4-power-" + format_double(alpha), c4.pass, c4.sup_ratio, kInf);
    }
    // I(t) = t fails the average property (divergent integral)
    auto lin = Profile::power(1.0);
    auto av_lin = check_average(lin);
    b.check("average-linear-fails", !av_lin.pass && av_lin.divergent,
            av_lin.divergent ? 1.0 : 0.0, 0.0);
    // alpha = 1 fails condition (4): left side log(1/t), right side 1
    auto c4_lin = check_cond4(lin);
    b.check("cond4-linear-fails", !c4_lin.pass, c4_lin.sup_ratio, kInf);
    // quasiconcavity: powers pass, normalized t^2 fails with witness
    b.check("quasiconcave-power", check_quasiconcave(Profile::power(0.5)).pass, 0.0, 0.0);
    std::vector<double> ts, is;
    for (int k = 1; k <= 40; ++k) {
        double t = k / 41.0;
        ts.push_back(t);
        is.push_back(t * t);
    }
    auto tsq = Profile::tabulated(ts, is);
    auto qc = check_quasiconcave(tsq);
    b.check("quasiconcave-tsquared-fails", !qc.pass && qc.witness > 0.0, qc.sup_ratio, 1e-9,
            "witness t = " + format_double(qc.witness));
    // log-reciprocal profile: condition (1) integral diverges
    auto logp = Profile::log_reciprocal();
    auto c1_log = check_cond1(logp);
    b.check("cond1-log-profile-fails", !c1_log.pass && c1_log.divergent, 1.0, 0.0);
    // tabulated power matches the closed form
    std::vector<double> t2, i2;
    for (int k = 1; k <= 60; ++k) {
        double t = k / 61.0;
        t2.push_back(t);
        i2.push_back(std::sqrt(t));
    }
    auto tab = Profile::tabulated(t2, i2);
    auto d2tab = check_delta2(tab);
    b.below("delta2-tabulated-sqrt", std::abs(d2tab.sup_ratio - std::pow(2.0, 0.5)), 1e-6);
    // condition reports are monotone under refinement (superset grids)
    GridSpec spec;
    spec.points = 2000;
    auto gauss = Profile::product(PhiSpec::power(2.0));
    auto rep = check_cond1(gauss, spec);
    b.check("cond1-monotone-refinement", rep.sup_ratio >= rep.sup_ratio_coarse * (1.0 - 1e-12),
            rep.sup_ratio - rep.sup_ratio_coarse, kInf);
    // observational report, not an assertion: on the built-in family, every
    // profile passing the average property also passes condition (1);
    // counterexamples would be listed in the witness
    std::size_t counterexamples = 0;
    std::string ce;
    for (auto sp : {"power(0.3)", "power(0.5)", "power(0.9)", "power(1)", "gaussian", "exp",
                    "log"}) {
        auto I = parse_profile_spec(sp);
        if (check_average(I, spec).pass && !check_cond1(I, spec).pass) {
            ++counterexamples;
            ce += std::string(sp) + " ";
        }
    }
    b.check("average-implies-cond1-report", true, static_cast<double>(counterexamples), kInf,
            counterexamples ? "passes average but fails cond1: " + ce
                            : "no counterexamples on the built-in family");
    return b.result;
}

SuiteResult suite_classq(const SuiteOptions& opts) {
    (void)opts;
    SuiteBuilder b;
    for (double alpha : {0.5, 2.0 / 3.0, 0.75, 0.9}) {
        auto rep = classQ_constants(Profile::power(alpha));
        double c_exact = 1.0 / (2.0 - alpha);
        double d_exact = 1.0 / (1.0 - alpha);
        std::string tag = format_double(alpha);
        b.below("classQ-c-" + tag, std::abs(rep.c - c_exact), 1e-3);
        b.below("classQ-d-" + tag, std::abs(rep.d - d_exact), 1e-3);
        b.check("classQ-member-" + tag, rep.member, rep.member ? 1.0 : 0.0, 1.0);
        b.check("classQ-c-range-" + tag, rep.c_in_range, rep.c, 1.0);
        // algebraic identity (1-c) d = c for power profiles
        b.below("classQ-identity-" + tag, std::abs((1.0 - rep.c) * rep.d - rep.c), 2e-3);
    }
    return b.result;
}

SuiteResult suite_gaussian_profile(const SuiteOptions& opts) {
    (void)opts;
    SuiteBuilder b;
    auto gauss = Profile::product(PhiSpec::power(2.0));
    GridSpec spec;
    spec.points = 4000;
    auto c1 = check_cond1(gauss, spec);
    b.check("gaussian-cond1-pass", c1.pass && c1.stable, c1.sup_ratio, kInf);
    auto av = check_average(gauss, spec);
    b.check("gaussian-average-fails", !av.pass && av.divergent, av.divergent ? 1.0 : 0.0, 0.0);
    auto qc = check_quasiconcave(gauss, spec);
    b.check("gaussian-quasiconcave", qc.pass, qc.sup_ratio, 1e-9);
    // near zero the profile behaves like a constant multiple of t sqrt(log(2/t))
    double ratio_lo = kInf, ratio_hi = 0.0;
    for (double t : {1e-3, 1e-5, 1e-7, 1e-9}) {
        double r = gauss(t) / (t * std::sqrt(std::log(2.0 / t)));
        ratio_lo = std::min(ratio_lo, r);
        ratio_hi = std::max(ratio_hi, r);
    }
    b.below("gaussian-shape-constant", ratio_hi / ratio_lo - 1.0, 1e-9);
    // the exponential case reduces to a multiple of t; continuity at the knot
    auto expp = Profile::product(PhiSpec::power(1.0));
    b.below("exponential-linear-shape", std::abs(expp(0.25) / 0.25 - expp(0.4) / 0.4), 1e-9);
    b.below("product-continuity-at-half",
            std::abs(gauss(0.5 - 1e-12) - gauss(0.5 + 1e-12)), 1e-6);
    // cond4 fails for the t sqrt(log)-type profile
    auto c4 = check_cond4(gauss, spec);
    b.check("gaussian-cond4-fails", !c4.pass, c4.sup_ratio, kInf);
    // invalid Phi (sqrt(Phi) convex) is rejected with a witness
    bool rejected = false;
    std::string msg;
    try {
        PhiSpec bad;
        bad.phi = [](double t) { return t * t * t; };
        bad.dphi = [](double t) { return 3.0 * t * t; };
        bad.inv = [](double y) { return std::cbrt(y); };
        bad.name = "phi:cubic";
        Profile::product(bad);
    } catch (const std::invalid_argument& e) {
        rejected = true;
        msg = e.what();
    }
    b.check("phi-invariant-violation-rejected", rejected, rejected ? 1.0 : 0.0, 1.0, msg);
    return b.result;
}

SuiteResult suite_ti_l1(const SuiteOptions& opts) {
    SuiteBuilder b;
    // bounded bracket for power profiles, stable under corpus doubling
    for (double alpha : {0.5, 2.0 / 3.0}) {
        auto I = Profile::power(alpha);
        Corpus corpus = gen_corpus(opts.seed, opts.size);
        Functional A{"int-TI", [&I](const StepFunction& f) {
                         auto r = integral_TI(I, f);
                         return r.divergent ? kInf : r.value;
                     }};
        Functional B{"int-fstar", [](const StepFunction& f) { return total_integral(f); }};
        auto rep = compare_functionals(A, B, corpus);
        bool pass = rep.stable && std::isfinite(rep.max_ratio) && rep.infinite_mismatch == 0;
        b.check("TI-L1-bracket-stable-power-" + format_double(alpha), pass, rep.max_ratio,
                rep.max_ratio_doubled * 1.05, equivalence_witness(rep, corpus, pass));
    }
    // failing profile: the integral diverges for every indicator witness in
    // three dyadic decades of shrinking support
    auto logp = Profile::log_reciprocal();
    bool all_divergent = true;
    std::ostringstream witness;
    for (int k = 0; k <= 30; k += 10) {
        double r = 0.25 * std::pow(2.0, -k);
        auto res = integral_TI(logp, StepFunction::indicator(0.0, r));
        all_divergent = all_divergent && res.divergent;
        witness << "r=" << format_double(r) << " ratio="
                << (res.divergent ? "inf" : format_double(res.value / r)) << "; ";
    }
    b.check("TI-L1-log-profile-unbounded", all_divergent, all_divergent ? 1.0 : 0.0, 1.0,
            witness.str());
    // floor-truncated diagnostic ratios grow monotonically while the support
    // stays well above the evaluation floor
    double truncated_prev = 0.0;
    bool truncated_monotone = true;
    for (int k = 0; k <= 8; ++k) {
        double r = 0.25 * std::pow(2.0, -k);
        double truncated = (r / logp(r)) * logp.int_I_over_s_between(kEvalFloor, r) / r;
        if (k > 0 && truncated < truncated_prev) truncated_monotone = false;
        truncated_prev = truncated;
    }
    b.check("TI-L1-log-profile-truncated-growth", truncated_monotone,
            truncated_monotone ? 1.0 : 0.0, 1.0);
    return b.result;
}

SuiteResult suite_theorem11(const SuiteOptions& opts) {
    SuiteBuilder b;
    auto I = Profile::power(0.5);
    Corpus corpus = gen_corpus(opts.seed, opts.size);
    Corpus doubled = gen_corpus(opts.seed, opts.size * 2);
    std::vector<NormFunctional> spaces = {
        NormFunctional::lp(2.0), NormFunctional::lp(1.5),
        NormFunctional::lorentz_zygmund(2.0, 2.0, 1.0)};
    for (const auto& X : spaces) {
        auto assoc = associate(X);
        // denominators ‖S_I g‖_{X'} do not depend on f: cache them per pool
        auto pool_weights = [&](const Corpus& pool) {
            std::vector<std::pair<StepFunction, double>> gs;  // (g*, denom)
            for (const auto& g : pool.members) {
                if (g.is_zero()) continue;
                auto gstar = rearrange(g);
                double denom = assoc.norm->eval(
                    DerivedFunction::from_monotone(apply_SI(I, gstar)));
                if (denom > 0.0 && std::isfinite(denom)) gs.emplace_back(gstar, denom);
            }
            return gs;
        };
        auto lower_bound = [&](const StepFunction& f,
                               const std::vector<std::pair<StepFunction, double>>& gs) {
            auto fstar = rearrange(f);
            double best = 0.0;
            for (const auto& [gstar, denom] : gs) {
                double pairing = 0.0;
                for (std::size_t i = 0; i + 1 < fstar.piece_count(); ++i) {
                    double t = fstar.piece_right(i);
                    pairing += I(t) * gstar(t) *
                               (fstar.piece_value(i) - fstar.piece_value(i + 1));
                }
                best = std::max(best, pairing / denom);
            }
            return best + total_integral(f);
        };
        auto w1 = pool_weights(corpus);
        auto w2 = pool_weights(doubled);
        Corpus probe = gen_corpus(opts.seed + 7, 40);
        auto ratio_bracket = [&](const std::vector<std::pair<StepFunction, double>>& gs) {
            double lo = kInf, hi = 0.0;
            for (const auto& f : probe.members) {
                if (f.is_zero()) continue;
                double target = target_norm(X, I, f).value;
                double lower = lower_bound(f, gs);
                if (!(lower > 0.0)) continue;
                double r = target / lower;
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
            return std::pair{lo, hi};
        };
        auto [lo1, hi1] = ratio_bracket(w1);
        auto [lo2, hi2] = ratio_bracket(w2);
        // the corpus estimator is a lower bound of the duality supremum, so
        // enlarging the corpus may only push ratios down; both ends must stay
        // within a stable bracket
        bool stable = hi2 <= hi1 + 1e-12 && hi1 <= hi2 * 1.25;
        std::ostringstream note;
        note << "bracket [" << format_double(lo2) << ", " << format_double(hi2) << "]";
        b.check("theorem11-bracket-" + X.id(), std::isfinite(hi2) && lo2 > 0.0 && stable,
                hi2, hi1, note.str());
        b.check("theorem11-lower-bound-" + X.id(), lo2 > 0.0, lo2, kInf);
    }
    // degenerate cases: constants and empty corpora reduce to ‖f‖_1
    auto X = NormFunctional::lp(2.0);
    auto c = StepFunction::constant(3.0);
    Corpus empty;
    empty.seed = opts.seed;
    empty.members = {StepFunction()};
    empty.kinds = all_generator_kinds();
    b.below("theorem11-constant", std::abs(theorem11_norm(X, I, c, corpus).value - 3.0),
            kExactTol);
    b.below("theorem11-zero-corpus",
            std::abs(theorem11_norm(X, I, StepFunction::indicator(0.0, 0.5), empty).value - 0.5),
            kExactTol);
    return b.result;
}

SuiteResult suite_theorem12_target(const SuiteOptions& opts) {
    SuiteBuilder b;
    auto J = sobolev_preset(EmbeddingPreset::john(3, 1));  // J(t) = t^(2/3)
    b.below("john-exponent", std::abs(J.power_exponent() - 2.0 / 3.0), 1e-15);
    auto X = NormFunctional::lp(2.0);
    auto L62 = NormFunctional::lorentz_zygmund(6.0, 2.0);
    Corpus corpus = gen_corpus(opts.seed, opts.size);
    Functional A{"target-L2", [&](const StepFunction& f) { return target_norm(X, J, f).value; }};
    Functional B{"L62", [&](const StepFunction& f) { return L62(f); }};
    auto rep = compare_functionals(A, B, corpus);
    double C = std::max(rep.max_ratio, 1.0 / rep.min_ratio);
    bool pass = std::isfinite(C) && C <= 10.0 && rep.infinite_mismatch == 0;
    b.check("target-vs-L62-bracket", pass, C, 10.0, equivalence_witness(rep, corpus, pass));
    b.check("target-vs-L62-stable", rep.stable, rep.max_ratio_doubled, rep.max_ratio * 1.05);
    // scaling: target(c f) = c target(f)
    Rng rng(opts.seed ^ 0xC0FFEE);
    double worst_scale = 0.0;
    for (int k = 0; k < 10; ++k) {
        const auto& f = corpus.members[rng.index(corpus.members.size())];
        double lam = rng.uniform(0.25, 4.0);
        double lhs = target_norm(X, J, scale(f, lam)).value;
        double rhs = lam * target_norm(X, J, f).value;
        if (rhs > 0.0) worst_scale = std::max(worst_scale, std::abs(lhs / rhs - 1.0));
    }
    b.below("target-scaling", worst_scale, 1e-8);
    return b.result;
}

SuiteResult suite_theorem12_domain(const SuiteOptions& opts) {
    SuiteBuilder b;
    auto I = Profile::power(0.5);
    // optimal domain fails to exist: I(t) = t with Y = L^inf
    bool nonexistence = false;
    try {
        domain_norm(NormFunctional::lp(kInf), Profile::power(1.0), StepFunction::constant(1.0));
    } catch (const NoOptimalDomain&) {
        nonexistence = true;
    }
    b.check("domain-nonexistence-linear-Linf", nonexistence, nonexistence ? 1.0 : 0.0, 1.0);
    // closed form: I = t^(1/2), Y = L^inf, f = 1 gives sup 2(1 - sqrt t) = 2
    double v = domain_norm(NormFunctional::lp(kInf), I, StepFunction::constant(1.0)).value;
    b.below("domain-Linf-constant", std::abs(v - 2.0), 1e-3);
    // For Y = L^inf the domain norm is ∫_0^1 f*/I, so Hardy-Littlewood makes
    // every equimeasurable shuffle dominated with constant one; for Y = L^2
    // the rearranged function is only equivalent, so the ratio is measured.
    auto Yinf = NormFunctional::lp(kInf);
    auto Y2 = NormFunctional::lp(2.0);
    Rng rng(opts.seed ^ 0xFACEFEEDULL);
    double worst_inf2 = 0.0, ratio_hi = 0.0, ratio_lo = kInf;
    for (int k = 0; k < 24; ++k) {
        auto f = gen_uniform_staircase(64, rng);
        double ref_inf = Yinf.eval(DerivedFunction::from_monotone(apply_HI(I, rearrange(f))));
        double ref_2 = Y2.eval(DerivedFunction::from_monotone(apply_HI(I, rearrange(f))));
        for (int s = 0; s < 4; ++s) {
            auto h = shuffle_equimeasurable(f, 64, rng);
            double val_inf = Yinf.eval(DerivedFunction::from_monotone(apply_HI(I, h)));
            double val_2 = Y2.eval(DerivedFunction::from_monotone(apply_HI(I, h)));
            if (ref_inf > 0.0) worst_inf2 = std::max(worst_inf2, val_inf / ref_inf - 1.0);
            if (ref_2 > 0.0) {
                ratio_hi = std::max(ratio_hi, val_2 / ref_2);
                ratio_lo = std::min(ratio_lo, val_2 / ref_2);
            }
        }
    }
    b.below("domain-shuffle-dominated-Linf", worst_inf2, 1e-9);
    std::ostringstream sh;
    sh << "L2 shuffle/rearranged ratio in [" << format_double(ratio_lo) << ", "
       << format_double(ratio_hi) << "]";
    b.check("domain-shuffle-equivalent-L2", ratio_hi < 4.0 && ratio_lo > 0.25, ratio_hi, 4.0,
            sh.str());
    // monotone envelope via Hardy's lemma: the weight 1/I is nonincreasing,
    // so lowering f** lowers the L^inf domain norm
    double worst_env = 0.0;
    Corpus corpus = gen_corpus(opts.seed, 40);
    for (const auto& f : corpus.members) {
        if (f.is_zero()) continue;
        auto fstar = rearrange(f);
        double bpt = 0.25;
        double avg = integrate(fstar, 0.0, bpt) / bpt;
        auto ind = StepFunction::indicator(0.0, bpt);
        auto flat = combine(fstar, ind, [avg](double x, double w) { return w > 0.0 ? avg : x; });
        double nf = domain_norm(Yinf, I, f).value;
        double nflat = domain_norm(Yinf, I, flat).value;
        if (nf > 0.0) worst_env = std::max(worst_env, nflat / nf - 1.0);
    }
    b.below("domain-monotone-envelope", worst_env, 1e-9);
    return b.result;
}

SuiteResult suite_glz_cases(const SuiteOptions& opts) {
    SuiteBuilder b;
    double alpha = 2.0 / 3.0;
    int m = 1;
    auto J = Profile::power(1.0 - m * (1.0 - alpha));
    struct CaseSpec {
        double p, q, beta;
        int branch;
    };
    std::vector<CaseSpec> cases = {{2.0, 2.0, 0.0, 1},
                                   {3.0, 2.0, 0.0, 2},
                                   {3.0, 2.0, 0.5, 3},
                                   {4.0, 2.0, 0.0, 4}};
    Corpus corpus = gen_corpus(opts.seed, opts.size);
    for (const auto& cs : cases) {
        auto sel = glz_equivalent(cs.p, cs.q, cs.beta, alpha, m);
        std::string tag = "p" + format_double(cs.p) + "-b" + format_double(cs.beta);
        b.check("glz-branch-" + tag, sel.branch == cs.branch, sel.branch, cs.branch,
                sel.description);
        auto X = NormFunctional::lorentz_zygmund(cs.p, cs.q, cs.beta);
        Functional A{"target", [&](const StepFunction& f) { return target_norm(X, J, f).value; }};
        Functional B{"equivalent", [&](const StepFunction& f) { return sel.equivalent(f); }};
        auto rep = compare_functionals(A, B, corpus);
        double C = std::max(rep.max_ratio, 1.0 / rep.min_ratio);
        bool pass = std::isfinite(C) && rep.infinite_mismatch == 0 && rep.used > 0;
        b.check("glz-ratio-bounded-" + tag, pass, C, kInf,
                equivalence_witness(rep, corpus, pass));
        b.check("glz-ratio-stable-" + tag, rep.stable, rep.max_ratio_doubled,
                rep.max_ratio * 1.05);
    }
    // branch-1 sanity: the subcritical case lands on the classical target
    auto sel1 = glz_equivalent(2.0, 2.0, 0.0, alpha, m);
    b.below("glz-branch1-L62", std::abs(sel1.equivalent.p() - 6.0), 1e-12);
    return b.result;
}

SuiteResult suite_kfunctional_impl(const Profile& I, const Corpus& corpus,
                                   const std::string& tag) {
    SuiteBuilder b;
    auto mI = NormFunctional::small_m(I);
    double worst_factor2 = 0.0;   // K_upper / (2 sup)
    double report_c = 0.0;        // sup / K_brute
    double worst_brute = 0.0;     // K_brute - K_upper (must be <= 0)
    for (const auto& f : corpus.members) {
        if (f.is_zero()) continue;
        auto fstar = rearrange(f);
        auto si = apply_SI(I, f);  // I(t) S_I f(t) is the running sup
        for (int k = 1; k <= 20; ++k) {
            double t = static_cast<double>(k) / 21.0;
            double tau = I.inverse(t);
            double closed = I(tau) * si(tau);  // sup_{s<=tau} I(s) f*(s)
            if (!(closed > 0.0)) continue;
            // optimal decomposition at tau: f0 bounded, f1 the excess
            auto [f0, f1] = optimal_decomposition(f, tau);
            double upper = mI(f1) + t * f0.max_value();
            worst_factor2 = std::max(worst_factor2, upper / (2.0 * closed));
            // brute-force threshold search over all rearrangement levels
            double brute = upper;
            for (std::size_t i = 0; i < fstar.piece_count(); ++i) {
                double lam = fstar.piece_value(i);
                double cand = mI(excess_over(f, lam)) + t * std::min(lam, f.max_value());
                brute = std::min(brute, cand);
            }
            worst_brute = std::max(worst_brute, brute - upper);
            report_c = std::max(report_c, closed / brute);
        }
    }
    b.below("kfunctional-factor2-" + tag, worst_factor2, 1.0 + 1e-12);
    b.below("kfunctional-brute-below-upper-" + tag, worst_brute, 1e-12);
    b.check("kfunctional-brute-constant-" + tag, std::isfinite(report_c) && report_c >= 1.0 - 1e-12,
            report_c, kInf, "closed form exceeds brute-force K by at most this factor");
    return b.result;
}

SuiteResult suite_kfunctional(const SuiteOptions& opts) {
    SuiteResult out;
    Corpus corpus = gen_corpus(opts.seed, std::min<std::size_t>(opts.size, 60));
    for (double alpha : {0.5, 2.0 / 3.0}) {
        auto one = suite_kfunctional_impl(Profile::power(alpha), corpus,
                                          "power-" + format_double(alpha));
        for (auto& a : one.assertions) out.assertions.push_back(std::move(a));
    }
    // closed form on constants: K <= t c and the sup formula equals c I(I^-1(t)) = c t
    auto I = Profile::power(0.5);
    auto c = StepFunction::constant(2.0);
    auto si = apply_SI(I, c);
    double t = 0.3;
    double closed = I(I.inverse(t)) * si(I.inverse(t));
    out.assertions.push_back({"kfunctional-constant-closed-form",
                              std::abs(closed - 2.0 * t) <= 1e-12,
                              std::abs(closed - 2.0 * t), 1e-12, ""});
    // indicator: f = chi_(0,r), I = sqrt, t = sqrt(r): formula = sqrt(r)
    double r = 0.16;
    auto chi = StepFunction::indicator(0.0, r);
    auto sichi = apply_SI(I, chi);
    double tt = std::sqrt(r);
    double formula = I(I.inverse(tt)) * sichi(I.inverse(tt));
    out.assertions.push_back({"kfunctional-indicator-closed-form",
                              std::abs(formula - std::sqrt(r)) <= 1e-12,
                              std::abs(formula - std::sqrt(r)), 1e-12, ""});
    return out;
}

SuiteResult suite_level_function(const SuiteOptions& opts) {
    SuiteBuilder b;
    Corpus corpus = gen_corpus(opts.seed, opts.size);
    double worst_lower = 0.0;  // ∫ f <= ∫ f°
    double worst_upper = 0.0;  // ∫ f° <= ∫ f*
    double worst_mass = 0.0;
    bool monotone_ok = true;
    for (const auto& f : corpus.members) {
        auto lf = level_function(f);
        auto fstar = rearrange(f);
        if (!is_nonincreasing(lf)) monotone_ok = false;
        std::vector<double> probes = f.breakpoints();
        for (double t : {0.1, 0.25, 0.5, 0.75, 0.9}) probes.push_back(t);
        for (double t : probes) {
            worst_lower = std::max(worst_lower, integrate(f, 0.0, t) - integrate(lf, 0.0, t));
            worst_upper = std::max(worst_upper, integrate(lf, 0.0, t) - integrate(fstar, 0.0, t));
        }
        worst_mass = std::max(worst_mass, std::abs(total_integral(lf) - total_integral(f)));
    }
    b.check("level-function-nonincreasing", monotone_ok, monotone_ok ? 0.0 : 1.0, 0.0);
    b.below("level-function-majorant", worst_lower, kCoreTol);
    b.below("level-function-below-star", worst_upper, kCoreTol);
    b.below("level-function-mass", worst_mass, kCoreTol);
    // worked example: chi_(0.5,1) has level function identically 1/2
    auto lf = level_function(StepFunction::indicator(0.5, 1.0));
    b.check("level-function-chord", lf.breakpoints().empty() && std::abs(lf(0.3) - 0.5) < kCoreTol,
            lf(0.3), 0.5);
    // down-dual: ‖f°‖_{L1} realizes the L-inf down dual; nonincreasing f keeps its norm
    double dd = down_dual_norm(NormFunctional::lp(kInf), StepFunction::indicator(0.5, 1.0));
    b.below("down-dual-chord", std::abs(dd - 0.5), kCoreTol);
    auto mono = rearrange(corpus.members[1]);
    double dd2 = down_dual_norm(NormFunctional::lp(2.0), mono);
    auto l2assoc = NormFunctional::lp(2.0);
    b.below("down-dual-nonincreasing", std::abs(dd2 - (*associate(l2assoc).norm)(mono)), kExactTol);
    return b.result;
}

using SuiteFn = SuiteResult (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry_table() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"core-identities", suite_core_identities},
        {"endpoint-bounds", suite_endpoint_bounds},
        {"conditions", suite_conditions},
        {"classQ-polynomials", suite_classq},
        {"gaussian-profile", suite_gaussian_profile},
        {"TI-L1", suite_ti_l1},
        {"theorem-1-1", suite_theorem11},
        {"theorem-1-2-target", suite_theorem12_target},
        {"theorem-1-2-domain", suite_theorem12_domain},
        {"glz-cases", suite_glz_cases},
        {"kfunctional", suite_kfunctional},
        {"level-function", suite_level_function},
    };
    return table;
}

}  // namespace

bool SuiteResult::all_pass() const {
    return std::all_of(assertions.begin(), assertions.end(),
                       [](const Assertion& a) { return a.pass; });
}

UnknownSuite::UnknownSuite(const std::string& name, const std::vector<std::string>& reg)
    : std::runtime_error("unknown suite '" + name + "'"), registry(reg) {}

std::vector<std::string> suite_registry() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry_table()) names.push_back(name);
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
    for (const auto& [n, fn] : registry_table()) {
        if (n != name) continue;
        auto start = Clock::now();
        SuiteResult r = fn(opts);
        r.suite = name;
        r.seed = opts.seed;
        r.corpus_size = opts.size;
        if (opts.timing)
            r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               Clock::now() - start)
                               .count();
        return r;
    }
    throw UnknownSuite(name, suite_registry());
}

std::vector<SuiteResult> run_all(const SuiteOptions& opts) {
    std::vector<SuiteResult> all;
    for (const auto& name : suite_registry()) all.push_back(run_suite(name, opts));
    return all;
}

SuiteResult kfunctional_check(const Profile& I, const Corpus& corpus) {
    SuiteResult r = suite_kfunctional_impl(I, corpus, I.spec());
    r.suite = "kfunctional";
    r.seed = corpus.seed;
    r.corpus_size = corpus.members.size();
    return r;
}

namespace {

nlohmann::ordered_json json_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

nlohmann::ordered_json suite_json(const SuiteResult& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["corpus_size"] = r.corpus_size;
    j["assertions"] = nlohmann::ordered_json::array();
    for (const auto& a : r.assertions) {
        nlohmann::ordered_json ja;
        ja["id"] = a.id;
        ja["pass"] = a.pass;
        ja["measured"] = json_number(a.measured);
        ja["tolerance"] = json_number(a.tolerance);
        if (!a.witness.empty()) ja["witness"] = a.witness;
        j["assertions"].push_back(std::move(ja));
    }
    j["runtime_ms"] = r.runtime_ms;
    return j;
}

}  // namespace

std::string to_json(const SuiteResult& result) { return suite_json(result).dump(2) + "\n"; }

std::string to_json(const std::vector<SuiteResult>& results) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : results) j.push_back(suite_json(r));
    return j.dump(2) + "\n";
}

}  // namespace ri
