#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ri/corpus.hpp"
#include "ri/operators.hpp"

using namespace ri;

namespace {
StepFunction staircase() {
    // already nonincreasing: 3 on (0,0.2), 2 on (0.2,0.7), 1 on (0.7,1)
    return StepFunction({0.2, 0.7}, {3.0, 2.0, 1.0});
}
}  // namespace

TEST_CASE("S_I closed forms") {
    auto I = Profile::power(0.5);
    auto chi = StepFunction::indicator(0.0, 0.25);
    auto s = apply_SI(I, chi);
    CHECK(s(0.2) == doctest::Approx(1.0));
    CHECK(s(0.64) == doctest::Approx(std::sqrt(0.25 / 0.64)));
    CHECK(apply_SI(I, StepFunction::constant(2.0))(0.3) == doctest::Approx(2.0));
    // worked sup over the staircase pieces
    auto st = apply_SI(I, staircase());
    double expected = 2.0 * std::sqrt(0.7) / std::sqrt(0.9);
    CHECK(st(0.9) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(st(0.9) == doctest::Approx(1.7638).epsilon(1e-4));
    // against the dense-sup oracle
    auto fstar = rearrange(staircase());
    for (double t : {0.1, 0.35, 0.8}) {
        double sup = oracle::dense_sup([&](double x) { return I(x) * fstar(x); }, 1e-9, t);
        CHECK(st(t) == doctest::Approx(sup / I(t)).epsilon(1e-5));
    }
}

TEST_CASE("T_I closed forms") {
    auto I = Profile::power(0.5);
    double r = 0.25;
    auto t_chi = apply_TI(I, StepFunction::indicator(0.0, r));
    CHECK(t_chi(0.04) == doctest::Approx(std::pow(0.04, -0.5) * std::pow(r, 0.5)));
    CHECK(t_chi(0.5) == doctest::Approx(0.0));
    // (T_I 1)(t) = I(t)/t
    auto t_one = apply_TI(I, StepFunction::constant(1.0));
    for (double t : {0.1, 0.5, 0.9}) CHECK(t_one(t) == doctest::Approx(I(t) / t));
    auto t_c = apply_TI(I, StepFunction::constant(3.0));
    CHECK(t_c(0.2) == doctest::Approx(3.0 * I(0.2) / 0.2));
    CHECK_THROWS_AS(apply_TI(Profile::log_reciprocal(), StepFunction::constant(1.0)),
                    std::invalid_argument);
}

TEST_CASE("H_I closed forms and iteration") {
    auto I = Profile::power(0.5);
    double r = 0.25;
    auto h = apply_HI(I, StepFunction::indicator(0.0, r));
    double expect = (std::pow(r, 0.5) - std::pow(0.04, 0.5)) / 0.5;
    CHECK(h(0.04) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(h(0.3) == doctest::Approx(0.0));
    CHECK(apply_HI(I, StepFunction())(0.5) == 0.0);
    CHECK(apply_HI(I, StepFunction::constant(1.0))(0.25) == doctest::Approx(1.0));
    // iterated composition against the Riemann oracle
    auto h2 = apply_HI(I, StepFunction::constant(1.0), 2);
    auto h1 = apply_HI(I, StepFunction::constant(1.0), 1);
    double expected = oracle::riemann([&](double s) { return h1(s) / I(s); }, 0.3, 1.0);
    CHECK(h2(0.3) == doctest::Approx(expected).epsilon(1e-7));
}

TEST_CASE("R_I exact primitives") {
    auto I = Profile::power(0.5);
    auto r1 = apply_RI(I, StepFunction::constant(1.0));
    CHECK(r1(0.49) == doctest::Approx(std::pow(0.49, 0.5)));
    auto rchi = apply_RI(I, StepFunction::indicator(0.0, 0.25));
    CHECK(rchi(0.64) == doctest::Approx(0.25 / 0.8));
    CHECK(apply_RI(I, staircase())(0.5) == doctest::Approx(1.2 / std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("G_I matches the unimodal analysis for indicators") {
    auto I = Profile::power(0.5);
    double r = 0.25;
    auto g = apply_GI(I, StepFunction::indicator(0.0, r));
    CHECK(g(0.1) == doctest::Approx(std::pow(r, 0.5)).epsilon(1e-9));
    CHECK(g(0.5) == doctest::Approx(r / std::sqrt(0.5)).epsilon(1e-9));
    CHECK(apply_GI(I, StepFunction())(0.3) == 0.0);
    // constant: R_I f* increases, sup sits at the right end
    auto gc = apply_GI(I, StepFunction::constant(1.0));
    CHECK(gc(0.4) == doctest::Approx(1.0).epsilon(1e-7));
    // oracle check on a staircase
    auto f = staircase();
    auto ri_f = apply_RI(I, rearrange(f));
    auto gf = apply_GI(I, f);
    for (double t : {0.15, 0.5, 0.85}) {
        double sup = oracle::dense_sup([&](double s) { return ri_f(s); }, t, 1.0 - 1e-9);
        CHECK(gf(t) == doctest::Approx(sup).epsilon(1e-7));
    }
}

TEST_CASE("auxiliary H operator closed form") {
    auto I = Profile::power(0.5);
    auto h = apply_H_aux(I, StepFunction::constant(1.0));
    for (double s : {0.04, 0.25, 0.81})
        CHECK(h(s) == doctest::Approx(2.0 * (1.0 - std::sqrt(s))).epsilon(1e-10));
    CHECK(h(1.0 - 1e-12) == doctest::Approx(0.0).epsilon(1e-5));
    CHECK(apply_H_aux(I, StepFunction())(0.5) == 0.0);
}

TEST_CASE("R-prime is the integral mean of the rearrangement") {
    auto I = Profile::power(0.5);
    auto rc = apply_Rprime(I, StepFunction::constant(5.0));
    CHECK(rc(0.3) == doctest::Approx(5.0));
    // I(t) = t reduces R' to the maximal function
    auto lin = Profile::power(1.0);
    auto f = staircase();
    auto rp = apply_Rprime(lin, f);
    auto mf = maximal_fn(f);
    for (double t : {0.1, 0.45, 0.9}) CHECK(rp(t) == doctest::Approx(mf(t)).epsilon(1e-12));
    // indicator at t = 4r
    double r = 0.2;
    auto rchi = apply_Rprime(I, StepFunction::indicator(0.0, r));
    CHECK(rchi(4.0 * r) == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("operators dominate the rearrangement and stay monotone") {
    auto corpus = gen_corpus(101, 30);
    auto I = Profile::power(2.0 / 3.0);
    for (const auto& f : corpus.members) {
        auto fstar = rearrange(f);
        auto si = apply_SI(I, f);
        auto ti = apply_TI(I, f);
        double prev_s = kInf, prev_t = kInf;
        for (double t : {0.05, 0.15, 0.3, 0.5, 0.7, 0.9}) {
            CHECK(si(t) >= fstar(t) - 1e-12);
            CHECK(ti(t) >= fstar(t) - 1e-12);
            CHECK(si(t) <= prev_s + 1e-12);
            CHECK(ti(t) <= prev_t + 1e-12);
            prev_s = si(t);
            prev_t = ti(t);
        }
    }
}

TEST_CASE("T_I integral: closed value for powers, divergence for the log profile") {
    auto I = Profile::power(0.5);
    double r = 0.25;
    auto res = integral_TI(I, StepFunction::indicator(0.0, r));
    CHECK(!res.divergent);
    // T_I chi = t^(alpha-1) r^(1-alpha) for t < r: integral r^(1-a) * r^a / a = r/a
    CHECK(res.value == doctest::Approx(r / 0.5).epsilon(1e-12));
    auto logp = Profile::log_reciprocal();
    auto div = integral_TI(logp, StepFunction::indicator(0.0, 0.25));
    CHECK(div.divergent);
}

TEST_CASE("operators over the product profile handle the plateau split") {
    auto gauss = Profile::product(PhiSpec::power(2.0));
    auto f = StepFunction({0.3, 0.6}, {4.0, 2.0, 0.5});
    auto fstar = rearrange(f);
    // G_I against the dense-sup oracle across the plateau boundary
    auto rif = apply_RI(gauss, fstar);
    auto gf = apply_GI(gauss, f);
    for (double t : {0.05, 0.29, 0.45, 0.55, 0.8}) {
        double sup = oracle::dense_sup([&](double s) { return rif(s); }, t, 1.0 - 1e-9);
        CHECK(gf(t) == doctest::Approx(sup).epsilon(1e-7));
    }
    // S_I G_I = G_I and S_I S_I = S_I hold for product profiles too
    auto sg = apply_SI_monotone(gauss, gf);
    auto s1 = apply_SI(gauss, f);
    auto s2 = apply_SI_monotone(gauss, s1);
    for (double t : {0.02, 0.2, 0.5, 0.77, 0.97}) {
        CHECK(sg(t) == doctest::Approx(gf(t)).epsilon(1e-9));
        CHECK(s2(t) == doctest::Approx(s1(t)).epsilon(1e-9));
    }
    // S_I against the dense-sup oracle (grid granularity limits the oracle:
    // the exact per-piece sup sits at breakpoints the sampler can miss)
    for (double t : {0.1, 0.52, 0.9}) {
        double sup = oracle::dense_sup([&](double s) { return gauss(s) * fstar(s); }, 1e-9, t);
        CHECK(s1(t) == doctest::Approx(sup / gauss(t)).epsilon(1e-4));
        CHECK(s1(t) >= sup / gauss(t) - 1e-12);  // the oracle can only undershoot
    }
    // H kernel quadrature against the Riemann oracle
    auto h = apply_H_aux(gauss, fstar);
    double expected = 0.4 / gauss(0.4) *
                      oracle::riemann([&](double s) { return gauss(s) / (s * s) * fstar(s); },
                                      0.4, 1.0);
    CHECK(h(0.4) == doctest::Approx(expected).epsilon(1e-5));
    // T_I well-defined since the product profile is quasiconcave
    auto ti = apply_TI(gauss, f);
    double sup_t = oracle::dense_sup(
        [&](double s) { return s / gauss(s) * fstar(s); }, 0.25, 1.0 - 1e-9);
    CHECK(ti(0.25) == doctest::Approx(gauss(0.25) / 0.25 * sup_t).epsilon(1e-4));
    CHECK(ti(0.25) >= gauss(0.25) / 0.25 * sup_t - 1e-12);
}
