#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ri/corpus.hpp"
#include "ri/optimal.hpp"

using namespace ri;

TEST_CASE("target norm closed forms") {
    auto J = Profile::power(2.0 / 3.0);  // John n=3, m=1
    auto X = NormFunctional::lp(2.0);
    // constants have zero oscillation: the norm is the integral
    CHECK(target_norm(X, J, StepFunction::constant(3.0)).value == doctest::Approx(3.0));
    CHECK(target_norm(X, J, StepFunction()).value == 0.0);
    // indicator: ‖t^(-1/3) (r/t)‖_{L^2(r,1)} + r, an analytic integral
    double r = 0.2;
    auto chi = StepFunction::indicator(0.0, r);
    double integral = r * r * oracle::riemann([](double t) { return std::pow(t, -8.0 / 3.0); }, r, 1.0);
    double expected = std::sqrt(integral) + r;
    CHECK(target_norm(X, J, chi).value == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("target norm warns outside class Q") {
    auto gauss = Profile::product(PhiSpec::power(2.0));
    auto v = target_norm(NormFunctional::lp(2.0), gauss, StepFunction::indicator(0.0, 0.3));
    CHECK(v.value > 0.0);
    CHECK(!v.warnings.empty());
    auto ok = target_norm(NormFunctional::lp(2.0), Profile::power(0.5),
                          StepFunction::indicator(0.0, 0.3));
    CHECK(ok.warnings.empty());
}

TEST_CASE("associate target norm") {
    auto I = Profile::power(0.5);
    double r = 0.16;
    auto chi = StepFunction::indicator(0.0, r);
    // X = L1: associate is L-inf and the norm is sup R_I chi* = r^(1-alpha) at t = r
    auto v = target_assoc_norm(NormFunctional::lp(1.0), I, chi);
    CHECK(v.value == doctest::Approx(std::pow(r, 0.5)).epsilon(1e-6));
    CHECK(target_assoc_norm(NormFunctional::lp(1.0), I, StepFunction()).value == 0.0);
    CHECK_THROWS_AS(target_assoc_norm(NormFunctional::weak_l1(), I, chi), UnsupportedAssociate);
    // L2 associate: direct quadrature of (R_I f*)^2 against the oracle
    auto v2 = target_assoc_norm(NormFunctional::lp(2.0), I, chi);
    auto rif = apply_RI(I, rearrange(chi));
    double expected = std::sqrt(oracle::riemann([&](double t) { return rif(t) * rif(t); }, 1e-9, 1.0));
    CHECK(v2.value == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("domain norm closed forms and nonexistence") {
    auto I = Profile::power(0.5);
    CHECK(domain_norm(NormFunctional::lp(kInf), I, StepFunction::constant(1.0)).value ==
          doctest::Approx(2.0).epsilon(1e-3));
    CHECK(domain_norm(NormFunctional::lp(2.0), I, StepFunction()).value == 0.0);
    CHECK_THROWS_AS(
        domain_norm(NormFunctional::lp(kInf), Profile::power(1.0), StepFunction::constant(1.0)),
        NoOptimalDomain);
    // H_I 1(t) = log(1/t) lies in L2, so the domain exists there
    double v = domain_norm(NormFunctional::lp(2.0), Profile::power(1.0),
                           StepFunction::constant(1.0))
                   .value;
    double expected = std::sqrt(oracle::riemann(
        [](double t) { return std::log(1.0 / t) * std::log(1.0 / t); }, 1e-9, 1.0));
    CHECK(v == doctest::Approx(expected).epsilon(1e-5));
}

TEST_CASE("sobolev presets") {
    CHECK(sobolev_preset(EmbeddingPreset::john(3, 1)).power_exponent() ==
          doctest::Approx(2.0 / 3.0));
    CHECK(sobolev_preset(EmbeddingPreset::john(2, 1)).power_exponent() == doctest::Approx(0.5));
    CHECK(sobolev_preset(EmbeddingPreset::mazya(0.75, 2)).power_exponent() ==
          doctest::Approx(0.5));
    CHECK_THROWS_AS(EmbeddingPreset::john(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(EmbeddingPreset::mazya(0.5, 2), std::invalid_argument);
}

TEST_CASE("GLZ branch selection matches the stated inequalities") {
    double alpha = 2.0 / 3.0;
    // critical p is 3
    CHECK(glz_equivalent(2.0, 2.0, 0.0, alpha, 1).branch == 1);
    CHECK(glz_equivalent(1.0, 1.0, 0.5, alpha, 1).branch == 1);
    CHECK(glz_equivalent(3.0, 2.0, 0.0, alpha, 1).branch == 2);
    CHECK(glz_equivalent(3.0, 2.0, 0.5, alpha, 1).branch == 3);
    CHECK(glz_equivalent(3.0, 2.0, 0.9, alpha, 1).branch == 4);
    CHECK(glz_equivalent(3.0, 1.0, 0.5, alpha, 1).branch == 4);
    CHECK(glz_equivalent(4.0, 2.0, 0.0, alpha, 1).branch == 4);
    // subcritical case lands on the classical Lorentz target
    auto sel = glz_equivalent(2.0, 2.0, 0.0, alpha, 1);
    CHECK(sel.equivalent.p() == doctest::Approx(6.0));
    CHECK(sel.equivalent.q() == doctest::Approx(2.0));
    // critical weights
    auto sel2 = glz_equivalent(3.0, 2.0, 0.0, alpha, 1);
    CHECK(std::isinf(sel2.equivalent.p()));
    CHECK(sel2.equivalent.beta() == doctest::Approx(-1.0));
    auto sel3 = glz_equivalent(3.0, 2.0, 0.5, alpha, 1);
    CHECK(sel3.equivalent.beta() == doctest::Approx(-0.5));
    CHECK(sel3.equivalent.gamma() == doctest::Approx(-1.0));
    CHECK_THROWS_AS(glz_equivalent(1.0, 2.0, 0.0, alpha, 1), std::invalid_argument);
    CHECK_THROWS_AS(glz_equivalent(2.0, 2.0, 0.0, 0.5, 2), std::invalid_argument);
}

TEST_CASE("theorem-1.1 estimator degenerate cases") {
    auto I = Profile::power(0.5);
    auto X = NormFunctional::lp(2.0);
    auto corpus = gen_corpus(5, 50);
    // constants carry no jumps: the estimator returns the integral
    CHECK(theorem11_norm(X, I, StepFunction::constant(2.0), corpus).value ==
          doctest::Approx(2.0));
    // single jump: the pairing reduces to I(r) g*(r) over the normalization
    double r = 0.25;
    auto chi = StepFunction::indicator(0.0, r);
    auto bound = theorem11_norm(X, I, chi, corpus);
    CHECK(bound.value > r);  // at least ‖f‖_1 plus a positive pairing
    CHECK(bound.corpus_lower_bound);
    double target = target_norm(X, I, chi).value;
    CHECK(std::isfinite(target));
}

TEST_CASE("scaling and homogeneity of the optimal norms") {
    auto J = Profile::power(2.0 / 3.0);
    auto X = NormFunctional::lp(2.0);
    auto corpus = gen_corpus(21, 12);
    for (const auto& f : corpus.members) {
        if (f.is_zero()) continue;
        double one = target_norm(X, J, f).value;
        double three = target_norm(X, J, scale(f, 3.0)).value;
        CHECK(three == doctest::Approx(3.0 * one).epsilon(1e-8));
    }
}

TEST_CASE("z-norm functional round trip") {
    auto I = Profile::power(0.5);
    auto z = znorm(NormFunctional::lp(2.0), I);
    CHECK(z.kind() == NormFunctional::Kind::Z);
    CHECK(z.id() == "Z:Lp:2@power(0.5)");
}
