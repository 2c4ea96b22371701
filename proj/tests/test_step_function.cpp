#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ri/corpus.hpp"
#include "ri/csv.hpp"
#include "ri/eval_function.hpp"
#include "ri/step_function.hpp"

using namespace ri;

namespace {
StepFunction staircase321() {
    // 3 on (0,0.2), 1 on (0.2,0.5), 2 on (0.5,1)
    return StepFunction({0.2, 0.5}, {3.0, 1.0, 2.0});
}
}  // namespace

TEST_CASE("rearrange sorts values by length") {
    auto fstar = rearrange(staircase321());
    CHECK(fstar.breakpoints() == std::vector<double>{0.2, 0.7});
    CHECK(fstar.values() == std::vector<double>{3.0, 2.0, 1.0});
}

TEST_CASE("rearrange moves an indicator to the left") {
    auto fstar = rearrange(StepFunction::indicator(0.5, 0.75));
    CHECK(fstar.breakpoints() == std::vector<double>{0.25});
    CHECK(fstar.values() == std::vector<double>{1.0, 0.0});
}

TEST_CASE("rearrange fixes nonincreasing input") {
    auto f = StepFunction({0.3, 0.8}, {5.0, 2.0, 1.0});
    CHECK(rearrange(f) == f);
}

TEST_CASE("rearrange agrees with the sampling oracle") {
    auto corpus = gen_corpus(7, 25);
    for (const auto& f : corpus.members) {
        auto fstar = rearrange(f);
        oracle::SampledRearrangement sampled(f);
        for (double t : {0.101, 0.303, 0.52, 0.77, 0.93})
            CHECK(fstar(t) == doctest::Approx(sampled(t)).epsilon(1e-3));
    }
}

TEST_CASE("distribution is the exact level-set measure") {
    CHECK(distribution(StepFunction::indicator(0.0, 0.25), 0.5) == 0.25);
    CHECK(distribution(StepFunction::indicator(0.0, 0.25), 1.0) == 0.0);  // strict inequality
    CHECK(distribution(staircase321(), 1.5) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK_THROWS_AS(distribution(staircase321(), -1.0), std::invalid_argument);
}

TEST_CASE("equimeasurability across rearrangement") {
    auto corpus = gen_corpus(11, 40);
    for (const auto& f : corpus.members) {
        auto fstar = rearrange(f);
        for (int k = 0; k <= 10; ++k) {
            double level = f.max_value() * k / 10.0;
            CHECK(distribution(f, level) ==
                  doctest::Approx(distribution(fstar, level)).epsilon(1e-12));
        }
    }
}

TEST_CASE("maximal function has exact per-piece form") {
    auto mf = maximal_fn(StepFunction::indicator(0.0, 0.5));
    CHECK(mf(0.3) == doctest::Approx(1.0));
    CHECK(mf(0.8) == doctest::Approx(0.5 / 0.8));
    CHECK(maximal_fn(StepFunction::constant(1.0))(0.37) == doctest::Approx(1.0));
    CHECK(maximal_fn(staircase321())(0.5) == doctest::Approx(2.4));  // (3*.2 + 2*.3)/.5
    // cross-check against the Riemann oracle on the rearrangement
    auto f = staircase321();
    auto fstar = rearrange(f);
    auto mf2 = maximal_fn(f);
    for (double t : {0.15, 0.33, 0.6, 0.9}) {
        double expected = oracle::riemann([&](double s) { return fstar(s); }, 0.0, t) / t;
        CHECK(mf2(t) == doctest::Approx(expected).epsilon(1e-4));
    }
}

TEST_CASE("oscillation vanishes for constants and matches the indicator value") {
    CHECK(oscillation(StepFunction::constant(2.0))(0.4) == 0.0);
    CHECK(oscillation(StepFunction::indicator(0.0, 0.5))(0.75) == doctest::Approx(2.0 / 3.0));
    CHECK(oscillation(staircase321())(1e-9) == doctest::Approx(0.0));
}

TEST_CASE("dilate moves breakpoints exactly") {
    auto f = StepFunction::indicator(0.0, 0.5);
    CHECK(dilate(f, 2.0) == StepFunction::constant(1.0));
    CHECK(dilate(f, 0.5) == StepFunction::indicator(0.0, 0.25));
    CHECK(dilate(staircase321(), 1.0) == staircase321());
    CHECK_THROWS_AS(dilate(f, 0.0), std::invalid_argument);
}

TEST_CASE("integrate is exact on pieces") {
    CHECK(integrate(StepFunction::indicator(0.0, 0.5), 0.0, 1.0) == 0.5);
    // exact piece sum: 3*0.2 + 1*0.3 + 2*0.5, preserved by rearrangement
    CHECK(total_integral(staircase321()) == doctest::Approx(1.9).epsilon(1e-15));
    CHECK(total_integral(rearrange(staircase321())) == doctest::Approx(1.9).epsilon(1e-15));
    CHECK(integrate(staircase321(), 0.3, 0.3) == 0.0);
    CHECK_THROWS_AS(integrate(staircase321(), 0.5, 0.2), std::invalid_argument);
}

TEST_CASE("optimal decomposition matches the rearrangement identities") {
    // cut below the smallest value: everything lands in the excess part
    auto f = StepFunction::indicator(0.0, 0.5);
    auto [f0, f1] = optimal_decomposition(f, 0.7);  // f*(0.7) = 0
    CHECK(f0.is_zero());
    CHECK(f1 == f);

    auto g = StepFunction({0.3, 0.6}, {2.0, 1.0, 0.0});
    auto [g0, g1] = optimal_decomposition(g, 0.5);  // g*(0.5) = 1
    CHECK(g0 == StepFunction({0.6}, {1.0, 0.0}));
    CHECK(g1 == StepFunction({0.3}, {1.0, 0.0}));

    auto c = StepFunction::constant(3.0);
    auto [c0, c1] = optimal_decomposition(c, 0.2);
    CHECK(c0 == c);
    CHECK(c1.is_zero());

    // property: f0* = min(f*, f*(t)), f1* = (f* - f*(t)) chi_(0,t), f* = f0* + f1*
    auto corpus = gen_corpus(3, 30);
    Rng rng(17);
    for (const auto& h : corpus.members) {
        double t = rng.uniform(0.05, 0.95);
        auto hstar = rearrange(h);
        double lam = hstar(t);
        auto [h0, h1] = optimal_decomposition(h, t);
        auto h0s = rearrange(h0);
        auto h1s = rearrange(h1);
        for (double s : {0.05, 0.2, 0.4, 0.6, 0.8, 0.97}) {
            CHECK(h0s(s) == doctest::Approx(std::min(hstar(s), lam)).epsilon(1e-12));
            double e1 = s < t ? std::max(hstar(s) - lam, 0.0) : 0.0;
            CHECK(h1s(s) == doctest::Approx(e1).epsilon(1e-12));
        }
    }
}

TEST_CASE("level function is the concave hull slope sequence") {
    // hull of the primitive of chi_(0.5,1) is the chord to (1, 0.5)
    auto lf = level_function(StepFunction::indicator(0.5, 1.0));
    CHECK(lf == StepFunction::constant(0.5));
    // nonincreasing functions have concave primitives already
    auto mono = rearrange(staircase321());
    CHECK(level_function(mono) == mono);
    // worked hull: 1 on (0,1/4), 3 on (1/4,1/2) -> slopes 2, 0
    auto f = StepFunction({0.25, 0.5}, {1.0, 3.0, 0.0});
    CHECK(level_function(f) == StepFunction({0.5}, {2.0, 0.0}));
}

TEST_CASE("level function properties on random corpora") {
    auto corpus = gen_corpus(23, 60);
    for (const auto& f : corpus.members) {
        auto lf = level_function(f);
        auto fstar = rearrange(f);
        CHECK(is_nonincreasing(lf));
        CHECK(total_integral(lf) == doctest::Approx(total_integral(f)).epsilon(1e-12));
        for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            CHECK(integrate(f, 0.0, t) <= integrate(lf, 0.0, t) + 1e-12);
            CHECK(integrate(lf, 0.0, t) <= integrate(fstar, 0.0, t) + 1e-12);
        }
    }
}

TEST_CASE("canonical form merges equal neighbours") {
    StepFunction f({0.25, 0.5}, {1.0, 1.0, 2.0});
    CHECK(f.breakpoints() == std::vector<double>{0.5});
    CHECK(f.values() == std::vector<double>{1.0, 2.0});
    CHECK_THROWS_AS(StepFunction({0.5, 0.5}, {1.0, 2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(StepFunction({0.5}, {-1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("zero function flows through the operations") {
    StepFunction z;
    CHECK(z.is_zero());
    CHECK(rearrange(z).is_zero());
    CHECK(level_function(z).is_zero());
    CHECK(total_integral(z) == 0.0);
    auto [z0, z1] = optimal_decomposition(z, 0.5);
    CHECK(z0.is_zero());
    CHECK(z1.is_zero());
}

TEST_CASE("step CSV round-trips bit-exactly") {
    auto corpus = gen_corpus(99, 30);
    for (const auto& f : corpus.members) {
        auto back = step_from_csv(to_csv(f));
        CHECK(back == f);  // exact double equality via operator==
    }
    CHECK_THROWS(step_from_csv("breakpoint,value\n0.5,1\n"));  // missing final row at 1
    CHECK_THROWS(step_from_csv("bad header\n1,0\n"));
}
