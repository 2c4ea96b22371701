#include <doctest.h>

#include <cmath>

#include "ri/csv.hpp"
#include "ri/eval_function.hpp"
#include "ri/suites.hpp"

using namespace ri;

TEST_CASE("corpus generation is deterministic and prefix-stable") {
    auto a = gen_corpus(42, 20);
    auto b = gen_corpus(42, 20);
    REQUIRE(a.members.size() == 20);
    for (std::size_t i = 0; i < 20; ++i) CHECK(a.members[i] == b.members[i]);
    auto big = gen_corpus(42, 40);
    for (std::size_t i = 0; i < 20; ++i) CHECK(big.members[i] == a.members[i]);
    auto other = gen_corpus(43, 20);
    bool all_same = true;
    for (std::size_t i = 0; i < 20; ++i)
        if (!(other.members[i] == a.members[i])) all_same = false;
    CHECK(!all_same);
    CHECK_THROWS_AS(gen_corpus(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_corpus(1, 5, {}), std::invalid_argument);
}

TEST_CASE("single-kind corpora honour the request") {
    auto c = gen_corpus(42, 8, {GeneratorKind::Indicator});
    for (const auto& f : c.members) {
        CHECK(f.values().size() <= 2);
        CHECK(f.values()[0] == 1.0);
    }
}

TEST_CASE("compare_functionals bookkeeping") {
    auto corpus = gen_corpus(7, 30);
    Functional a{"A", [](const StepFunction& f) { return total_integral(f); }};
    Functional b2{"2A", [](const StepFunction& f) { return 2.0 * total_integral(f); }};
    auto rep = compare_functionals(a, a, corpus);
    CHECK(rep.min_ratio == doctest::Approx(1.0));
    CHECK(rep.max_ratio == doctest::Approx(1.0));
    CHECK(rep.stable);
    auto rep2 = compare_functionals(a, b2, corpus);
    CHECK(rep2.min_ratio == doctest::Approx(0.5));
    CHECK(rep2.max_ratio == doctest::Approx(0.5));
    // infinite/finite mismatches are flagged with a witness
    Functional inf_fn{"inf", [](const StepFunction&) { return kInf; }};
    auto rep3 = compare_functionals(inf_fn, a, corpus, false);
    CHECK(rep3.infinite_mismatch > 0);
    CHECK(!rep3.mismatch_witness.empty());
}

TEST_CASE("equimeasurable shuffles preserve the distribution exactly") {
    Rng rng(3);
    for (int k = 0; k < 10; ++k) {
        auto f = gen_uniform_staircase(32, rng);
        auto h = shuffle_equimeasurable(f, 32, rng);
        CHECK(rearrange(h) == rearrange(f));
    }
}

TEST_CASE("suite registry and unknown names") {
    auto reg = suite_registry();
    CHECK(reg.size() == 12);
    CHECK_THROWS_AS(run_suite("nope"), UnknownSuite);
    try {
        run_suite("nope");
    } catch (const UnknownSuite& e) {
        CHECK(e.registry.size() == 12);
    }
}

TEST_CASE("suite JSON is deterministic and carries the schema fields") {
    SuiteOptions opts;
    opts.seed = 42;
    opts.size = 30;
    auto r1 = run_suite("level-function", opts);
    auto r2 = run_suite("level-function", opts);
    CHECK(to_json(r1) == to_json(r2));
    auto text = to_json(r1);
    CHECK(text.find("\"suite\"") != std::string::npos);
    CHECK(text.find("\"seed\"") != std::string::npos);
    CHECK(text.find("\"assertions\"") != std::string::npos);
    CHECK(text.find("\"runtime_ms\"") != std::string::npos);
    CHECK(r1.all_pass());
}

TEST_CASE("kfunctional_check runs standalone") {
    auto corpus = gen_corpus(42, 15);
    auto res = kfunctional_check(Profile::power(0.5), corpus);
    CHECK(res.all_pass());
    CHECK(res.suite == "kfunctional");
}

TEST_CASE("grid functions refine by dyadic midpoints") {
    auto f = [](double t) { return t * t; };
    auto g = GridFunction::sample(f, 64);
    auto r = g.refined(f);
    CHECK(r.grid.size() == 2 * g.grid.size() - 1);
    for (std::size_t i = 0; i < g.grid.size(); ++i) CHECK(r.grid[2 * i] == g.grid[i]);
    for (std::size_t i = 0; i < r.grid.size(); ++i)
        CHECK(r.samples[i] == doctest::Approx(r.grid[i] * r.grid[i]));
}
