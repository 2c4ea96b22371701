#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ri/step_function.hpp"

namespace ri {

// Deterministic splitmix64-based generator; identical streams across
// platforms and runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform();                      // [0, 1)
    double uniform(double a, double b);    // [a, b)
    std::size_t index(std::size_t n);      // {0, ..., n-1}

private:
    std::uint64_t state_;
};

enum class GeneratorKind { Indicator, Staircase, PowerLike, LogSpike, RandomPiecewise };

std::vector<GeneratorKind> all_generator_kinds();
const char* to_string(GeneratorKind k);

struct Corpus {
    std::uint64_t seed = 0;
    std::vector<GeneratorKind> kinds;
    std::vector<StepFunction> members;
};

// Deterministic for fixed (seed, size, kinds); the first `size` members of a
// larger corpus with the same seed are identical, so corpus doubling extends
// rather than reshuffles. Rejects empty kind sets.
Corpus gen_corpus(std::uint64_t seed, std::size_t size,
                  std::vector<GeneratorKind> kinds = all_generator_kinds());

struct Functional {
    std::string id;
    std::function<double(const StepFunction&)> eval;
};

struct EquivalenceReport {
    std::string functional_a, functional_b;
    double min_ratio = kInf;
    double max_ratio = 0.0;
    std::size_t argmin = 0, argmax = 0;
    std::size_t used = 0;
    std::size_t skipped_zero = 0;      // 0/0 members, excluded and counted
    std::size_t infinite_mismatch = 0; // one side infinite or zero, flagged
    std::string mismatch_witness;      // CSV of the first mismatch member
    bool stable = false;               // min/max moved < 5% under doubling
    double min_ratio_doubled = kInf, max_ratio_doubled = 0.0;
};

// Ratio bookkeeping of A(f)/B(f) over the corpus; stability is measured
// against the doubled corpus with the same seed.
EquivalenceReport compare_functionals(const Functional& a, const Functional& b,
                                      const Corpus& corpus, bool check_stability = true);

// Equimeasurable shuffle: permutes the cells of a function that is constant
// on the uniform K-cell grid. The distribution function is preserved exactly.
StepFunction shuffle_equimeasurable(const StepFunction& f, std::size_t cells, Rng& rng);

// Staircase constant on the uniform K-cell grid (for shuffle-based checks).
StepFunction gen_uniform_staircase(std::size_t cells, Rng& rng);

}  // namespace ri
