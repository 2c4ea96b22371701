#include "ri/corpus.hpp"

#include <algorithm>
#include <cmath>

#include "ri/csv.hpp"

namespace ri {

std::uint64_t Rng::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

std::size_t Rng::index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

std::vector<GeneratorKind> all_generator_kinds() {
    return {GeneratorKind::Indicator, GeneratorKind::Staircase, GeneratorKind::PowerLike,
            GeneratorKind::LogSpike, GeneratorKind::RandomPiecewise};
}

const char* to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::Indicator: return "indicator";
        case GeneratorKind::Staircase: return "staircase";
        case GeneratorKind::PowerLike: return "power-like";
        case GeneratorKind::LogSpike: return "log-spike";
        default: return "random-piecewise";
    }
}

namespace {

std::vector<double> sorted_breaks(Rng& rng, std::size_t count, double lo, double hi) {
    std::vector<double> b;
    b.reserve(count);
    for (std::size_t i = 0; i < count; ++i) b.push_back(rng.uniform(lo, hi));
    std::sort(b.begin(), b.end());
    // enforce a minimal gap so pieces stay well separated
    std::vector<double> out;
    for (double x : b)
        if (out.empty() || x - out.back() > 1e-4) out.push_back(x);
    return out;
}

StepFunction gen_member(GeneratorKind kind, Rng& rng) {
    switch (kind) {
        case GeneratorKind::Indicator: {
            double r = rng.uniform(0.05, 0.95);
            return StepFunction::indicator(0.0, r);
        }
        case GeneratorKind::Staircase: {
            std::size_t k = 2 + rng.index(11);
            auto breaks = sorted_breaks(rng, k - 1, 0.02, 0.98);
            std::vector<double> vals;
            for (std::size_t i = 0; i <= breaks.size(); ++i) vals.push_back(rng.uniform(0.0, 8.0));
            return StepFunction(std::move(breaks), std::move(vals));
        }
        case GeneratorKind::PowerLike: {
            double gamma = rng.uniform(0.1, 0.6);
            double cap = rng.uniform(4.0, 32.0);
            const int levels = 18;
            // discretized min(t^-gamma, cap) on a dyadic grid
            std::vector<double> breaks, vals;
            vals.push_back(std::min(std::pow(2.0, levels * gamma), cap));
            for (int j = levels; j >= 1; --j) {
                double left = std::pow(2.0, -j);
                breaks.push_back(left);
                vals.push_back(std::min(std::pow(left, -gamma), cap));
            }
            return StepFunction(std::move(breaks), std::move(vals));
        }
        case GeneratorKind::LogSpike: {
            double w = rng.uniform(1e-3, 0.2);
            double a = rng.uniform(0.01, 0.97 - w);
            double height = 1.0 + std::log(1.0 / w);
            double base = rng.uniform(0.0, 0.5);
            std::vector<double> breaks{a, a + w};
            std::vector<double> vals{base, base + height, base};
            return StepFunction(std::move(breaks), std::move(vals));
        }
        default: {
            std::size_t k = 3 + rng.index(23);
            auto breaks = sorted_breaks(rng, k - 1, 0.01, 0.99);
            std::vector<double> vals;
            for (std::size_t i = 0; i <= breaks.size(); ++i) {
                double v = rng.uniform() < 0.15 ? 0.0 : rng.uniform(0.0, 10.0);
                vals.push_back(v);
            }
            return StepFunction(std::move(breaks), std::move(vals));
        }
    }
}

}  // namespace

Corpus gen_corpus(std::uint64_t seed, std::size_t size, std::vector<GeneratorKind> kinds) {
    if (size < 1) throw std::invalid_argument("gen_corpus: size must be >= 1");
    if (kinds.empty()) throw std::invalid_argument("gen_corpus: kinds must be nonempty");
    Corpus c;
    c.seed = seed;
    c.kinds = kinds;
    c.members.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        Rng rng(seed ^ (0xA0761D6478BD642FULL * (i + 1)));
        auto kind = kinds[rng.index(kinds.size())];
        c.members.push_back(gen_member(kind, rng));
    }
    return c;
}

namespace {

void ratio_pass(const Functional& a, const Functional& b,
                const std::vector<StepFunction>& members, EquivalenceReport& rep,
                double& min_ratio, double& max_ratio, std::size_t& argmin,
                std::size_t& argmax, bool record) {
    for (std::size_t i = 0; i < members.size(); ++i) {
        double va = a.eval(members[i]);
        double vb = b.eval(members[i]);
        bool ia = std::isinf(va), ib = std::isinf(vb);
        if (va == 0.0 && vb == 0.0) {
            if (record) ++rep.skipped_zero;
            continue;
        }
        if (ia && ib) {
            if (record) ++rep.skipped_zero;
            continue;
        }
        if (ia != ib || va == 0.0 || vb == 0.0) {
            if (record) {
                ++rep.infinite_mismatch;
                if (rep.mismatch_witness.empty()) rep.mismatch_witness = to_csv(members[i]);
            }
            continue;
        }
        double r = va / vb;
        if (record) ++rep.used;
        if (r < min_ratio) {
            min_ratio = r;
            argmin = i;
        }
        if (r > max_ratio) {
            max_ratio = r;
            argmax = i;
        }
    }
}

}  // namespace

EquivalenceReport compare_functionals(const Functional& a, const Functional& b,
                                      const Corpus& corpus, bool check_stability) {
    EquivalenceReport rep;
    rep.functional_a = a.id;
    rep.functional_b = b.id;
    ratio_pass(a, b, corpus.members, rep, rep.min_ratio, rep.max_ratio, rep.argmin,
               rep.argmax, true);
    if (check_stability) {
        Corpus doubled = gen_corpus(corpus.seed, corpus.members.size() * 2, corpus.kinds);
        std::size_t amin = 0, amax = 0;
        ratio_pass(a, b, doubled.members, rep, rep.min_ratio_doubled, rep.max_ratio_doubled,
                   amin, amax, false);
        bool max_ok = rep.max_ratio_doubled <= rep.max_ratio * 1.05;
        bool min_ok = rep.min_ratio_doubled >= rep.min_ratio / 1.05;
        rep.stable = max_ok && min_ok;
    }
    return rep;
}

StepFunction shuffle_equimeasurable(const StepFunction& f, std::size_t cells, Rng& rng) {
    std::vector<double> vals(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        double mid = (static_cast<double>(i) + 0.5) / cells;
        vals[i] = f(mid);
    }
    for (std::size_t i = cells; i-- > 1;) std::swap(vals[i], vals[rng.index(i + 1)]);
    std::vector<double> breaks;
    for (std::size_t i = 1; i < cells; ++i) breaks.push_back(static_cast<double>(i) / cells);
    return StepFunction(std::move(breaks), std::move(vals));
}

StepFunction gen_uniform_staircase(std::size_t cells, Rng& rng) {
    std::vector<double> breaks, vals;
    for (std::size_t i = 1; i < cells; ++i) breaks.push_back(static_cast<double>(i) / cells);
    for (std::size_t i = 0; i < cells; ++i) vals.push_back(rng.uniform(0.0, 6.0));
    return StepFunction(std::move(breaks), std::move(vals));
}

}  // namespace ri
