#pragma once

#include <string>
#include <vector>

#include "ri/conditions.hpp"
#include "ri/norms.hpp"
#include "ri/operators.hpp"

namespace ri {

struct NormValue {
    double value = 0.0;
    std::vector<std::string> warnings;
};

struct NoOptimalDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Optimal-target norm: ‖(I(t)/t)(f**(t) - f*(t))‖_X + ‖f‖_1. Computable for
// any profile; profiles outside class Q get a validity warning attached.
NormValue target_norm(const NormFunctional& X, const Profile& I, const StepFunction& f);

// Associate optimal-target norm: ‖R_I f*‖_{X'}. Throws UnsupportedAssociate
// when X has no table associate.
NormValue target_assoc_norm(const NormFunctional& X, const Profile& I, const StepFunction& f);

// Optimal-domain norm ‖H_I f*‖_Y; requires H_I 1 in Y, otherwise throws
// NoOptimalDomain (the optimal domain does not exist).
NormValue domain_norm(const NormFunctional& Y, const Profile& I, const StepFunction& f);

// Z-norm functional f -> ‖S_I f‖_X.
NormFunctional znorm(const NormFunctional& X, const Profile& I);

struct Corpus;  // corpus.hpp

// Corpus lower-bound estimator for the duality-style target norm:
// max over corpus g of  sum_jumps I(t_j) g*(t_j) |Δf*(t_j)| / ‖S_I g‖_{X'},
// plus ‖f‖_1. The Stieltjes integral against df* is an exact finite sum.
struct CorpusBound {
    double value = 0.0;
    std::size_t witness = 0;              // corpus index attaining the max
    bool corpus_lower_bound = true;       // finite corpus, not the full unit ball
};
CorpusBound theorem11_norm(const NormFunctional& X, const Profile& I,
                           const StepFunction& f, const Corpus& corpus);

struct EmbeddingPreset {
    enum class Kind { John, Mazya } kind;
    int n = 0;         // John: dimension
    int m = 1;         // derivative order
    double alpha = 0;  // Mazya: profile exponent
    static EmbeddingPreset john(int n, int m);
    static EmbeddingPreset mazya(double alpha, int m);
};

// J(t) = t^(1 - m(1-alpha)); John uses alpha = 1/n' so J(t) = t^(1 - m/n).
Profile sobolev_preset(const EmbeddingPreset& preset);

struct GLZCase {
    int branch = 0;  // 1..4
    NormFunctional equivalent;
    double critical_p = 0.0;
    std::string description;
};

// Branch selection for the equivalent norm of the optimal Lorentz-Zygmund
// target: compares p with 1/(m(1-alpha)) and beta with 1 - 1/q.
GLZCase glz_equivalent(double p, double q, double beta, double alpha, int m);

}  // namespace ri
