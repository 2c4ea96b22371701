#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ri/common.hpp"
#include "ri/quadrature.hpp"

namespace ri {

// Specification of the Young-type function behind a product probability
// measure: eval, derivative and inverse, all on [0, inf).
struct PhiSpec {
    std::function<double(double)> phi;
    std::function<double(double)> dphi;
    std::function<double(double)> inv;
    std::string name;

    // Phi(t) = t^beta. beta = 2 is the Gaussian case, beta = 1 exponential.
    static PhiSpec power(double beta);
};

// Validates Phi(0)=0, strict monotonicity, convexity and concavity of
// sqrt(Phi) on a sample grid. Reports the first witness of a violation.
struct PhiValidation {
    bool ok = true;
    std::string message;
    double witness = 0.0;
};
PhiValidation validate_phi(const PhiSpec& phi);

// Isoperimetric profile I: a nondecreasing function of (0,1) onto (0,1],
// normalized so that I(1-) = 1, together with its inverse and the singular
// integral primitives used by the condition checkers and operators.
class Profile {
public:
    enum class Kind { Power, Product, Tabulated, LogReciprocal, Tilde };

    static Profile power(double alpha);  // I(t) = t^alpha, alpha in (0,1]
    static Profile product(const PhiSpec& phi);
    static Profile tabulated(std::vector<double> t, std::vector<double> I);
    static Profile log_reciprocal();  // I(t) = log2 / log(2/t)
    static Profile tilde_of(const Profile& base);  // t / I(t)

    Kind kind() const { return kind_; }
    double power_exponent() const { return alpha_; }
    const std::string& spec() const { return spec_; }
    bool quasiconcave_hint() const { return quasiconcave_hint_; }
    // Interior points where the defining formula changes (product plateau).
    const std::vector<double>& formula_knots() const { return formula_knots_; }

    double operator()(double t) const;
    double inverse(double y) const;  // smallest t with I(t) >= y, tol 1e-12

    IntegralResult int_I_over_s(double t) const;   // ∫_0^t I(s)/s ds
    IntegralResult int_recip_I(double t) const;    // ∫_0^t ds/I(s)
    double int_I_over_s2(double t) const;          // ∫_t^1 I(s)/s^2 ds
    double int_I_over_s3(double t) const;          // ∫_t^1 I(s)/s^3 ds
    double int_s_over_I(double t) const;           // ∫_0^t s/I(s) ds

    double int_I_over_s_between(double a, double b) const;
    double int_recip_I_between(double a, double b) const;
    double int_I_over_s2_between(double a, double b) const;
    double int_s_over_I_between(double a, double b) const;

private:
    Kind kind_ = Kind::Power;
    double alpha_ = 1.0;                       // Power exponent
    std::function<double(double)> raw_;        // Product/Tabulated/Tilde evaluator
    double norm_scale_ = 1.0;                  // multiplicative normalization
    std::string spec_;
    std::vector<double> formula_knots_;
    bool quasiconcave_hint_ = true;

    void compute_hint();
};

// power(0.5) | gaussian | exp | phi:<beta> | log | table:<path>
Profile parse_profile_spec(const std::string& spec);

}  // namespace ri
