#pragma once

#include <memory>
#include <optional>
#include <string>

#include "ri/eval_function.hpp"
#include "ri/profile.hpp"
#include "ri/step_function.hpp"

namespace ri {

struct UnsupportedAssociate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A closed family of rearrangement-invariant (quasi)norm functionals.
// Evaluation is exact on step functions wherever the variant admits per-piece
// closed forms, and quadrature-backed on derived functions.
class NormFunctional {
public:
    enum class Kind { Lp, LZ, Lambda, SmallM, BigM, Z, WeakL1, DownDual };

    static NormFunctional lp(double p);  // p in [1, inf]
    static NormFunctional lorentz_zygmund(double p, double q, double beta = 0.0,
                                          double gamma = 0.0);
    static NormFunctional lambda(const Profile& I);   // ∫ (I(s)/s) f*(s) ds
    static NormFunctional small_m(const Profile& I);  // sup I(s) f*(s)
    static NormFunctional big_m(const Profile& I);    // sup I(t) f**(t)
    static NormFunctional z_norm(const NormFunctional& base, const Profile& I);
    static NormFunctional weak_l1();                  // sup t f*(t)
    static NormFunctional down_dual(const NormFunctional& base);  // ‖f°‖_{base'}

    Kind kind() const { return kind_; }
    double p() const { return p_; }
    double q() const { return q_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }
    const Profile& profile() const { return *profile_; }
    const NormFunctional& base() const { return *base_; }

    // True when the functional is (equivalent to) an r.i. Banach function
    // norm; quasinorm-only variants evaluate fine but carry this flag.
    bool admissible() const;
    std::string admissibility_note() const;
    std::string id() const;

    double operator()(const StepFunction& f) const;
    double eval(const DerivedFunction& g) const;  // +inf is a legal value

private:
    Kind kind_ = Kind::Lp;
    double p_ = 1.0, q_ = 1.0, beta_ = 0.0, gamma_ = 0.0;
    std::shared_ptr<const Profile> profile_;
    std::shared_ptr<const NormFunctional> base_;
};

struct AssociateResult {
    std::optional<NormFunctional> norm;
    bool exact_holder = false;  // Hölder holds with constant one
    bool exact_phi = false;     // fundamental-function identity is exact
    std::string note;           // reason when unsupported, caveat otherwise
};

// Table-driven associate: (Lp <-> Lp'), (Lambda_I <-> m_{I~} under condition
// (1), equivalent norms), (LZ with p in (1,inf) <-> LZ(p',q',-beta,-gamma),
// equivalent norms). Anything else returns an explicit unsupported marker.
AssociateResult associate(const NormFunctional& N);

double fundamental_function(const NormFunctional& N, double t);

// ‖f°‖_{X'}; equals ‖f‖_{X'} for nonincreasing f. Throws UnsupportedAssociate
// when X has no table associate.
double down_dual_norm(const NormFunctional& X, const StepFunction& f);

}  // namespace ri
