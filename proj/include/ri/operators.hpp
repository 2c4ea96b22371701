#pragma once

#include "ri/eval_function.hpp"
#include "ri/profile.hpp"
#include "ri/quadrature.hpp"
#include "ri/step_function.hpp"

namespace ri {

// (S_I f)(t) = (1/I(t)) sup_{0<s<=t} I(s) f*(s). Exact per-piece: on each
// constant piece of f* the inner sup sits at the piece's right endpoint.
EvalFunction apply_SI(const Profile& I, const StepFunction& f);

// (T_I f)(t) = (I(t)/t) sup_{t<=s<1} (s/I(s)) f*(s). Requires quasiconcavity
// so that s/I(s) is nondecreasing and per-piece sups are exact.
EvalFunction apply_TI(const Profile& I, const StepFunction& f);

// H_I f(t) = ∫_t^1 f(s)/I(s) ds; iterated composition for order > 1 is
// evaluated on a refined grid.
EvalFunction apply_HI(const Profile& I, const StepFunction& f, int order = 1);

// R_I f(t) = (1/I(t)) ∫_0^t f(s) ds, exact step-function primitive.
EvalFunction apply_RI(const Profile& I, const StepFunction& f);

// G_I f(t) = sup_{t<=s<1} R_I f*(s), per-piece scan plus golden refinement.
EvalFunction apply_GI(const Profile& I, const StepFunction& f);

// Hg(s) = (s/I(s)) ∫_s^1 (I(r)/r^2) g(r) dr.
EvalFunction apply_H_aux(const Profile& I, const StepFunction& g);

// R'f(t) = ∫_0^t (s/I(s)) f*(s) ds / ∫_0^t s/I(s) ds, a nonincreasing
// integral mean of f*.
EvalFunction apply_Rprime(const Profile& I, const StepFunction& f);

// S_I / T_I applied to an arbitrary nonincreasing evaluable g (so g* = g).
// The sup is taken over a shared sample grid merged with g's knots and the
// query point itself.
EvalFunction apply_SI_monotone(const Profile& I, const EvalFunction& g,
                               std::size_t samples = 4096);
EvalFunction apply_TI_monotone(const Profile& I, const EvalFunction& g,
                               std::size_t samples = 4096);

// ∫_0^1 T_I f dt through the profile primitives; divergent when
// ∫_0 I(s)/s ds diverges and f is not a.e. zero. Valid whenever the per-piece
// sup of (s/I(s)) f*(s) sits at the right endpoint, which is checked.
IntegralResult integral_TI(const Profile& I, const StepFunction& f);

}  // namespace ri
