#pragma once

#include <map>
#include <memory>

#include "fmdil/cocycle.hpp"
#include "fmdil/weyl.hpp"

namespace fmdil {

// Everything a dilation run needs: the group, the cnd function, its
// cocycle, the equality tolerance and the reversed-dilation horizon.
// Immutable once built; share via ContextPtr.
struct DilationContext {
    FiniteGroup group;
    CndFunction psi;
    Cocycle cocycle;
    double tolerance = 1e-9;
    Rational horizon = Rational(2);
};

using ContextPtr = std::shared_ptr<const DilationContext>;

// Certifies psi, builds the cocycle and checks its residuals (Gram
// consistency, cocycle law, orthogonality). Throws ConstructionError on any
// failure.
ContextPtr make_context(FiniteGroup group, CndFunction psi, double tolerance = 1e-9,
                        Rational horizon = Rational(2));

// Validation hooks for negative controls: copies of the context with a
// single pi_s entry / psi value perturbed, deliberately bypassing
// re-validation and the cocycle rebuild.
ContextPtr with_perturbed_pi(const ContextPtr& ctx, int s, int i, int j, double eps);
ContextPtr with_perturbed_psi(const ContextPtr& ctx, int s, double eps);

// Finitely supported fiber map s -> f_s representing sum_s f_s x lambda_s.
// Zero fibers are absent.
struct CrossedElement {
    ContextPtr ctx;
    std::map<int, WeylPolynomial> comps;
};

// Group action on the function algebra: second quantization of pi_s acting
// on the vector component of every exponent.
WeylPolynomial alpha(int s, const WeylPolynomial& x, const DilationContext& ctx);

CrossedElement cp_zero(const ContextPtr& ctx);
CrossedElement cp_unit(const ContextPtr& ctx);
CrossedElement cp_make(const ContextPtr& ctx, std::map<int, WeylPolynomial> comps);

// (f x lambda_s)(g x lambda_r) = f alpha_s(g) x lambda_{sr}
CrossedElement cp_mul(const CrossedElement& x, const CrossedElement& y);
// (f x lambda_s)* = alpha_{s^-1}(f*) x lambda_{s^-1}
CrossedElement cp_adjoint(const CrossedElement& x);
CrossedElement cp_add(const CrossedElement& x, const CrossedElement& y);
CrossedElement cp_sub(const CrossedElement& x, const CrossedElement& y);
CrossedElement cp_scale(const CrossedElement& x, Complex c);

// Expectation of the identity fiber; reproduces the Plancherel pairing
// trace(x* y) = sum_s E(f_s* g_s) with counting measure.
Complex cp_trace(const CrossedElement& x);

// c_s lambda_s -> c_s 1 x lambda_s
CrossedElement embed_J(const GroupAlgebraElement& a, const ContextPtr& ctx);

// Componentwise conditional expectation onto data up to time t.
CrossedElement conditional_E_t(const CrossedElement& x, const Rational& t);
// Decreasing-filtration variant: projection onto time support [u, inf).
CrossedElement conditional_E_reversed(const CrossedElement& x, const Rational& u);

// Multiplies fiber s by E[sqrt(2) 1_(0,t] (x) b(s)]; the automorphism induced
// by the unitary cocycle s -> exp(-sqrt(2) i W_t(b(s))).
CrossedElement takesaki_U(const Rational& t, const CrossedElement& x);

// pi_t = U_t o J
CrossedElement pi_t(const Rational& t, const GroupAlgebraElement& a, const ContextPtr& ctx);

// T_t(lambda_s) = exp(-t psi(s)) lambda_s
GroupAlgebraElement semigroup_T(double t, const GroupAlgebraElement& a,
                                const DilationContext& ctx);

// Reversed-dilation embedding: fiber s of J(a) times
// E[sqrt(2) 1_(t,C] (x) b(s)] for the fixed horizon C. Requires 0 <= t <= C.
CrossedElement pi_t_reversed(const Rational& t, const GroupAlgebraElement& a,
                             const ContextPtr& ctx);

// max over fibers of the fiber l2 distance; equality in the represented
// algebra is vanishing of every fiber in L^2.
double cp_distance(const CrossedElement& x, const CrossedElement& y);
double cp_norm(const CrossedElement& x);

std::string to_string(const CrossedElement& x);

} // namespace fmdil
