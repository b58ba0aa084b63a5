#include "fmdil/crossed.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fmdil/errors.hpp"

namespace fmdil {

namespace {

void check_ctx(const CrossedElement& a, const CrossedElement& b) {
    if (a.ctx != b.ctx)
        throw std::invalid_argument("crossed product: operands from different contexts");
}

void check_element(const DilationContext& ctx, int s) {
    if (s < 0 || s >= ctx.group.n)
        throw std::invalid_argument("crossed product: element index out of range");
}

void drop_zero_fibers(CrossedElement& x) {
    for (auto it = x.comps.begin(); it != x.comps.end();) {
        if (it->second.is_zero()) it = x.comps.erase(it);
        else ++it;
    }
}

// sqrt(2) 1_(from,to] (x) b(s); the sqrt(2) scaling makes the conditional
// expectation produce exp(-(t-u)|b(s)|^2) = exp(-(t-u) psi(s)).
StepVector cocycle_window(const DilationContext& ctx, int s, const Rational& from,
                          const Rational& to) {
    Eigen::VectorXd v = std::numbers::sqrt2 * ctx.cocycle.b.row(s).transpose();
    return StepVector::indicator(from, to, std::move(v));
}

} // namespace

ContextPtr make_context(FiniteGroup group, CndFunction psi, double tolerance, Rational horizon) {
    if (!(tolerance > 0.0)) throw UsageError("context: tolerance must be positive");
    if (horizon < 0) throw UsageError("context: horizon must be nonnegative");
    CndCertificate cert = is_cnd(psi, group, 1e-10);
    if (!cert.ok) throw ConstructionError("psi is not conditionally negative definite: " + cert.reason);
    Cocycle cocycle = build_cocycle(group, psi);
    CocycleResiduals res = cocycle_residuals(group, psi, cocycle);
    if (res.gram > 1e-9 || res.law > 1e-9 || res.norm > 1e-9 || res.orthogonality > 1e-10 ||
        res.homomorphism > 1e-9) {
        std::ostringstream msg;
        msg << "cocycle residuals out of tolerance (law " << res.law << ", norm " << res.norm
            << ", orthogonality " << res.orthogonality << ", homomorphism " << res.homomorphism
            << ", gram " << res.gram << ")";
        throw ConstructionError(msg.str());
    }
    auto ctx = std::make_shared<DilationContext>();
    ctx->group = std::move(group);
    ctx->psi = std::move(psi);
    ctx->cocycle = std::move(cocycle);
    ctx->tolerance = tolerance;
    ctx->horizon = horizon;
    return ctx;
}

ContextPtr with_perturbed_pi(const ContextPtr& ctx, int s, int i, int j, double eps) {
    check_element(*ctx, s);
    if (i < 0 || i >= ctx->cocycle.dim || j < 0 || j >= ctx->cocycle.dim)
        throw std::invalid_argument("perturb pi: matrix index out of range");
    auto copy = std::make_shared<DilationContext>(*ctx);
    copy->cocycle.pi[std::size_t(s)](i, j) += eps;
    return copy;
}

ContextPtr with_perturbed_psi(const ContextPtr& ctx, int s, double eps) {
    check_element(*ctx, s);
    auto copy = std::make_shared<DilationContext>(*ctx);
    copy->psi.values[std::size_t(s)] += eps;
    return copy;
}

WeylPolynomial alpha(int s, const WeylPolynomial& x, const DilationContext& ctx) {
    check_element(ctx, s);
    if (s == ctx.group.identity) return x;
    return second_quantize(ctx.cocycle.pi[std::size_t(s)], x);
}

CrossedElement cp_zero(const ContextPtr& ctx) { return CrossedElement{ctx, {}}; }

CrossedElement cp_unit(const ContextPtr& ctx) {
    return CrossedElement{ctx, {{ctx->group.identity, WeylPolynomial::one(ctx->cocycle.dim)}}};
}

CrossedElement cp_make(const ContextPtr& ctx, std::map<int, WeylPolynomial> comps) {
    for (const auto& [s, f] : comps) {
        check_element(*ctx, s);
        if (f.dim() != ctx->cocycle.dim)
            throw std::invalid_argument("crossed product: fiber dimension mismatch");
    }
    CrossedElement x{ctx, std::move(comps)};
    drop_zero_fibers(x);
    return x;
}

CrossedElement cp_mul(const CrossedElement& x, const CrossedElement& y) {
    check_ctx(x, y);
    const DilationContext& ctx = *x.ctx;
    CrossedElement out{x.ctx, {}};
    for (const auto& [s, f] : x.comps) {
        for (const auto& [r, g] : y.comps) {
            int sr = ctx.group.mul(s, r);
            WeylPolynomial term = weyl_mul(f, alpha(s, g, ctx));
            auto it = out.comps.find(sr);
            if (it == out.comps.end()) out.comps.emplace(sr, std::move(term));
            else it->second = weyl_add(it->second, term);
        }
    }
    drop_zero_fibers(out);
    return out;
}

CrossedElement cp_adjoint(const CrossedElement& x) {
    const DilationContext& ctx = *x.ctx;
    CrossedElement out{x.ctx, {}};
    for (const auto& [s, f] : x.comps) {
        int si = ctx.group.inv[std::size_t(s)];
        out.comps[si] = alpha(si, weyl_adjoint(f), ctx);
    }
    drop_zero_fibers(out);
    return out;
}

CrossedElement cp_add(const CrossedElement& x, const CrossedElement& y) {
    check_ctx(x, y);
    CrossedElement out = x;
    for (const auto& [s, g] : y.comps) {
        auto it = out.comps.find(s);
        if (it == out.comps.end()) out.comps.emplace(s, g);
        else it->second = weyl_add(it->second, g);
    }
    drop_zero_fibers(out);
    return out;
}

CrossedElement cp_sub(const CrossedElement& x, const CrossedElement& y) {
    return cp_add(x, cp_scale(y, Complex(-1.0, 0.0)));
}

CrossedElement cp_scale(const CrossedElement& x, Complex c) {
    CrossedElement out{x.ctx, {}};
    for (const auto& [s, f] : x.comps) out.comps[s] = weyl_scale(f, c);
    drop_zero_fibers(out);
    return out;
}

Complex cp_trace(const CrossedElement& x) {
    auto it = x.comps.find(x.ctx->group.identity);
    return it == x.comps.end() ? Complex(0.0, 0.0) : expectation(it->second);
}

CrossedElement embed_J(const GroupAlgebraElement& a, const ContextPtr& ctx) {
    if (a.order != ctx->group.n)
        throw std::invalid_argument("embed: group algebra element does not match the context");
    CrossedElement out{ctx, {}};
    for (const auto& [s, c] : a.coeffs)
        out.comps[s] = WeylPolynomial::weyl(c, StepVector::zero(ctx->cocycle.dim));
    drop_zero_fibers(out);
    return out;
}

CrossedElement conditional_E_t(const CrossedElement& x, const Rational& t) {
    CrossedElement out{x.ctx, {}};
    for (const auto& [s, f] : x.comps) out.comps[s] = conditional_expectation(f, t);
    drop_zero_fibers(out);
    return out;
}

CrossedElement conditional_E_reversed(const CrossedElement& x, const Rational& u) {
    CrossedElement out{x.ctx, {}};
    for (const auto& [s, f] : x.comps) out.comps[s] = conditional_expectation_tail(f, u);
    drop_zero_fibers(out);
    return out;
}

CrossedElement takesaki_U(const Rational& t, const CrossedElement& x) {
    if (t < 0) throw std::invalid_argument("takesaki automorphism: negative time");
    const DilationContext& ctx = *x.ctx;
    CrossedElement out{x.ctx, {}};
    for (const auto& [s, f] : x.comps) {
        StepVector h = cocycle_window(ctx, s, Rational(0), t);
        if (h.is_zero()) out.comps[s] = f; // b(s)=0 or t=0
        else out.comps[s] = weyl_mul(WeylPolynomial::weyl(Complex(1.0, 0.0), std::move(h)), f);
    }
    drop_zero_fibers(out);
    return out;
}

CrossedElement pi_t(const Rational& t, const GroupAlgebraElement& a, const ContextPtr& ctx) {
    return takesaki_U(t, embed_J(a, ctx));
}

GroupAlgebraElement semigroup_T(double t, const GroupAlgebraElement& a,
                                const DilationContext& ctx) {
    if (t < 0) throw std::invalid_argument("semigroup: negative time");
    if (a.order != ctx.group.n)
        throw std::invalid_argument("semigroup: group algebra element does not match the context");
    GroupAlgebraElement out{a.order, {}};
    for (const auto& [s, c] : a.coeffs) {
        Complex v = c * std::exp(-t * ctx.psi.values[std::size_t(s)]);
        if (v != 0.0) out.coeffs[s] = v;
    }
    return out;
}

CrossedElement pi_t_reversed(const Rational& t, const GroupAlgebraElement& a,
                             const ContextPtr& ctx) {
    if (t < 0 || t > ctx->horizon)
        throw std::invalid_argument("reversed embedding: time outside [0, horizon]");
    if (a.order != ctx->group.n)
        throw std::invalid_argument("reversed embedding: element does not match the context");
    CrossedElement out{ctx, {}};
    for (const auto& [s, c] : a.coeffs) {
        StepVector h = cocycle_window(*ctx, s, t, ctx->horizon);
        out.comps[s] = WeylPolynomial::weyl(c, std::move(h));
    }
    drop_zero_fibers(out);
    return out;
}

double cp_distance(const CrossedElement& x, const CrossedElement& y) {
    check_ctx(x, y);
    int dim = x.ctx->cocycle.dim;
    double worst = 0.0;
    for (const auto& [s, f] : x.comps) {
        auto it = y.comps.find(s);
        const WeylPolynomial& g = it == y.comps.end() ? WeylPolynomial::zero(dim) : it->second;
        worst = std::max(worst, l2_distance(f, g));
    }
    for (const auto& [s, g] : y.comps)
        if (!x.comps.count(s)) worst = std::max(worst, l2_norm(g));
    return worst;
}

double cp_norm(const CrossedElement& x) { return cp_distance(x, cp_zero(x.ctx)); }

std::string to_string(const CrossedElement& x) {
    if (x.comps.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [s, f] : x.comps) {
        if (!first) out << "\n";
        first = false;
        out << "lambda[" << s << "] : " << to_string(f);
    }
    return out.str();
}

} // namespace fmdil
