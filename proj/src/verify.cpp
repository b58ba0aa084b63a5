#include "fmdil/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "fmdil/errors.hpp"
#include "fmdil/util.hpp"

namespace fmdil {

void DilationReport::add(CheckRecord record) {
    pass = pass && record.pass;
    max_residual = std::max(max_residual, record.residual);
    checks.push_back(std::move(record));
}

const CheckRecord* DilationReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.pass) return &c;
    return nullptr;
}

std::vector<Rational> default_time_points() {
    return {Rational(0), Rational(1, 4), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)};
}

std::vector<std::pair<Rational, Rational>> grid_pairs_increasing(const std::vector<Rational>& pts) {
    std::vector<std::pair<Rational, Rational>> pairs;
    for (const auto& u : pts)
        for (const auto& t : pts)
            if (u <= t) pairs.emplace_back(u, t);
    return pairs;
}

std::vector<std::pair<Rational, Rational>> grid_pairs_reversed(const std::vector<Rational>& pts,
                                                               const Rational& horizon) {
    std::vector<std::pair<Rational, Rational>> pairs;
    for (const auto& t : pts)
        for (const auto& u : pts)
            if (t <= u && u <= horizon) pairs.emplace_back(t, u);
    return pairs;
}

std::vector<LabeledInput> default_inputs(const ContextPtr& ctx, std::uint64_t seed, int n_random) {
    std::vector<LabeledInput> inputs;
    for (int s = 0; s < ctx->group.n; ++s)
        inputs.push_back({"lambda_" + std::to_string(s), ga_lambda(ctx->group, s)});
    for (int i = 0; i < n_random; ++i) {
        SplitMix64 rng = substream(seed, std::uint64_t(i));
        inputs.push_back({"random_" + std::to_string(i), ga_random_dense(ctx->group, rng)});
    }
    return inputs;
}

namespace {

std::string rat_pair_params(const std::string& input, const char* n1, const Rational& v1,
                            const char* n2, const Rational& v2) {
    std::ostringstream out;
    out << "input=" << input << " " << n1 << "=" << to_string(v1) << " " << n2 << "="
        << to_string(v2);
    return out.str();
}

DilationReport start_report(const ContextPtr& ctx, std::string suite) {
    DilationReport report;
    report.suite = std::move(suite);
    report.group_name = ctx->group.name;
    report.psi_descriptor = ctx->psi.descriptor;
    report.cocycle_dim = ctx->cocycle.dim;
    report.tolerance = ctx->tolerance;
    return report;
}

// Evaluates one grid point, turning any thrown error into a failed record
// so a corrupted context is reported instead of aborting the sweep.
template <class F>
CheckRecord guarded_check(std::string kind, std::string params, double tol, F&& residual_fn) {
    CheckRecord r;
    r.kind = std::move(kind);
    r.params = std::move(params);
    r.tol = tol;
    try {
        r.residual = residual_fn();
        r.pass = r.residual <= tol;
    } catch (const std::exception& e) {
        r.residual = std::numeric_limits<double>::infinity();
        r.pass = false;
        r.params += std::string(" error=\"") + e.what() + "\"";
    }
    return r;
}

Rational random_dyadic(SplitMix64& rng, int max_eighths) {
    return Rational(std::int64_t(rng.next() % std::uint64_t(max_eighths + 1)), 8);
}

} // namespace

StepVector random_step_vector(int dim, SplitMix64& rng, int max_pieces) {
    int k = 1 + int(rng.next() % std::uint64_t(max_pieces));
    std::vector<Rational> breaks;
    for (int i = 0; i < k; ++i) {
        Rational b(std::int64_t(1 + rng.next() % 16), 8);
        if (std::find(breaks.begin(), breaks.end(), b) == breaks.end()) breaks.push_back(b);
    }
    std::sort(breaks.begin(), breaks.end());
    std::vector<Eigen::VectorXd> pieces;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        Eigen::VectorXd v(dim);
        for (int j = 0; j < dim; ++j) v(j) = rng.gaussian();
        pieces.push_back(std::move(v));
    }
    return StepVector(dim, std::move(breaks), std::move(pieces));
}

WeylPolynomial random_weyl_polynomial(int dim, SplitMix64& rng, int max_terms) {
    int k = 1 + int(rng.next() % std::uint64_t(max_terms));
    std::vector<WeylTerm> terms;
    for (int i = 0; i < k; ++i)
        terms.push_back(WeylTerm{Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)),
                                 random_step_vector(dim, rng)});
    return WeylPolynomial(dim, std::move(terms));
}

CrossedElement random_crossed_element(const ContextPtr& ctx, SplitMix64& rng, int max_fibers) {
    int k = 1 + int(rng.next() % std::uint64_t(max_fibers));
    std::map<int, WeylPolynomial> comps;
    for (int i = 0; i < k; ++i) {
        int s = int(rng.next() % std::uint64_t(ctx->group.n));
        comps.insert_or_assign(s, random_weyl_polynomial(ctx->cocycle.dim, rng, 2));
    }
    return cp_make(ctx, std::move(comps));
}

DilationReport verify_markov(const ContextPtr& ctx,
                             const std::vector<std::pair<Rational, Rational>>& pairs,
                             const std::vector<LabeledInput>& inputs) {
    for (const auto& [u, t] : pairs)
        if (u < 0 || t < u) throw std::invalid_argument("verify: malformed time pair (need 0 <= u <= t)");
    auto started = std::chrono::steady_clock::now();
    DilationReport report = start_report(ctx, "markov");

    std::int64_t total = std::int64_t(pairs.size()) * std::int64_t(inputs.size());
    std::vector<CheckRecord> records(static_cast<std::size_t>(total));
    parallel_for(total, [&](std::int64_t i) {
        const auto& [u, t] = pairs[std::size_t(i) % pairs.size()];
        const auto& input = inputs[std::size_t(i) / pairs.size()];
        records[std::size_t(i)] = guarded_check(
            "markov", rat_pair_params(input.label, "u", u, "t", t), ctx->tolerance, [&] {
                CrossedElement lhs = conditional_E_t(pi_t(t, input.a, ctx), u);
                CrossedElement rhs = pi_t(u, semigroup_T(to_double(t - u), input.a, *ctx), ctx);
                return cp_distance(lhs, rhs);
            });
    });
    for (auto& r : records) report.add(std::move(r));
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

DilationReport verify_reversed(const ContextPtr& ctx,
                               const std::vector<std::pair<Rational, Rational>>& pairs,
                               const std::vector<LabeledInput>& inputs) {
    for (const auto& [t, u] : pairs)
        if (t < 0 || u < t || u > ctx->horizon)
            throw std::invalid_argument("verify: malformed reversed pair (need 0 <= t <= u <= horizon)");
    auto started = std::chrono::steady_clock::now();
    DilationReport report = start_report(ctx, "reversed");

    std::int64_t total = std::int64_t(pairs.size()) * std::int64_t(inputs.size());
    std::vector<CheckRecord> records(static_cast<std::size_t>(total));
    parallel_for(total, [&](std::int64_t i) {
        const auto& [t, u] = pairs[std::size_t(i) % pairs.size()];
        const auto& input = inputs[std::size_t(i) / pairs.size()];
        records[std::size_t(i)] = guarded_check(
            "reversed", rat_pair_params(input.label, "t", t, "u", u), ctx->tolerance, [&] {
                CrossedElement lhs = conditional_E_reversed(pi_t_reversed(t, input.a, ctx), u);
                CrossedElement rhs =
                    pi_t_reversed(u, semigroup_T(to_double(u - t), input.a, *ctx), ctx);
                return cp_distance(lhs, rhs);
            });
    });
    for (auto& r : records) report.add(std::move(r));
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

DilationReport verify_structure(const ContextPtr& ctx, int samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("verify: sample count must be positive");
    auto started = std::chrono::steady_clock::now();
    DilationReport report = start_report(ctx, "structure");
    const FiniteGroup& g = ctx->group;
    const int dim = ctx->cocycle.dim;

    // -- cocycle block (deterministic) --
    CocycleResiduals cres = cocycle_residuals(g, ctx->psi, ctx->cocycle);
    std::string cparams = cres.sampled ? "pairs=sampled" : "pairs=all";
    report.add(guarded_check("cocycle_law", cparams, 1e-9, [&] { return cres.law; }));
    report.add(guarded_check("cocycle_psi_norm", cparams, 1e-9, [&] { return cres.norm; }));
    report.add(guarded_check("cocycle_orthogonality", cparams, 1e-10,
                             [&] { return cres.orthogonality; }));
    report.add(guarded_check("cocycle_homomorphism", cparams, 1e-9,
                             [&] { return cres.homomorphism; }));
    report.add(guarded_check("cocycle_gram", cparams, 1e-9, [&] { return cres.gram; }));
    report.add(guarded_check("cnd_certificate", "", 1e-10, [&] {
        CndCertificate cert = is_cnd(ctx->psi, g, 1e-10);
        if (!cert.ok) throw ConstructionError(cert.reason);
        return std::max(0.0, -cert.min_eigenvalue);
    }));
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        std::ostringstream params;
        params << "t=" << t;
        report.add(guarded_check("schoenberg", params.str(), 1e-10, [&] {
            return std::max(0.0, -schoenberg_min_eigenvalue(g, ctx->psi, t));
        }));
    }
    report.add(guarded_check("cnd_zero_sum_form", "draws=100", 1e-10, [&] {
        double worst = 0.0;
        for (int draw = 0; draw < 100; ++draw) {
            SplitMix64 rng = substream(seed ^ 0x5eedf00dULL, std::uint64_t(draw));
            std::vector<Complex> c(std::size_t(g.n));
            Complex mean(0.0, 0.0);
            for (auto& v : c) {
                v = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
                mean += v;
            }
            mean /= double(g.n);
            for (auto& v : c) v -= mean; // zero-sum
            Complex form(0.0, 0.0);
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    form += std::conj(c[std::size_t(i)]) * c[std::size_t(j)] *
                            ctx->psi.values[std::size_t(g.mul(g.inv[std::size_t(i)], j))];
            worst = std::max(worst, std::max(0.0, form.real()) + std::abs(form.imag()));
        }
        return worst;
    }));

    // -- function algebra block (seeded random instances, worst residual per property) --
    struct Worst {
        const char* kind;
        double tol;
        double residual = 0.0;
    };
    Worst weyl_props[] = {
        {"weyl_associativity", 1e-10},
        {"weyl_commutativity", 1e-10},
        {"weyl_adjoint_involutive", 1e-10},
        {"weyl_adjoint_antimultiplicative", 1e-10},
        {"weyl_expectation_positive", 1e-12},
        {"weyl_expectation_disjoint_mult", 1e-12},
        {"weyl_condexp_idempotent", 1e-10},
        {"weyl_condexp_tower", 1e-10},
        {"weyl_condexp_weight", 1e-10},
        {"weyl_condexp_module", 1e-10},
        {"weyl_martingale_support", 0.0},
        {"weyl_independence", 1e-10},
        {"alpha_homomorphism", 1e-10},
        {"alpha_integral_preserving", 1e-12},
    };
    try {
        for (int sample = 0; sample < samples; ++sample) {
            SplitMix64 rng = substream(seed ^ 0x3e71ULL, std::uint64_t(sample));
            WeylPolynomial x = random_weyl_polynomial(dim, rng);
            WeylPolynomial y = random_weyl_polynomial(dim, rng);
            WeylPolynomial z = random_weyl_polynomial(dim, rng);
            Rational u = random_dyadic(rng, 16);
            Rational t = u + random_dyadic(rng, 8);
            auto& w = weyl_props;
            w[0].residual = std::max(w[0].residual,
                                     l2_distance(weyl_mul(weyl_mul(x, y), z), weyl_mul(x, weyl_mul(y, z))));
            w[1].residual = std::max(w[1].residual, l2_distance(weyl_mul(x, y), weyl_mul(y, x)));
            w[2].residual = std::max(w[2].residual, l2_distance(weyl_adjoint(weyl_adjoint(x)), x));
            w[3].residual = std::max(
                w[3].residual, l2_distance(weyl_adjoint(weyl_mul(x, y)),
                                           weyl_mul(weyl_adjoint(y), weyl_adjoint(x))));
            Complex pos = expectation(weyl_mul(weyl_adjoint(x), x));
            w[4].residual =
                std::max(w[4].residual, std::max(0.0, -pos.real()) + std::abs(pos.imag()));
            {
                WeylPolynomial early(dim), late(dim);
                {
                    std::vector<WeylTerm> et, lt;
                    for (const auto& term : x.terms())
                        et.push_back(WeylTerm{term.coeff, term.exponent.head(Rational(1))});
                    for (const auto& term : y.terms())
                        lt.push_back(WeylTerm{term.coeff, term.exponent.tail(Rational(1))});
                    early = WeylPolynomial(dim, std::move(et));
                    late = WeylPolynomial(dim, std::move(lt));
                }
                w[5].residual = std::max(w[5].residual,
                                         std::abs(expectation(weyl_mul(early, late)) -
                                                  expectation(early) * expectation(late)));
            }
            WeylPolynomial eux = conditional_expectation(x, u);
            w[6].residual = std::max(w[6].residual,
                                     l2_distance(conditional_expectation(eux, u), eux));
            Rational umin = u < t ? u : t;
            w[7].residual =
                std::max(w[7].residual,
                         l2_distance(conditional_expectation(conditional_expectation(x, t), u),
                                     conditional_expectation(x, umin)));
            w[8].residual = std::max(w[8].residual, std::abs(expectation(eux) - expectation(x)));
            {
                WeylPolynomial mg = WeylPolynomial::weyl(
                    Complex(1.0, 0.0), random_step_vector(dim, rng).head(u));
                w[9].residual =
                    std::max(w[9].residual, l2_distance(conditional_expectation(weyl_mul(mg, x), u),
                                                        weyl_mul(mg, eux)));
            }
            if (dim > 0) {
                Eigen::VectorXd h(dim);
                for (int i = 0; i < dim; ++i) h(i) = rng.gaussian();
                Rational tt = u + random_dyadic(rng, 8) + Rational(1, 8);
                WeylPolynomial bm = WeylPolynomial::weyl(
                    Complex(1.0, 0.0), StepVector::indicator(Rational(0), tt, h));
                WeylPolynomial conditioned = conditional_expectation(bm, u);
                for (const auto& term : conditioned.terms())
                    if (term.exponent.support_end() > u)
                        w[10].residual = std::max(
                            w[10].residual, to_double(term.exponent.support_end() - u));
                WeylPolynomial inc = WeylPolynomial::weyl(
                    Complex(1.0, 0.0), StepVector::indicator(u, tt, h));
                w[11].residual = std::max(
                    w[11].residual,
                    l2_distance(conditional_expectation(inc, u),
                                weyl_scale(WeylPolynomial::one(dim), expectation(inc))));
            }
            int s1 = int(rng.next() % std::uint64_t(g.n));
            int s2 = int(rng.next() % std::uint64_t(g.n));
            w[12].residual = std::max(
                w[12].residual,
                l2_distance(alpha(s1, alpha(s2, x, *ctx), *ctx), alpha(g.mul(s1, s2), x, *ctx)));
            w[13].residual =
                std::max(w[13].residual, std::abs(expectation(alpha(s1, x, *ctx)) - expectation(x)));
        }
        std::string sparams = "samples=" + std::to_string(samples);
        for (const auto& p : weyl_props)
            report.add(guarded_check(p.kind, sparams, p.tol, [&] { return p.residual; }));
    } catch (const std::exception& e) {
        CheckRecord r;
        r.kind = "weyl_suite";
        r.params = std::string("error=\"") + e.what() + "\"";
        r.residual = std::numeric_limits<double>::infinity();
        r.tol = 0.0;
        r.pass = false;
        report.add(std::move(r));
    }

    // -- crossed product block --
    Worst cp_props[] = {
        {"crossed_associativity", 1e-10},
        {"crossed_adjoint_involutive", 1e-10},
        {"crossed_adjoint_antimultiplicative", 1e-10},
        {"trace_cyclicity", 1e-10},
        {"plancherel_two_way", 1e-12},
        {"trace_faithfulness", 1e-10},
        {"weight_J", 1e-12},
        {"weight_Ut", 1e-12},
        {"weight_pit", 1e-12},
        {"weight_Et", 1e-12},
        {"embed_multiplicative", 1e-12},
        {"pit_homomorphism", 1e-9},
        {"pit_adjoint", 1e-9},
        {"pit_unital", 1e-12},
        {"pirev_homomorphism", 1e-9},
        {"filtration_monotone", 1e-10},
    };
    try {
        std::vector<Rational> pts = default_time_points();
        for (int sample = 0; sample < samples; ++sample) {
            SplitMix64 rng = substream(seed ^ 0xc0a1ULL, std::uint64_t(sample));
            CrossedElement x = random_crossed_element(ctx, rng);
            CrossedElement y = random_crossed_element(ctx, rng);
            CrossedElement z = random_crossed_element(ctx, rng);
            GroupAlgebraElement a = ga_random_dense(g, rng);
            GroupAlgebraElement b = ga_random_dense(g, rng);
            // cycle through the whole grid so every t is exercised
            Rational t = pts[std::size_t(sample) % pts.size()];
            Rational u = random_dyadic(rng, 8);
            auto& w = cp_props;
            w[0].residual = std::max(
                w[0].residual, cp_distance(cp_mul(cp_mul(x, y), z), cp_mul(x, cp_mul(y, z))));
            w[1].residual = std::max(w[1].residual, cp_distance(cp_adjoint(cp_adjoint(x)), x));
            w[2].residual =
                std::max(w[2].residual, cp_distance(cp_adjoint(cp_mul(x, y)),
                                                    cp_mul(cp_adjoint(y), cp_adjoint(x))));
            w[3].residual = std::max(
                w[3].residual, std::abs(cp_trace(cp_mul(x, y)) - cp_trace(cp_mul(y, x))));
            {
                Complex plancherel(0.0, 0.0);
                for (const auto& [s, fs] : x.comps) {
                    auto it = y.comps.find(s);
                    if (it != y.comps.end())
                        plancherel += expectation(weyl_mul(weyl_adjoint(fs), it->second));
                }
                w[4].residual = std::max(
                    w[4].residual, std::abs(cp_trace(cp_mul(cp_adjoint(x), y)) - plancherel));
                double fiber_mass = 0.0;
                for (const auto& [s, fs] : x.comps) fiber_mass += l2_norm(fs) * l2_norm(fs);
                Complex xx = cp_trace(cp_mul(cp_adjoint(x), x));
                w[5].residual =
                    std::max(w[5].residual, std::abs(xx - Complex(fiber_mass, 0.0)));
            }
            w[6].residual = std::max(
                w[6].residual, std::abs(cp_trace(embed_J(a, ctx)) - ga_trace(g, a)));
            {
                CrossedElement ux = takesaki_U(t, x);
                w[7].residual =
                    std::max(w[7].residual, std::abs(cp_trace(cp_mul(cp_adjoint(ux), ux)) -
                                                     cp_trace(cp_mul(cp_adjoint(x), x))));
            }
            w[8].residual =
                std::max(w[8].residual, std::abs(cp_trace(pi_t(t, a, ctx)) - ga_trace(g, a)));
            w[9].residual = std::max(
                w[9].residual, std::abs(cp_trace(conditional_E_t(x, u)) - cp_trace(x)));
            w[10].residual = std::max(
                w[10].residual,
                cp_distance(embed_J(ga_mul(g, a, b), ctx), cp_mul(embed_J(a, ctx), embed_J(b, ctx))));
            w[11].residual = std::max(
                w[11].residual,
                cp_distance(pi_t(t, ga_mul(g, a, b), ctx), cp_mul(pi_t(t, a, ctx), pi_t(t, b, ctx))));
            w[12].residual =
                std::max(w[12].residual, cp_distance(pi_t(t, ga_adjoint(g, a), ctx),
                                                     cp_adjoint(pi_t(t, a, ctx))));
            w[13].residual = std::max(
                w[13].residual,
                cp_distance(pi_t(t, ga_lambda(g, g.identity), ctx), cp_unit(ctx)));
            {
                Rational rt = t <= ctx->horizon ? t : ctx->horizon;
                w[14].residual = std::max(
                    w[14].residual,
                    cp_distance(pi_t_reversed(rt, ga_mul(g, a, b), ctx),
                                cp_mul(pi_t_reversed(rt, a, ctx), pi_t_reversed(rt, b, ctx))));
            }
            {
                Rational lo = u < t ? u : t;
                w[15].residual = std::max(
                    w[15].residual,
                    cp_distance(conditional_E_t(conditional_E_t(x, t), lo),
                                conditional_E_t(x, lo)));
            }
        }
        std::string sparams = "samples=" + std::to_string(samples);
        for (const auto& p : cp_props)
            report.add(guarded_check(p.kind, sparams, p.tol, [&] { return p.residual; }));
    } catch (const std::exception& e) {
        CheckRecord r;
        r.kind = "crossed_suite";
        r.params = std::string("error=\"") + e.what() + "\"";
        r.residual = std::numeric_limits<double>::infinity();
        r.tol = 0.0;
        r.pass = false;
        report.add(std::move(r));
    }

    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

} // namespace fmdil
