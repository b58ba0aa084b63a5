#include <doctest.h>

#include <cmath>

#include "fmdil/json_io.hpp"
#include "fmdil/verify.hpp"

using namespace fmdil;

namespace {

Json strip_wall_time(Json j) {
    if (j.is_object()) {
        j.erase("wall_time_s");
        for (auto& [k, v] : j.items()) v = strip_wall_time(v);
    }
    return j;
}

} // namespace

TEST_SUITE("verify") {

TEST_CASE("markov identity on Z_2") {
    ContextPtr ctx = make_context(make_cyclic(2), delta_psi(make_cyclic(2), 1.0));
    auto pairs = grid_pairs_increasing(default_time_points());
    auto inputs = default_inputs(ctx, 1);
    CHECK(pairs.size() == 21);
    CHECK(inputs.size() == 7); // 2 lambdas + 5 random

    DilationReport report = verify_markov(ctx, pairs, inputs);
    CHECK(report.pass);
    CHECK(report.max_residual <= 1e-9);
    CHECK(report.checks.size() == pairs.size() * inputs.size());
}

TEST_CASE("key scalar: the conditional expectation produces exp(-1/2)") {
    ContextPtr ctx = make_context(make_cyclic(2), delta_psi(make_cyclic(2), 1.0));
    CrossedElement lhs =
        conditional_E_t(pi_t(Rational(1), ga_lambda(ctx->group, 1), ctx), Rational(1, 2));
    REQUIRE(lhs.comps.count(1) == 1);
    REQUIRE(lhs.comps.at(1).terms().size() == 1);
    Complex coeff = lhs.comps.at(1).terms()[0].coeff;
    CHECK(std::abs(coeff - Complex(std::exp(-0.5), 0.0)) <= 1e-12);
    CHECK(std::abs(coeff.real() - 0.6065306597) <= 1e-10);
}

TEST_CASE("u = t collapses to the embedding with zero residual") {
    ContextPtr ctx = make_context(make_dihedral(3), delta_psi(make_dihedral(3), 1.0));
    SplitMix64 rng(8);
    GroupAlgebraElement a = ga_random_dense(ctx->group, rng);
    for (Rational t : default_time_points()) {
        CrossedElement lhs = conditional_E_t(pi_t(t, a, ctx), t);
        CrossedElement rhs = pi_t(t, semigroup_T(0.0, a, *ctx), ctx);
        CHECK(cp_distance(lhs, rhs) == 0.0);
    }
}

TEST_CASE("zero psi gives exactly zero residuals") {
    FiniteGroup z4 = make_cyclic(4);
    ContextPtr ctx = make_context(z4, table_psi(z4, {0, 0, 0, 0}, "zero"));
    DilationReport report =
        verify_markov(ctx, grid_pairs_increasing(default_time_points()), default_inputs(ctx, 3));
    CHECK(report.pass);
    CHECK(report.max_residual == 0.0);

    DilationReport rev = verify_reversed(
        ctx, grid_pairs_reversed(default_time_points(), Rational(2)), default_inputs(ctx, 3));
    CHECK(rev.pass);
    CHECK(rev.max_residual == 0.0);
}

TEST_CASE("reversed identity on Z_2 within horizon 1") {
    ContextPtr ctx =
        make_context(make_cyclic(2), delta_psi(make_cyclic(2), 1.0), 1e-9, Rational(1));
    std::vector<Rational> pts{Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)};
    DilationReport report =
        verify_reversed(ctx, grid_pairs_reversed(pts, Rational(1)), default_inputs(ctx, 5));
    CHECK(report.pass);
    CHECK(report.max_residual <= 1e-9);
}

TEST_CASE("malformed grids are rejected") {
    ContextPtr ctx = make_context(make_cyclic(2), delta_psi(make_cyclic(2), 1.0));
    auto inputs = default_inputs(ctx, 1, 0);
    CHECK_THROWS_AS(verify_markov(ctx, {{Rational(1), Rational(1, 2)}}, inputs),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_reversed(ctx, {{Rational(1), Rational(3)}}, inputs),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_structure(ctx, 0, 1), std::invalid_argument);
}

TEST_CASE("structure suite passes on the built-in pairs") {
    for (ContextPtr ctx :
         {make_context(make_dihedral(3), delta_psi(make_dihedral(3), 1.0)),
          make_context(make_hypercube(3), hamming_psi(make_hypercube(3))),
          make_context(make_cyclic(6), delta_psi(make_cyclic(6), 2.0))}) {
        DilationReport report = verify_structure(ctx, 25, 99);
        INFO(report.group_name);
        if (!report.pass) {
            const CheckRecord* f = report.first_failure();
            INFO(f->kind, " ", f->params, " residual ", f->residual);
        }
        CHECK(report.pass);
    }
}

TEST_CASE("filtration monotonicity on the dilation algebra") {
    ContextPtr ctx = make_context(make_cyclic(3), delta_psi(make_cyclic(3), 1.0));
    for (int i = 0; i < 50; ++i) {
        SplitMix64 rng = substream(123, std::uint64_t(i));
        CrossedElement x = random_crossed_element(ctx, rng);
        Rational u(1, 4);
        Rational t(3, 2);
        CHECK(cp_distance(conditional_E_t(conditional_E_t(x, t), u),
                          conditional_E_t(x, u)) <= 1e-10);
    }
}

TEST_CASE("perturbed psi defeats the markov identity") {
    ContextPtr ctx = make_context(make_cyclic(2), delta_psi(make_cyclic(2), 1.0));
    ContextPtr bad = with_perturbed_psi(ctx, 1, 1e-3);
    DilationReport report = verify_markov(
        bad, grid_pairs_increasing(default_time_points()), default_inputs(bad, 1));
    CHECK_FALSE(report.pass);
    CHECK(report.max_residual > 1e-9);
}

TEST_CASE("perturbed pi defeats the structure suite") {
    ContextPtr ctx = make_context(make_dihedral(3), delta_psi(make_dihedral(3), 1.0));
    ContextPtr bad = with_perturbed_pi(ctx, 1, 0, 0, 1e-3);
    DilationReport report = verify_structure(bad, 10, 5);
    CHECK_FALSE(report.pass);
    const CheckRecord* f = report.first_failure();
    REQUIRE(f != nullptr);
    CHECK_FALSE(f->kind.empty());
}

TEST_CASE("symmetric(4) runs at cocycle dimension 23") {
    FiniteGroup s4 = make_symmetric(4);
    ContextPtr ctx = make_context(s4, delta_psi(s4, 1.0));
    CHECK(ctx->cocycle.dim == 23);
    std::vector<Rational> pts{Rational(0), Rational(1, 2), Rational(2)};
    std::vector<LabeledInput> inputs = default_inputs(ctx, 77, 1);
    DilationReport report = verify_markov(ctx, grid_pairs_increasing(pts), inputs);
    CHECK(report.pass);
    CHECK(report.max_residual <= 1e-9);
}

TEST_CASE("reports are deterministic given the seed") {
    ContextPtr ctx = make_context(make_cyclic(4), delta_psi(make_cyclic(4), 1.0));
    auto run = [&] {
        Json j;
        j["structure"] = to_json(verify_structure(ctx, 20, 7));
        j["markov"] = to_json(verify_markov(ctx, grid_pairs_increasing(default_time_points()),
                                            default_inputs(ctx, 7)));
        return strip_wall_time(j).dump();
    };
    CHECK(run() == run());
}

} // TEST_SUITE
