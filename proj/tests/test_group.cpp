#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fmdil/errors.hpp"
#include "fmdil/group.hpp"

using namespace fmdil;

namespace {

// Independent axiom sweep used as the oracle for every builder.
void check_group_axioms(const FiniteGroup& g) {
    for (int a = 0; a < g.n; ++a) {
        CHECK(g.mul(g.identity, a) == a);
        CHECK(g.mul(a, g.identity) == a);
        CHECK(g.mul(a, g.inv[std::size_t(a)]) == g.identity);
        CHECK(g.mul(g.inv[std::size_t(a)], a) == g.identity);
        for (int b = 0; b < g.n; ++b) {
            int ab = g.mul(a, b);
            REQUIRE(ab >= 0);
            REQUIRE(ab < g.n);
            for (int c = 0; c < g.n; ++c)
                REQUIRE(g.mul(ab, c) == g.mul(a, g.mul(b, c)));
        }
    }
}

} // namespace

TEST_SUITE("group") {

TEST_CASE("cyclic groups") {
    FiniteGroup z1 = make_cyclic(1);
    CHECK(z1.n == 1);
    CHECK(z1.identity == 0);

    FiniteGroup z4 = make_cyclic(4);
    CHECK(z4.inv[1] == 3);

    FiniteGroup z6 = make_cyclic(6);
    CHECK(z6.mul(4, 5) == 3);

    CHECK_THROWS_AS(make_cyclic(0), UsageError);
    CHECK_THROWS_AS(make_dihedral(0), UsageError);
    check_group_axioms(z6);
}

TEST_CASE("dihedral(3) is non-abelian of order 6") {
    FiniteGroup d3 = make_dihedral(3);
    CHECK(d3.n == 6);
    check_group_axioms(d3);
    bool noncommuting = false;
    for (int s = 0; s < d3.n && !noncommuting; ++s)
        for (int r = 0; r < d3.n && !noncommuting; ++r)
            noncommuting = d3.mul(s, r) != d3.mul(r, s);
    CHECK(noncommuting);
}

TEST_CASE("hypercube elements are involutions") {
    FiniteGroup h2 = make_hypercube(2);
    CHECK(h2.n == 4);
    for (int a = 0; a < h2.n; ++a) CHECK(h2.inv[std::size_t(a)] == a);
    check_group_axioms(h2);
    CHECK_THROWS_AS(make_hypercube(0), UsageError);
}

TEST_CASE("symmetric(3) is isomorphic to dihedral(3)") {
    FiniteGroup s3 = make_symmetric(3);
    FiniteGroup d3 = make_dihedral(3);
    REQUIRE(s3.n == 6);
    check_group_axioms(s3);

    // brute-force isomorphism search over all bijections fixing nothing a priori
    std::vector<int> phi(6);
    std::iota(phi.begin(), phi.end(), 0);
    bool found = false;
    do {
        if (phi[std::size_t(s3.identity)] != d3.identity) continue;
        bool hom = true;
        for (int a = 0; a < 6 && hom; ++a)
            for (int b = 0; b < 6 && hom; ++b)
                hom = phi[std::size_t(s3.mul(a, b))] ==
                      d3.mul(phi[std::size_t(a)], phi[std::size_t(b)]);
        found = hom;
    } while (!found && std::next_permutation(phi.begin(), phi.end()));
    CHECK(found);
}

TEST_CASE("symmetric cap and large orders") {
    CHECK(make_symmetric(5).n == 120);
    CHECK_THROWS_AS(make_symmetric(6), UsageError);
}

TEST_CASE("table validation names the violated axiom") {
    // Z_3 as an explicit table
    FiniteGroup z3 = make_from_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    CHECK(z3.n == 3);
    CHECK(z3.identity == 0);

    CHECK_THROWS_WITH_AS(make_from_table({{0, 1}, {1, 5}}),
                         doctest::Contains("closure"), ConstructionError);
    CHECK_THROWS_WITH_AS(make_from_table({{1, 0}, {0, 0}}),
                         doctest::Contains("identity"), ConstructionError);
    // latin-square magma that is not associative
    CHECK_THROWS_WITH_AS(
        make_from_table(
            {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}),
        doctest::Contains("associativity"), ConstructionError);
}

TEST_CASE("group algebra basics") {
    FiniteGroup d3 = make_dihedral(3);
    for (int s = 0; s < d3.n; ++s) {
        auto prod = ga_mul(d3, ga_lambda(d3, s), ga_lambda(d3, d3.inv[std::size_t(s)]));
        CHECK(ga_sup_distance(prod, ga_lambda(d3, d3.identity)) == 0.0);
    }
    CHECK(ga_trace(d3, ga_lambda(d3, d3.identity)) == Complex(1.0, 0.0));
    CHECK(ga_trace(d3, ga_lambda(d3, 2)) == Complex(0.0, 0.0));
}

TEST_CASE("zero divisors in C[Z_2]") {
    // (lambda_e + lambda_g)(lambda_e - lambda_g) expands to zero by hand
    FiniteGroup z2 = make_cyclic(2);
    auto plus = ga_add(ga_lambda(z2, 0), ga_lambda(z2, 1));
    auto minus = ga_sub(ga_lambda(z2, 0), ga_lambda(z2, 1));
    auto prod = ga_mul(z2, plus, minus);
    CHECK(prod.coeffs.empty());
}

TEST_CASE("algebra axioms on random elements") {
    FiniteGroup d3 = make_dihedral(3);
    for (int i = 0; i < 100; ++i) {
        SplitMix64 rng = substream(42, std::uint64_t(i));
        auto a = ga_random_dense(d3, rng);
        auto b = ga_random_dense(d3, rng);
        auto c = ga_random_dense(d3, rng);
        CHECK(ga_sup_distance(ga_mul(d3, ga_mul(d3, a, b), c),
                              ga_mul(d3, a, ga_mul(d3, b, c))) <= 1e-12);
        CHECK(ga_sup_distance(ga_adjoint(d3, ga_adjoint(d3, a)), a) == 0.0);
        CHECK(ga_sup_distance(ga_adjoint(d3, ga_mul(d3, a, b)),
                              ga_mul(d3, ga_adjoint(d3, b), ga_adjoint(d3, a))) <= 1e-12);
        Complex tab = ga_trace(d3, ga_mul(d3, a, b));
        Complex tba = ga_trace(d3, ga_mul(d3, b, a));
        CHECK(std::abs(tab - tba) <= 1e-12);
        Complex pos = ga_trace(d3, ga_mul(d3, ga_adjoint(d3, a), a));
        CHECK(pos.real() >= -1e-12);
        CHECK(std::abs(pos.imag()) <= 1e-12);
    }
}

TEST_CASE("operand mismatch is rejected") {
    FiniteGroup z2 = make_cyclic(2);
    FiniteGroup z3 = make_cyclic(3);
    CHECK_THROWS_AS(ga_mul(z2, ga_lambda(z2, 1), ga_lambda(z3, 1)), std::invalid_argument);
}

} // TEST_SUITE
