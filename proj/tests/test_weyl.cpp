#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fmdil/verify.hpp" // random generators
#include "fmdil/weyl.hpp"

using namespace fmdil;

namespace {

Eigen::VectorXd vec1(double a) {
    Eigen::VectorXd v(1);
    v << a;
    return v;
}

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

bool same_terms(const WeylPolynomial& x, const WeylPolynomial& y) {
    if (x.terms().size() != y.terms().size()) return false;
    for (std::size_t i = 0; i < x.terms().size(); ++i) {
        if (x.terms()[i].coeff != y.terms()[i].coeff) return false;
        if (!x.terms()[i].exponent.structurally_equal(y.terms()[i].exponent, 0.0)) return false;
    }
    return true;
}

} // namespace

TEST_SUITE("weyl") {

TEST_CASE("step vector canonical form") {
    // adjacent equal pieces merge, zero tail is dropped
    StepVector h(2, {Rational(1, 2), Rational(1), Rational(2)},
                 {vec2(1, 0), vec2(1, 0), vec2(0, 0)});
    CHECK(h.piece_count() == 1);
    CHECK(h.support_end() == Rational(1));

    CHECK(StepVector::indicator(Rational(1), Rational(1), vec1(3)).is_zero());
    CHECK(StepVector::indicator(Rational(0), Rational(1), vec1(0)).is_zero());
    CHECK_THROWS_AS(StepVector(1, {Rational(1), Rational(1)}, {vec1(1), vec1(2)}),
                    std::invalid_argument);
}

TEST_CASE("inner product is the step-weighted pairing") {
    // |1_(u,t] x h|^2 = (t-u) |h|^2
    StepVector h = StepVector::indicator(Rational(1, 4), Rational(1), vec2(1, 2));
    CHECK(inner_product(h, h) == 0.75 * 5.0);

    CHECK(inner_product(h, StepVector::zero(2)) == 0.0);

    // orthogonal directions on overlapping windows
    StepVector e1 = StepVector::indicator(Rational(0), Rational(1), vec2(1, 0));
    StepVector e2 = StepVector::indicator(Rational(0), Rational(2), vec2(0, 1));
    CHECK(inner_product(e1, e2) == 0.0);

    CHECK_THROWS_AS(inner_product(e1, StepVector::zero(1)), std::invalid_argument);
}

TEST_CASE("weyl multiplication adds exponents") {
    StepVector h = StepVector::indicator(Rational(0), Rational(1), vec1(2));
    WeylPolynomial eh = WeylPolynomial::weyl(Complex(1, 0), h);
    WeylPolynomial ehm = WeylPolynomial::weyl(Complex(1, 0), -h);

    CHECK(same_terms(weyl_mul(eh, ehm), WeylPolynomial::one(1)));
    CHECK(same_terms(weyl_adjoint(eh), ehm));

    // (E[h1]+E[h2])(E[h1]-E[h2]) = E[2h1] - E[2h2]: cross terms cancel
    StepVector h1 = StepVector::indicator(Rational(0), Rational(1), vec1(1));
    StepVector h2 = StepVector::indicator(Rational(0), Rational(1), vec1(-1));
    WeylPolynomial sum = weyl_add(WeylPolynomial::weyl(Complex(1, 0), h1),
                                  WeylPolynomial::weyl(Complex(1, 0), h2));
    WeylPolynomial diff = weyl_sub(WeylPolynomial::weyl(Complex(1, 0), h1),
                                   WeylPolynomial::weyl(Complex(1, 0), h2));
    WeylPolynomial expected = weyl_sub(WeylPolynomial::weyl(Complex(1, 0), h1.scaled(2.0)),
                                       WeylPolynomial::weyl(Complex(1, 0), h2.scaled(2.0)));
    CHECK(l2_distance(weyl_mul(sum, diff), expected) <= 1e-12);
    CHECK(same_terms(weyl_mul(sum, diff), expected));
}

TEST_CASE("expectation is the gaussian characteristic function") {
    StepVector unit = StepVector::indicator(Rational(0), Rational(1), vec1(1)); // |h|^2 = 1
    CHECK(std::abs(expectation(WeylPolynomial::weyl(Complex(1, 0), unit)) -
                   Complex(std::exp(-0.5), 0.0)) <= 1e-15);
    CHECK(std::abs(expectation(WeylPolynomial::weyl(Complex(1, 0), unit)).real() -
                   0.6065306597) <= 1e-10);
    CHECK(expectation(WeylPolynomial::one(1)) == Complex(1.0, 0.0));

    // E(E[1_(u,t] x h]) = exp(-(t-u)|h|^2/2)
    StepVector inc = StepVector::indicator(Rational(1, 2), Rational(1), vec2(1, 1));
    CHECK(std::abs(expectation(WeylPolynomial::weyl(Complex(1, 0), inc)) -
                   Complex(std::exp(-0.5 * 0.5 * 2.0), 0.0)) <= 1e-15);
}

TEST_CASE("conditional expectation splits the exponent at u") {
    // E_u(E[sqrt(2) 1_(0,t] x v]) = exp(-(t-u)|v|^2) E[sqrt(2) 1_(0,u] x v]
    double psi = 1.0;
    Eigen::VectorXd v = vec1(std::sqrt(psi));
    StepVector h = StepVector::indicator(Rational(0), Rational(1), v).scaled(std::numbers::sqrt2);
    WeylPolynomial x = WeylPolynomial::weyl(Complex(1, 0), h);

    WeylPolynomial eu = conditional_expectation(x, Rational(1, 2));
    REQUIRE(eu.terms().size() == 1);
    CHECK(std::abs(eu.terms()[0].coeff - Complex(std::exp(-0.5 * psi), 0.0)) <= 1e-12);
    CHECK(eu.terms()[0].exponent.structurally_equal(h.head(Rational(1, 2)), 0.0));

    // u beyond the support acts as the identity, bit for bit
    CHECK(same_terms(conditional_expectation(x, Rational(2)), x));

    // u = 0 collapses to the expectation times the unit
    WeylPolynomial e0 = conditional_expectation(x, Rational(0));
    REQUIRE(e0.terms().size() == 1);
    CHECK(e0.terms()[0].exponent.is_zero());
    CHECK(std::abs(e0.terms()[0].coeff - expectation(x)) <= 1e-15);

    CHECK_THROWS_AS(conditional_expectation(x, Rational(-1)), std::invalid_argument);
}

TEST_CASE("second quantization") {
    StepVector h = StepVector::indicator(Rational(0), Rational(1), vec1(2));
    WeylPolynomial x = WeylPolynomial::weyl(Complex(0.5, 0.5), h);

    CHECK(same_terms(second_quantize(Eigen::MatrixXd::Identity(1, 1), x), x));

    Eigen::MatrixXd flip = -Eigen::MatrixXd::Identity(1, 1);
    WeylPolynomial flipped = second_quantize(flip, x);
    CHECK(flipped.terms()[0].exponent.pieces()[0](0) == -2.0);

    // integral preserving for random orthogonal matrices
    SplitMix64 rng(99);
    for (int i = 0; i < 20; ++i) {
        Eigen::MatrixXd m(3, 3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m(r, c) = rng.gaussian();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
        Eigen::MatrixXd q = qr.householderQ();
        WeylPolynomial y = random_weyl_polynomial(3, rng);
        CHECK(std::abs(expectation(second_quantize(q, y)) - expectation(y)) <= 1e-12);
    }

    Eigen::MatrixXd skew(1, 1);
    skew << 2.0;
    CHECK_THROWS_AS(second_quantize(skew, x), std::invalid_argument);
}

TEST_CASE("l2 distance") {
    StepVector h = StepVector::indicator(Rational(0), Rational(1), vec1(1));
    StepVector g = StepVector::indicator(Rational(0), Rational(2), vec1(1));
    WeylPolynomial eh = WeylPolynomial::weyl(Complex(1, 0), h);
    WeylPolynomial eg = WeylPolynomial::weyl(Complex(1, 0), g);

    CHECK(l2_distance(eh, eh) == 0.0);
    CHECK(l2_distance(eh, WeylPolynomial::zero(1)) == 1.0);

    StepVector d = g - h;
    double expected = std::sqrt(2.0 - 2.0 * std::exp(-0.5 * inner_product(d, d)));
    CHECK(std::abs(l2_distance(eh, eg) - expected) <= 1e-12);
}

TEST_CASE("algebra axioms on random polynomials") {
    for (int i = 0; i < 100; ++i) {
        SplitMix64 rng = substream(2024, std::uint64_t(i));
        WeylPolynomial x = random_weyl_polynomial(2, rng);
        WeylPolynomial y = random_weyl_polynomial(2, rng);
        WeylPolynomial z = random_weyl_polynomial(2, rng);
        CHECK(l2_distance(weyl_mul(weyl_mul(x, y), z), weyl_mul(x, weyl_mul(y, z))) <= 1e-10);
        CHECK(l2_distance(weyl_mul(x, y), weyl_mul(y, x)) <= 1e-10);
        CHECK(l2_distance(weyl_adjoint(weyl_mul(x, y)),
                          weyl_mul(weyl_adjoint(y), weyl_adjoint(x))) <= 1e-10);

        Complex pos = expectation(weyl_mul(weyl_adjoint(x), x));
        CHECK(pos.real() >= -1e-12);
        CHECK(std::abs(pos.imag()) <= 1e-12);
    }
}

TEST_CASE("expectation is multiplicative on disjoint time supports") {
    for (int i = 0; i < 50; ++i) {
        SplitMix64 rng = substream(77, std::uint64_t(i));
        WeylPolynomial x = random_weyl_polynomial(2, rng);
        WeylPolynomial y = random_weyl_polynomial(2, rng);
        std::vector<WeylTerm> early, late;
        for (const auto& t : x.terms()) early.push_back({t.coeff, t.exponent.head(Rational(1))});
        for (const auto& t : y.terms()) late.push_back({t.coeff, t.exponent.tail(Rational(1))});
        WeylPolynomial a(2, std::move(early));
        WeylPolynomial b(2, std::move(late));
        CHECK(std::abs(expectation(weyl_mul(a, b)) - expectation(a) * expectation(b)) <= 1e-12);
    }
}

TEST_CASE("conditional expectation properties") {
    for (int i = 0; i < 100; ++i) {
        SplitMix64 rng = substream(31337, std::uint64_t(i));
        WeylPolynomial x = random_weyl_polynomial(2, rng);
        Rational u(std::int64_t(rng.next() % 17), 8);
        Rational t(std::int64_t(rng.next() % 17), 8);
        Rational lo = u < t ? u : t;

        WeylPolynomial eu = conditional_expectation(x, u);
        CHECK(l2_distance(conditional_expectation(eu, u), eu) <= 1e-10);
        CHECK(l2_distance(conditional_expectation(conditional_expectation(x, t), u),
                          conditional_expectation(x, lo)) <= 1e-10);
        CHECK(std::abs(expectation(eu) - expectation(x)) <= 1e-10);

        // module property over the measurable factor
        WeylPolynomial g =
            WeylPolynomial::weyl(Complex(0.3, -0.2), random_step_vector(2, rng).head(u));
        CHECK(l2_distance(conditional_expectation(weyl_mul(g, x), u), weyl_mul(g, eu)) <= 1e-10);
    }
}

TEST_CASE("martingale and independence forms") {
    Eigen::VectorXd h = vec2(0.7, -0.3);
    Rational u(1, 2);
    Rational t(5, 4);

    // exponent of the conditioned exponential is supported in [0,u]
    WeylPolynomial bm =
        WeylPolynomial::weyl(Complex(1, 0), StepVector::indicator(Rational(0), t, h));
    WeylPolynomial conditioned = conditional_expectation(bm, u);
    for (const auto& term : conditioned.terms())
        CHECK(term.exponent.support_end() <= u);

    // increments after u are independent of the past
    WeylPolynomial inc = WeylPolynomial::weyl(Complex(1, 0), StepVector::indicator(u, t, h));
    WeylPolynomial projected = conditional_expectation(inc, u);
    WeylPolynomial constant = weyl_scale(WeylPolynomial::one(2), expectation(inc));
    CHECK(l2_distance(projected, constant) <= 1e-12);
}

TEST_CASE("dimension mismatches are rejected") {
    WeylPolynomial a = WeylPolynomial::one(1);
    WeylPolynomial b = WeylPolynomial::one(2);
    CHECK_THROWS_AS(weyl_mul(a, b), std::invalid_argument);
    CHECK_THROWS_AS(weyl_add(a, b), std::invalid_argument);
    CHECK_THROWS_AS(l2_distance(a, b), std::invalid_argument);
}

TEST_CASE("zero-dimensional algebra degenerates to constants") {
    SplitMix64 rng(5);
    WeylPolynomial x = random_weyl_polynomial(0, rng);
    CHECK(x.terms().size() == 1);
    CHECK(x.terms()[0].exponent.is_zero());
}

} // TEST_SUITE
