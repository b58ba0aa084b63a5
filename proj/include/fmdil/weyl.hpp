#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fmdil/rational.hpp"

namespace fmdil {

// Structural tolerance for merging two exponents that reached the same
// value along different floating-point paths. Equality of represented
// elements is always judged by l2_distance, never by structure.
constexpr double kStructuralTol = 1e-12;

// Step function (0,inf) -> R^dim: value pieces[k] on (breaks[k-1], breaks[k]]
// with breaks[-1] := 0, and zero beyond breaks.back(). Canonical form has no
// trailing zero piece and no two adjacent equal pieces; the zero function is
// the empty piece list.
class StepVector {
public:
    explicit StepVector(int dim = 0) : dim_(dim) {}
    StepVector(int dim, std::vector<Rational> breaks, std::vector<Eigen::VectorXd> pieces);

    static StepVector zero(int dim) { return StepVector(dim); }
    // 1_{(from,to]} (x) v. Requires 0 <= from <= to.
    static StepVector indicator(const Rational& from, const Rational& to, Eigen::VectorXd v);

    int dim() const { return dim_; }
    bool is_zero() const { return breaks_.empty(); }
    int piece_count() const { return int(breaks_.size()); }
    const std::vector<Rational>& breakpoints() const { return breaks_; }
    const std::vector<Eigen::VectorXd>& pieces() const { return pieces_; }
    Rational support_end() const { return breaks_.empty() ? Rational(0) : breaks_.back(); }

    StepVector operator+(const StepVector& o) const;
    StepVector operator-() const;
    StepVector operator-(const StepVector& o) const { return *this + (-o); }
    StepVector scaled(double c) const;
    // restriction to (0,u] / to (u,inf); splits are exact, piece vectors untouched
    StepVector head(const Rational& u) const;
    StepVector tail(const Rational& u) const;
    // apply a matrix to every piece vector
    StepVector mapped(const Eigen::MatrixXd& m) const;

    bool structurally_equal(const StepVector& o, double piece_tol) const;
    // total order used for canonical term ordering; exact comparisons only
    static int compare(const StepVector& a, const StepVector& b);

private:
    int dim_;
    std::vector<Rational> breaks_;
    std::vector<Eigen::VectorXd> pieces_;
    void canonicalize();
};

// L^2((0,inf), R^dim) pairing: sum over intervals of length * <v1,v2>,
// with exact rational lengths and double dot products.
double inner_product(const StepVector& h1, const StepVector& h2);

// One term c * E[h] where E[h] stands for the unimodular exponential with
// symbol h; products add exponents, the adjoint negates them.
struct WeylTerm {
    Complex coeff;
    StepVector exponent;
};

// Finite combination sum_k c_k E[h_k], canonical: exponents pairwise
// structurally distinct, coefficients nonzero, terms sorted. The constant 1
// is the single term (1, zero exponent).
class WeylPolynomial {
public:
    explicit WeylPolynomial(int dim = 0) : dim_(dim) {}
    WeylPolynomial(int dim, std::vector<WeylTerm> terms);

    static WeylPolynomial zero(int dim) { return WeylPolynomial(dim); }
    static WeylPolynomial one(int dim);
    static WeylPolynomial weyl(Complex c, StepVector h); // c * E[h]

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<WeylTerm>& terms() const { return terms_; }

private:
    int dim_;
    std::vector<WeylTerm> terms_;
    void canonicalize();
};

WeylPolynomial weyl_add(const WeylPolynomial& x, const WeylPolynomial& y);
WeylPolynomial weyl_sub(const WeylPolynomial& x, const WeylPolynomial& y);
WeylPolynomial weyl_scale(const WeylPolynomial& x, Complex c);
WeylPolynomial weyl_mul(const WeylPolynomial& x, const WeylPolynomial& y);
WeylPolynomial weyl_adjoint(const WeylPolynomial& x);

// E(c E[h]) = c exp(-|h|^2/2), extended linearly (the Gaussian
// characteristic function at t=1).
Complex expectation(const WeylPolynomial& x);

// Conditional expectation onto the sigma-algebra of the process up to time
// u: per term, the part of the exponent beyond u integrates out to the
// factor exp(-|h 1_(u,inf)|^2/2) and the exponent is restricted to (0,u].
WeylPolynomial conditional_expectation(const WeylPolynomial& x, const Rational& u);

// Mirror image used by the reversed dilation: projection onto time support
// [u, inf); the part of the exponent before u integrates out.
WeylPolynomial conditional_expectation_tail(const WeylPolynomial& x, const Rational& u);

// Second quantization of an orthogonal matrix: applies it to every piece
// vector of every exponent. Rejects matrices farther than 1e-10 from the
// orthogonal group.
WeylPolynomial second_quantize(const Eigen::MatrixXd& o, const WeylPolynomial& x);

double l2_norm(const WeylPolynomial& x);
// L^2(Omega) distance via the Gram identity <E[h],E[g]> = exp(-|g-h|^2/2).
double l2_distance(const WeylPolynomial& x, const WeylPolynomial& y);

std::string to_string(const StepVector& h);
std::string to_string(const WeylPolynomial& x);

} // namespace fmdil
