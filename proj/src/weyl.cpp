#include "fmdil/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fmdil {

namespace {

bool vec_exact_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) != b(i)) return false;
    return true;
}

bool vec_is_zero(const Eigen::VectorXd& a) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) != 0.0) return false;
    return true;
}

void check_dims(int a, int b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

} // namespace

StepVector::StepVector(int dim, std::vector<Rational> breaks, std::vector<Eigen::VectorXd> pieces)
    : dim_(dim), breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
    canonicalize();
}

void StepVector::canonicalize() {
    if (breaks_.size() != pieces_.size())
        throw std::invalid_argument("step vector: breakpoint/piece count mismatch");
    Rational prev(0);
    for (std::size_t k = 0; k < breaks_.size(); ++k) {
        if (!(breaks_[k] > prev))
            throw std::invalid_argument("step vector: breakpoints must be strictly increasing and positive");
        if (pieces_[k].size() != dim_)
            throw std::invalid_argument("step vector: piece dimension mismatch");
        prev = breaks_[k];
    }
    // merge adjacent intervals carrying the same vector (keep the later boundary)
    std::size_t w = 0;
    for (std::size_t k = 0; k < breaks_.size(); ++k) {
        if (w > 0 && vec_exact_equal(pieces_[w - 1], pieces_[k])) {
            breaks_[w - 1] = breaks_[k];
        } else {
            breaks_[w] = breaks_[k];
            pieces_[w] = pieces_[k];
            ++w;
        }
    }
    breaks_.resize(w);
    pieces_.resize(w);
    while (!pieces_.empty() && vec_is_zero(pieces_.back())) {
        pieces_.pop_back();
        breaks_.pop_back();
    }
}

StepVector StepVector::indicator(const Rational& from, const Rational& to, Eigen::VectorXd v) {
    if (from < 0 || to < from) throw std::invalid_argument("indicator: need 0 <= from <= to");
    int dim = int(v.size());
    if (from == to) return zero(dim);
    std::vector<Rational> breaks;
    std::vector<Eigen::VectorXd> pieces;
    if (from > 0) {
        breaks.push_back(from);
        pieces.push_back(Eigen::VectorXd::Zero(dim));
    }
    breaks.push_back(to);
    pieces.push_back(std::move(v));
    return StepVector(dim, std::move(breaks), std::move(pieces));
}

StepVector StepVector::operator+(const StepVector& o) const {
    check_dims(dim_, o.dim_, "step vector add");
    std::vector<Rational> breaks;
    std::vector<Eigen::VectorXd> pieces;
    std::size_t ia = 0, ib = 0;
    Eigen::VectorXd zero_vec = Eigen::VectorXd::Zero(dim_);
    while (ia < breaks_.size() || ib < o.breaks_.size()) {
        Rational next = ia < breaks_.size() && (ib >= o.breaks_.size() || breaks_[ia] < o.breaks_[ib])
                            ? breaks_[ia]
                            : o.breaks_[ib];
        const Eigen::VectorXd& va = ia < breaks_.size() ? pieces_[ia] : zero_vec;
        const Eigen::VectorXd& vb = ib < o.breaks_.size() ? o.pieces_[ib] : zero_vec;
        breaks.push_back(next);
        pieces.push_back(va + vb);
        if (ia < breaks_.size() && breaks_[ia] == next) ++ia;
        if (ib < o.breaks_.size() && o.breaks_[ib] == next) ++ib;
    }
    return StepVector(dim_, std::move(breaks), std::move(pieces));
}

StepVector StepVector::operator-() const {
    StepVector out = *this;
    for (auto& p : out.pieces_) p = -p;
    return out;
}

StepVector StepVector::scaled(double c) const {
    std::vector<Eigen::VectorXd> pieces = pieces_;
    for (auto& p : pieces) p *= c;
    return StepVector(dim_, breaks_, std::move(pieces));
}

StepVector StepVector::head(const Rational& u) const {
    if (u <= 0) return zero(dim_);
    std::vector<Rational> breaks;
    std::vector<Eigen::VectorXd> pieces;
    Rational prev(0);
    for (std::size_t k = 0; k < breaks_.size(); ++k) {
        if (breaks_[k] <= u) {
            breaks.push_back(breaks_[k]);
            pieces.push_back(pieces_[k]);
            prev = breaks_[k];
        } else {
            if (prev < u) {
                breaks.push_back(u);
                pieces.push_back(pieces_[k]);
            }
            break;
        }
    }
    return StepVector(dim_, std::move(breaks), std::move(pieces));
}

StepVector StepVector::tail(const Rational& u) const {
    if (u <= 0) return *this;
    std::vector<Rational> breaks;
    std::vector<Eigen::VectorXd> pieces;
    for (std::size_t k = 0; k < breaks_.size(); ++k) {
        if (breaks_[k] <= u) continue;
        if (breaks.empty()) { // zero on (0,u]
            breaks.push_back(u);
            pieces.push_back(Eigen::VectorXd::Zero(dim_));
        }
        breaks.push_back(breaks_[k]);
        pieces.push_back(pieces_[k]);
    }
    return StepVector(dim_, std::move(breaks), std::move(pieces));
}

StepVector StepVector::mapped(const Eigen::MatrixXd& m) const {
    if (m.rows() != dim_ || m.cols() != dim_)
        throw std::invalid_argument("step vector map: matrix shape mismatch");
    std::vector<Eigen::VectorXd> pieces = pieces_;
    for (auto& p : pieces) p = m * p;
    return StepVector(dim_, breaks_, std::move(pieces));
}

bool StepVector::structurally_equal(const StepVector& o, double piece_tol) const {
    if (dim_ != o.dim_) return false;
    // compare as functions on the common refinement; two floating-point
    // paths to the same exponent may disagree in representation (a vanishing
    // piece kept on one side, dropped on the other)
    std::size_t ia = 0, ib = 0;
    while (ia < breaks_.size() || ib < o.breaks_.size()) {
        const Eigen::VectorXd* va = ia < breaks_.size() ? &pieces_[ia] : nullptr;
        const Eigen::VectorXd* vb = ib < o.breaks_.size() ? &o.pieces_[ib] : nullptr;
        for (Eigen::Index i = 0; i < dim_; ++i) {
            double da = va ? (*va)(i) : 0.0;
            double db = vb ? (*vb)(i) : 0.0;
            if (std::abs(da - db) > piece_tol) return false;
        }
        Rational next = ia < breaks_.size() && (ib >= o.breaks_.size() || breaks_[ia] < o.breaks_[ib])
                            ? breaks_[ia]
                            : o.breaks_[ib];
        if (ia < breaks_.size() && breaks_[ia] == next) ++ia;
        if (ib < o.breaks_.size() && o.breaks_[ib] == next) ++ib;
    }
    return true;
}

int StepVector::compare(const StepVector& a, const StepVector& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_ ? -1 : 1;
    if (a.breaks_.size() != b.breaks_.size()) return a.breaks_.size() < b.breaks_.size() ? -1 : 1;
    for (std::size_t k = 0; k < a.breaks_.size(); ++k) {
        if (a.breaks_[k] != b.breaks_[k]) return a.breaks_[k] < b.breaks_[k] ? -1 : 1;
    }
    for (std::size_t k = 0; k < a.pieces_.size(); ++k)
        for (Eigen::Index i = 0; i < a.dim_; ++i) {
            if (a.pieces_[k](i) != b.pieces_[k](i)) return a.pieces_[k](i) < b.pieces_[k](i) ? -1 : 1;
        }
    return 0;
}

double inner_product(const StepVector& h1, const StepVector& h2) {
    check_dims(h1.dim(), h2.dim(), "inner product");
    double total = 0.0;
    std::size_t ia = 0, ib = 0;
    Rational prev(0);
    const auto& ba = h1.breakpoints();
    const auto& bb = h2.breakpoints();
    while (ia < ba.size() && ib < bb.size()) {
        Rational next = ba[ia] < bb[ib] ? ba[ia] : bb[ib];
        total += to_double(next - prev) * h1.pieces()[ia].dot(h2.pieces()[ib]);
        if (ba[ia] == next) ++ia;
        if (bb[ib] == next) ++ib;
        prev = next;
    }
    return total;
}

WeylPolynomial::WeylPolynomial(int dim, std::vector<WeylTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
    canonicalize();
}

void WeylPolynomial::canonicalize() {
    std::vector<WeylTerm> out;
    for (auto& t : terms_) {
        if (t.exponent.dim() != dim_)
            throw std::invalid_argument("weyl polynomial: exponent dimension mismatch");
        if (t.coeff == 0.0) continue;
        bool merged = false;
        for (auto& o : out) {
            if (o.exponent.structurally_equal(t.exponent, kStructuralTol)) {
                o.coeff += t.coeff;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const WeylTerm& t) { return t.coeff == 0.0; }),
              out.end());
    std::sort(out.begin(), out.end(), [](const WeylTerm& a, const WeylTerm& b) {
        return StepVector::compare(a.exponent, b.exponent) < 0;
    });
    terms_ = std::move(out);
}

WeylPolynomial WeylPolynomial::one(int dim) {
    return WeylPolynomial(dim, {WeylTerm{Complex(1.0, 0.0), StepVector::zero(dim)}});
}

WeylPolynomial WeylPolynomial::weyl(Complex c, StepVector h) {
    int dim = h.dim();
    return WeylPolynomial(dim, {WeylTerm{c, std::move(h)}});
}

WeylPolynomial weyl_add(const WeylPolynomial& x, const WeylPolynomial& y) {
    check_dims(x.dim(), y.dim(), "weyl add");
    std::vector<WeylTerm> terms = x.terms();
    terms.insert(terms.end(), y.terms().begin(), y.terms().end());
    return WeylPolynomial(x.dim(), std::move(terms));
}

WeylPolynomial weyl_sub(const WeylPolynomial& x, const WeylPolynomial& y) {
    return weyl_add(x, weyl_scale(y, Complex(-1.0, 0.0)));
}

WeylPolynomial weyl_scale(const WeylPolynomial& x, Complex c) {
    std::vector<WeylTerm> terms = x.terms();
    for (auto& t : terms) t.coeff *= c;
    return WeylPolynomial(x.dim(), std::move(terms));
}

WeylPolynomial weyl_mul(const WeylPolynomial& x, const WeylPolynomial& y) {
    check_dims(x.dim(), y.dim(), "weyl mul");
    std::vector<WeylTerm> terms;
    terms.reserve(x.terms().size() * y.terms().size());
    for (const auto& a : x.terms())
        for (const auto& b : y.terms())
            terms.push_back(WeylTerm{a.coeff * b.coeff, a.exponent + b.exponent});
    return WeylPolynomial(x.dim(), std::move(terms));
}

WeylPolynomial weyl_adjoint(const WeylPolynomial& x) {
    std::vector<WeylTerm> terms = x.terms();
    for (auto& t : terms) {
        t.coeff = std::conj(t.coeff);
        t.exponent = -t.exponent;
    }
    return WeylPolynomial(x.dim(), std::move(terms));
}

Complex expectation(const WeylPolynomial& x) {
    Complex total(0.0, 0.0);
    for (const auto& t : x.terms())
        total += t.coeff * std::exp(-0.5 * inner_product(t.exponent, t.exponent));
    return total;
}

WeylPolynomial conditional_expectation(const WeylPolynomial& x, const Rational& u) {
    if (u < 0) throw std::invalid_argument("conditional expectation: negative time");
    std::vector<WeylTerm> terms;
    terms.reserve(x.terms().size());
    for (const auto& t : x.terms()) {
        StepVector outside = t.exponent.tail(u);
        double factor = std::exp(-0.5 * inner_product(outside, outside));
        terms.push_back(WeylTerm{t.coeff * factor, t.exponent.head(u)});
    }
    return WeylPolynomial(x.dim(), std::move(terms));
}

WeylPolynomial conditional_expectation_tail(const WeylPolynomial& x, const Rational& u) {
    if (u < 0) throw std::invalid_argument("conditional expectation: negative time");
    std::vector<WeylTerm> terms;
    terms.reserve(x.terms().size());
    for (const auto& t : x.terms()) {
        StepVector outside = t.exponent.head(u);
        double factor = std::exp(-0.5 * inner_product(outside, outside));
        terms.push_back(WeylTerm{t.coeff * factor, t.exponent.tail(u)});
    }
    return WeylPolynomial(x.dim(), std::move(terms));
}

WeylPolynomial second_quantize(const Eigen::MatrixXd& o, const WeylPolynomial& x) {
    if (o.rows() != x.dim() || o.cols() != x.dim())
        throw std::invalid_argument("second quantization: matrix shape mismatch");
    if (o.rows() > 0) {
        double defect = (o.transpose() * o - Eigen::MatrixXd::Identity(o.rows(), o.cols()))
                            .cwiseAbs()
                            .maxCoeff();
        if (defect > 1e-10)
            throw std::invalid_argument("second quantization: matrix is not orthogonal (defect " +
                                        std::to_string(defect) + ")");
    }
    std::vector<WeylTerm> terms = x.terms();
    for (auto& t : terms) t.exponent = t.exponent.mapped(o);
    return WeylPolynomial(x.dim(), std::move(terms));
}

double l2_norm(const WeylPolynomial& x) { return l2_distance(x, WeylPolynomial::zero(x.dim())); }

double l2_distance(const WeylPolynomial& x, const WeylPolynomial& y) {
    check_dims(x.dim(), y.dim(), "l2 distance");
    WeylPolynomial z = weyl_sub(x, y);
    const auto& terms = z.terms();
    double dist2 = 0.0;
    for (std::size_t j = 0; j < terms.size(); ++j) {
        dist2 += std::norm(terms[j].coeff);
        for (std::size_t k = j + 1; k < terms.size(); ++k) {
            StepVector diff = terms[k].exponent - terms[j].exponent;
            double gram = std::exp(-0.5 * inner_product(diff, diff));
            dist2 += 2.0 * gram * (std::conj(terms[j].coeff) * terms[k].coeff).real();
        }
    }
    return std::sqrt(std::max(0.0, dist2));
}

std::string to_string(const StepVector& h) {
    if (h.is_zero()) return "0";
    std::ostringstream out;
    Rational prev(0);
    bool first = true;
    for (int k = 0; k < h.piece_count(); ++k) {
        const Eigen::VectorXd& v = h.pieces()[std::size_t(k)];
        if (!vec_is_zero(v)) {
            if (!first) out << " + ";
            first = false;
            out << "1_(" << to_string(prev) << "," << to_string(h.breakpoints()[std::size_t(k)]) << "]*[";
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                if (i) out << ", ";
                out << v(i);
            }
            out << "]";
        }
        prev = h.breakpoints()[std::size_t(k)];
    }
    return out.str();
}

std::string to_string(const WeylPolynomial& x) {
    if (x.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : x.terms()) {
        if (!first) out << " + ";
        first = false;
        out << "(" << t.coeff.real();
        if (t.coeff.imag() >= 0) out << "+" << t.coeff.imag() << "i)";
        else out << t.coeff.imag() << "i)";
        if (t.exponent.is_zero()) out << "*1";
        else out << "*E[" << to_string(t.exponent) << "]";
    }
    return out.str();
}

} // namespace fmdil
