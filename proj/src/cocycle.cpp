#include "fmdil/cocycle.hpp"

#include <cmath>
#include <sstream>

#include "fmdil/errors.hpp"

namespace fmdil {

namespace {

void check_psi(const FiniteGroup& g, const CndFunction& psi) {
    if (psi.order != g.n || (int)psi.values.size() != g.n)
        throw std::invalid_argument("psi table does not match the group order");
}

} // namespace

Eigen::MatrixXd gromov_kernel(const FiniteGroup& g, const CndFunction& psi) {
    check_psi(g, psi);
    const int n = g.n;
    Eigen::MatrixXd k(n, n);
    for (int s = 0; s < n; ++s)
        for (int r = 0; r < n; ++r)
            k(s, r) = 0.5 * (psi.values[std::size_t(s)] + psi.values[std::size_t(r)] -
                             psi.values[std::size_t(g.mul(g.inv[std::size_t(s)], r))]);
    // absorb a sub-tolerance asymmetry of psi under inverse
    return 0.5 * (k + k.transpose());
}

CndCertificate is_cnd(const CndFunction& psi, const FiniteGroup& g, double tol) {
    check_psi(g, psi);
    CndCertificate cert;
    if (psi.values[std::size_t(g.identity)] != 0.0) {
        cert.reason = "psi(identity) must be 0";
        return cert;
    }
    for (int s = 0; s < g.n; ++s) {
        double d = std::abs(psi.values[std::size_t(s)] - psi.values[std::size_t(g.inv[std::size_t(s)])]);
        if (d > tol) {
            std::ostringstream msg;
            msg << "psi not symmetric under inverse at s=" << s << " (|psi(s)-psi(s^-1)| = " << d << ")";
            cert.reason = msg.str();
            return cert;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gromov_kernel(g, psi),
                                                      Eigen::EigenvaluesOnly);
    cert.min_eigenvalue = es.eigenvalues().minCoeff();
    if (cert.min_eigenvalue < -tol) {
        std::ostringstream msg;
        msg << "Gromov kernel has negative eigenvalue " << cert.min_eigenvalue;
        cert.reason = msg.str();
        return cert;
    }
    cert.ok = true;
    return cert;
}

CndFunction delta_psi(const FiniteGroup& g, double scale) {
    if (!(scale > 0.0)) throw UsageError("delta psi: scale must be positive");
    CndFunction psi;
    psi.order = g.n;
    psi.values.assign(std::size_t(g.n), scale);
    psi.values[std::size_t(g.identity)] = 0.0;
    std::ostringstream d;
    d << "delta(scale=" << scale << ")";
    psi.descriptor = d.str();
    return psi;
}

CndFunction hamming_psi(const FiniteGroup& g) {
    if (g.kind != "hypercube")
        throw UsageError("hamming psi: group was not built as a hypercube");
    CndFunction psi;
    psi.order = g.n;
    psi.values.resize(std::size_t(g.n));
    for (int s = 0; s < g.n; ++s)
        psi.values[std::size_t(s)] = double(__builtin_popcount(unsigned(s)));
    psi.descriptor = "hamming";
    return psi;
}

CndFunction table_psi(const FiniteGroup& g, std::vector<double> values, std::string descriptor) {
    if ((int)values.size() != g.n)
        throw UsageError("table psi: expected " + std::to_string(g.n) + " values");
    return CndFunction{g.n, std::move(values), std::move(descriptor)};
}

Cocycle build_cocycle(const FiniteGroup& g, const CndFunction& psi, double rank_tol) {
    check_psi(g, psi);
    const int n = g.n;
    Eigen::MatrixXd kernel = gromov_kernel(g, psi);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kernel);
    if (es.info() != Eigen::Success)
        throw ConstructionError("eigendecomposition of the Gromov kernel failed");
    const Eigen::VectorXd& lam = es.eigenvalues(); // ascending
    double lam_max = lam.size() ? lam.maxCoeff() : 0.0;
    double threshold = rank_tol * std::max(lam_max, 0.0);

    std::vector<int> kept; // descending eigenvalue order
    for (int i = n - 1; i >= 0; --i)
        if (lam(i) > threshold && lam(i) > 0.0) kept.push_back(i);
    const int d = int(kept.size());

    Cocycle c;
    c.dim = d;
    c.b.resize(n, d);
    for (int j = 0; j < d; ++j)
        c.b.col(j) = std::sqrt(lam(kept[std::size_t(j)])) * es.eigenvectors().col(kept[std::size_t(j)]);
    c.b.row(g.identity).setZero(); // exact: K vanishes on the identity row

    // Factorization sanity: b b^T must reproduce K. A mismatch means psi was
    // not cnd (negative mass was dropped) or rank_tol swallowed real directions.
    double kscale = std::max(1.0, kernel.cwiseAbs().maxCoeff());
    double gram_defect = d > 0 ? (c.b * c.b.transpose() - kernel).cwiseAbs().maxCoeff()
                               : kernel.cwiseAbs().maxCoeff();
    if (gram_defect > 1e-9 * kscale)
        throw ConstructionError("kernel factorization inconsistent (gram defect " +
                                std::to_string(gram_defect) +
                                "): psi is not cnd or rank_tol is too loose");

    c.pi.assign(std::size_t(n), Eigen::MatrixXd::Identity(d, d));
    if (d == 0) return c;

    Eigen::VectorXd lam_kept(d);
    for (int j = 0; j < d; ++j) lam_kept(j) = lam(kept[std::size_t(j)]);

    Eigen::MatrixXd target(n, d);
    for (int s = 0; s < n; ++s) {
        if (s == g.identity) continue; // pi_e = I exactly
        for (int r = 0; r < n; ++r) target.row(r) = c.b.row(g.mul(s, r)) - c.b.row(s);
        // The map b(r) -> b(sr)-b(s) is isometric iff the n x n Grams agree:
        // <b(sr)-b(s), b(sr')-b(s)> = <b(r), b(r')> = K(r,r').
        double iso_defect = (target * target.transpose() - kernel).cwiseAbs().maxCoeff();
        if (iso_defect > 1e-8 * kscale) {
            std::ostringstream msg;
            msg << "partial cocycle map at s=" << s << " is not isometric (defect "
                << iso_defect << ")";
            throw ConstructionError(msg.str());
        }
        // Least squares over the b-span (whose Gram is diag(lam_kept)),
        // then a polar correction to land exactly on the orthogonal group.
        Eigen::MatrixXd pit = c.b.transpose() * target; // d x d
        pit.array().colwise() /= lam_kept.array();
        Eigen::MatrixXd pi_s = pit.transpose();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(pi_s, Eigen::ComputeFullU | Eigen::ComputeFullV);
        if ((svd.singularValues().array() - 1.0).abs().maxCoeff() > 1e-6) {
            std::ostringstream msg;
            msg << "cocycle map at s=" << s << " is far from orthogonal (singular values off by "
                << (svd.singularValues().array() - 1.0).abs().maxCoeff() << ")";
            throw ConstructionError(msg.str());
        }
        c.pi[std::size_t(s)] = svd.matrixU() * svd.matrixV().transpose();
    }
    return c;
}

double schoenberg_min_eigenvalue(const FiniteGroup& g, const CndFunction& psi, double t) {
    check_psi(g, psi);
    const int n = g.n;
    Eigen::MatrixXd m(n, n);
    for (int s = 0; s < n; ++s)
        for (int r = 0; r < n; ++r)
            m(s, r) = std::exp(-t * psi.values[std::size_t(g.mul(g.inv[std::size_t(s)], r))]);
    m = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

CocycleResiduals cocycle_residuals(const FiniteGroup& g, const CndFunction& psi,
                                   const Cocycle& c) {
    check_psi(g, psi);
    const int n = g.n;
    CocycleResiduals res;
    for (int s = 0; s < n; ++s)
        res.norm = std::max(res.norm,
                            std::abs(c.b.row(s).squaredNorm() - psi.values[std::size_t(s)]));
    if (c.dim > 0) {
        Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(c.dim, c.dim);
        for (int s = 0; s < n; ++s)
            res.orthogonality =
                std::max(res.orthogonality, (c.pi[std::size_t(s)].transpose() * c.pi[std::size_t(s)] - eye)
                                                .cwiseAbs()
                                                .maxCoeff());
    }
    res.gram = (c.b * c.b.transpose() - gromov_kernel(g, psi)).cwiseAbs().maxCoeff();

    // Pair sweeps: exhaustive for small groups, seeded sample otherwise.
    std::vector<std::pair<int, int>> pairs;
    if (n <= 64) {
        for (int s = 0; s < n; ++s)
            for (int r = 0; r < n; ++r) pairs.emplace_back(s, r);
    } else {
        res.sampled = true;
        SplitMix64 rng = substream(0x9c0c1eULL, 0);
        for (int i = 0; i < 4096; ++i)
            pairs.emplace_back(int(rng.next() % std::uint64_t(n)),
                               int(rng.next() % std::uint64_t(n)));
    }
    for (auto [s, r] : pairs) {
        if (c.dim > 0) {
            Eigen::VectorXd lhs = c.b.row(g.mul(s, r)) - c.b.row(s);
            Eigen::VectorXd rhs = c.pi[std::size_t(s)] * c.b.row(r).transpose();
            res.law = std::max(res.law, (lhs - rhs).norm());
            res.homomorphism = std::max(
                res.homomorphism,
                (c.pi[std::size_t(s)] * c.pi[std::size_t(r)] - c.pi[std::size_t(g.mul(s, r))]).cwiseAbs().maxCoeff());
        }
    }
    return res;
}

} // namespace fmdil
