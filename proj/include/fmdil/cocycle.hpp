#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fmdil/group.hpp"

namespace fmdil {

// Conditionally negative definite function psi on a finite group,
// tabulated by element index. psi(e) must be exactly 0; symmetry under
// inverse is checked within tolerance.
struct CndFunction {
    int order = 0;
    std::vector<double> values;
    std::string descriptor; // short label for reports
};

struct CndCertificate {
    bool ok = false;
    double min_eigenvalue = 0.0; // of the Gromov kernel, when computed
    std::string reason;          // set when !ok
};

// K(s,r) = (psi(s) + psi(r) - psi(s^-1 r)) / 2, symmetrized. psi is cnd
// with psi(e)=0 iff K is positive semidefinite.
Eigen::MatrixXd gromov_kernel(const FiniteGroup& g, const CndFunction& psi);

CndCertificate is_cnd(const CndFunction& psi, const FiniteGroup& g, double tol);

// psi = scale * (1 - delta_e)
CndFunction delta_psi(const FiniteGroup& g, double scale);
// psi(s) = popcount(s); only for groups built by make_hypercube
CndFunction hamming_psi(const FiniteGroup& g);
CndFunction table_psi(const FiniteGroup& g, std::vector<double> values,
                      std::string descriptor = "table");

// The pair (b, pi) realizing psi(s) = |b(s)|^2 with the cocycle law
// b(sr) = b(s) + pi_s b(r). pi_s is orthogonal on R^dim.
struct Cocycle {
    int dim = 0;
    Eigen::MatrixXd b;               // n x dim, row s = b(s)
    std::vector<Eigen::MatrixXd> pi; // n matrices, dim x dim
};

// Eigen-factorizes the Gromov kernel, keeping eigenvalues above
// rank_tol * lambda_max. pi_s is the linear extension of
// b(r) -> b(sr) - b(s), orthogonalized by a polar correction (the span of
// the b(r) is all of R^dim, so the extension is unique up to rounding).
// Throws ConstructionError when the partial map is not isometric within
// tolerance, which signals non-cnd input or a too-loose rank_tol.
Cocycle build_cocycle(const FiniteGroup& g, const CndFunction& psi, double rank_tol = 1e-10);

// min eigenvalue of the Schoenberg matrix [exp(-t psi(s^-1 r))]
double schoenberg_min_eigenvalue(const FiniteGroup& g, const CndFunction& psi, double t);

struct CocycleResiduals {
    double law = 0.0;           // max |b(sr) - b(s) - pi_s b(r)|_2
    double norm = 0.0;          // max | |b(s)|^2 - psi(s) |
    double orthogonality = 0.0; // max |pi_s^T pi_s - I|_inf
    double homomorphism = 0.0;  // max |pi_s pi_r - pi_{sr}|_inf
    double gram = 0.0;          // max |b b^T - K|_inf
    bool sampled = false;       // pair sweeps sampled for large groups
};

CocycleResiduals cocycle_residuals(const FiniteGroup& g, const CndFunction& psi,
                                   const Cocycle& c);

} // namespace fmdil
