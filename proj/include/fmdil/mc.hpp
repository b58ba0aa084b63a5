#pragma once

#include <cstdint>
#include <vector>

#include "fmdil/weyl.hpp"

namespace fmdil {

// Concrete realization of the symbolic calculus: the process is evaluated
// pathwise with i.i.d. standard Gaussian increments on a fixed rational
// grid. Increments are a pure function of (seed, path, interval, coordinate)
// via one splittable substream per path, so parallel and serial runs agree
// bit for bit; sums are reduced over fixed-size blocks by a pairwise tree,
// so the result is independent of the thread count.
struct PathSample {
    std::vector<Rational> grid; // strictly increasing positive; intervals (0,g0],(g0,g1],...
    int dim = 0;
    std::uint64_t seed = 0;
    std::int64_t count = 0; // N paths
};

// Grid = union of the breakpoints of every polynomial (they must share dim).
PathSample make_path_sample(const std::vector<const WeylPolynomial*>& polys, std::int64_t count,
                            std::uint64_t seed);

// Gaussian increments of one path: increments[k] is the d-dimensional
// increment over grid interval k, scaled by sqrt(interval length).
std::vector<Eigen::VectorXd> path_increments(const PathSample& p, std::int64_t path);

// Pathwise values of x on the first max_paths paths. The sample grid must
// refine every exponent of x.
std::vector<Complex> evaluate(const WeylPolynomial& x, const PathSample& p,
                              std::int64_t max_paths);

struct McEstimate {
    std::string label;
    Complex symbolic{0.0, 0.0};
    Complex estimate{0.0, 0.0};
    double stderr_re = 0.0;
    double stderr_im = 0.0;
    double z_re = 0.0;
    double z_im = 0.0;
    std::int64_t paths = 0;
    bool flagged = false; // max(z_re, z_im) > 5
};

// Sample mean of x against its exact expectation.
McEstimate cross_validate_expectation(const WeylPolynomial& x, std::int64_t count,
                                      std::uint64_t seed);

// Defining property of the conditional expectation: for every probe g with
// time support inside [0,u], E(x e^{iW(g)}) = E(E_u(x) e^{iW(g)}). The left
// side is estimated by Monte Carlo, the right side is evaluated exactly
// through the symbolic engine.
std::vector<McEstimate> cross_validate_conditional(const WeylPolynomial& x, const Rational& u,
                                                   const std::vector<StepVector>& probes,
                                                   std::int64_t count, std::uint64_t seed);

} // namespace fmdil
