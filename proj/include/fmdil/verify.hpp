#pragma once

#include <cstdint>
#include <utility>

#include "fmdil/crossed.hpp"

namespace fmdil {

struct CheckRecord {
    std::string kind;
    std::string params; // e.g. "input=lambda_1 u=1/2 t=1"
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct DilationReport {
    std::string suite;
    std::string group_name;
    std::string psi_descriptor;
    int cocycle_dim = 0;
    double tolerance = 0.0;
    std::vector<CheckRecord> checks;
    double max_residual = 0.0;
    double wall_time_s = 0.0;
    bool pass = true;

    void add(CheckRecord record);
    const CheckRecord* first_failure() const;
};

struct LabeledInput {
    std::string label;
    GroupAlgebraElement a;
};

// {0, 1/4, 1/2, 1, 3/2, 2}: dyadic so every interval split is exact
std::vector<Rational> default_time_points();
// all (u,t) with u <= t drawn from pts
std::vector<std::pair<Rational, Rational>> grid_pairs_increasing(const std::vector<Rational>& pts);
// all (t,u) with t <= u <= horizon drawn from pts
std::vector<std::pair<Rational, Rational>> grid_pairs_reversed(const std::vector<Rational>& pts,
                                                               const Rational& horizon);

// every lambda_s plus n_random seeded dense elements
std::vector<LabeledInput> default_inputs(const ContextPtr& ctx, std::uint64_t seed,
                                         int n_random = 5);

// Residual of E_u pi_t(a) = pi_u T_{t-u}(a) over the grid of pairs (u, t),
// u <= t, for every input. A thrown error inside a grid point is recorded
// as a failed check rather than aborting the sweep.
DilationReport verify_markov(const ContextPtr& ctx,
                             const std::vector<std::pair<Rational, Rational>>& pairs,
                             const std::vector<LabeledInput>& inputs);

// Residual of E_u pi_t(a) = pi_u T_{u-t}(a) for t <= u <= horizon, with the
// decreasing filtration given by time supports [u, horizon].
DilationReport verify_reversed(const ContextPtr& ctx,
                               const std::vector<std::pair<Rational, Rational>>& pairs,
                               const std::vector<LabeledInput>& inputs);

// Batches the property suites of the cocycle, the function algebra and the
// crossed product on seeded random instances; one record per property with
// the worst residual seen.
DilationReport verify_structure(const ContextPtr& ctx, int samples, std::uint64_t seed);

// Seeded random instances used by the suites (and reusable from tests).
StepVector random_step_vector(int dim, SplitMix64& rng, int max_pieces = 3);
WeylPolynomial random_weyl_polynomial(int dim, SplitMix64& rng, int max_terms = 3);
CrossedElement random_crossed_element(const ContextPtr& ctx, SplitMix64& rng, int max_fibers = 3);

} // namespace fmdil
