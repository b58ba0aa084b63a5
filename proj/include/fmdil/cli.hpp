#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fmdil/crossed.hpp"
#include "fmdil/rational.hpp"

namespace fmdil {

// Validation hooks: perturb one entry after construction, without
// rebuilding the cocycle, to prove the suite catches a broken dilation.
struct PiPerturbation {
    int s = 0, i = 0, j = 0;
    double eps = 0.0;
};
struct PsiPerturbation {
    int s = 0;
    double eps = 0.0;
};

PiPerturbation parse_pi_perturbation(const std::string& text);   // "s,i,j,eps"
PsiPerturbation parse_psi_perturbation(const std::string& text); // "s,eps"

struct RunConfig {
    std::string command; // check-cnd | verify | explain
    std::string input_path;
    std::vector<Rational> times; // empty = default dyadic grid
    double tolerance = 1e-9;
    std::int64_t mc_samples = 100000; // 0 disables the Monte Carlo section
    std::uint64_t seed = 1;
    std::optional<Rational> horizon; // reversed dilation runs only when set
    std::string output_path;         // JSON report destination, empty = none

    // explain
    std::optional<int> explain_s;
    std::optional<Rational> explain_u;
    std::optional<Rational> explain_t;

    std::optional<PiPerturbation> corrupt_pi;
    std::optional<PsiPerturbation> corrupt_psi;
};

// Exit status contract: 0 pass, 1 verification failure, 2 usage error,
// 3 construction error.
int cmd_check_cnd(const RunConfig& config);
int cmd_verify(const RunConfig& config);
int cmd_explain(const RunConfig& config);

// Dispatches on config.command and maps exceptions onto the exit contract.
int run_command(const RunConfig& config);

// The three sides of the dilation identity for one (s, u, t).
struct ExplainTrace {
    CrossedElement pit;  // pi_t(lambda_s)
    CrossedElement lhs;  // E_u pi_t(lambda_s)
    CrossedElement rhs;  // pi_u T_{t-u}(lambda_s)
    double residual = 0.0;
};

ExplainTrace explain_trace(const ContextPtr& ctx, int s, const Rational& u, const Rational& t);

// The trace printed by cmd_explain, exposed for tests.
std::string explain_text(const ContextPtr& ctx, int s, const Rational& u, const Rational& t);

} // namespace fmdil
