#include <CLI11.hpp>

#include <iostream>

#include "fmdil/cli.hpp"
#include "fmdil/errors.hpp"

namespace {

// Shared flag wiring; rationals and perturbations arrive as strings and are
// parsed after CLI11 so that errors map onto the usage exit code.
struct RawOptions {
    std::string times;
    std::string horizon;
    std::string u, t;
    std::string corrupt_pi, corrupt_psi;
};

void add_common(CLI::App* cmd, fmdil::RunConfig& config, RawOptions& raw) {
    cmd->add_option("--input", config.input_path, "input JSON with group and psi descriptors")
        ->required();
    cmd->add_option("--out", config.output_path, "write the JSON report here");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markov dilations of Fourier multiplier semigroups on finite groups"};
    app.require_subcommand(1);

    fmdil::RunConfig config;
    RawOptions raw;

    CLI::App* check = app.add_subcommand("check-cnd", "certify psi conditionally negative definite");
    add_common(check, config, raw);

    CLI::App* verify = app.add_subcommand("verify", "construct the dilation and verify it");
    add_common(verify, config, raw);
    verify->add_option("--times", raw.times, "comma-separated rational time grid, e.g. 0,1/4,1/2,1");
    verify->add_option("--tol", config.tolerance, "dilation residual tolerance");
    verify->add_option("--mc-samples", config.mc_samples, "Monte Carlo paths (0 disables)");
    verify->add_option("--seed", config.seed, "seed for random inputs and paths");
    verify->add_option("--horizon", raw.horizon, "reversed-dilation horizon C as p/q");
    verify->add_option("--corrupt-pi", raw.corrupt_pi, "validation hook: perturb pi (s,i,j,eps)")
        ->group("");
    verify->add_option("--corrupt-psi", raw.corrupt_psi, "validation hook: perturb psi (s,eps)")
        ->group("");

    CLI::App* explain = app.add_subcommand("explain", "print the dilation identity for one (s,u,t)");
    add_common(explain, config, raw);
    int s = 0;
    explain->add_option("--s", s, "group element index")->required();
    explain->add_option("--u", raw.u, "conditioning time as p/q")->required();
    explain->add_option("--t", raw.t, "embedding time as p/q")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) config.command = "check-cnd";
        if (verify->parsed()) config.command = "verify";
        if (explain->parsed()) {
            config.command = "explain";
            config.explain_s = s;
            config.explain_u = fmdil::parse_rational(raw.u);
            config.explain_t = fmdil::parse_rational(raw.t);
        }
        if (!raw.times.empty()) config.times = fmdil::parse_rational_list(raw.times);
        if (!raw.horizon.empty()) config.horizon = fmdil::parse_rational(raw.horizon);
        if (!raw.corrupt_pi.empty()) config.corrupt_pi = fmdil::parse_pi_perturbation(raw.corrupt_pi);
        if (!raw.corrupt_psi.empty())
            config.corrupt_psi = fmdil::parse_psi_perturbation(raw.corrupt_psi);
    } catch (const fmdil::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    return fmdil::run_command(config);
}
