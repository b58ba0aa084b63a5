#include "fmdil/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fmdil/errors.hpp"
#include "fmdil/json_io.hpp"
#include "fmdil/verify.hpp"
#include "fmdil/mc.hpp"

namespace fmdil {

namespace {

constexpr int kSchemaVersion = 1;
const double kSchoenbergTimes[] = {0.1, 0.5, 1.0, 2.0, 5.0};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

double parse_double(const std::string& s) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw UsageError("trailing characters in number '" + s + "'");
        return v;
    } catch (const std::exception&) {
        throw UsageError("invalid number '" + s + "'");
    }
}

int parse_int(const std::string& s) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw UsageError("trailing characters in integer '" + s + "'");
        return v;
    } catch (const std::exception&) {
        throw UsageError("invalid integer '" + s + "'");
    }
}

void write_report(const RunConfig& config, const Json& report) {
    if (config.output_path.empty()) return;
    std::ofstream out(config.output_path);
    if (!out) throw UsageError("cannot open output file '" + config.output_path + "'");
    out << report.dump(2) << "\n";
}

ContextPtr build_context(const RunConfig& config, const ProblemInput& input) {
    ContextPtr ctx = make_context(input.group, input.psi, config.tolerance,
                                  config.horizon.value_or(Rational(2)));
    if (config.corrupt_pi) {
        const auto& p = *config.corrupt_pi;
        ctx = with_perturbed_pi(ctx, p.s, p.i, p.j, p.eps);
    }
    if (config.corrupt_psi) {
        const auto& p = *config.corrupt_psi;
        ctx = with_perturbed_psi(ctx, p.s, p.eps);
    }
    return ctx;
}

void print_suite_line(const DilationReport& r) {
    std::cout << r.suite << ": " << r.checks.size() << " checks, max residual "
              << r.max_residual << (r.pass ? " PASS" : " FAIL") << "\n";
    if (const CheckRecord* f = r.first_failure()) {
        std::cout << "  first failing check: " << f->kind;
        if (!f->params.empty()) std::cout << " [" << f->params << "]";
        std::cout << " residual=" << f->residual << " tol=" << f->tol << "\n";
    }
}

struct McSection {
    Json json = Json::array();
    int total = 0;
    int passed = 0;
    double max_z = 0.0;
    std::string first_flagged;

    void add(const std::string& kind, const McEstimate& est) {
        if (est.flagged && first_flagged.empty()) first_flagged = kind + " " + est.label;
        Json j;
        j["kind"] = kind;
        j["label"] = est.label;
        j["symbolic"] = {est.symbolic.real(), est.symbolic.imag()};
        j["estimate"] = {est.estimate.real(), est.estimate.imag()};
        j["stderr"] = {est.stderr_re, est.stderr_im};
        j["z"] = {est.z_re, est.z_im};
        j["paths"] = est.paths;
        j["pass"] = !est.flagged;
        json.push_back(std::move(j));
        ++total;
        if (!est.flagged) ++passed;
        max_z = std::max(max_z, std::max(est.z_re, est.z_im));
    }

    double pass_fraction() const { return total == 0 ? 1.0 : double(passed) / double(total); }
};

// Cross-validates the symbolic engine against the pathwise realization:
// 20 seeded expectations plus 10 conditional pairings.
McSection run_mc_section(const ContextPtr& ctx, const RunConfig& config) {
    McSection section;
    const int dim = ctx->cocycle.dim;
    for (int i = 0; i < 20; ++i) {
        SplitMix64 rng = substream(config.seed ^ 0x6d63ULL, std::uint64_t(i));
        WeylPolynomial x = random_weyl_polynomial(dim, rng, 4);
        McEstimate est = cross_validate_expectation(x, config.mc_samples, config.seed + std::uint64_t(i));
        est.label = "expectation_" + std::to_string(i);
        section.add("mc_expectation", est);
    }
    Rational u(1, 2);
    for (int i = 0; i < 10; ++i) {
        SplitMix64 rng = substream(config.seed ^ 0xc0ddULL, std::uint64_t(i));
        WeylPolynomial x = random_weyl_polynomial(dim, rng, 3);
        std::vector<StepVector> probes{random_step_vector(dim, rng).head(u)};
        auto checks =
            cross_validate_conditional(x, u, probes, config.mc_samples, config.seed + 100 + std::uint64_t(i));
        for (auto& est : checks) {
            est.label = "conditional_" + std::to_string(i);
            section.add("mc_conditional", est);
        }
    }
    return section;
}

} // namespace

PiPerturbation parse_pi_perturbation(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 4) throw UsageError("expected 's,i,j,eps' for --corrupt-pi");
    return PiPerturbation{parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2]),
                          parse_double(parts[3])};
}

PsiPerturbation parse_psi_perturbation(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 2) throw UsageError("expected 's,eps' for --corrupt-psi");
    return PsiPerturbation{parse_int(parts[0]), parse_double(parts[1])};
}

int cmd_check_cnd(const RunConfig& config) {
    ProblemInput input = load_input_file(config.input_path);
    Json report;
    report["schema_version"] = kSchemaVersion;
    report["command"] = "check-cnd";
    report["group"] = input.group.name;
    report["psi"] = input.psi.descriptor;

    CndCertificate cert = is_cnd(input.psi, input.group, 1e-10);
    report["cnd"] = {{"ok", cert.ok},
                     {"min_eigenvalue", cert.min_eigenvalue},
                     {"reason", cert.reason}};
    bool pass = cert.ok;
    std::cout << "cnd certificate: " << (cert.ok ? "PASS" : "FAIL");
    if (cert.ok) std::cout << " (kernel min eigenvalue " << cert.min_eigenvalue << ")";
    else std::cout << " (" << cert.reason << ")";
    std::cout << "\n";

    if (cert.ok) {
        report["schoenberg"] = Json::array();
        for (double t : kSchoenbergTimes) {
            double mineig = schoenberg_min_eigenvalue(input.group, input.psi, t);
            bool ok = mineig >= -1e-10;
            pass = pass && ok;
            report["schoenberg"].push_back({{"t", t}, {"min_eigenvalue", mineig}, {"pass", ok}});
            std::cout << "schoenberg t=" << t << ": min eigenvalue " << mineig
                      << (ok ? " PASS" : " FAIL") << "\n";
        }
        Cocycle cocycle = build_cocycle(input.group, input.psi);
        report["cocycle_dim"] = cocycle.dim;
        std::cout << "cocycle dimension d=" << cocycle.dim << "\n";
    }
    report["pass"] = pass;
    write_report(config, report);
    return pass ? 0 : 1;
}

int cmd_verify(const RunConfig& config) {
    ProblemInput input = load_input_file(config.input_path);
    ContextPtr ctx = build_context(config, input);

    std::vector<Rational> times = config.times.empty() ? default_time_points() : config.times;
    for (const auto& t : times)
        if (t < 0) throw UsageError("time grid entries must be nonnegative");
    if (config.horizon && *config.horizon < 0) throw UsageError("horizon must be nonnegative");
    std::vector<LabeledInput> inputs = default_inputs(ctx, config.seed);

    Json report;
    report["schema_version"] = kSchemaVersion;
    report["command"] = "verify";
    report["group"] = ctx->group.name;
    report["psi"] = ctx->psi.descriptor;
    report["cocycle_dim"] = ctx->cocycle.dim;
    report["tolerance"] = ctx->tolerance;
    report["seed"] = config.seed;

    std::cout << "group " << ctx->group.name << ", psi " << ctx->psi.descriptor
              << ", cocycle dim " << ctx->cocycle.dim << "\n";

    bool pass = true;

    DilationReport structure = verify_structure(ctx, 100, config.seed);
    report["structure"] = to_json(structure);
    print_suite_line(structure);
    pass = pass && structure.pass;

    DilationReport markov = verify_markov(ctx, grid_pairs_increasing(times), inputs);
    report["markov"] = to_json(markov);
    print_suite_line(markov);
    pass = pass && markov.pass;

    if (config.horizon) {
        DilationReport reversed =
            verify_reversed(ctx, grid_pairs_reversed(times, *config.horizon), inputs);
        report["reversed"] = to_json(reversed);
        print_suite_line(reversed);
        pass = pass && reversed.pass;
    }

    if (config.mc_samples > 0) {
        McSection mc = run_mc_section(ctx, config);
        report["monte_carlo"] = {{"paths", config.mc_samples},
                                 {"pass_fraction", mc.pass_fraction()},
                                 {"max_z", mc.max_z},
                                 {"checks", mc.json}};
        bool mc_ok = mc.pass_fraction() >= 0.95;
        report["monte_carlo"]["pass"] = mc_ok;
        std::cout << "monte_carlo: " << mc.total << " checks, max |z| " << mc.max_z
                  << ", pass fraction " << mc.pass_fraction() << (mc_ok ? " PASS" : " FAIL")
                  << "\n";
        if (!mc.first_flagged.empty())
            std::cout << "  first flagged check: " << mc.first_flagged << "\n";
        pass = pass && mc_ok;
    }

    report["pass"] = pass;
    write_report(config, report);
    std::cout << "overall: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

ExplainTrace explain_trace(const ContextPtr& ctx, int s, const Rational& u, const Rational& t) {
    if (s < 0 || s >= ctx->group.n) throw UsageError("explain: element index out of range");
    if (u < 0 || t < u) throw UsageError("explain: need 0 <= u <= t");
    GroupAlgebraElement a = ga_lambda(ctx->group, s);
    ExplainTrace trace;
    trace.pit = pi_t(t, a, ctx);
    trace.lhs = conditional_E_t(trace.pit, u);
    trace.rhs = pi_t(u, semigroup_T(to_double(t - u), a, *ctx), ctx);
    trace.residual = cp_distance(trace.lhs, trace.rhs);
    return trace;
}

std::string explain_text(const ContextPtr& ctx, int s, const Rational& u, const Rational& t) {
    ExplainTrace trace = explain_trace(ctx, s, u, t);
    std::ostringstream out;
    out << "group " << ctx->group.name << ", psi " << ctx->psi.descriptor << ", s=" << s
        << ", u=" << to_string(u) << ", t=" << to_string(t) << "\n";
    out << "psi(s) = " << ctx->psi.values[std::size_t(s)] << ", damping exp(-(t-u) psi(s)) = "
        << std::exp(-to_double(t - u) * ctx->psi.values[std::size_t(s)]) << "\n\n";
    out << "pi_t(lambda_s):\n" << to_string(trace.pit) << "\n\n";
    out << "E_u pi_t(lambda_s):\n" << to_string(trace.lhs) << "\n\n";
    out << "pi_u T_{t-u}(lambda_s):\n" << to_string(trace.rhs) << "\n\n";
    out << "componentwise L2 residual: " << trace.residual << "\n";
    return out.str();
}

int cmd_explain(const RunConfig& config) {
    if (!config.explain_s || !config.explain_u || !config.explain_t)
        throw UsageError("explain needs --s, --u and --t");
    ProblemInput input = load_input_file(config.input_path);
    ContextPtr ctx = build_context(config, input);
    int s = *config.explain_s;
    const Rational& u = *config.explain_u;
    const Rational& t = *config.explain_t;
    std::cout << explain_text(ctx, s, u, t);
    if (!config.output_path.empty()) {
        ExplainTrace trace = explain_trace(ctx, s, u, t);
        Json report;
        report["schema_version"] = kSchemaVersion;
        report["command"] = "explain";
        report["group"] = ctx->group.name;
        report["psi"] = ctx->psi.descriptor;
        report["s"] = s;
        report["u"] = to_string(u);
        report["t"] = to_string(t);
        report["pi_t"] = to_json(trace.pit);
        report["E_u_pi_t"] = to_json(trace.lhs);
        report["pi_u_T"] = to_json(trace.rhs);
        report["residual"] = trace.residual;
        write_report(config, report);
    }
    return 0;
}

int run_command(const RunConfig& config) {
    try {
        if (config.command == "check-cnd") return cmd_check_cnd(config);
        if (config.command == "verify") return cmd_verify(config);
        if (config.command == "explain") return cmd_explain(config);
        throw UsageError("unknown command '" + config.command + "'");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ConstructionError& e) {
        std::cerr << "construction error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace fmdil
