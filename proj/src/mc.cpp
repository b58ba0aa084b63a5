#include "fmdil/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fmdil/rng.hpp"
#include "fmdil/util.hpp"

namespace fmdil {

namespace {

constexpr std::int64_t kBlock = 4096;

// Per grid interval: the value of each term's exponent on that interval.
struct CompiledPoly {
    std::vector<Complex> coeffs;
    // pieces[j] has one row per grid interval, dim columns
    std::vector<Eigen::MatrixXd> pieces;
};

std::vector<double> interval_lengths(const PathSample& p) {
    std::vector<double> len;
    Rational prev(0);
    for (const auto& b : p.grid) {
        len.push_back(to_double(b - prev));
        prev = b;
    }
    return len;
}

CompiledPoly compile(const WeylPolynomial& x, const PathSample& p) {
    if (x.dim() != p.dim) throw std::invalid_argument("monte carlo: dimension mismatch");
    CompiledPoly cp;
    const std::size_t m = p.grid.size();
    for (const auto& term : x.terms()) {
        // every exponent breakpoint must appear in the grid
        for (const auto& b : term.exponent.breakpoints())
            if (std::find(p.grid.begin(), p.grid.end(), b) == p.grid.end())
                throw std::invalid_argument(
                    "monte carlo: sample grid does not refine an exponent");
        Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(Eigen::Index(m), p.dim);
        std::size_t piece = 0;
        const auto& breaks = term.exponent.breakpoints();
        for (std::size_t k = 0; k < m; ++k) {
            if (piece >= breaks.size()) break; // beyond support: zero
            rows.row(Eigen::Index(k)) = term.exponent.pieces()[piece].transpose();
            if (p.grid[k] == breaks[piece]) ++piece;
        }
        cp.coeffs.push_back(term.coeff);
        cp.pieces.push_back(std::move(rows));
    }
    return cp;
}

void fill_increments(const PathSample& p, const std::vector<double>& sqrt_len, std::int64_t path,
                     Eigen::MatrixXd& out) {
    SplitMix64 rng = substream(p.seed, std::uint64_t(path));
    for (Eigen::Index k = 0; k < out.rows(); ++k)
        for (Eigen::Index i = 0; i < out.cols(); ++i)
            out(k, i) = sqrt_len[std::size_t(k)] * rng.gaussian();
}

Complex eval_path(const CompiledPoly& cp, const Eigen::MatrixXd& increments) {
    Complex value(0.0, 0.0);
    for (std::size_t j = 0; j < cp.coeffs.size(); ++j) {
        double phase = cp.pieces[j].cwiseProduct(increments).sum();
        value += cp.coeffs[j] * Complex(std::cos(phase), std::sin(phase));
    }
    return value;
}

struct BlockStats {
    double sum_re = 0.0, sum_im = 0.0;
    double sumsq_re = 0.0, sumsq_im = 0.0;
};

BlockStats operator+(const BlockStats& a, const BlockStats& b) {
    return {a.sum_re + b.sum_re, a.sum_im + b.sum_im, a.sumsq_re + b.sumsq_re,
            a.sumsq_im + b.sumsq_im};
}

// Fixed pairwise tree over block partials: the total is the same for any
// worker count.
BlockStats tree_reduce(std::vector<BlockStats> blocks) {
    if (blocks.empty()) return {};
    std::size_t len = blocks.size();
    while (len > 1) {
        std::size_t half = len / 2;
        for (std::size_t i = 0; i < half; ++i) blocks[i] = blocks[2 * i] + blocks[2 * i + 1];
        if (len % 2) blocks[half] = blocks[len - 1];
        len = half + len % 2;
    }
    return blocks[0];
}

McEstimate estimate_mean(const CompiledPoly& cp, const PathSample& p) {
    std::vector<double> len = interval_lengths(p);
    std::vector<double> sqrt_len(len.size());
    std::transform(len.begin(), len.end(), sqrt_len.begin(),
                   [](double v) { return std::sqrt(v); });
    const std::int64_t blocks = (p.count + kBlock - 1) / kBlock;
    std::vector<BlockStats> partial(static_cast<std::size_t>(blocks));
    parallel_for(blocks, [&](std::int64_t blk) {
        Eigen::MatrixXd increments(Eigen::Index(p.grid.size()), p.dim);
        BlockStats stats;
        std::int64_t lo = blk * kBlock;
        std::int64_t hi = std::min(p.count, lo + kBlock);
        for (std::int64_t path = lo; path < hi; ++path) {
            fill_increments(p, sqrt_len, path, increments);
            Complex v = eval_path(cp, increments);
            stats.sum_re += v.real();
            stats.sum_im += v.imag();
            stats.sumsq_re += v.real() * v.real();
            stats.sumsq_im += v.imag() * v.imag();
        }
        partial[std::size_t(blk)] = stats;
    });
    BlockStats total = tree_reduce(std::move(partial));
    McEstimate est;
    est.paths = p.count;
    double n = double(p.count);
    est.estimate = Complex(total.sum_re / n, total.sum_im / n);
    auto stderr_of = [&](double sumsq, double mean) {
        if (p.count < 2) return 0.0;
        double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
        return std::sqrt(var / n);
    };
    est.stderr_re = stderr_of(total.sumsq_re, est.estimate.real());
    est.stderr_im = stderr_of(total.sumsq_im, est.estimate.imag());
    return est;
}

double z_score(double diff, double sigma) {
    if (sigma <= 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(diff) / sigma;
}

void finish(McEstimate& est, Complex symbolic) {
    est.symbolic = symbolic;
    est.z_re = z_score(est.estimate.real() - symbolic.real(), est.stderr_re);
    est.z_im = z_score(est.estimate.imag() - symbolic.imag(), est.stderr_im);
    est.flagged = std::max(est.z_re, est.z_im) > 5.0;
}

} // namespace

PathSample make_path_sample(const std::vector<const WeylPolynomial*>& polys, std::int64_t count,
                            std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("monte carlo: need at least one path");
    if (polys.empty()) throw std::invalid_argument("monte carlo: no polynomials");
    PathSample p;
    p.dim = polys.front()->dim();
    p.seed = seed;
    p.count = count;
    for (const WeylPolynomial* poly : polys) {
        if (poly->dim() != p.dim) throw std::invalid_argument("monte carlo: dimension mismatch");
        for (const auto& term : poly->terms())
            for (const auto& b : term.exponent.breakpoints()) p.grid.push_back(b);
    }
    std::sort(p.grid.begin(), p.grid.end());
    p.grid.erase(std::unique(p.grid.begin(), p.grid.end()), p.grid.end());
    return p;
}

std::vector<Eigen::VectorXd> path_increments(const PathSample& p, std::int64_t path) {
    std::vector<double> len = interval_lengths(p);
    std::vector<double> sqrt_len(len.size());
    std::transform(len.begin(), len.end(), sqrt_len.begin(),
                   [](double v) { return std::sqrt(v); });
    Eigen::MatrixXd increments(Eigen::Index(p.grid.size()), p.dim);
    fill_increments(p, sqrt_len, path, increments);
    std::vector<Eigen::VectorXd> out;
    for (Eigen::Index k = 0; k < increments.rows(); ++k)
        out.push_back(increments.row(k).transpose());
    return out;
}

std::vector<Complex> evaluate(const WeylPolynomial& x, const PathSample& p,
                              std::int64_t max_paths) {
    CompiledPoly cp = compile(x, p);
    std::vector<double> len = interval_lengths(p);
    std::vector<double> sqrt_len(len.size());
    std::transform(len.begin(), len.end(), sqrt_len.begin(),
                   [](double v) { return std::sqrt(v); });
    std::int64_t n = std::min(max_paths, p.count);
    std::vector<Complex> out(std::size_t(std::max<std::int64_t>(n, 0)));
    Eigen::MatrixXd increments(Eigen::Index(p.grid.size()), p.dim);
    for (std::int64_t path = 0; path < n; ++path) {
        fill_increments(p, sqrt_len, path, increments);
        out[std::size_t(path)] = eval_path(cp, increments);
    }
    return out;
}

McEstimate cross_validate_expectation(const WeylPolynomial& x, std::int64_t count,
                                      std::uint64_t seed) {
    if (count < 1000)
        throw std::invalid_argument("monte carlo: need at least 1000 paths for a z test");
    PathSample p = make_path_sample({&x}, count, seed);
    McEstimate est = estimate_mean(compile(x, p), p);
    finish(est, expectation(x));
    return est;
}

std::vector<McEstimate> cross_validate_conditional(const WeylPolynomial& x, const Rational& u,
                                                   const std::vector<StepVector>& probes,
                                                   std::int64_t count, std::uint64_t seed) {
    if (u < 0) throw std::invalid_argument("monte carlo: negative conditioning time");
    std::vector<McEstimate> out;
    WeylPolynomial eux = conditional_expectation(x, u);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (probes[i].support_end() > u)
            throw std::invalid_argument("monte carlo: probe support exceeds [0,u]");
        WeylPolynomial probe =
            WeylPolynomial::weyl(Complex(1.0, 0.0), probes[i]);
        WeylPolynomial lhs = weyl_mul(x, probe);
        PathSample p = make_path_sample({&lhs}, count, seed);
        McEstimate est = estimate_mean(compile(lhs, p), p);
        est.label = "probe_" + std::to_string(i);
        finish(est, expectation(weyl_mul(eux, probe)));
        out.push_back(std::move(est));
    }
    return out;
}

} // namespace fmdil
