#include "fmdil/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fmdil/errors.hpp"

namespace fmdil {

namespace {

constexpr int kMaxOrder = 4096; // dense n*n table guard

void check_order(long long n, const std::string& what) {
    if (n < 1) throw UsageError(what + ": order must be positive");
    if (n > kMaxOrder) throw UsageError(what + ": group order too large for a dense table");
}

void fill_inverses(FiniteGroup& g) {
    g.inv.assign(std::size_t(g.n), -1);
    for (int a = 0; a < g.n; ++a) {
        for (int b = 0; b < g.n; ++b) {
            if (g.mul(a, b) == g.identity && g.mul(b, a) == g.identity) {
                g.inv[std::size_t(a)] = b;
                break;
            }
        }
        if (g.inv[std::size_t(a)] < 0)
            throw ConstructionError("element " + std::to_string(a) + " has no inverse");
    }
}

} // namespace

FiniteGroup make_cyclic(int n) {
    check_order(n, "cyclic");
    FiniteGroup g;
    g.n = n;
    g.identity = 0;
    g.kind = "cyclic";
    g.param = n;
    g.name = "Z_" + std::to_string(n);
    g.mult.resize(std::size_t(n) * std::size_t(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.mult[std::size_t(a) * n + b] = (a + b) % n;
    g.inv.resize(std::size_t(n));
    for (int a = 0; a < n; ++a) g.inv[std::size_t(a)] = (n - a) % n;
    return g;
}

FiniteGroup make_dihedral(int n) {
    if (n < 1) throw UsageError("dihedral: parameter must be positive");
    check_order(2LL * n, "dihedral");
    FiniteGroup g;
    g.n = 2 * n;
    g.identity = 0;
    g.kind = "dihedral";
    g.param = n;
    g.name = "D_" + std::to_string(n);
    g.mult.resize(std::size_t(g.n) * std::size_t(g.n));
    // 0..n-1 are rotations rho_a : x -> x+a; n..2n-1 reflections sigma_a : x -> a-x.
    auto idx = [n](bool refl, int a) { return (refl ? n : 0) + ((a % n) + n) % n; };
    for (int x = 0; x < g.n; ++x) {
        bool xr = x >= n;
        int a = xr ? x - n : x;
        for (int y = 0; y < g.n; ++y) {
            bool yr = y >= n;
            int b = yr ? y - n : y;
            int prod;
            if (!xr && !yr) prod = idx(false, a + b);      // rho_a rho_b
            else if (!xr && yr) prod = idx(true, a + b);   // rho_a sigma_b
            else if (xr && !yr) prod = idx(true, a - b);   // sigma_a rho_b
            else prod = idx(false, a - b);                 // sigma_a sigma_b
            g.mult[std::size_t(x) * g.n + y] = prod;
        }
    }
    fill_inverses(g);
    return g;
}

FiniteGroup make_hypercube(int k) {
    if (k < 1) throw UsageError("hypercube: parameter must be positive");
    if (k > 12) throw UsageError("hypercube: parameter too large");
    int n = 1 << k;
    check_order(n, "hypercube");
    FiniteGroup g;
    g.n = n;
    g.identity = 0;
    g.kind = "hypercube";
    g.param = k;
    g.name = "Z_2^" + std::to_string(k);
    g.mult.resize(std::size_t(n) * std::size_t(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.mult[std::size_t(a) * n + b] = a ^ b;
    g.inv.resize(std::size_t(n));
    for (int a = 0; a < n; ++a) g.inv[std::size_t(a)] = a;
    return g;
}

FiniteGroup make_symmetric(int k) {
    if (k < 1) throw UsageError("symmetric: parameter must be positive");
    if (k > 5) throw UsageError("symmetric: parameter capped at 5");
    std::vector<int> base(static_cast<std::size_t>(k));
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<int>> perms;
    std::map<std::vector<int>, int> index;
    std::vector<int> p = base;
    do {
        index[p] = int(perms.size());
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    int n = int(perms.size());
    FiniteGroup g;
    g.n = n;
    g.identity = 0; // identity permutation is lexicographically first
    g.kind = "symmetric";
    g.param = k;
    g.name = "S_" + std::to_string(k);
    g.mult.resize(std::size_t(n) * std::size_t(n));
    std::vector<int> comp(static_cast<std::size_t>(k));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            // (p_a o p_b)(x) = p_a[p_b[x]]
            for (int x = 0; x < k; ++x) comp[std::size_t(x)] = perms[std::size_t(a)][std::size_t(perms[std::size_t(b)][std::size_t(x)])];
            g.mult[std::size_t(a) * n + b] = index.at(comp);
        }
    }
    fill_inverses(g);
    return g;
}

FiniteGroup make_from_table(const std::vector<std::vector<int>>& table) {
    long long n = (long long)table.size();
    check_order(n, "table");
    FiniteGroup g;
    g.n = int(n);
    g.kind = "table";
    g.param = g.n;
    g.name = "table(n=" + std::to_string(g.n) + ")";
    g.mult.resize(std::size_t(n) * std::size_t(n));
    for (int a = 0; a < g.n; ++a) {
        if ((long long)table[std::size_t(a)].size() != n)
            throw ConstructionError("closure: row " + std::to_string(a) + " has wrong length");
        for (int b = 0; b < g.n; ++b) {
            int v = table[std::size_t(a)][std::size_t(b)];
            if (v < 0 || v >= g.n) {
                std::ostringstream msg;
                msg << "closure: entry (" << a << "," << b << ") = " << v << " out of range";
                throw ConstructionError(msg.str());
            }
            g.mult[std::size_t(a) * n + b] = v;
        }
    }
    g.identity = -1;
    for (int e = 0; e < g.n; ++e) {
        bool ok = true;
        for (int s = 0; s < g.n && ok; ++s) ok = g.mul(e, s) == s && g.mul(s, e) == s;
        if (ok) {
            g.identity = e;
            break;
        }
    }
    if (g.identity < 0) throw ConstructionError("identity: no two-sided identity element");
    fill_inverses(g);
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            for (int c = 0; c < g.n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
                    std::ostringstream msg;
                    msg << "associativity fails at (" << a << "," << b << "," << c << ")";
                    throw ConstructionError(msg.str());
                }
    return g;
}

namespace {

void drop_zeros(GroupAlgebraElement& a) {
    for (auto it = a.coeffs.begin(); it != a.coeffs.end();) {
        if (it->second == 0.0) it = a.coeffs.erase(it);
        else ++it;
    }
}

void check_same_order(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    if (a.order != b.order)
        throw std::invalid_argument("group algebra: operands live over different groups");
}

void check_group(const FiniteGroup& g, const GroupAlgebraElement& a) {
    if (a.order != g.n)
        throw std::invalid_argument("group algebra: element does not match the group");
}

} // namespace

GroupAlgebraElement ga_zero(const FiniteGroup& g) { return GroupAlgebraElement{g.n, {}}; }

GroupAlgebraElement ga_lambda(const FiniteGroup& g, int s) {
    if (s < 0 || s >= g.n) throw std::invalid_argument("ga_lambda: element index out of range");
    return GroupAlgebraElement{g.n, {{s, Complex(1.0, 0.0)}}};
}

GroupAlgebraElement ga_make(const FiniteGroup& g, std::map<int, Complex> coeffs) {
    for (const auto& [s, c] : coeffs)
        if (s < 0 || s >= g.n) throw std::invalid_argument("ga_make: element index out of range");
    GroupAlgebraElement a{g.n, std::move(coeffs)};
    drop_zeros(a);
    return a;
}

GroupAlgebraElement ga_mul(const FiniteGroup& g, const GroupAlgebraElement& a,
                           const GroupAlgebraElement& b) {
    check_group(g, a);
    check_same_order(a, b);
    GroupAlgebraElement out{g.n, {}};
    for (const auto& [s, cs] : a.coeffs)
        for (const auto& [r, cr] : b.coeffs) out.coeffs[g.mul(s, r)] += cs * cr;
    drop_zeros(out);
    return out;
}

GroupAlgebraElement ga_adjoint(const FiniteGroup& g, const GroupAlgebraElement& a) {
    check_group(g, a);
    GroupAlgebraElement out{g.n, {}};
    for (const auto& [s, c] : a.coeffs) out.coeffs[g.inv[std::size_t(s)]] = std::conj(c);
    return out;
}

Complex ga_trace(const FiniteGroup& g, const GroupAlgebraElement& a) {
    check_group(g, a);
    auto it = a.coeffs.find(g.identity);
    return it == a.coeffs.end() ? Complex(0.0, 0.0) : it->second;
}

GroupAlgebraElement ga_add(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    check_same_order(a, b);
    GroupAlgebraElement out = a;
    for (const auto& [s, c] : b.coeffs) out.coeffs[s] += c;
    drop_zeros(out);
    return out;
}

GroupAlgebraElement ga_sub(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    return ga_add(a, ga_scale(b, Complex(-1.0, 0.0)));
}

GroupAlgebraElement ga_scale(const GroupAlgebraElement& a, Complex c) {
    GroupAlgebraElement out{a.order, {}};
    for (const auto& [s, v] : a.coeffs) out.coeffs[s] = c * v;
    drop_zeros(out);
    return out;
}

double ga_sup_distance(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    check_same_order(a, b);
    double worst = 0.0;
    for (const auto& [s, c] : a.coeffs) {
        auto it = b.coeffs.find(s);
        Complex d = c - (it == b.coeffs.end() ? Complex(0.0) : it->second);
        worst = std::max(worst, std::abs(d));
    }
    for (const auto& [s, c] : b.coeffs)
        if (!a.coeffs.count(s)) worst = std::max(worst, std::abs(c));
    return worst;
}

GroupAlgebraElement ga_random_dense(const FiniteGroup& g, SplitMix64& rng) {
    GroupAlgebraElement out{g.n, {}};
    for (int s = 0; s < g.n; ++s)
        out.coeffs[s] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    drop_zeros(out);
    return out;
}

} // namespace fmdil
