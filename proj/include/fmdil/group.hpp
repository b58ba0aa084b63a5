#pragma once

#include <map>
#include <string>
#include <vector>

#include "fmdil/rational.hpp"
#include "fmdil/rng.hpp"

namespace fmdil {

// Finite group as a dense multiplication table over element indices
// 0..n-1. Everything downstream works with indices only, so the higher
// modules stay group-agnostic.
struct FiniteGroup {
    int n = 0;
    int identity = 0;
    std::vector<int> mult; // row-major n*n, mult[a*n+b] = a*b
    std::vector<int> inv;  // inv[a]*a = a*inv[a] = identity
    std::string name;
    std::string kind; // cyclic | dihedral | hypercube | symmetric | table
    int param = 0;

    int mul(int a, int b) const { return mult[std::size_t(a) * std::size_t(n) + std::size_t(b)]; }
};

FiniteGroup make_cyclic(int n);
FiniteGroup make_dihedral(int n);  // order 2n
FiniteGroup make_hypercube(int k); // (Z_2)^k, order 2^k; mult = xor of indices
FiniteGroup make_symmetric(int k); // S_k in lex order, k <= 5

// Validates closure, identity, inverses and associativity by brute force;
// throws ConstructionError naming the first violated axiom.
FiniteGroup make_from_table(const std::vector<std::vector<int>>& table);

// Finitely supported coefficient map s -> c_s representing sum_s c_s lambda_s.
// Canonical form stores no zero coefficients.
struct GroupAlgebraElement {
    int order = 0; // order of the underlying group
    std::map<int, Complex> coeffs;
};

GroupAlgebraElement ga_zero(const FiniteGroup& g);
GroupAlgebraElement ga_lambda(const FiniteGroup& g, int s);
GroupAlgebraElement ga_make(const FiniteGroup& g, std::map<int, Complex> coeffs);

// Convolution product: lambda_s lambda_r = lambda_{sr}, extended bilinearly.
GroupAlgebraElement ga_mul(const FiniteGroup& g, const GroupAlgebraElement& a,
                           const GroupAlgebraElement& b);
// c_s lambda_s -> conj(c_s) lambda_{s^-1}
GroupAlgebraElement ga_adjoint(const FiniteGroup& g, const GroupAlgebraElement& a);
// Coefficient of lambda_e (the Plancherel trace on the group algebra).
Complex ga_trace(const FiniteGroup& g, const GroupAlgebraElement& a);

GroupAlgebraElement ga_add(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
GroupAlgebraElement ga_sub(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
GroupAlgebraElement ga_scale(const GroupAlgebraElement& a, Complex c);

// max |a_s - b_s| over the union of supports
double ga_sup_distance(const GroupAlgebraElement& a, const GroupAlgebraElement& b);

// Dense element with coefficients uniform in [-1,1]^2.
GroupAlgebraElement ga_random_dense(const FiniteGroup& g, SplitMix64& rng);

} // namespace fmdil
