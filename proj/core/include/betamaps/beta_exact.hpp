#pragma once

// Exact moments and cumulants of power-sum traces of the tridiagonal
// beta-ensemble model, their large-N expansion, distance brackets, and the
// Bernoulli/Faulhaber toolkit. Everything is exact over rationals, in the
// variables N and u = 2/beta.

#include <array>
#include <functional>
#include <map>
#include <vector>

#include "betamaps/motzkin.hpp"
#include "betamaps/perm.hpp"
#include "betamaps/poly.hpp"

namespace betamaps {

struct Profile {
    std::vector<int> parts;  // (k_1, ..., k_l), all >= 1

    int l() const { return static_cast<int>(parts.size()); }
    int total() const;
    std::vector<int> sorted() const;
};

// (1,...,k1)(k1+1,...,k1+k2)... on [k]
Perm theta_of_profile(const Profile& p);

// B_r from the recurrence sum_{k=0}^{n} C(n+1,k) (-1)^k B_k = delta_{n,0}
// (note: B_1 = +1/2 with this convention)
Rational bernoulli(int r);

Rational binomial(int n, int k);

// sum_{h=1}^{N} h^u as a polynomial in N
BivariatePoly faulhaber_sum(int u_exp);

// (k-1)!! for even k, 0 for odd k
BigInt gaussian_moment(int k);

// univariate polynomial, coefficient vector indexed by power
using UniPoly = std::vector<Rational>;
UniPoly unipoly_mul(const UniPoly& a, const UniPoly& b);
UniPoly unipoly_add(const UniPoly& a, const UniPoly& b);
void unipoly_trim(UniPoly& p);
Rational unipoly_eval(const UniPoly& p, const Rational& x);

// E[(chi_alpha / sqrt(2))^{2n}] as a polynomial in x = alpha/2:
// product form prod_{i=1}^{n} (x + i - 1)
UniPoly chi_even_moment(int n);
// same value via sum over S_n of x^{#sigma} (Stirling counts)
UniPoly chi_even_moment_stirling(int n);

// iterate over the configuration set c(theta): gamma in Motz_{n,0}(theta),
// sigma compatible with gamma, <theta, sigma> transitive
void for_each_config(
    const Perm& theta,
    const std::function<void(const MotzkinBridge&, const Perm&)>& visit);

// kappa_l(k): joint cumulant of the power sums, exact in N and u
BivariatePoly cumulant_exact(const Profile& p, int threads = 1);

// m_l(k): joint moment, via the partition sum over cumulants
BivariatePoly moment_exact(const Profile& p, int threads = 1);

// <e_q>_{theta,p}: sum over (gamma, sigma) in c(theta) with |sigma| = p of
// e_q(gamma(pi); pi in Cyc(sigma_-))
BigInt bracket(const Perm& theta, int p, int q);

// coefficients c_v(u) of kappa_l(n) / (u^{l-1} N^{n/2-l+2}) in powers of 1/N;
// returned as (order v, polynomial in u), ascending in v
std::vector<std::pair<int, BivariatePoly>> cumulant_expansion(const Profile& p);

// contribution of each (p,q,r,s) group with p+q+r+s = n/2 to kappa_l(n)
std::map<std::array<int, 4>, BivariatePoly> cumulant_expansion_terms(const Profile& p);

// tables keyed by sorted profiles; both directions of the moment-cumulant
// partition identity. Throws if a required sub-profile is missing.
using PolyTable = std::map<std::vector<int>, BivariatePoly>;
PolyTable cumulants_from_moments(const PolyTable& moments);
PolyTable moments_from_cumulants(const PolyTable& cumulants);

// all set partitions of {0,...,n-1}, each partition a list of blocks
void for_each_set_partition(
    int n, const std::function<void(const std::vector<std::vector<int>>&)>& visit);

}  // namespace betamaps
