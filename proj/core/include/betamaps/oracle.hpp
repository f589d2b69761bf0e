#pragma once

// Independent verifiers: direct symbolic expectation over the tridiagonal
// model, exhaustive enumeration of labelled maps and of flagged maps on the
// projective plane, exact Hermite power sums, and a Monte Carlo sampler.
// Deliberately shares no code with the Motzkin/configuration machinery.

#include <cstdint>
#include <functional>
#include <vector>

#include "betamaps/beta_exact.hpp"
#include "betamaps/bfg.hpp"
#include "betamaps/map_model.hpp"
#include "betamaps/perm.hpp"

namespace betamaps {

// joint moment u^{k/2} E[prod_i Tr T^{k_i}] as a polynomial in u = 2/beta,
// by brute-force summation over all index tuples in [N]^k, using the exact
// entry moment tables (a_i standard Gaussian, b_i = chi_{(N-i)beta}/sqrt(2)).
// Refuses when N or the profile total exceeds the caps unless unsafe_large.
UniPoly moment_by_direct_expectation(const Profile& p, int N,
                                     bool unsafe_large = false);

// all suitably labelled maps with face profile theta, optionally filtered;
// n <= 8 unless unsafe_large
std::vector<SuitablyLabelledMap> enumerate_suitably_labelled(
    const Perm& theta,
    const std::function<bool(const SuitablyLabelledMap&)>& pred = {},
    bool unsafe_large = false);

// all connected flagged maps on the flag set [n] u [n'] with rho mu = the
// fixed face permutation theta bar(theta), Euler characteristic 1,
// non-orientable; n <= 6 unless unsafe_large
std::vector<FlaggedMap> enumerate_flagged_rp2(const Perm& theta,
                                              bool unsafe_large = false);

// #M_{1/2}(theta): direct enumeration for n <= 6, otherwise through the
// counting identity (1 + n/2 - l) #M_{1/2} = 2^{l-1} #S_2(theta)
BigInt projective_count(const Perm& theta);

// monic Hermite polynomial He_N (He_1 = x, He_{N+1} = x He_N - N He_{N-1});
// coefficient vector indexed by power, exact integers
std::vector<BigInt> hermite_coeffs(int N);

// exact power sum p_n of the roots of He_N via Newton's identities
BigInt hermite_power_sums(int N, int n);

// the u^0 part of kappa_1(n), as a polynomial in N (coefficient vector
// indexed by power); equals hermite_power_sums(N, n) at every N
UniPoly beta_infinity_cumulant(int n);

BigInt catalan(int m);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long long samples = 0;
};

// sample mean and standard error of prod_i Tr T^{k_i} over the tridiagonal
// model; deterministic given seed for any thread count (fixed-size chunks
// with per-chunk seeded streams)
McEstimate mc_sample(const Profile& p, int N, double beta, long long n_samples,
                     std::uint64_t seed, int threads = 1);

}  // namespace betamaps
