#pragma once

// Counting index-set configurations whose word product is +-I, and the
// overlap law of two uniform q-subsets.
//
//   B_m  = {(R_1..R_m) in I_n^m : Psi_{R_1}...Psi_{R_m} = +-I, R_i distinct}
//   B_m* = same without the distinctness requirement

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sykclt/rng.hpp"

namespace sykclt {

using BigCount = boost::multiprecision::cpp_int;

BigCount big_binomial(int n, int k);

/// |B_3*| = C(n,q) C(q,q/2) C(n-q,q/2) for even q, 0 otherwise.
BigCount count_B3_exact(int n, int q);

/// |B_4*| = sum_k C(n,2k) C(2k,k)^2 C(n-2k,q-k)^2, k = 0..min(q, n-q).
BigCount count_B4_exact(int n, int q);

inline constexpr std::uint64_t kBruteForceGuard = 10'000'000;

/// Exhaustive count over I_n^m by folding word products. Throws ResourceError
/// when |I_n|^m exceeds the guard.
std::uint64_t count_Bm_bruteforce(int n, int q, int m, bool distinct, std::uint64_t guard = kBruteForceGuard);

/// True when |I_n|^m is within the brute-force guard.
bool bruteforce_feasible(int n, int q, int m, std::uint64_t guard = kBruteForceGuard);

/// |B_m| sqrt(n) / |I_n|^{m-1}, with |B_m| from brute force.
double bm_bound_ratio(int n, int q, int m, std::uint64_t guard = kBruteForceGuard);

struct OverlapHistogram {
    int n = 0;
    int q = 0;
    std::uint64_t trials = 0;
    std::vector<std::uint64_t> counts;  // counts[j] = #{trials with |R cap R'| = j}

    std::vector<double> pmf() const;
};

/// Draws `trials` independent pairs of uniform q-subsets of {1..n} (n may
/// exceed 64) and histograms their overlap. Requires q <= n/2.
OverlapHistogram intersection_histogram(int n, int q, std::uint64_t trials, Rng& rng);

/// Exact law of |R cap R'|: P(j) = C(q,j) C(n-q,q-j) / C(n,q), j = 0..q.
std::vector<double> hypergeometric_overlap_pmf(int n, int q);

/// Poisson(mean) pmf on 0..j_max.
std::vector<double> poisson_pmf(double mean, int j_max);

/// Total-variation distance between a pmf on 0..size-1 and Poisson(mean),
/// counting the Poisson mass beyond the support.
double tv_distance_to_poisson(const std::vector<double>& pmf, double mean);

/// (1/2) sum |p_j - r_j| over the common support (shorter vector padded by 0).
double tv_distance(const std::vector<double>& p, const std::vector<double>& r);

} // namespace sykclt
