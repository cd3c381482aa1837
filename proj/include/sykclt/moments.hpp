#pragma once

// Pair-partition combinatorics and the moment family
//   m_k^a = sum over pair partitions pi of {1..k} of exp(-2 a kappa(pi)),
// which runs from the Gaussian moments (k-1)!! at a = 0 to the Catalan
// numbers at a = infinity. Odd k gives 0.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sykclt/pair_partition.hpp"
#include "sykclt/spectrum.hpp"

namespace sykclt {

inline constexpr int kMaxPartitionOrder = 20;

/// The interaction parameter a in [0, infinity]. Infinity is a distinguished
/// state routed to closed forms rather than a floating-point sentinel.
class ScalingLimit {
public:
    /// Throws ArgumentError for negative or NaN a; +inf maps to infinity().
    static ScalingLimit finite(double a);
    static ScalingLimit infinity() { return ScalingLimit(0.0, true); }
    /// "inf" / "infinity" or a decimal literal.
    static ScalingLimit parse(const std::string& text);
    /// a = q^2 / n.
    static ScalingLimit from_model(int n, int q);

    bool is_infinite() const { return infinite_; }
    double value() const { return infinite_ ? std::numeric_limits<double>::infinity() : a_; }
    std::string to_string() const;

private:
    ScalingLimit(double a, bool inf) : a_(a), infinite_(inf) {}
    double a_;
    bool infinite_;
};

/// All (k-1)!! pair partitions of {1..k}; empty for odd k. Throws
/// ArgumentError above kMaxPartitionOrder.
std::vector<PairPartition> pair_partitions(int k);

int crossing_number(const PairPartition& p);

/// histogram[c] = number of pair partitions of {1..k} with c crossings.
std::vector<std::uint64_t> crossing_histogram(int k);

double double_factorial_odd(int k);  // (k-1)!! for even k
double catalan(int m);

double m_k_a(int k, ScalingLimit a);

/// <x f'/2, rho_inf> = sum_k a_k (k/2) m_k^a.
double limit_mean_functional(const Polynomial& f, ScalingLimit a);

/// <x f'/2, rho_inf>^2 (gamma - 1).
double limit_variance(const Polynomial& f, ScalingLimit a, double gamma);

/// (m_k^a k/2)(m_k'^a k'/2)(gamma - 1).
double covariance_limit(int k, int k_prime, ScalingLimit a, double gamma);

} // namespace sykclt
