#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace sykclt {

double sample_mean(std::span<const double> x);
/// Unbiased (M - 1) variance.
double sample_variance(std::span<const double> x);
/// Unbiased covariance.
double sample_covariance(std::span<const double> x, std::span<const double> y);
/// Mean squared deviation from a known center, divided by M.
double variance_about(std::span<const double> x, double center);
double sample_skewness(std::span<const double> x);
double sample_excess_kurtosis(std::span<const double> x);
double jarque_bera(std::span<const double> x);

inline constexpr int kDefaultBatches = 20;

struct BatchEstimate {
    double value = 0.0;           // statistic on the full sample
    double standard_error = 0.0;  // sd of batch statistics / sqrt(batches)
};

/// Batch-means standard error of an arbitrary statistic: the sample is cut
/// into `batches` contiguous batches (in sample order) and the statistic is
/// recomputed on each.
BatchEstimate batch_means(std::span<const double> x, const std::function<double(std::span<const double>)>& statistic,
                          int batches = kDefaultBatches);

/// Two-sample version for statistics of paired columns (covariances).
BatchEstimate batch_means(std::span<const double> x, std::span<const double> y,
                          const std::function<double(std::span<const double>, std::span<const double>)>& statistic,
                          int batches = kDefaultBatches);

double normal_cdf(double x, double variance);

/// sup_x |F_M(x) - F(x)| against a continuous reference CDF.
double ks_statistic(std::span<const double> x, const std::function<double(double)>& cdf);

/// Limiting Kolmogorov distribution P(sqrt(M) D <= t).
double kolmogorov_cdf(double t);

/// t with kolmogorov_cdf(t) = 1 - alpha.
double kolmogorov_critical_value(double alpha);

struct NormalityResult {
    double ks_statistic = 0.0;
    double critical_value = 0.0;  // on the D scale, already divided by sqrt(M)
    bool pass = false;
    std::string diagnostic;
};

/// One-sample KS test of x against N(0, reference_variance) at level alpha.
/// A zero reference variance only accepts data that are identically zero.
NormalityResult normality_test(std::span<const double> x, double reference_variance, double alpha = 0.01);

} // namespace sykclt
