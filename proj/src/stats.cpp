#include "sykclt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "sykclt/errors.hpp"

namespace sykclt {

namespace {

void require_size(std::span<const double> x, std::size_t minimum) {
    if (x.size() < minimum) throw ArgumentError(fmt::format("need at least {} values, got {}", minimum, x.size()));
}

double central_moment(std::span<const double> x, double mean, int order) {
    double acc = 0.0;
    for (double v : x) acc += std::pow(v - mean, order);
    return acc / static_cast<double>(x.size());
}

} // namespace

double sample_mean(std::span<const double> x) {
    require_size(x, 1);
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) { return sample_covariance(x, x); }

double sample_covariance(std::span<const double> x, std::span<const double> y) {
    require_size(x, 2);
    if (x.size() != y.size()) throw ArgumentError("covariance needs equally long columns");
    const double mx = sample_mean(x);
    const double my = sample_mean(y);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += (x[i] - mx) * (y[i] - my);
    return acc / static_cast<double>(x.size() - 1);
}

double variance_about(std::span<const double> x, double center) {
    require_size(x, 1);
    double acc = 0.0;
    for (double v : x) acc += (v - center) * (v - center);
    return acc / static_cast<double>(x.size());
}

double sample_skewness(std::span<const double> x) {
    require_size(x, 2);
    const double m = sample_mean(x);
    const double m2 = central_moment(x, m, 2);
    if (m2 == 0.0) return 0.0;
    return central_moment(x, m, 3) / std::pow(m2, 1.5);
}

double sample_excess_kurtosis(std::span<const double> x) {
    require_size(x, 2);
    const double m = sample_mean(x);
    const double m2 = central_moment(x, m, 2);
    if (m2 == 0.0) return 0.0;
    return central_moment(x, m, 4) / (m2 * m2) - 3.0;
}

double jarque_bera(std::span<const double> x) {
    const double s = sample_skewness(x);
    const double k = sample_excess_kurtosis(x);
    return static_cast<double>(x.size()) / 6.0 * (s * s + k * k / 4.0);
}

BatchEstimate batch_means(std::span<const double> x, const std::function<double(std::span<const double>)>& statistic,
                          int batches) {
    return batch_means(
        x, x, [&](std::span<const double> a, std::span<const double>) { return statistic(a); }, batches);
}

BatchEstimate batch_means(std::span<const double> x, std::span<const double> y,
                          const std::function<double(std::span<const double>, std::span<const double>)>& statistic,
                          int batches) {
    if (batches < 2) throw ArgumentError("batch means need at least two batches");
    if (x.size() != y.size()) throw ArgumentError("batch means need equally long columns");
    const std::size_t size = x.size() / static_cast<std::size_t>(batches);
    if (size < 2) throw ArgumentError(fmt::format("{} values are too few for {} batches", x.size(), batches));
    BatchEstimate out;
    out.value = statistic(x, y);
    std::vector<double> per_batch;
    per_batch.reserve(static_cast<std::size_t>(batches));
    for (int b = 0; b < batches; ++b) {
        // the last batch absorbs the remainder
        const std::size_t begin = static_cast<std::size_t>(b) * size;
        const std::size_t len = b + 1 == batches ? x.size() - begin : size;
        per_batch.push_back(statistic(x.subspan(begin, len), y.subspan(begin, len)));
    }
    out.standard_error = std::sqrt(sample_variance(per_batch) / batches);
    return out;
}

double normal_cdf(double x, double variance) {
    if (!(variance > 0.0)) throw ArgumentError("normal CDF needs positive variance");
    return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

double ks_statistic(std::span<const double> x, const std::function<double(double)>& cdf) {
    require_size(x, 1);
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    const double m = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / m - f, f - static_cast<double>(i) / m});
    }
    return d;
}

double kolmogorov_cdf(double t) {
    if (t <= 0.0) return 0.0;
    if (t < 1.0) {
        // sqrt(2 pi)/t sum_k exp(-(2k-1)^2 pi^2 / (8 t^2)) converges fast here
        const double c = std::numbers::pi * std::numbers::pi / (8.0 * t * t);
        double acc = 0.0;
        for (int k = 1; k <= 20; ++k) acc += std::exp(-(2.0 * k - 1.0) * (2.0 * k - 1.0) * c);
        return std::sqrt(2.0 * std::numbers::pi) / t * acc;
    }
    double acc = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * t * t);
        acc += (k % 2 ? 1.0 : -1.0) * term;
        if (term < 1e-300) break;
    }
    return 1.0 - 2.0 * acc;
}

double kolmogorov_critical_value(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
    double lo = 0.1, hi = 5.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (kolmogorov_cdf(mid) < 1.0 - alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

NormalityResult normality_test(std::span<const double> x, double reference_variance, double alpha) {
    require_size(x, 1);
    NormalityResult r;
    r.critical_value = kolmogorov_critical_value(alpha) / std::sqrt(static_cast<double>(x.size()));
    if (reference_variance < 0.0) throw ArgumentError("reference variance must be non-negative");
    if (reference_variance == 0.0) {
        const bool all_zero = std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
        r.ks_statistic = all_zero ? 0.0 : 1.0;
        r.pass = all_zero;
        r.diagnostic = all_zero ? "degenerate reference and degenerate data"
                                : "reference variance is 0 but the data are not identically zero";
        return r;
    }
    r.ks_statistic = ks_statistic(x, [reference_variance](double v) { return normal_cdf(v, reference_variance); });
    r.pass = r.ks_statistic <= r.critical_value;
    r.diagnostic = fmt::format("D = {:.6f}, critical D = {:.6f} (alpha = {})", r.ks_statistic, r.critical_value, alpha);
    return r;
}

} // namespace sykclt
