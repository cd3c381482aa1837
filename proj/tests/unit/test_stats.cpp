#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sykclt/errors.hpp"
#include "sykclt/rng.hpp"
#include "sykclt/stats.hpp"

using namespace sykclt;

TEST(Moments, SmallSamples) {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    EXPECT_DOUBLE_EQ(sample_mean(x), 2.5);
    EXPECT_DOUBLE_EQ(sample_variance(x), 5.0 / 3.0);
    EXPECT_DOUBLE_EQ(variance_about(x, 0.0), 7.5);
    EXPECT_NEAR(sample_skewness(x), 0.0, 1e-15);
    const std::vector<double> y{2.0, 4.0, 6.0, 8.0};
    EXPECT_DOUBLE_EQ(sample_covariance(x, y), 10.0 / 3.0);
}

TEST(Moments, GaussianShape) {
    Rng rng = substream(3, 0);
    std::normal_distribution<double> g;
    std::vector<double> x(200000);
    for (auto& v : x) v = g(rng);
    EXPECT_NEAR(sample_skewness(x), 0.0, 0.03);
    EXPECT_NEAR(sample_excess_kurtosis(x), 0.0, 0.06);
    EXPECT_LT(jarque_bera(x), 20.0);
}

TEST(BatchMeans, MeanStandardError) {
    Rng rng = substream(4, 0);
    std::normal_distribution<double> g(0.0, 2.0);
    std::vector<double> x(20000);
    for (auto& v : x) v = g(rng);
    const auto est = batch_means(x, [](std::span<const double> s) { return sample_mean(s); });
    EXPECT_DOUBLE_EQ(est.value, sample_mean(x));
    // sd / sqrt(M) = 2 / sqrt(20000); 20 batches give a ~16% relative spread
    EXPECT_NEAR(est.standard_error, 2.0 / std::sqrt(20000.0), 0.5 * 2.0 / std::sqrt(20000.0));
}

TEST(BatchMeans, PairedAndTooSmall) {
    std::vector<double> x(100), y(100);
    for (int i = 0; i < 100; ++i) {
        x[i] = i;
        y[i] = 2.0 * i;
    }
    const auto est = batch_means(x, y, [](std::span<const double> a, std::span<const double> b) {
        return sample_covariance(a, b);
    });
    EXPECT_DOUBLE_EQ(est.value, sample_covariance(x, y));
    const std::vector<double> tiny{1.0, 2.0, 3.0};
    EXPECT_THROW(batch_means(tiny, [](std::span<const double> s) { return sample_mean(s); }), ArgumentError);
}

TEST(Kolmogorov, CriticalValue) {
    EXPECT_NEAR(kolmogorov_critical_value(0.01), 1.6276, 1e-4);
    EXPECT_NEAR(kolmogorov_critical_value(0.05), 1.3581, 1e-4);
    EXPECT_NEAR(kolmogorov_cdf(1.6276), 0.99, 1e-4);
    // both series branches agree near t = 1
    EXPECT_NEAR(kolmogorov_cdf(1.0 - 1e-9), kolmogorov_cdf(1.0 + 1e-9), 1e-8);
}

TEST(Kolmogorov, StatisticOnTinySample) {
    // uniform cdf on [0, 1]; points 0.5: D = 0.5
    const std::vector<double> x{0.5};
    EXPECT_DOUBLE_EQ(ks_statistic(x, [](double t) { return std::clamp(t, 0.0, 1.0); }), 0.5);
}

TEST(Normality, CalibrationAtOnePercent) {
    const std::size_t M = 5000;
    int passes = 0;
    for (int rep = 0; rep < 50; ++rep) {
        Rng rng = substream(77, static_cast<std::uint64_t>(rep));
        std::normal_distribution<double> g(0.0, std::sqrt(2.0));
        std::vector<double> x(M);
        for (auto& v : x) v = g(rng);
        const auto r = normality_test(x, 2.0);
        EXPECT_NEAR(r.critical_value, 1.6276 / std::sqrt(static_cast<double>(M)), 1e-5);
        if (r.pass) ++passes;
    }
    EXPECT_GE(passes, 49);
}

TEST(Normality, DetectsWrongVariance) {
    Rng rng = substream(78, 0);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> x(5000);
    for (auto& v : x) v = g(rng);
    EXPECT_FALSE(normality_test(x, 2.0).pass);
}

TEST(Normality, DegenerateReference) {
    const std::vector<double> zeros(100, 0.0);
    EXPECT_TRUE(normality_test(zeros, 0.0).pass);
    std::vector<double> almost = zeros;
    almost[3] = 1e-3;
    EXPECT_FALSE(normality_test(almost, 0.0).pass);
}
