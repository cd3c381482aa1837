#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "sykclt/errors.hpp"
#include "sykclt/harness.hpp"

using namespace sykclt;

namespace {

ExperimentConfig small_config(int n, int q, std::uint64_t samples, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.q = q;
    cfg.samples = samples;
    cfg.seed = seed;
    return cfg;
}

bool same_rows(const std::vector<SampleRow>& a, const std::vector<SampleRow>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].sample_id != b[i].sample_id || a[i].value != b[i].value || a[i].moments != b[i].moments) return false;
    }
    return true;
}

} // namespace

TEST(Validate, RejectsBadConfigs) {
    auto cfg = small_config(8, 2, 1, 0);
    EXPECT_THROW(validate(cfg), ArgumentError);
    cfg = small_config(7, 2, 10, 0);
    EXPECT_THROW(validate(cfg), ArgumentError);
    cfg = small_config(8, 9, 10, 0);
    EXPECT_THROW(validate(cfg), ArgumentError);
    cfg = small_config(8, 2, 10, 0);
    cfg.parallel_width = 0;
    EXPECT_THROW(validate(cfg), ArgumentError);
}

TEST(Ensemble, DeterministicAcrossWidths) {
    for (std::uint64_t samples : {2u, 37u}) {
        auto cfg = small_config(10, 4, samples, 99);
        const auto serial = run_ensemble(cfg);
        cfg.parallel_width = 8;
        const auto parallel = run_ensemble(cfg);
        EXPECT_TRUE(same_rows(serial.rows, parallel.rows));
        std::ostringstream a, b;
        write_sample_rows(serial, a);
        write_sample_rows(parallel, b);
        EXPECT_EQ(a.str(), b.str());
    }
}

TEST(Ensemble, RowsReplayIndividually) {
    // row j depends only on (seed, j)
    auto cfg = small_config(8, 3, 5, 7);
    const auto full = run_ensemble(cfg);
    cfg.samples = 3;
    const auto prefix = run_ensemble(cfg);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(full.rows[j].value, prefix.rows[j].value);
}

TEST(Ensemble, RademacherSquareHasNoFluctuation) {
    auto cfg = small_config(12, 4, 200, 3);
    cfg.dist = CouplingDistribution::rademacher();
    const auto rec = run_ensemble(cfg);
    for (const auto& r : rec.rows) EXPECT_NEAR(r.value, 1.0, 1e-12);
    EXPECT_LT(rec.summary.scaled_variance, 1e-20);
}

TEST(Ensemble, GaussianSquareScaledVariance) {
    // L_n(x^2) = |I|^{-1} sum J_R^2 exactly, so |I| var = var(J^2) = 2
    auto cfg = small_config(16, 4, 2000, 11);
    const auto rec = run_ensemble(cfg);
    ASSERT_TRUE(rec.summary.known_mean);
    EXPECT_EQ(*rec.summary.known_mean, 1.0);
    ASSERT_TRUE(rec.summary.reference_variance);
    EXPECT_EQ(*rec.summary.reference_variance, 2.0);
    EXPECT_GT(rec.summary.scaled_variance_se, 0.0);
    EXPECT_LT(std::abs(rec.summary.scaled_variance - 2.0), 3.0 * rec.summary.scaled_variance_se);
    for (const auto& r : rec.rows) EXPECT_NEAR(r.value, r.mean_square_coupling, 1e-10);
    ASSERT_TRUE(rec.summary.normality);
}

TEST(Ensemble, UniformScaledSquare) {
    // var(J^2) = 9/5 - 1 for J uniform on [-sqrt 3, sqrt 3]
    auto cfg = small_config(10, 2, 4000, 12);
    cfg.dist = CouplingDistribution::uniform_scaled();
    const auto rec = run_ensemble(cfg);
    EXPECT_LT(std::abs(rec.summary.scaled_variance - 0.8), 3.0 * rec.summary.scaled_variance_se);
}

TEST(Ensemble, ResourceErrorBeforeWork) {
    auto cfg = small_config(20, 4, 100000, 0);
    EXPECT_THROW(run_ensemble(cfg), ResourceError);
}

TEST(Summary, RecomputedFromCsv) {
    auto cfg = small_config(8, 4, 60, 5);
    const auto rec = run_ensemble(cfg);
    std::ostringstream out;
    write_sample_rows(rec, out);
    std::istringstream in(out.str());
    const auto rows = read_sample_rows(in);
    ASSERT_EQ(rows.size(), rec.rows.size());
    const auto again = summarize(rows, cfg.n, cfg.q, known_mean(cfg.f), reference_variance(cfg));
    EXPECT_NEAR(again.mean, rec.summary.mean, 1e-12);
    EXPECT_NEAR(again.scaled_variance, rec.summary.scaled_variance, 1e-12);
    EXPECT_NEAR(again.skewness, rec.summary.skewness, 1e-12);

    std::istringstream bad("sample_id,value,moment_2,moment_3,moment_4,moment_5,moment_6,moment_7,moment_8\n1,2,3\n");
    EXPECT_THROW(read_sample_rows(bad), SchemaError);
}

TEST(CovarianceOracle, SmallCases) {
    const auto g = CouplingDistribution::gaussian();
    EXPECT_NEAR(exact_covariance_oracle(8, 2, 2, 2, g), 2.0, 1e-12);
    EXPECT_NEAR(exact_covariance_oracle(8, 2, 2, 3, g), 0.0, 1e-12);
    EXPECT_NEAR(exact_covariance_oracle(8, 2, 1, 4, g), 0.0, 1e-12);
    EXPECT_THROW(exact_covariance_oracle(16, 4, 4, 4, g, 1000), ResourceError);
}

TEST(CovarianceOracle, MatchesMonteCarlo) {
    const double exact = exact_covariance_oracle(8, 2, 2, 4, CouplingDistribution::gaussian());
    auto cfg = small_config(8, 2, 10000, 21);
    const auto rec = run_ensemble(cfg);
    const auto est = empirical_covariance(rec, 2, 4);
    EXPECT_LT(std::abs(est.value - exact), 3.0 * est.standard_error) << exact << " vs " << est.value;
    const auto diag = empirical_covariance(rec, 2, 2);
    EXPECT_LT(std::abs(diag.value - 2.0), 3.0 * diag.standard_error);
}

TEST(VarianceAuditTest, OrdersOneAndTwo) {
    auto cfg = small_config(8, 2, 2000, 31);
    const auto rec = run_ensemble(cfg);
    const auto one = variance_bound_audit(rec, 1);
    EXPECT_EQ(one.ratio, 0.0);
    const auto two = variance_bound_audit(rec, 2);
    EXPECT_EQ(two.constant, 32.0);
    EXPECT_LT(std::abs(two.ratio - 1.0 / 16.0), 3.0 * two.ratio_se);
    cfg.dist = CouplingDistribution::rademacher();
    EXPECT_THROW(variance_bound_audit(run_ensemble(cfg), 2), ArgumentError);
}

TEST(LipschitzAuditTest, Requirements) {
    auto cfg = small_config(8, 2, 50, 41);
    EXPECT_THROW(lipschitz_concentration_audit(cfg), ArgumentError);
    cfg.f = TabulatedFunction::sample([](double) { return 0.5; }, -2.0, 2.0, 5, 1.0, "const");
    const auto audit = lipschitz_concentration_audit(cfg);
    EXPECT_EQ(audit.scaled_variance, 0.0);
    EXPECT_TRUE(audit.pass);
    EXPECT_EQ(audit.bound, kLipschitzAuditConstant);
}

TEST(LipschitzAuditTest, MenuFunctionAtSmallSize) {
    auto cfg = small_config(10, 4, 400, 42);
    cfg.f = named_test_function("abs_clipped");
    const auto audit = lipschitz_concentration_audit(cfg);
    EXPECT_TRUE(audit.pass);
    EXPECT_LE(audit.tail_frequencies[2], audit.tail_frequencies[0]);
}
