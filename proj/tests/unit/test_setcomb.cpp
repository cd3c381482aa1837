#include <gtest/gtest.h>

#include <cmath>

#include "sykclt/errors.hpp"
#include "sykclt/hamiltonian.hpp"
#include "sykclt/setcomb.hpp"

using namespace sykclt;

TEST(ExactCounts, SpecExamples) {
    EXPECT_EQ(count_B3_exact(4, 2), 24);
    EXPECT_EQ(count_B3_exact(5, 3), 0);
    EXPECT_EQ(count_B3_exact(5, 4), 0);
    EXPECT_EQ(count_B4_exact(4, 2), 168);
    for (int n = 2; n <= 12; n += 2) EXPECT_EQ(count_B4_exact(n, n), 1);
}

TEST(ExactCounts, B4SymmetryUnderComplement) {
    for (int n = 2; n <= 30; ++n) {
        for (int q = 1; q < n; ++q) EXPECT_EQ(count_B4_exact(n, q), count_B4_exact(n, n - q)) << n << "," << q;
    }
}

TEST(BruteForce, SpecExamples) {
    EXPECT_EQ(count_Bm_bruteforce(4, 2, 3, true), 24u);
    EXPECT_EQ(count_Bm_bruteforce(4, 2, 4, false), 168u);
    for (int n = 2; n <= 8; ++n) {
        for (int q = 1; q <= n; ++q) {
            EXPECT_EQ(count_Bm_bruteforce(n, q, 1, true), 0u);
            EXPECT_EQ(count_Bm_bruteforce(n, q, 2, true), 0u);
        }
    }
    EXPECT_THROW(count_Bm_bruteforce(20, 4, 3, false), ResourceError);
}

TEST(BruteForce, MatchesExactFormulasWhereFeasible) {
    for (int n = 1; n <= 14; ++n) {
        for (int q = 1; q <= n; ++q) {
            if (bruteforce_feasible(n, q, 3)) {
                EXPECT_EQ(BigCount(count_Bm_bruteforce(n, q, 3, true)), count_B3_exact(n, q)) << n << "," << q;
            }
            if (bruteforce_feasible(n, q, 4)) {
                EXPECT_EQ(BigCount(count_Bm_bruteforce(n, q, 4, false)), count_B4_exact(n, q)) << n << "," << q;
            }
        }
    }
}

TEST(BoundRatio, SmallCases) {
    EXPECT_EQ(bm_bound_ratio(6, 2, 2), 0.0);
    EXPECT_EQ(bm_bound_ratio(9, 3, 3), 0.0);
    // m = 3, q = 2: |B_3| = C(n,2) * 2 * (n-2), |I_n| = C(n,2)
    for (int n : {4, 6, 8, 10, 12}) {
        const double sets = n * (n - 1) / 2.0;
        const double expected = sets * 2.0 * (n - 2) * std::sqrt(static_cast<double>(n)) / (sets * sets);
        EXPECT_NEAR(bm_bound_ratio(n, 2, 3), expected, 1e-12);
    }
}

TEST(BoundRatio, NoGrowthAlongSweep) {
    double previous = std::numeric_limits<double>::infinity();
    for (int n : {4, 6, 8, 10, 12}) {
        const double r = bm_bound_ratio(n, 2, 3);
        EXPECT_LE(r, previous + 1e-12);
        previous = r;
    }
}

TEST(Overlap, HypergeometricZeroMass) {
    for (auto [n, q] : std::vector<std::pair<int, int>>{{4, 2}, {10, 3}, {40, 6}, {400, 20}}) {
        const auto pmf = hypergeometric_overlap_pmf(n, q);
        // P(0) = C(n-q, q) / C(n, q) as a product, independent of Boost
        double p0 = 1.0;
        for (int i = 0; i < q; ++i) p0 *= static_cast<double>(n - q - i) / (n - i);
        EXPECT_NEAR(pmf[0], p0, 1e-13) << n << "," << q;
        double total = 0.0;
        for (double p : pmf) total += p;
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(Overlap, PoissonApproximationAtFourHundred) {
    const auto pmf = hypergeometric_overlap_pmf(400, 20);
    EXPECT_LT(tv_distance_to_poisson(pmf, 1.0), 0.05);
}

TEST(Overlap, HalfSizeSupport) {
    Rng rng = substream(5, 0);
    const auto h = intersection_histogram(4, 2, 2000, rng);
    EXPECT_EQ(h.counts.size(), 3u);
    std::uint64_t total = 0;
    for (auto c : h.counts) total += c;
    EXPECT_EQ(total, 2000u);
    EXPECT_THROW(intersection_histogram(4, 3, 10, rng), ArgumentError);
}

TEST(Overlap, EmpiricalConvergesToHypergeometric) {
    for (auto [n, q] : std::vector<std::pair<int, int>>{{10, 3}, {50, 7}, {400, 20}}) {
        Rng rng = substream(6, static_cast<std::uint64_t>(n));
        const std::uint64_t trials = 100000;
        const auto h = intersection_histogram(n, q, trials, rng);
        const auto exact = hypergeometric_overlap_pmf(n, q);
        const double bins = static_cast<double>(exact.size());
        EXPECT_LT(tv_distance(h.pmf(), exact), 3.0 * std::sqrt(bins / static_cast<double>(trials)));
    }
}

TEST(Overlap, PoissonPmfAndTv) {
    const auto p = poisson_pmf(1.0, 3);
    EXPECT_NEAR(p[0], std::exp(-1.0), 1e-15);
    EXPECT_NEAR(p[3], std::exp(-1.0) / 6.0, 1e-15);
    EXPECT_EQ(tv_distance({0.5, 0.5}, {0.5, 0.5}), 0.0);
    EXPECT_DOUBLE_EQ(tv_distance({1.0}, {0.0, 1.0}), 1.0);
}
