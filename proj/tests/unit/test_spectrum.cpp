#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "sykclt/errors.hpp"
#include "sykclt/hamiltonian.hpp"
#include "sykclt/spectrum.hpp"
#include "sykclt/stats.hpp"

using namespace sykclt;

namespace {

HamiltonianMatrix gaussian_hamiltonian(int n, int q, std::uint64_t seed) {
    Rng rng = substream(seed, 0);
    return assemble_dense(sample_couplings(CouplingDistribution::gaussian(), n, q, rng));
}

} // namespace

TEST(Eigenvalues, ZeroMatrix) {
    HamiltonianMatrix h;
    h.entries = DenseOperator::Zero(8, 8);
    const auto s = eigenvalues(h);
    for (double v : s.eigenvalues) EXPECT_EQ(v, 0.0);
}

TEST(Eigenvalues, SortedAndTraceless) {
    for (int q : {2, 3, 4}) {
        const auto h = gaussian_hamiltonian(10, q, 21 + q);
        const auto s = eigenvalues(h);
        ASSERT_EQ(s.eigenvalues.size(), 32u);
        EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
        double sum = 0.0;
        for (double v : s.eigenvalues) sum += v;
        EXPECT_LT(std::abs(sum), 1e-8 * 32);
    }
}

TEST(Eigenvalues, ParitySplitAgreesWithFullSolve) {
    // q = 4 splits into parity sectors; the eigensystem path never splits
    const auto h = gaussian_hamiltonian(10, 4, 31);
    const auto split = hermitian_eigenvalues(h.entries);
    const auto full = hermitian_eigensystem(h.entries).values;
    ASSERT_EQ(split.size(), full.size());
    for (std::size_t i = 0; i < split.size(); ++i) EXPECT_NEAR(split[i], full[i], 1e-12);
}

TEST(Eigenvalues, AgreesWithEigenSolver) {
    for (int q : {3, 4}) {
        const auto h = gaussian_hamiltonian(8, q, 41 + q);
        Eigen::SelfAdjointEigenSolver<DenseOperator> es(h.entries);
        const auto ours = hermitian_eigenvalues(h.entries);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) EXPECT_NEAR(ours[i], es.eigenvalues()[i], 1e-12);
    }
}

TEST(Eigenvalues, ReconstructionResidual) {
    const auto h = gaussian_hamiltonian(10, 4, 51);
    const auto es = hermitian_eigensystem(h.entries);
    EXPECT_LT(reconstruction_residual(h.entries, es), 1e-10);
}

TEST(Eigenvalues, NonHermitianRejected) {
    DenseOperator m = DenseOperator::Identity(4, 4);
    m(0, 1) = 1.0;
    EXPECT_THROW(hermitian_eigenvalues(m), ValidationError);
}

TEST(Eigenvalues, ReflectionUnderCouplingSignFlip) {
    Rng rng = substream(61, 0);
    auto s = sample_couplings(CouplingDistribution::gaussian(), 10, 3, rng);
    const auto plus = eigenvalues(assemble_dense(s)).eigenvalues;
    for (auto& v : s.values) v = -v;
    const auto minus = eigenvalues(assemble_dense(s)).eigenvalues;
    for (std::size_t i = 0; i < plus.size(); ++i) EXPECT_NEAR(plus[i], -minus[minus.size() - 1 - i], 1e-12);
}

TEST(LinearStatistic, ConstantAndIdentity) {
    const auto s = eigenvalues(gaussian_hamiltonian(8, 4, 71));
    EXPECT_NEAR(linear_statistic(s, Polynomial{{1.0}}), 1.0, 1e-15);
    SpectralSample zero;
    zero.eigenvalues.assign(16, 0.0);
    EXPECT_EQ(linear_statistic(zero, Polynomial{{0.0, 1.0}}), 0.0);
}

TEST(LinearStatistic, SquareEqualsMeanSquareCoupling) {
    for (int q : {2, 3, 4}) {
        Rng rng = substream(81, static_cast<std::uint64_t>(q));
        const auto c = sample_couplings(CouplingDistribution::uniform_scaled(), 12, q, rng);
        const auto s = eigenvalues(assemble_dense(c));
        EXPECT_NEAR(linear_statistic(s, Polynomial{{0.0, 0.0, 1.0}}), mean_square_coupling(c), 1e-10);
    }
}

TEST(LinearStatistic, PolynomialIsSumOfMoments) {
    const auto s = eigenvalues(gaussian_hamiltonian(10, 4, 91));
    const Polynomial p{{0.5, -1.0, 2.0, 0.25, -0.75}};
    double expected = 0.0;
    for (int k = 0; k <= 4; ++k) expected += p.coefficients[k] * empirical_moment(s, k);
    EXPECT_NEAR(linear_statistic(s, p), expected, 1e-10);
    const auto all = empirical_moments(s, 4);
    for (int k = 0; k <= 4; ++k) EXPECT_NEAR(all[k], empirical_moment(s, k), 1e-13);
}

TEST(EmpiricalMoment, OrdersZeroAndOne) {
    const auto s = eigenvalues(gaussian_hamiltonian(10, 4, 101));
    EXPECT_DOUBLE_EQ(empirical_moment(s, 0), 1.0);
    EXPECT_LT(std::abs(empirical_moment(s, 1)), 1e-8);
}

TEST(EmpiricalMoment, FourthMomentAtSixteenFour) {
    // exact finite-n expectation is within the enumeration guard at (16, 4)
    const int n = 16, q = 4, k = 4;
    const double exact = exact_moment_expectation(n, q, k, CouplingDistribution::gaussian());
    const HamiltonianBuilder builder(n, q);
    std::vector<double> values;
    for (std::uint64_t id = 0; id < 10000; ++id) {
        Rng rng = substream(111, id);
        const auto s = eigenvalues(builder.assemble(sample_couplings(CouplingDistribution::gaussian(), n, q, rng)));
        values.push_back(empirical_moment(s, k));
    }
    const double mean = sample_mean(values);
    const double se = std::sqrt(sample_variance(values) / static_cast<double>(values.size()));
    EXPECT_LT(std::abs(mean - exact), 3.0 * se) << "exact " << exact << " mc " << mean;
    const double limit = 2.0 + std::exp(-2.0);  // m_4^a at a = 1
    EXPECT_LT(std::abs(mean - limit) / limit, 0.10);
}

TEST(TestFunctions, TabulatedInterpolationAndClamp) {
    const auto f = TabulatedFunction::sample([](double x) { return x * x; }, -1.0, 1.0, 3, 2.0, "sq");
    EXPECT_DOUBLE_EQ(f(0.5), 0.5);
    EXPECT_DOUBLE_EQ(f(-3.0), 1.0);
    EXPECT_DOUBLE_EQ(f(3.0), 1.0);
    EXPECT_DOUBLE_EQ(f.max_slope(), 1.0);
    EXPECT_EQ(f.lipschitz(), 2.0);
}

TEST(TestFunctions, MenuHasUnitLipschitzConstants) {
    for (const auto& name : lipschitz_menu()) {
        const auto f = named_test_function(name);
        ASSERT_TRUE(f.lipschitz());
        EXPECT_EQ(*f.lipschitz(), 1.0);
        EXPECT_LE(f.max_slope(), 1.0 + 1e-12) << name;
    }
    EXPECT_NEAR(named_test_function("abs_clipped")(-0.7), 0.7, 1e-12);
    EXPECT_NEAR(named_test_function("abs_clipped")(3.0), 2.0, 1e-12);
    EXPECT_NEAR(named_test_function("identity_clipped")(-3.5), -3.0, 1e-12);
    EXPECT_THROW(named_test_function("nope"), ArgumentError);
}

TEST(EigenvalueRows, CsvFormat) {
    SpectralSample s;
    s.eigenvalues = {-0.5, 0.25};
    std::ostringstream out;
    write_eigenvalue_rows(s, 7, out);
    EXPECT_EQ(out.str(), "7,0,-0.5\n7,1,0.25\n");
}
