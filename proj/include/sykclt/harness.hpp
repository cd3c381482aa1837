#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sykclt/hamiltonian.hpp"
#include "sykclt/spectrum.hpp"
#include "sykclt/stats.hpp"

namespace sykclt {

inline constexpr int kRecordedMoments = 8;

struct ExperimentConfig {
    int n = 16;
    int q = 4;
    CouplingDistribution dist = CouplingDistribution::gaussian();
    TestFunction f = Polynomial{{0.0, 0.0, 1.0}};
    std::string f_label = "x^2";
    std::uint64_t samples = 2000;
    std::uint64_t seed = 0;
    bool dump_eigenvalues = false;
    int parallel_width = 1;
    int dense_cap = kDefaultDenseCap;
};

/// Throws ArgumentError unless M >= 2, n even, 1 <= q <= n, width >= 1.
void validate(const ExperimentConfig& cfg);

struct SampleRow {
    std::uint64_t sample_id = 0;
    double value = 0.0;                          // L_n(f)
    std::array<double, kRecordedMoments + 1> moments{};  // L^{-1} Tr H^k, k = 0..8
    double mean_square_coupling = 0.0;           // |I_n|^{-1} sum J_R^2, not persisted
};

struct RunSummary {
    std::uint64_t samples = 0;
    double index_set_size = 0.0;  // |I_n|
    double mean = 0.0;
    double variance = 0.0;         // unbiased
    double scaled_variance = 0.0;  // |I_n| * variance
    double scaled_variance_se = 0.0;  // batch means, 0 when M < 2 * batches
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double jarque_bera = 0.0;
    double center = 0.0;  // known mean when available, else the sample mean
    std::optional<double> known_mean;
    std::optional<double> reference_variance;
    std::optional<NormalityResult> normality;
};

struct RunRecord {
    ExperimentConfig config;
    std::vector<SampleRow> rows;  // in sample_id order
    RunSummary summary;
    std::vector<std::vector<double>> eigenvalues;  // only with dump_eigenvalues
};

/// E L_n(f) when it is known exactly: polynomials of degree <= 2 have
/// E L_n(f) = a_0 + a_2 for any unit-variance coupling law.
std::optional<double> known_mean(const TestFunction& f);

/// Limiting variance <x f'/2, rho_inf>^2 (gamma - 1) at a = q^2/n, for
/// polynomial f; nullopt for tabulated f.
std::optional<double> reference_variance(const ExperimentConfig& cfg);

/// Computes the summary from per-sample values alone.
RunSummary summarize(const std::vector<SampleRow>& rows, int n, int q, std::optional<double> known,
                     std::optional<double> reference);

RunRecord run_ensemble(const ExperimentConfig& cfg);

/// sqrt|I_n| (L_n(f) - center) per sample.
std::vector<double> scaled_fluctuations(const RunRecord& rec);

/// |I_n| cov(moment_k, moment_k') with a batch-means standard error.
BatchEstimate empirical_covariance(const RunRecord& rec, int k, int k_prime);

/// Exact finite-n |I_n| cov(L^{-1} Tr H^k, L^{-1} Tr H^k') from the coupling
/// moments and word traces. The guard bounds the number of surviving
/// (partition, assignment) terms.
double exact_covariance_oracle(int n, int q, int k, int k_prime, const CouplingDistribution& dist,
                               std::uint64_t guard = kDefaultEnumerationGuard);

std::uint64_t covariance_enumeration_terms(int n, int q, int k, int k_prime);

struct VarianceAudit {
    int k = 0;
    double scaled_variance = 0.0;
    double scaled_variance_se = 0.0;
    double constant = 0.0;  // c_k = 2^k k! k^2
    double ratio = 0.0;
    double ratio_se = 0.0;
};

/// |I_n| var(L^{-1} Tr H^k) / c_k over the moments recorded in rec. The
/// ensemble must use Gaussian couplings. k = 1 is exactly 0 since Tr H = 0.
VarianceAudit variance_bound_audit(const RunRecord& rec, int k);
VarianceAudit variance_bound_audit(int n, int q, int k, std::uint64_t samples, std::uint64_t seed,
                                   int parallel_width = 1);

inline constexpr double kLipschitzAuditConstant = 8.0;

struct LipschitzAudit {
    double lipschitz = 0.0;
    double scaled_variance = 0.0;
    double scaled_variance_se = 0.0;
    double bound = 0.0;  // C * lipschitz^2
    bool pass = false;
    std::array<double, 3> thresholds{};        // t = m |I_n|^{-1/2} lipschitz, m = 1, 2, 3
    std::array<double, 3> tail_frequencies{};  // fraction with |L_n(f) - mean| >= t
};

/// Runs cfg (Gaussian couplings, tabulated f with a declared Lipschitz
/// constant) and checks |I_n| var <= 8 ||f'||^2.
LipschitzAudit lipschitz_concentration_audit(const ExperimentConfig& cfg);
LipschitzAudit lipschitz_concentration_audit(const RunRecord& rec);

// -- persistence ---------------------------------------------------------

/// "sample_id,value,moment_2,...,moment_8" rows at 17 significant digits.
void write_sample_rows(const RunRecord& rec, std::ostream& out);
std::vector<SampleRow> read_sample_rows(std::istream& in);

/// "sample_id,rank,lambda" rows; requires dump_eigenvalues.
void write_eigenvalue_dump(const RunRecord& rec, std::ostream& out);

} // namespace sykclt
