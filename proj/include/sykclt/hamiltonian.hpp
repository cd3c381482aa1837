#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sykclt/clifford.hpp"
#include "sykclt/rng.hpp"

namespace sykclt {

/// Law of a single coupling J_R. Every kind has mean 0 and variance 1.
class CouplingDistribution {
public:
    enum class Kind { Gaussian, Rademacher, UniformScaled, Custom };

    static CouplingDistribution gaussian();
    static CouplingDistribution rademacher();
    /// Uniform on [-sqrt 3, sqrt 3].
    static CouplingDistribution uniform_scaled();
    /// Finite discrete law; throws ArgumentError unless the weights are a
    /// probability vector and the law has mean 0 and variance 1 (to 1e-12).
    static CouplingDistribution custom(std::vector<double> atoms, std::vector<double> weights);
    static CouplingDistribution from_name(const std::string& name);

    Kind kind() const { return kind_; }
    std::string name() const;
    /// E J^4.
    double gamma() const { return moment(4); }
    /// E J^j, exact.
    double moment(int j) const;
    bool symmetric() const;
    double draw(Rng& rng) const;

    const std::vector<double>& atoms() const { return atoms_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    explicit CouplingDistribution(Kind kind) : kind_(kind) {}
    Kind kind_;
    std::vector<double> atoms_;
    std::vector<double> weights_;
};

/// n choose k; throws ResourceError if it does not fit in 64 bits.
std::uint64_t binomial(int n, int k);

/// I_n in lexicographic order of the sorted index lists.
std::vector<IndexSet> enumerate_index_set(int n, int q);

struct CouplingSample {
    int n = 0;
    int q = 0;
    std::vector<double> values;  // J_R in the order of enumerate_index_set(n, q)
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> sample_id;
};

CouplingSample sample_couplings(const CouplingDistribution& dist, int n, int q, Rng& rng);

/// (n choose q)^{-1} sum_R J_R^2, which equals L^{-1} Tr H^2 exactly.
double mean_square_coupling(const CouplingSample& sample);

/// CSV audit dump: "index,set,J" rows, J at 17 significant digits.
void write_coupling_csv(const CouplingSample& sample, std::ostream& out);
CouplingSample read_coupling_csv(std::istream& in, int n, int q);

struct HamiltonianMatrix {
    DenseOperator entries;
    int n = 0;
    int q = 0;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> sample_id;
    std::string distribution;

    Eigen::Index dimension() const { return entries.rows(); }
};

/// Caches I_n and the Jordan-Wigner forms of every Psi_R so repeated
/// assemblies for the same (n, q) only pay for the scatter.
class HamiltonianBuilder {
public:
    HamiltonianBuilder(int n, int q, int dense_cap = kDefaultDenseCap);

    int n() const { return n_; }
    int q() const { return q_; }
    const std::vector<IndexSet>& index_sets() const { return sets_; }

    /// H = i^{floor(q/2)} (n choose q)^{-1/2} sum_R J_R Psi_R. Throws
    /// ValidationError if the result is not Hermitian and traceless.
    HamiltonianMatrix assemble(const CouplingSample& sample) const;

private:
    int n_;
    int q_;
    std::vector<IndexSet> sets_;
    std::vector<PauliForm> forms_;
    std::complex<double> prefactor_;
};

HamiltonianMatrix assemble_dense(const CouplingSample& sample, int dense_cap = kDefaultDenseCap);

/// Max-norm Hermiticity defect relative to the max-norm of the matrix.
double hermiticity_defect(const DenseOperator& m);

inline constexpr std::uint64_t kDefaultEnumerationGuard = 10'000'000;

/// E[L^{-1} Tr H^k] computed exactly from the coupling moments and the word
/// algebra, with no sampling. The guard bounds the number of surviving
/// (partition, assignment) terms; exceeding it throws ResourceError.
double exact_moment_expectation(int n, int q, int k, const CouplingDistribution& dist,
                                std::uint64_t guard = kDefaultEnumerationGuard);

/// Number of terms exact_moment_expectation would visit.
std::uint64_t moment_enumeration_terms(int n, int q, int k);

} // namespace sykclt
