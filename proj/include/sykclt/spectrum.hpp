#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sykclt/hamiltonian.hpp"

namespace sykclt {

struct SpectralSample {
    std::vector<double> eigenvalues;  // nondecreasing
    int n = 0;
    int q = 0;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> sample_id;
};

struct Polynomial {
    std::vector<double> coefficients;  // a_0, a_1, ..., a_m

    double operator()(double x) const;
    Polynomial derivative() const;
    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// Values on a uniform grid, linearly interpolated between nodes and held
/// constant beyond the outermost nodes.
class TabulatedFunction {
public:
    TabulatedFunction(double lo, double step, std::vector<double> values, std::optional<double> lipschitz = {},
                      std::string name = {});

    /// Samples fn at `nodes` equally spaced points of [lo, hi].
    static TabulatedFunction sample(const std::function<double(double)>& fn, double lo, double hi, std::size_t nodes,
                                    std::optional<double> lipschitz = {}, std::string name = {});

    double operator()(double x) const;

    double lo() const { return lo_; }
    double hi() const { return lo_ + step_ * static_cast<double>(values_.size() - 1); }
    double step() const { return step_; }
    const std::vector<double>& values() const { return values_; }
    double node(std::size_t i) const { return lo_ + step_ * static_cast<double>(i); }
    std::optional<double> lipschitz() const { return lipschitz_; }
    const std::string& name() const { return name_; }
    double sup_norm() const;
    /// Largest |slope| between adjacent nodes.
    double max_slope() const;

private:
    double lo_;
    double step_;
    std::vector<double> values_;
    std::optional<double> lipschitz_;
    std::string name_;
};

using TestFunction = std::variant<Polynomial, TabulatedFunction>;

double evaluate(const TestFunction& f, double x);

/// The shipped Lipschitz menu: "abs_clipped" (min(|x|, 2)), "identity_clipped"
/// (x clamped to [-3, 3]) and "sine". Each has Lipschitz constant 1.
TabulatedFunction named_test_function(const std::string& name);
std::vector<std::string> lipschitz_menu();

struct Eigensystem {
    std::vector<double> values;
    DenseOperator vectors;
};

/// Sorted real spectrum. Matrices that never couple basis states of opposite
/// popcount parity (even q) are diagonalized one parity sector at a time.
/// Throws ValidationError when the input is not Hermitian to 1e-10.
SpectralSample eigenvalues(const HamiltonianMatrix& h);
std::vector<double> hermitian_eigenvalues(const DenseOperator& m);
Eigensystem hermitian_eigensystem(const DenseOperator& m);

/// ||M - V diag(w) V*||_F / ||M||_F.
double reconstruction_residual(const DenseOperator& m, const Eigensystem& es);

/// L^{-1} sum_j f(lambda_j).
double linear_statistic(const SpectralSample& s, const TestFunction& f);

/// L^{-1} sum_j lambda_j^k.
double empirical_moment(const SpectralSample& s, int k);

/// Moments 0..k_max in one pass.
std::vector<double> empirical_moments(const SpectralSample& s, int k_max);

/// CSV rows "sample_id,rank,lambda".
void write_eigenvalue_rows(const SpectralSample& s, std::uint64_t sample_id, std::ostream& out);

} // namespace sykclt
