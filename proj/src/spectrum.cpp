#include "sykclt/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>

#include <lapacke.h>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "sykclt/errors.hpp"

namespace sykclt {

// -- test functions ------------------------------------------------------

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    Polynomial d;
    for (std::size_t k = 1; k < coefficients.size(); ++k) d.coefficients.push_back(static_cast<double>(k) * coefficients[k]);
    return d;
}

TabulatedFunction::TabulatedFunction(double lo, double step, std::vector<double> values, std::optional<double> lipschitz,
                                     std::string name)
    : lo_(lo), step_(step), values_(std::move(values)), lipschitz_(lipschitz), name_(std::move(name)) {
    if (values_.size() < 2) throw ArgumentError("a tabulated function needs at least two nodes");
    if (!(step_ > 0.0) || !std::isfinite(lo_)) throw ArgumentError("tabulated grid needs a finite origin and positive step");
    for (double v : values_) {
        if (!std::isfinite(v)) throw ArgumentError("tabulated values must be finite");
    }
    if (lipschitz_ && !(*lipschitz_ >= 0.0 && std::isfinite(*lipschitz_))) {
        throw ArgumentError("declared Lipschitz constant must be finite and non-negative");
    }
}

TabulatedFunction TabulatedFunction::sample(const std::function<double(double)>& fn, double lo, double hi,
                                            std::size_t nodes, std::optional<double> lipschitz, std::string name) {
    if (nodes < 2 || !(hi > lo)) throw ArgumentError("sampling a tabulated function needs hi > lo and >= 2 nodes");
    const double step = (hi - lo) / static_cast<double>(nodes - 1);
    std::vector<double> values(nodes);
    for (std::size_t i = 0; i < nodes; ++i) values[i] = fn(lo + step * static_cast<double>(i));
    return TabulatedFunction(lo, step, std::move(values), lipschitz, std::move(name));
}

double TabulatedFunction::operator()(double x) const {
    if (!(x > lo_)) return values_.front();
    if (x >= hi()) return values_.back();
    const double t = (x - lo_) / step_;
    auto i = static_cast<std::size_t>(t);
    i = std::min(i, values_.size() - 2);
    const double frac = t - static_cast<double>(i);
    return values_[i] + frac * (values_[i + 1] - values_[i]);
}

double TabulatedFunction::sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double TabulatedFunction::max_slope() const {
    double m = 0.0;
    for (std::size_t i = 1; i < values_.size(); ++i) m = std::max(m, std::abs(values_[i] - values_[i - 1]) / step_);
    return m;
}

double evaluate(const TestFunction& f, double x) {
    return std::visit([x](const auto& g) { return g(x); }, f);
}

std::vector<std::string> lipschitz_menu() { return {"abs_clipped", "identity_clipped", "sine"}; }

TabulatedFunction named_test_function(const std::string& name) {
    if (name == "abs_clipped") {
        return TabulatedFunction::sample([](double x) { return std::min(std::abs(x), 2.0); }, -4.0, 4.0, 801, 1.0, name);
    }
    if (name == "identity_clipped") {
        return TabulatedFunction::sample([](double x) { return std::clamp(x, -3.0, 3.0); }, -4.0, 4.0, 801, 1.0, name);
    }
    if (name == "sine") {
        const double half = 8.0 * std::numbers::pi;
        return TabulatedFunction::sample([](double x) { return std::sin(x); }, -half, half, 8001, 1.0, name);
    }
    throw ArgumentError("unknown tabulated test function '" + name + "'");
}

// -- diagonalization -----------------------------------------------------

namespace {

constexpr double kHermitianTolerance = 1e-10;

std::vector<double> zheevd_values(DenseOperator m) {
    const auto dim = static_cast<lapack_int>(m.rows());
    std::vector<double> w(static_cast<std::size_t>(dim));
    if (dim == 0) return w;
    const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', dim, reinterpret_cast<lapack_complex_double*>(m.data()), dim, w.data());
    if (info != 0) throw ValidationError(fmt::format("zheevd failed with info = {}", info));
    return w;
}

bool parity_block_diagonal(const DenseOperator& m) {
    if (m.rows() < 2 || !std::has_single_bit(static_cast<std::uint64_t>(m.rows()))) return false;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const int pc = std::popcount(static_cast<std::uint64_t>(c)) & 1;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if ((std::popcount(static_cast<std::uint64_t>(r)) & 1) != pc && m(r, c) != std::complex<double>(0.0, 0.0)) {
                return false;
            }
        }
    }
    return true;
}

void require_hermitian(const DenseOperator& m) {
    if (m.rows() != m.cols()) throw ValidationError("matrix is not square");
    const double defect = hermiticity_defect(m);
    if (defect > kHermitianTolerance) throw ValidationError(fmt::format("matrix is not Hermitian (defect {:.3e})", defect));
}

} // namespace

std::vector<double> hermitian_eigenvalues(const DenseOperator& m) {
    require_hermitian(m);
    std::vector<double> out;
    if (parity_block_diagonal(m)) {
        for (int parity = 0; parity < 2; ++parity) {
            std::vector<Eigen::Index> idx;
            for (Eigen::Index b = 0; b < m.rows(); ++b) {
                if ((std::popcount(static_cast<std::uint64_t>(b)) & 1) == parity) idx.push_back(b);
            }
            const auto d = static_cast<Eigen::Index>(idx.size());
            DenseOperator block(d, d);
            for (Eigen::Index c = 0; c < d; ++c) {
                for (Eigen::Index r = 0; r < d; ++r) block(r, c) = m(idx[r], idx[c]);
            }
            auto w = zheevd_values(std::move(block));
            out.insert(out.end(), w.begin(), w.end());
        }
        std::sort(out.begin(), out.end());
    } else {
        out = zheevd_values(m);
    }
    return out;
}

Eigensystem hermitian_eigensystem(const DenseOperator& m) {
    require_hermitian(m);
    Eigensystem es;
    es.vectors = m;
    const auto dim = static_cast<lapack_int>(m.rows());
    es.values.resize(static_cast<std::size_t>(dim));
    if (dim == 0) return es;
    const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', dim, reinterpret_cast<lapack_complex_double*>(es.vectors.data()), dim, es.values.data());
    if (info != 0) throw ValidationError(fmt::format("zheevd failed with info = {}", info));
    return es;
}

double reconstruction_residual(const DenseOperator& m, const Eigensystem& es) {
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(es.values.data(), static_cast<Eigen::Index>(es.values.size()));
    const DenseOperator rebuilt = es.vectors * w.cast<std::complex<double>>().asDiagonal() * es.vectors.adjoint();
    const double scale = m.norm();
    return scale == 0.0 ? (rebuilt - m).norm() : (rebuilt - m).norm() / scale;
}

SpectralSample eigenvalues(const HamiltonianMatrix& h) {
    SpectralSample s;
    s.eigenvalues = hermitian_eigenvalues(h.entries);
    s.n = h.n;
    s.q = h.q;
    s.seed = h.seed;
    s.sample_id = h.sample_id;
    return s;
}

// -- statistics of one spectrum ------------------------------------------

double linear_statistic(const SpectralSample& s, const TestFunction& f) {
    if (s.eigenvalues.empty()) return 0.0;
    double acc = 0.0;
    std::visit(
        [&](const auto& g) {
            for (double l : s.eigenvalues) acc += g(l);
        },
        f);
    return acc / static_cast<double>(s.eigenvalues.size());
}

double empirical_moment(const SpectralSample& s, int k) {
    if (k < 0) throw ArgumentError("moment order must be non-negative");
    return empirical_moments(s, k)[static_cast<std::size_t>(k)];
}

std::vector<double> empirical_moments(const SpectralSample& s, int k_max) {
    if (k_max < 0) throw ArgumentError("moment order must be non-negative");
    std::vector<double> sums(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (double l : s.eigenvalues) {
        double p = 1.0;
        for (int k = 0; k <= k_max; ++k) {
            sums[k] += p;
            p *= l;
        }
    }
    if (!s.eigenvalues.empty()) {
        for (auto& v : sums) v /= static_cast<double>(s.eigenvalues.size());
    } else {
        sums[0] = 1.0;
    }
    return sums;
}

void write_eigenvalue_rows(const SpectralSample& s, std::uint64_t sample_id, std::ostream& out) {
    for (std::size_t r = 0; r < s.eigenvalues.size(); ++r) fmt::print(out, "{},{},{:.17g}\n", sample_id, r, s.eigenvalues[r]);
}

} // namespace sykclt
