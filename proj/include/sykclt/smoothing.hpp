#pragma once

// Fejer kernel K_lambda(x) = (lambda / 2 pi) (sin(lambda x / 2) / (lambda x / 2))^2
// and the smoothing f_lambda = f * K_lambda used to pass from polynomial to
// Lipschitz test functions.

#include <functional>
#include <vector>

#include "sykclt/spectrum.hpp"

namespace sykclt {

class FejerKernel {
public:
    explicit FejerKernel(double lambda);
    double lambda() const { return lambda_; }

private:
    double lambda_;
};

inline constexpr int kMaxKernelDerivative = 6;

double fejer_eval(const FejerKernel& k, double x);

/// int_{-inf}^t K_lambda, in closed form through the sine integral.
double fejer_cdf(const FejerKernel& k, double t);

/// K_lambda^{(order)}(x) from the Fourier representation
/// (1/2pi) int_{-lambda}^{lambda} (1 - |xi|/lambda) (i xi)^order e^{i xi x} d xi,
/// evaluated by oscillatory adaptive quadrature. order in [0, 6].
double fejer_derivative(const FejerKernel& k, int order, double x);

/// lambda^{order+1} / (2 pi) * max(1, lambda |x| / 3)^{-2}.
double fejer_derivative_bound(const FejerKernel& k, int order, double x);

/// int_R K_lambda by panel-wise adaptive quadrature between the zeros of the
/// kernel plus the asymptotic tail expansion beyond the last panel.
double fejer_mass_by_quadrature(const FejerKernel& k, int panels = 2000);

/// |y| beyond which max(1, lambda |y| / 3)^{-2} < 1e-10.
double fejer_truncation_radius(const FejerKernel& k);

/// f_lambda(x). The table is constant beyond its hull, so the mass of K on
/// those two half-lines is taken from fejer_cdf; the part over the hull is
/// integrated cell by cell with adaptive quadrature.
double smoothed_value(const TabulatedFunction& f, double lambda, double x);

struct SmoothingGrid {
    double lo;
    double hi;
    std::size_t nodes;
};

/// Tabulates f_lambda on `grid`. Linear interpolation of f_lambda between
/// nodes is accurate to step^2 lambda^2 ||f|| / 4 (from |f_lambda''| <=
/// 2 lambda^2 ||f||); a grid for which that exceeds `tolerance` throws
/// ValidationError.
TabulatedFunction smooth(const TabulatedFunction& f, double lambda, const SmoothingGrid& grid, double tolerance = 1e-2);

/// max_j |f(x_j) - f_lambda(x_j)| over the nodes of `grid`.
double smoothing_sup_error(const TabulatedFunction& f, double lambda, const SmoothingGrid& grid);

/// (1/pi) int_R omega(2y / lambda) (sin y / y)^2 dy for a modulus of
/// continuity omega bounded by omega_sup; an upper bound for ||f - f_lambda||.
double modulus_smoothing_bound(const std::function<double(double)>& omega, double omega_sup, double lambda);

} // namespace sykclt
