#include "sykclt/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include <fmt/format.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_expint.h>

#include "sykclt/errors.hpp"

namespace sykclt {

namespace {

constexpr double kPi = std::numbers::pi;

void disable_gsl_abort() {
    static const bool once = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)once;
}

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
struct QawoTableDeleter {
    void operator()(gsl_integration_qawo_table* t) const { gsl_integration_qawo_table_free(t); }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;
using QawoTable = std::unique_ptr<gsl_integration_qawo_table, QawoTableDeleter>;

Workspace make_workspace(std::size_t limit) {
    disable_gsl_abort();
    return Workspace(gsl_integration_workspace_alloc(limit));
}

template <typename F>
gsl_function as_gsl(F& fn) {
    gsl_function g;
    g.function = [](double x, void* p) { return (*static_cast<F*>(p))(x); };
    g.params = &fn;
    return g;
}

/// Adaptive Gauss-Kronrod on [a, b]; throws ValidationError if GSL reports a
/// failure that leaves the error estimate above tolerance.
template <typename F>
double integrate(F&& fn, double a, double b, double epsabs, double epsrel, std::size_t limit, int key,
                 gsl_integration_workspace* ws) {
    gsl_function g = as_gsl(fn);
    double result = 0.0, abserr = 0.0;
    const int status = gsl_integration_qag(&g, a, b, epsabs, epsrel, limit, key, ws, &result, &abserr);
    if (status != GSL_SUCCESS && abserr > std::max(epsabs, epsrel * std::abs(result)) * 1e3) {
        throw ValidationError(fmt::format("quadrature on [{}, {}] failed: {} (error estimate {:.3e})", a, b,
                                          gsl_strerror(status), abserr));
    }
    return result;
}

double sinc(double u) {
    if (std::abs(u) < 1e-4) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}

/// int_0^X (sin u / u)^2 du, odd in X.
double sinc_squared_integral(double x) {
    if (std::abs(x) < 1e-3) {
        const double x2 = x * x;
        return x * (1.0 - x2 / 9.0 + 2.0 * x2 * x2 / 225.0);
    }
    const double s = std::sin(x);
    return gsl_sf_Si(2.0 * x) - s * s / x;
}

} // namespace

FejerKernel::FejerKernel(double lambda) : lambda_(lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ArgumentError("Fejer bandwidth lambda must be positive");
}

double fejer_eval(const FejerKernel& k, double x) {
    const double s = sinc(0.5 * k.lambda() * x);
    return k.lambda() / (2.0 * kPi) * s * s;
}

double fejer_cdf(const FejerKernel& k, double t) {
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    return 0.5 + sinc_squared_integral(0.5 * k.lambda() * t) / kPi;
}

double fejer_derivative(const FejerKernel& k, int order, double x) {
    if (order < 0 || order > kMaxKernelDerivative) {
        throw ArgumentError(fmt::format("kernel derivative order must lie in [0, {}]", kMaxKernelDerivative));
    }
    const double lambda = k.lambda();
    // Fold xi -> -xi: even orders keep i^order cos, odd orders i^{order+1} sin.
    auto weight = [lambda, order](double xi) { return (1.0 - xi / lambda) * std::pow(xi, order); };
    const bool odd = order % 2 == 1;
    const double sign = odd ? (((order + 1) / 2) % 2 ? -1.0 : 1.0) : ((order / 2) % 2 ? -1.0 : 1.0);
    const double scale = std::pow(lambda, order + 1);
    const double epsabs = 1e-13 * scale;
    constexpr std::size_t limit = 1000;
    auto ws = make_workspace(limit);

    if (x == 0.0) {
        if (odd) return 0.0;
        return sign / kPi * integrate(weight, 0.0, lambda, epsabs, 1e-12, limit, GSL_INTEG_GAUSS61, ws.get());
    }

    const double omega = std::abs(x);
    QawoTable table(gsl_integration_qawo_table_alloc(omega, lambda, odd ? GSL_INTEG_SINE : GSL_INTEG_COSINE, 25));
    gsl_function g = as_gsl(weight);
    double result = 0.0, abserr = 0.0;
    const int status = gsl_integration_qawo(&g, 0.0, epsabs, 1e-12, limit, ws.get(), table.get(), &result, &abserr);
    if (status != GSL_SUCCESS && abserr > 1e3 * std::max(epsabs, 1e-12 * std::abs(result))) {
        throw ValidationError(fmt::format("oscillatory quadrature failed at x = {}: {}", x, gsl_strerror(status)));
    }
    if (odd && x < 0.0) result = -result;
    return sign / kPi * result;
}

double fejer_derivative_bound(const FejerKernel& k, int order, double x) {
    const double lambda = k.lambda();
    const double decay = std::max(1.0, lambda * std::abs(x) / 3.0);
    return std::pow(lambda, order + 1) / (2.0 * kPi) / (decay * decay);
}

double fejer_mass_by_quadrature(const FejerKernel& k, int panels) {
    if (panels < 1) throw ArgumentError("need at least one quadrature panel");
    // int_R K = (2/pi) int_0^inf (sin u / u)^2 du, substituting u = lambda x / 2.
    auto integrand = [](double u) {
        const double s = sinc(u);
        return s * s;
    };
    auto ws = make_workspace(200);
    double total = 0.0;
    for (int j = 0; j < panels; ++j) {
        total += integrate(integrand, j * kPi, (j + 1) * kPi, 1e-16, 1e-13, 200, GSL_INTEG_GAUSS31, ws.get());
    }
    // int_X^inf sin^2 u / u^2 du = 1/(2X) - 1/(4X^3) + O(X^-5) at X = N pi
    const double tail_start = panels * kPi;
    total += 1.0 / (2.0 * tail_start) - 1.0 / (4.0 * tail_start * tail_start * tail_start);
    (void)k;  // the mass does not depend on lambda after the substitution
    return 2.0 / kPi * total;
}

double fejer_truncation_radius(const FejerKernel& k) { return 3.0e5 / k.lambda(); }

double smoothed_value(const TabulatedFunction& f, double lambda, double x) {
    const FejerKernel kernel(lambda);
    const double a = f.lo();
    const double b = f.hi();
    double value = f.values().front() * (1.0 - fejer_cdf(kernel, x - a)) + f.values().back() * fejer_cdf(kernel, x - b);

    const double radius = fejer_truncation_radius(kernel);
    auto ws = make_workspace(100);
    const auto& v = f.values();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        // cell [z_i, z_{i+1}] corresponds to y in [x - z_{i+1}, x - z_i]
        const double z0 = f.node(i);
        const double y_lo = std::max(x - f.node(i + 1), -radius);
        const double y_hi = std::min(x - z0, radius);
        if (!(y_hi > y_lo)) continue;
        const double slope = (v[i + 1] - v[i]) / f.step();
        auto integrand = [&](double y) { return (v[i] + slope * (x - y - z0)) * fejer_eval(kernel, y); };
        value += integrate(integrand, y_lo, y_hi, 1e-15, 1e-11, 100, GSL_INTEG_GAUSS21, ws.get());
    }
    return value;
}

TabulatedFunction smooth(const TabulatedFunction& f, double lambda, const SmoothingGrid& grid, double tolerance) {
    if (grid.nodes < 2 || !(grid.hi > grid.lo)) throw ArgumentError("smoothing grid needs hi > lo and >= 2 nodes");
    const double step = (grid.hi - grid.lo) / static_cast<double>(grid.nodes - 1);
    const double interpolation_error = step * step * lambda * lambda * f.sup_norm() / 4.0;
    if (interpolation_error > tolerance) {
        throw ValidationError(fmt::format(
            "grid step {} too coarse for lambda = {}: interpolation error bound {:.3e} exceeds tolerance {:.3e}", step,
            lambda, interpolation_error, tolerance));
    }
    std::vector<double> values(grid.nodes);
    for (std::size_t i = 0; i < grid.nodes; ++i) values[i] = smoothed_value(f, lambda, grid.lo + step * static_cast<double>(i));
    std::optional<double> lipschitz = f.lipschitz();
    return TabulatedFunction(grid.lo, step, std::move(values), lipschitz, f.name().empty() ? "" : f.name() + "_smoothed");
}

double smoothing_sup_error(const TabulatedFunction& f, double lambda, const SmoothingGrid& grid) {
    if (grid.nodes < 2 || !(grid.hi > grid.lo)) throw ArgumentError("smoothing grid needs hi > lo and >= 2 nodes");
    const double step = (grid.hi - grid.lo) / static_cast<double>(grid.nodes - 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.nodes; ++i) {
        const double x = grid.lo + step * static_cast<double>(i);
        worst = std::max(worst, std::abs(f(x) - smoothed_value(f, lambda, x)));
    }
    return worst;
}

double modulus_smoothing_bound(const std::function<double(double)>& omega, double omega_sup, double lambda) {
    if (!(lambda > 0.0)) throw ArgumentError("lambda must be positive");
    auto integrand = [&](double y) {
        const double s = sinc(y);
        return omega(2.0 * y / lambda) * s * s;
    };
    constexpr int panels = 4000;
    auto ws = make_workspace(200);
    double total = 0.0;
    for (int j = 0; j < panels; ++j) {
        total += integrate(integrand, j * kPi, (j + 1) * kPi, 1e-15, 1e-10, 200, GSL_INTEG_GAUSS31, ws.get());
    }
    // omega <= omega_sup and (sin y / y)^2 <= 1 / y^2 beyond the last panel
    total += omega_sup / (panels * kPi);
    return 2.0 / kPi * total;
}

} // namespace sykclt
