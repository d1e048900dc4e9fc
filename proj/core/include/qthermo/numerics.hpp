#pragma once

#include "qthermo/errors.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace qthermo {

/// Adaptive Simpson quadrature with Richardson acceptance test.
/// Throws NumericalError when max_depth is exhausted before the local error
/// estimate drops below the (distributed) absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10, int max_depth = 40);

/// Bisection on a bracketing interval [a, b] with f(a) f(b) <= 0.
/// Returns the root localized to |b - a| <= xtol.
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double xtol = 1e-9);

/// Scan [a, b] on n+1 equispaced points and return all sign-change brackets.
std::vector<std::pair<double, double>> find_brackets(const std::function<double(double)>& f,
                                                     double a, double b, std::size_t n);

/// Golden-section maximizer for a unimodal f on [a, b]; returns (x, f(x)).
/// value_tol bounds the change of f between the final iterates.
std::pair<double, double> golden_max(const std::function<double(double)>& f, double a,
                                     double b, double value_tol = 1e-10);

/// Embedded Cash-Karp 4(5) integrator for small fixed-size systems.
///
/// Integrates dy/dt = deriv(t, y) from t_grid.front() to t_grid.back(),
/// landing exactly on every grid time; the state at each grid time is
/// appended to the output.  Step control: err <= abs_tol + rel_tol * |y|.
/// Throws NumericalError on step underflow.
template <std::size_t N>
std::vector<std::array<double, N>> rk45_integrate(
    const std::function<std::array<double, N>(double, const std::array<double, N>&)>& deriv,
    const std::array<double, N>& y0, const std::vector<double>& t_grid,
    double abs_tol = 1e-10, double rel_tol = 1e-9);

} // namespace qthermo
