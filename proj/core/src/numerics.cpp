#include "qthermo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qthermo {

namespace {

double simpson_panel(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                   double fb, double m, double fm, double whole, double tol, int depth,
                   int max_depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_panel(a, fa, m, fm, flm);
    const double right = simpson_panel(m, fm, b, fb, frm);
    const double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol)
        return left + right + err / 15.0;
    if (depth >= max_depth)
        throw NumericalError("adaptive_simpson: max depth exhausted");
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
    if (a == b)
        return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = simpson_panel(a, fa, b, fb, fm);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, abs_tol, 0, max_depth);
}

double bisect_root(const std::function<double(double)>& f, double a, double b, double xtol) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0)
        return a;
    if (fb == 0.0)
        return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw NumericalError("bisect_root: interval does not bracket a root");
    while (std::abs(b - a) > xtol) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0)
            return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

std::vector<std::pair<double, double>> find_brackets(const std::function<double(double)>& f,
                                                     double a, double b, std::size_t n) {
    std::vector<std::pair<double, double>> out;
    if (n == 0)
        return out;
    double prev_t = a;
    double prev_f = f(a);
    for (std::size_t i = 1; i <= n; ++i) {
        const double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
        const double ft = f(t);
        if (prev_f == 0.0) {
            out.emplace_back(prev_t, prev_t);
        } else if (ft != 0.0 && (prev_f > 0.0) != (ft > 0.0)) {
            out.emplace_back(prev_t, t);
        }
        prev_t = t;
        prev_f = ft;
    }
    if (prev_f == 0.0)
        out.emplace_back(prev_t, prev_t);
    return out;
}

std::pair<double, double> golden_max(const std::function<double(double)>& f, double a,
                                     double b, double value_tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
        if (std::abs(f1 - f2) <= value_tol && (b - a) <= std::sqrt(value_tol))
            break;
    }
    return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

namespace {

// Cash-Karp tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 3.0 / 5.0, c5 = 1.0, c6 = 7.0 / 8.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 3.0 / 10.0, a42 = -9.0 / 10.0, a43 = 6.0 / 5.0;
constexpr double a51 = -11.0 / 54.0, a52 = 5.0 / 2.0, a53 = -70.0 / 27.0, a54 = 35.0 / 27.0;
constexpr double a61 = 1631.0 / 55296.0, a62 = 175.0 / 512.0, a63 = 575.0 / 13824.0,
                 a64 = 44275.0 / 110592.0, a65 = 253.0 / 4096.0;
constexpr double b1 = 37.0 / 378.0, b3 = 250.0 / 621.0, b4 = 125.0 / 594.0,
                 b6 = 512.0 / 1771.0;
constexpr double d1 = 2825.0 / 27648.0, d3 = 18575.0 / 48384.0, d4 = 13525.0 / 55296.0,
                 d5 = 277.0 / 14336.0, d6 = 1.0 / 4.0;

} // namespace

template <std::size_t N>
std::vector<std::array<double, N>> rk45_integrate(
    const std::function<std::array<double, N>(double, const std::array<double, N>&)>& deriv,
    const std::array<double, N>& y0, const std::vector<double>& t_grid, double abs_tol,
    double rel_tol) {
    if (t_grid.size() < 2)
        throw ValidationError("rk45_integrate: need at least two grid times");
    std::vector<std::array<double, N>> out;
    out.reserve(t_grid.size());
    out.push_back(y0);

    std::array<double, N> y = y0;
    double t = t_grid.front();
    double h = (t_grid.back() - t_grid.front()) / 100.0;

    auto axpy = [](std::array<double, N> base, double s, const std::array<double, N>& v) {
        for (std::size_t i = 0; i < N; ++i)
            base[i] += s * v[i];
        return base;
    };

    for (std::size_t g = 1; g < t_grid.size(); ++g) {
        const double t_target = t_grid[g];
        while (true) {
            const double remaining = t_target - t;
            if (remaining <= 1e-14 * std::max(1.0, std::abs(t_target))) {
                t = t_target;
                break;
            }
            h = std::min(h, remaining);
            const auto k1 = deriv(t, y);
            const auto k2 = deriv(t + c2 * h, axpy(y, h * a21, k1));
            auto tmp = axpy(y, h * a31, k1);
            tmp = axpy(tmp, h * a32, k2);
            const auto k3 = deriv(t + c3 * h, tmp);
            tmp = axpy(y, h * a41, k1);
            tmp = axpy(tmp, h * a42, k2);
            tmp = axpy(tmp, h * a43, k3);
            const auto k4 = deriv(t + c4 * h, tmp);
            tmp = axpy(y, h * a51, k1);
            tmp = axpy(tmp, h * a52, k2);
            tmp = axpy(tmp, h * a53, k3);
            tmp = axpy(tmp, h * a54, k4);
            const auto k5 = deriv(t + c5 * h, tmp);
            tmp = axpy(y, h * a61, k1);
            tmp = axpy(tmp, h * a62, k2);
            tmp = axpy(tmp, h * a63, k3);
            tmp = axpy(tmp, h * a64, k4);
            tmp = axpy(tmp, h * a65, k5);
            const auto k6 = deriv(t + c6 * h, tmp);

            std::array<double, N> y5;
            double err_ratio = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b6 * k6[i]);
                const double y4 = y[i] + h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                                              d5 * k5[i] + d6 * k6[i]);
                const double sc = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
                err_ratio = std::max(err_ratio, std::abs(y5[i] - y4) / sc);
            }

            if (err_ratio <= 1.0) {
                t += h;
                y = y5;
                const double grow = err_ratio > 0.0
                                        ? 0.9 * std::pow(err_ratio, -0.2)
                                        : 5.0;
                h *= std::clamp(grow, 0.2, 5.0);
            } else {
                h *= std::max(0.2, 0.9 * std::pow(err_ratio, -0.25));
            }
            if (!(h > std::abs(t_target) * 1e-15 + 1e-300))
                throw NumericalError("rk45_integrate: step size underflow");
        }
        out.push_back(y);
    }
    return out;
}

template std::vector<std::array<double, 3>> rk45_integrate<3>(
    const std::function<std::array<double, 3>(double, const std::array<double, 3>&)>&,
    const std::array<double, 3>&, const std::vector<double>&, double, double);

} // namespace qthermo
