#pragma once

// Independent numerical references for the test suite. Nothing here calls
// into the library's integrators or quadratures.

#include <array>
#include <cmath>
#include <functional>

namespace oracle {

/// Adaptive Simpson quadrature with Richardson correction.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-13,
                      int depth = 50) {
    struct Rec {
        const std::function<double(double)>& f;
        double go(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) const {
            const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            const double delta = left + right - whole;
            if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
            return go(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + go(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        }
    };
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return Rec{f}.go(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

/// Central differences of order h^2 (first) and h^2 (second).
inline double d1(const std::function<double(double)>& f, double t, double h = 1e-5) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}
inline double d2(const std::function<double(double)>& f, double t, double h = 1e-4) {
    return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

/// Classical RK4 with a fixed step on a 2-component system.
template <class Rhs>
std::array<double, 2> rk4(Rhs rhs, double t0, std::array<double, 2> y, double t1, double h) {
    const long n = static_cast<long>(std::ceil((t1 - t0) / h));
    const double step = (t1 - t0) / static_cast<double>(n);
    double t = t0;
    for (long i = 0; i < n; ++i) {
        auto k1 = rhs(t, y);
        auto k2 = rhs(t + step / 2, std::array<double, 2>{y[0] + step / 2 * k1[0], y[1] + step / 2 * k1[1]});
        auto k3 = rhs(t + step / 2, std::array<double, 2>{y[0] + step / 2 * k2[0], y[1] + step / 2 * k2[1]});
        auto k4 = rhs(t + step, std::array<double, 2>{y[0] + step * k3[0], y[1] + step * k3[1]});
        y[0] += step / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
        y[1] += step / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
        t = t0 + step * static_cast<double>(i + 1);
    }
    return y;
}

/// Shoots 2 a a'' - a'^2 - 4 w0^2 + a^2 (mu^2 + lambda^2/t^2) = 0 from t = eps
/// with a = a1 eps, a' = a1, and returns alpha at each requested time (ascending).
inline std::vector<double> shoot_alpha(double omega0, double lambda, double mu, const std::vector<double>& times,
                                       double eps = 1e-4, double h = 2e-6) {
    const double a1 = 2.0 * omega0 / std::sqrt(lambda * lambda - 1.0);
    auto rhs = [=](double t, const std::array<double, 2>& y) {
        const double a = y[0], ad = y[1];
        return std::array<double, 2>{ad, (ad * ad + 4.0 * omega0 * omega0 - a * a * (mu * mu + lambda * lambda / (t * t))) /
                                              (2.0 * a)};
    };
    std::vector<double> out;
    std::array<double, 2> y{a1 * eps, a1};
    double t = eps;
    for (double target : times) {
        y = rk4(rhs, t, y, target, h);
        t = target;
        out.push_back(y[0]);
    }
    return out;
}

} // namespace oracle
