#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "tdo/errors.hpp"

namespace tdo {

/// Monotone piecewise cubic Hermite interpolant (three-point slopes with
/// Hyman limiting). Value and first derivative are continuous;
/// the second and third derivatives are piecewise polynomial.
class MonotoneCubic {
public:
    MonotoneCubic() = default;

    MonotoneCubic(std::span<const double> x, std::span<const double> y)
        : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
        if (x_.size() != y_.size())
            throw FormatError("interpolation: abscissa/ordinate size mismatch");
        if (x_.size() < 2)
            throw FormatError("interpolation: need at least two knots");
        for (std::size_t i = 1; i < x_.size(); ++i)
            if (!(x_[i] > x_[i - 1]))
                throw FormatError("interpolation: abscissae must be strictly increasing");
        compute_slopes();
    }

    double front() const { return x_.front(); }
    double back() const { return x_.back(); }

    /// Value and derivatives 1..3 at `t`; `t` must lie inside [front, back].
    std::array<double, 4> eval(double t) const {
        if (!(t >= x_.front() && t <= x_.back()))
            throw DomainError("interpolation: t outside tabulated range");
        auto it = std::upper_bound(x_.begin(), x_.end(), t);
        std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
        if (i >= x_.size() - 1) i = x_.size() - 2;

        const double h = x_[i + 1] - x_[i];
        const double s = (t - x_[i]) / h;
        const double y0 = y_[i], y1 = y_[i + 1];
        const double d0 = d_[i] * h, d1 = d_[i + 1] * h;

        // p(s) = c0 + c1 s + c2 s^2 + c3 s^3
        const double c0 = y0;
        const double c1 = d0;
        const double c2 = 3.0 * (y1 - y0) - 2.0 * d0 - d1;
        const double c3 = 2.0 * (y0 - y1) + d0 + d1;

        const double v = c0 + s * (c1 + s * (c2 + s * c3));
        const double p1 = c1 + s * (2.0 * c2 + 3.0 * s * c3);
        const double p2 = 2.0 * c2 + 6.0 * s * c3;
        const double p3 = 6.0 * c3;
        return {v, p1 / h, p2 / (h * h), p3 / (h * h * h)};
    }

private:
    void compute_slopes() {
        const std::size_t n = x_.size();
        std::vector<double> h(n - 1), delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            delta[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        d_.assign(n, 0.0);
        if (n == 2) {
            d_[0] = d_[1] = delta[0];
            return;
        }
        // Three-point parabolic slopes, then the Hyman filter: on monotone stretches
        // |d| is capped at 3 min(|delta|) with the sign of the data, which keeps each
        // interval monotone; at a data extremum the cap still applies but the
        // slope is not forced to zero, so smooth extrema keep third-order accuracy.
        for (std::size_t k = 1; k + 1 < n; ++k) {
            const double d = (h[k] * delta[k - 1] + h[k - 1] * delta[k]) / (h[k - 1] + h[k]);
            const double cap = 3.0 * std::min(std::abs(delta[k - 1]), std::abs(delta[k]));
            d_[k] = std::copysign(std::min(std::abs(d), cap), d);
        }
        d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }

    // Non-centered three-point estimate, clipped to preserve shape.
    static double end_slope(double h0, double h1, double del0, double del1) {
        double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
        if (std::signbit(d) != std::signbit(del0)) {
            d = 0.0;
        } else if (std::signbit(del0) != std::signbit(del1) && std::abs(d) > 3.0 * std::abs(del0)) {
            d = 3.0 * del0;
        }
        return d;
    }

    std::vector<double> x_, y_, d_;
};

} // namespace tdo
