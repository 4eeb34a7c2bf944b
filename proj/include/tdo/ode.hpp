#pragma once

// Dormand–Prince 5(4) embedded Runge–Kutta pair with PI step-size control.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <utility>

#include "tdo/errors.hpp"

namespace tdo::ode {

struct Tolerances {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_init = 0.0; // 0: pick automatically
    double h_min = 1e-14;
    double h_max = std::numeric_limits<double>::infinity();
    long max_steps = 10'000'000;
};

template <std::size_t N>
using State = std::array<double, N>;

namespace detail {

// Butcher tableau (Hairer, Norsett & Wanner, DOPRI5).
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
// Error weights: 5th-order minus embedded 4th-order.
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
    State<N> out = y;
    for (const auto& [coef, k] : terms)
        for (std::size_t i = 0; i < N; ++i) out[i] += h * coef * (*k)[i];
    return out;
}

} // namespace detail

/// Adaptive integrator for y' = f(t, y) over a fixed-size state.
///
/// `advance_to` integrates from the current point to `t_target` exactly
/// (the final step is clipped), so callers get outputs on their own grid
/// without interpolation. FSAL is used: the last stage of an accepted step
/// is the first stage of the next.
template <std::size_t N, class Rhs>
class DormandPrince45 {
public:
    DormandPrince45(Rhs rhs, double t0, const State<N>& y0, Tolerances tol = {})
        : f_(std::move(rhs)), t_(t0), y_(y0), tol_(tol) {
        k1_ = f_(t_, y_);
        h_ = tol_.h_init > 0.0 ? tol_.h_init : 0.0;
    }

    double t() const { return t_; }
    const State<N>& y() const { return y_; }
    const State<N>& dydt() const { return k1_; }
    long steps_accepted() const { return accepted_; }
    long steps_rejected() const { return rejected_; }

    /// Integrates to t_target (forward only). `accept` is called after every
    /// accepted step with (t, y) and may throw to abort.
    template <class OnAccept>
    void advance_to(double t_target, OnAccept&& accept) {
        if (t_target < t_) throw DomainError("ode: backward integration is not supported");
        if (h_ == 0.0) h_ = initial_step(t_target - t_);
        while (t_ < t_target) {
            if (accepted_ + rejected_ >= tol_.max_steps) throw StepSizeUnderflow("ode: step budget exhausted");
            const double remaining = t_target - t_;
            bool last = false;
            double h = std::min(h_, tol_.h_max);
            if (h >= remaining) {
                h = remaining;
                last = true;
            }
            State<N> y_new, k7;
            const double err = attempt(h, y_new, k7);
            if (err <= 1.0) {
                t_ = last ? t_target : t_ + h;
                y_ = y_new;
                k1_ = k7;
                ++accepted_;
                const double fac = controller(err);
                if (!last || h * fac > h_) h_ = std::min(h * fac, tol_.h_max);
                err_prev_ = std::max(err, 1e-4);
                accept(t_, y_);
            } else {
                ++rejected_;
                h_ = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
                if (h_ < tol_.h_min) throw StepSizeUnderflow("ode: step size underflow");
            }
        }
    }

    void advance_to(double t_target) {
        advance_to(t_target, [](double, const State<N>&) {});
    }

private:
    double attempt(double h, State<N>& y_new, State<N>& k7) {
        using namespace detail;
        const State<N> k2 = f_(t_ + c2 * h, axpy<N>(y_, h, {{a21, &k1_}}));
        const State<N> k3 = f_(t_ + c3 * h, axpy<N>(y_, h, {{a31, &k1_}, {a32, &k2}}));
        const State<N> k4 = f_(t_ + c4 * h, axpy<N>(y_, h, {{a41, &k1_}, {a42, &k2}, {a43, &k3}}));
        const State<N> k5 = f_(t_ + c5 * h, axpy<N>(y_, h, {{a51, &k1_}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State<N> k6 =
            f_(t_ + h, axpy<N>(y_, h, {{a61, &k1_}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        y_new = axpy<N>(y_, h, {{b1, &k1_}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        k7 = f_(t_ + h, y_new);

        double sum = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = tol_.atol + tol_.rtol * std::max(std::abs(y_[i]), std::abs(y_new[i]));
            sum += (e / sc) * (e / sc);
        }
        const double err = std::sqrt(sum / static_cast<double>(N));
        return std::isfinite(err) ? err : std::numeric_limits<double>::infinity();
    }

    // PI controller with the DOPRI5 exponents (alpha = 0.17, beta = 0.04).
    double controller(double err) const {
        constexpr double alpha = 0.2 - 0.04 * 0.75, beta = 0.04, safety = 0.9;
        if (err == 0.0) return 5.0;
        const double fac = safety * std::pow(err, -alpha) * std::pow(err_prev_, beta);
        return std::clamp(fac, 0.2, 5.0);
    }

    double initial_step(double span) const {
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = tol_.atol + tol_.rtol * std::abs(y_[i]);
            d0 += (y_[i] / sc) * (y_[i] / sc);
            d1 += (k1_[i] / sc) * (k1_[i] / sc);
        }
        d0 = std::sqrt(d0 / N);
        d1 = std::sqrt(d1 / N);
        double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h = std::min({h, span, tol_.h_max});
        return std::max(h, tol_.h_min);
    }

    Rhs f_;
    double t_;
    State<N> y_;
    State<N> k1_{};
    Tolerances tol_;
    double h_ = 0.0;
    double err_prev_ = 1e-4;
    long accepted_ = 0;
    long rejected_ = 0;
};

template <std::size_t N, class Rhs>
DormandPrince45<N, Rhs> make_stepper(Rhs rhs, double t0, const State<N>& y0, Tolerances tol = {}) {
    return DormandPrince45<N, Rhs>(std::move(rhs), t0, y0, tol);
}

} // namespace tdo::ode
