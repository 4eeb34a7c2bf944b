#pragma once

// Bessel functions of the first kind J_rho(x), rho >= 0 real, x > 0, with
// first and second derivatives. Ascending series below the switchover,
// Hankel asymptotic expansion above it; each branch differentiates its own
// expansion term by term, so the defining ODE is a genuine check.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tdo/errors.hpp"

namespace tdo::bessel {

inline constexpr double switchover = 12.0;

struct Value {
    double J = 0.0, dJ = 0.0, d2J = 0.0;
};

/// sum_k (-1)^k (x/2)^{2k+rho} / (k! Gamma(k+rho+1)) and derivatives.
inline Value ascending_series(double rho, double x) {
    const double half = 0.5 * x;
    double term = std::pow(half, rho) / std::tgamma(rho + 1.0);
    Value v;
    double biggest = 0.0;
    for (int k = 0; k < 500; ++k) {
        const double p = 2.0 * k + rho;
        v.J += term;
        v.dJ += term * p / x;
        v.d2J += term * p * (p - 1.0) / (x * x);
        biggest = std::max(biggest, std::abs(term));
        if (k > 2 && std::abs(term) < 1e-18 * biggest) break;
        term *= -(half * half) / ((k + 1.0) * (k + 1.0 + rho));
    }
    return v;
}

/// Hankel expansion J = sqrt(2/(pi x)) [P cos chi - Q sin chi], chi = x - (rho/2 + 1/4) pi.
inline Value asymptotic(double rho, double x) {
    const double mu = 4.0 * rho * rho;
    // P = sum_k (-1)^k a_{2k} x^{-2k}, Q = sum_k (-1)^k a_{2k+1} x^{-(2k+1)},
    // a_n = prod_{j=1..n} (mu - (2j-1)^2) / (n! 8^n).
    double P = 0.0, dP = 0.0, d2P = 0.0, Q = 0.0, dQ = 0.0, d2Q = 0.0;
    double a = 1.0; // a_n
    double prev = INFINITY;
    for (int n = 0; n < 200; ++n) {
        if (n > 0) a *= (mu - (2.0 * n - 1.0) * (2.0 * n - 1.0)) / (n * 8.0);
        const double term = a * std::pow(x, -n);
        const double mag = std::abs(term);
        if (n > 1 && (mag > prev || mag < 1e-18)) break;
        prev = mag;
        const double sign = ((n / 2) % 2 == 0) ? 1.0 : -1.0;
        const double t0 = sign * term;
        const double t1 = -n * t0 / x;
        const double t2 = n * (n + 1.0) * t0 / (x * x);
        if (n % 2 == 0) {
            P += t0;
            dP += t1;
            d2P += t2;
        } else {
            Q += t0;
            dQ += t1;
            d2Q += t2;
        }
    }
    const double chi = x - (0.5 * rho + 0.25) * std::numbers::pi;
    const double c = std::cos(chi), s = std::sin(chi);
    const double G = P * c - Q * s;
    const double dG = dP * c - P * s - dQ * s - Q * c;
    const double d2G = d2P * c - 2.0 * dP * s - P * c - d2Q * s - 2.0 * dQ * c + Q * s;
    const double A = std::sqrt(2.0 / (std::numbers::pi * x));
    const double dA = -A / (2.0 * x);
    const double d2A = 3.0 * A / (4.0 * x * x);
    return Value{A * G, dA * G + A * dG, d2A * G + 2.0 * dA * dG + A * d2G};
}

inline Value besselj(double rho, double x) {
    if (!(rho >= 0.0)) throw ParameterError("besselj: order must be non-negative");
    if (!(x > 0.0)) throw DomainError("besselj: argument must be positive");
    return x < switchover ? ascending_series(rho, x) : asymptotic(rho, x);
}

/// Z'' + Z'/x + (1 - rho^2/x^2) Z.
inline double bessel_ode_residual(double rho, double x, const Value& v) {
    return v.d2J + v.dJ / x + (1.0 - rho * rho / (x * x)) * v.J;
}

} // namespace tdo::bessel
