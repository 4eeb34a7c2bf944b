#pragma once

// Odd power series for the mass profile of the Bessel-type oscillator,
//
//   alpha(t) = sum_k a_{2k+1} t^{2k+1},
//
// solving 2 alpha alpha'' - alpha'^2 - 4 omega0^2 + alpha^2 (mu_s^2 + lambda^2 / t^2) = 0,
// together with the reciprocal series t a_1 / alpha(t) = sum_k atilde_{2k} t^{2k}.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tdo/errors.hpp"

namespace tdo {

using rational = boost::multiprecision::cpp_rational;

namespace series_detail {

// Orders up to this bound are generated in exact rational arithmetic.
inline constexpr int exact_order_limit = 12;

template <class Real>
Real from_rational(const rational& r) {
    return r.template convert_to<Real>();
}

} // namespace series_detail

/// Normalized coefficients a_{2k+1}/a_1, k = 0..order, from the ratio
///   a_{2k+1}/a_{2k-1} = -mu_s^2 (2k-1) / (2k [(4k^2 - 1) + lambda^2]).
template <class T>
std::vector<T> ratio_recursion(const T& lambda2, const T& mu2, int order) {
    std::vector<T> r;
    r.reserve(static_cast<std::size_t>(order) + 1);
    r.push_back(T(1));
    for (int k = 1; k <= order; ++k) {
        const T num = -mu2 * T(2 * k - 1);
        const T den = T(2 * k) * (T(4 * k * k - 1) + lambda2);
        r.push_back(r.back() * num / den);
    }
    return r;
}

/// The same coefficients from the closed product
///   a_{2k+1}/a_1 = (-1)^k mu_s^{2k} prod_{j=3,5,..,2k+1} [2(k+1)-j] / ((2k+3-j) [j(j-2)+lambda^2]).
/// The product runs over odd j only; with that reading it reproduces the ratio form.
template <class T>
std::vector<T> product_form(const T& lambda2, const T& mu2, int order) {
    std::vector<T> r;
    r.reserve(static_cast<std::size_t>(order) + 1);
    r.push_back(T(1));
    for (int k = 1; k <= order; ++k) {
        T term = (k % 2 == 0) ? T(1) : T(-1);
        for (int i = 0; i < k; ++i) term *= mu2;
        for (int j = 3; j <= 2 * k + 1; j += 2) {
            term *= T(2 * (k + 1) - j);
            term /= T(2 * k + 3 - j) * (T(j * (j - 2)) + lambda2);
        }
        r.push_back(term);
    }
    return r;
}

/// Formal reciprocal of 1 + sum_{k>=1} r_k x^k, truncated to degree `n`.
template <class T>
std::vector<T> reciprocal_series(const std::vector<T>& r, int n) {
    std::vector<T> out(static_cast<std::size_t>(n) + 1, T(0));
    out[0] = T(1);
    for (int k = 1; k <= n; ++k) {
        T acc(0);
        for (int j = 1; j <= k; ++j)
            if (static_cast<std::size_t>(j) < r.size()) acc += r[j] * out[k - j];
        out[k] = -acc;
    }
    return out;
}

/// Reciprocal coefficient c_n of 1 + sum b_k x^k from the Toeplitz–Hessenberg
/// determinant c_n = (-1)^n det[b_{i-j+1}] (b_0 = 1 on the superdiagonal).
/// Independent of `reciprocal_series`; used as a cross-check.
template <class T>
T reciprocal_by_determinant(const std::vector<T>& b, int n) {
    if (n == 0) return T(1);
    auto coeff = [&](int idx) -> T {
        if (idx < 0) return T(0);
        if (idx == 0) return T(1);
        return static_cast<std::size_t>(idx) < b.size() ? b[idx] : T(0);
    };
    std::vector<std::vector<T>> m(n, std::vector<T>(n, T(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = coeff(i - j + 1);
    // Gaussian elimination with first-nonzero pivoting (exact for rationals).
    T det(1);
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && m[p][c] == T(0)) ++p;
        if (p == n) return T(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (m[i][c] == T(0)) continue;
            const T f = m[i][c] / m[c][c];
            for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return (n % 2 == 0) ? det : T(-det);
}

/// Truncated odd series for alpha(t) with its reciprocal. `Real` is the
/// scalar used for evaluation (double, long double, or a multiprecision float).
template <class Real = double>
struct basic_alpha_series {
    Real omega0{};
    Real lambda{};
    Real mu_s{};
    int order = 0;
    std::vector<Real> a;       // a_1, a_3, ..., a_{2N+1}
    std::vector<Real> a_tilde; // atilde_0, atilde_2, ..., atilde_{2N}
    bool exact = false;        // coefficients came from rational arithmetic

    /// alpha and its first three derivatives.
    std::array<Real, 4> jet(const Real& t) const {
        Real v(0), d1(0), d2(0), d3(0);
        const Real t2 = t * t;
        // Horner in t^2 for each derivative polynomial.
        for (std::size_t i = a.size(); i-- > 0;) {
            const Real p = Real(2 * static_cast<int>(i) + 1);
            v = v * t2 + a[i];
            d1 = d1 * t2 + a[i] * p;
            d2 = d2 * t2 + a[i] * p * (p - 1);
            d3 = d3 * t2 + a[i] * p * (p - 1) * (p - 2);
        }
        const Real alpha = t * v;
        const Real alpha_d1 = d1;
        const Real alpha_d2 = d2 / t;
        const Real alpha_d3 = d3 / t2;
        return {alpha, alpha_d1, alpha_d2, alpha_d3};
    }

    Real alpha(const Real& t) const { return jet(t)[0]; }

    /// sum_k atilde_{2k} t^{2k}, the truncated reciprocal of alpha/(a_1 t).
    Real reciprocal(const Real& t) const {
        Real v(0);
        const Real t2 = t * t;
        for (std::size_t i = a_tilde.size(); i-- > 0;) v = v * t2 + a_tilde[i];
        return v;
    }

    /// omega0 / alpha(t) evaluated through the reciprocal series.
    Real omega_from_reciprocal(const Real& t) const {
        return omega0 / (a.front() * t) * reciprocal(t);
    }

    /// Suggested upper time for trusting the truncation (2/mu_s).
    Real radius_guard() const {
        using std::abs;
        if (mu_s == Real(0)) return std::numeric_limits<Real>::infinity();
        return Real(2) / abs(mu_s);
    }
};

using AlphaSeries = basic_alpha_series<double>;

/// Builds the truncated series. Orders up to 12 are generated with exact
/// rationals (the inputs are taken as exact binary fractions); longer series
/// fall back to the recursion in `Real`.
template <class Real = double>
basic_alpha_series<Real> build_series(double omega0, double lambda, double mu_s, int order) {
    using std::sqrt;
    if (!(lambda * lambda > 1.0))
        throw ParameterError("series: lambda^2 must exceed 1 (got lambda=" + std::to_string(lambda) + ")");
    if (order < 1) throw ParameterError("series: order must be >= 1");
    if (!(omega0 > 0.0)) throw ParameterError("series: omega0 must be positive");

    basic_alpha_series<Real> s;
    s.omega0 = Real(omega0);
    s.lambda = Real(lambda);
    s.mu_s = Real(mu_s);
    s.order = order;

    const Real a1 = Real(2) * s.omega0 / sqrt(s.lambda * s.lambda - Real(1));
    if (order <= series_detail::exact_order_limit) {
        const rational l2 = rational(lambda) * rational(lambda);
        const rational m2 = rational(mu_s) * rational(mu_s);
        const auto r = ratio_recursion<rational>(l2, m2, order);
        const auto rt = reciprocal_series<rational>(r, order);
        for (const auto& x : r) s.a.push_back(a1 * series_detail::from_rational<Real>(x));
        for (const auto& x : rt) s.a_tilde.push_back(series_detail::from_rational<Real>(x));
        s.exact = true;
    } else {
        const auto r = ratio_recursion<Real>(s.lambda * s.lambda, s.mu_s * s.mu_s, order);
        const auto rt = reciprocal_series<Real>(r, order);
        for (const auto& x : r) s.a.push_back(a1 * x);
        s.a_tilde = rt;
    }
    return s;
}

} // namespace tdo
