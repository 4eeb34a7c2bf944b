#pragma once

// Checks and special cases around the Bessel-type oscillator:
// convolution system for the coefficients, numeric residual of the truncated series,
// the phase from the reciprocal series, the large-k0 approximation, the
// mu_s = 0 power law, and the reduction of the y-equation to Bessel form.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "tdo/alpha_series.hpp"
#include "tdo/bessel.hpp"
#include "tdo/errors.hpp"
#include "tdo/models.hpp"

namespace tdo {

/// Scalar used where double rounding would hide the truncation error.
using precise_real = boost::multiprecision::cpp_bin_float_50;

/// Power-series coefficients of alpha'^2 (b), alpha^2 (c) and alpha alpha'' (d)
/// from a dense coefficient list a_0, a_1, ..., a_n. Only the entries fully
/// determined by the given a's are returned.
template <class T>
struct ConvolutionTriple {
    std::vector<T> b, c, d;
};

template <class T>
ConvolutionTriple<T> convolution_triple(const std::vector<T>& a) {
    const int n = static_cast<int>(a.size()) - 1;
    auto at = [&](int i) -> T { return (i >= 0 && i <= n) ? a[i] : T(0); };
    ConvolutionTriple<T> out;
    for (int k = 0; k <= n; ++k) {
        T ck(0);
        for (int j = 0; j <= k; ++j) ck += at(j) * at(k - j);
        out.c.push_back(ck);
    }
    for (int k = 0; k + 1 <= n; ++k) {
        T bk(0);
        for (int j = 0; j <= k; ++j) bk += T((j + 1) * (k - j + 1)) * at(j + 1) * at(k - j + 1);
        out.b.push_back(bk);
    }
    for (int k = 0; k + 2 <= n; ++k) {
        T dk(0);
        for (int j = 0; j <= k; ++j) dk += T((2 + k - j) * (1 + k - j)) * at(j) * at(k + 2 - j);
        out.d.push_back(dk);
    }
    return out;
}

/// Coefficients of 2 alpha alpha'' - alpha'^2 - 4 w0^2 + alpha^2 (mu^2 + lambda^2/t^2),
/// indexed by power of t starting at t^-2.
template <class T>
struct SeriesResidual {
    static constexpr int lowest_power = -2;
    std::vector<T> coeff;

    int highest_power() const { return lowest_power + static_cast<int>(coeff.size()) - 1; }
    const T& at(int power) const { return coeff.at(static_cast<std::size_t>(power - lowest_power)); }
};

template <class T>
SeriesResidual<T> convolution_residual(const std::vector<T>& dense_a, const T& omega0_sq, const T& mu2,
                                    const T& lambda2) {
    const auto tr = convolution_triple(dense_a);
    SeriesResidual<T> r;
    r.coeff.push_back(lambda2 * tr.c.at(0));
    if (tr.c.size() > 1) r.coeff.push_back(lambda2 * tr.c.at(1));
    for (std::size_t p = 0; p < tr.d.size(); ++p) {
        T v = T(2) * tr.d[p] - tr.b[p] + mu2 * tr.c[p] + lambda2 * tr.c[p + 2];
        if (p == 0) v -= T(4) * omega0_sq;
        r.coeff.push_back(v);
    }
    return r;
}

/// Dense list a_0..a_{2N+1} from the odd coefficients of a series.
template <class Real>
std::vector<Real> dense_coefficients(const basic_alpha_series<Real>& s) {
    std::vector<Real> dense(2 * s.a.size(), Real(0));
    for (std::size_t i = 0; i < s.a.size(); ++i) dense[2 * i + 1] = s.a[i];
    return dense;
}

/// Residual coefficients of the convolution system for a built series, through
/// t^{2N-1} (the powers fully fixed by a_1..a_{2N+1}).
template <class Real>
SeriesResidual<Real> symbolic_residual(const basic_alpha_series<Real>& s) {
    return convolution_residual<Real>(dense_coefficients(s), s.omega0 * s.omega0, s.mu_s * s.mu_s,
                                   s.lambda * s.lambda);
}

/// The same system in exact arithmetic, normalized by a_1^2 (so a_1 -> 1 and
/// 4 w0^2 / a_1^2 -> lambda^2 - 1). Every coefficient must be exactly zero.
inline SeriesResidual<rational> symbolic_residual_exact(double lambda, double mu_s, int order) {
    const rational l2 = rational(lambda) * rational(lambda);
    const rational m2 = rational(mu_s) * rational(mu_s);
    const auto r = ratio_recursion<rational>(l2, m2, order);
    std::vector<rational> dense(2 * r.size(), rational(0));
    for (std::size_t i = 0; i < r.size(); ++i) dense[2 * i + 1] = r[i];
    return convolution_residual<rational>(dense, (l2 - 1) / 4, m2, l2);
}

/// Two candidate values of a_3 from the first odd-index equation: a_3 from the
/// ratio recursion (lambda^2) and from the variant "mu^2 a1 + 6 a3 + 2 nu^2 a3 = 0".
struct A3Candidates {
    double from_recursion = 0.0;
    double from_nu_squared = 0.0;
};

inline A3Candidates a3_candidates(double omega0, double lambda, double mu_s, double nu) {
    const double a1 = 2.0 * omega0 / std::sqrt(lambda * lambda - 1.0);
    return {-mu_s * mu_s * a1 / (6.0 + 2.0 * lambda * lambda), -mu_s * mu_s * a1 / (6.0 + 2.0 * nu * nu)};
}

namespace series_ops_detail {

template <class Real>
void guard_radius(const basic_alpha_series<Real>& s, double t_hi, const char* who) {
    const double guard = static_cast<double>(s.radius_guard());
    if (t_hi > guard)
        throw ConvergenceWarning(std::string(who) + ": t=" + std::to_string(t_hi) +
                                 " exceeds the truncation guard 2/mu_s=" + std::to_string(guard));
}

} // namespace series_ops_detail

/// max over a uniform grid on [t_lo, t_hi] of
/// |2 alpha alpha'' - alpha'^2 - 4 w0^2 + alpha^2 (mu_s^2 + lambda^2/t^2)|,
/// evaluated in `Real`.
template <class Real>
double alpha_numeric_check(const basic_alpha_series<Real>& s, double t_lo, double t_hi, int n = 201) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw DomainError("alpha_numeric_check: need 0 < t_lo < t_hi");
    series_ops_detail::guard_radius(s, t_hi, "alpha_numeric_check");
    const Real w2x4 = Real(4) * s.omega0 * s.omega0;
    const Real m2 = s.mu_s * s.mu_s, l2 = s.lambda * s.lambda;
    Real worst(0);
    for (int i = 0; i < n; ++i) {
        const Real t = Real(t_lo) + (Real(t_hi) - Real(t_lo)) * Real(i) / Real(n - 1);
        const auto j = s.jet(t);
        const Real r = Real(2) * j[0] * j[2] - j[1] * j[1] - w2x4 + j[0] * j[0] * (m2 + l2 / (t * t));
        using std::abs;
        worst = std::max(worst, Real(abs(r)));
    }
    return static_cast<double>(worst);
}

/// 2 int_{t0}^{t1} omega dt with omega = (w0/(a1 t)) sum atilde_{2k} t^{2k}:
/// (2 w0 / a1) [ln(t1/t0) + sum_{k>=1} atilde_{2k} (t1^{2k} - t0^{2k}) / (2k)].
template <class Real>
double theta_series(const basic_alpha_series<Real>& s, double t0, double t1) {
    if (!(t0 > 0.0) || !(t1 > 0.0)) throw DomainError("theta_series: times must be positive");
    series_ops_detail::guard_radius(s, std::max(t0, t1), "theta_series");
    if (t0 == t1) return 0.0;
    using std::log;
    const Real a(t0), b(t1);
    Real sum = log(b / a);
    Real pa = Real(1), pb = Real(1);
    const Real a2 = a * a, b2 = b * b;
    for (std::size_t k = 1; k < s.a_tilde.size(); ++k) {
        pa *= a2;
        pb *= b2;
        sum += s.a_tilde[k] * (pb - pa) / Real(2 * static_cast<int>(k));
    }
    return static_cast<double>(Real(2) * s.omega0 / s.a.front() * sum);
}

// ---------------------------------------------------------------------------
// Large-k0 regime

/// alpha = c1 + R sin(2 L (t + c2)), R = sqrt(c1^2 - w0^2/L^2), L = Omega0 k0,
/// and q = C1 sin(Phi + phi0) with Phi = int omega0/alpha dt written as
/// arctan[(c1 L/w0) tan(L (t + c2)) + R L/w0], continued through the tan poles.
struct LargeK0Sample {
    double alpha = 0.0, alpha_dot = 0.0, alpha_ddot = 0.0;
    Jet q;
    double phase = 0.0;      // Phi
    double eom_residual = 0.0; // q'' + (alpha'/alpha) q' + (w0/alpha)^2 q
    double dropped_term = 0.0; // 4 Omega0^2 nu^2 alpha^2 / t^2, omitted from the alpha equation
};

struct LargeK0Params {
    double Omega0 = 1.0, k0 = 1.0, omega0 = 1.0;
    double c1 = 1.0, c2 = 0.0;
    double nu = 0.0;
    double C1 = 1.0, phi0 = 0.0;
};

inline LargeK0Sample large_k0_approx(const LargeK0Params& p, double t) {
    const double L = p.Omega0 * p.k0;
    if (!(L != 0.0) || !(p.omega0 > 0.0)) throw ParameterError("large_k0_approx: need Omega0 k0 != 0 and omega0 > 0");
    const double rad = p.c1 * p.c1 - p.omega0 * p.omega0 / (L * L);
    if (rad < -1e-15 * p.c1 * p.c1) throw ParameterError("large_k0_approx: c1^2 < omega0^2/(Omega0 k0)^2");
    const double R = std::sqrt(std::max(0.0, rad));

    const double x = L * (t + p.c2);
    LargeK0Sample s;
    s.alpha = p.c1 + R * std::sin(2.0 * x);
    s.alpha_dot = 2.0 * L * R * std::cos(2.0 * x);
    s.alpha_ddot = -4.0 * L * L * R * std::sin(2.0 * x);
    if (!(s.alpha > 0.0)) throw NonPositiveAlpha("large_k0_approx: alpha <= 0 at t=" + std::to_string(t));

    const double beta = p.c1 * L / p.omega0;
    const double shift = R * L / p.omega0;
    // Angle of (cos x, beta sin x + shift cos x); the map has positive determinant,
    // so the angle winds with x and stays within pi of it.
    const double a = std::atan2(beta * std::sin(x) + shift * std::cos(x), std::cos(x));
    const double two_pi = 2.0 * std::numbers::pi;
    s.phase = a + two_pi * std::round((x - a) / two_pi);

    const double sec2 = 1.0 / (std::cos(x) * std::cos(x));
    const double u = beta * std::tan(x) + shift;
    const double du = beta * L * sec2;
    const double d2u = 2.0 * beta * L * L * sec2 * std::tan(x);
    const double w = 1.0 + u * u;
    const double dphi = du / w;
    const double d2phi = (d2u * w - 2.0 * u * du * du) / (w * w);

    const double arg = s.phase + p.phi0;
    s.q.value = p.C1 * std::sin(arg);
    s.q.d1 = p.C1 * std::cos(arg) * dphi;
    s.q.d2 = -p.C1 * std::sin(arg) * dphi * dphi + p.C1 * std::cos(arg) * d2phi;

    const double om = p.omega0 / s.alpha;
    s.eom_residual = s.q.d2 + (s.alpha_dot / s.alpha) * s.q.d1 + om * om * s.q.value;
    s.dropped_term = t > 0.0 ? 4.0 * p.Omega0 * p.Omega0 * p.nu * p.nu * s.alpha * s.alpha / (t * t) : INFINITY;
    return s;
}

// ---------------------------------------------------------------------------
// mu_s = 0: alpha = a1 t and q'' + q'/t + (Omega0^2 nu^2 - 1/4) q / t^2 = 0

/// Exponent beta with beta^2 = 1/4 - Omega0^2 nu^2. For Omega0^2 nu^2 > 1/4 the
/// exponents are imaginary and the real solutions are cos/sin(|beta| ln t).
struct PowerLawSolutions {
    double beta2 = 0.0;

    Jet first(double t) const { return eval(t, true); }
    Jet second(double t) const { return eval(t, false); }

private:
    Jet eval(double t, bool plus) const {
        if (beta2 >= 0.0) {
            const double b = plus ? std::sqrt(beta2) : -std::sqrt(beta2);
            const double v = std::pow(t, b);
            return {v, b * v / t, b * (b - 1.0) * v / (t * t)};
        }
        const double g = std::sqrt(-beta2);
        const double ph = g * std::log(t);
        const double f = plus ? std::cos(ph) : std::sin(ph);
        const double df = plus ? -std::sin(ph) : std::cos(ph);
        // d/dt f(g ln t) = g f'/t ; d2/dt2 = (-g^2 f - g f') / t^2
        return {f, g * df / t, (-g * g * f - g * df) / (t * t)};
    }
};

inline PowerLawSolutions power_law(double Omega0_nu_sq) { return PowerLawSolutions{0.25 - Omega0_nu_sq}; }

inline double power_law_eom_residual(double Omega0_nu_sq, const Jet& q, double t) {
    return q.d2 + q.d1 / t + (Omega0_nu_sq - 0.25) * q.value / (t * t);
}

// ---------------------------------------------------------------------------
// Bessel reduction of y'' + Omega0^2 (k0^2 + nu^2/t^2) y = 0

struct BesselReduction {
    double ell = 0.0;  // Omega0 k0
    double rho = 0.0;  // sqrt(1/4 - Omega0^2 nu^2)

    /// y = sqrt(t) J_rho(ell t); for rho = 1/2 the elementary sin(ell t).
    Jet y(double t) const {
        if (std::abs(rho - 0.5) < 1e-15) {
            const double s = std::sin(ell * t), c = std::cos(ell * t);
            return {s, ell * c, -ell * ell * s};
        }
        const bessel::Value z = bessel::besselj(rho, ell * t);
        const double rt = std::sqrt(t);
        return {rt * z.J, 0.5 * z.J / rt + rt * ell * z.dJ,
                -0.25 * z.J / (t * rt) + ell * z.dJ / rt + rt * ell * ell * z.d2J};
    }
};

/// Signed form: nu_sq < 0 (a repulsive 1/t^2 term) gives orders rho > 1/2.
inline BesselReduction bessel_reduction_nu2(double Omega0, double k0, double nu_sq) {
    const double rho2 = 0.25 - Omega0 * Omega0 * nu_sq;
    if (rho2 < 0.0) throw ParameterError("bessel_reduction: imaginary order (Omega0^2 nu^2 > 1/4) is not supported");
    const double ell = Omega0 * k0;
    if (!(ell > 0.0)) throw ParameterError("bessel_reduction: need Omega0 k0 > 0");
    return BesselReduction{ell, std::sqrt(rho2)};
}

inline BesselReduction bessel_reduction(double Omega0, double k0, double nu) {
    return bessel_reduction_nu2(Omega0, k0, nu * nu);
}

/// max |y'' + Omega0^2 (k0^2 + nu_sq/t^2) y| over the grid.
inline double bessel_reduction_check_nu2(double Omega0, double k0, double nu_sq, const std::vector<double>& t_grid) {
    const BesselReduction br = bessel_reduction_nu2(Omega0, k0, nu_sq);
    double worst = 0.0;
    for (double t : t_grid) {
        if (!(t > 0.0)) throw DomainError("bessel_reduction_check: grid times must be positive");
        const Jet y = br.y(t);
        const double r = y.d2 + Omega0 * Omega0 * (k0 * k0 + nu_sq / (t * t)) * y.value;
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

inline double bessel_reduction_check(double Omega0, double k0, double nu, const std::vector<double>& t_grid) {
    return bessel_reduction_check_nu2(Omega0, k0, nu * nu, t_grid);
}

/// Largest ratio of the nonlinear term K/sigma^3 to |Omega^2 sigma| along a
/// trajectory; small values mean the linear equation approximates the
/// auxiliary one.
template <class States>
double nonlinear_term_ratio(const ModelDescriptor& model, const States& states, double K = 0.25) {
    double worst = 0.0;
    for (const auto& st : states) {
        const double Omega2 = coefficients(model, st.t).Omega2;
        const double s = st.sigma;
        worst = std::max(worst, std::abs(K / (s * s * s)) / std::abs(Omega2 * s));
    }
    return worst;
}

} // namespace tdo
