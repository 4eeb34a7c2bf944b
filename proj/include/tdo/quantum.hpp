#pragma once

// Scalar coefficient functions of the quantum time-dependent oscillator built
// on a K = 1/4 auxiliary solution: quadrature variances, the uncertainty
// product, and the Bogolubov coefficients relating a(t) to a fixed a0.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <complex>
#include <string>

#include "tdo/ermakov.hpp"
#include "tdo/errors.hpp"
#include "tdo/models.hpp"

namespace tdo {

using complex = std::complex<double>;

struct QuadratureReport {
    double t = 0.0;
    double varQ = 0.0;
    double varP = 0.0;
    complex xi;
    complex eta;
    double product = 0.0;      // (hbar/2) sqrt(1 + 4 sigma^2 (sigma' - M sigma/2)^2)
    double product_alt = 0.0;  // sqrt(varQ varP)
    double hbar = 1.0;
};

/// Mass and frequency fixing the Schrodinger-picture operator a0.
struct Reference {
    double m0 = 1.0;
    double omega0 = 1.0;
};

struct BogolubovPair {
    complex mu;
    complex nu;
    Reference reference;
};

namespace quantum_detail {

inline void require_hbar(double hbar) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw UnitsError("hbar must be positive (got " + std::to_string(hbar) + ")");
}

inline void require_reference(const Reference& r) {
    if (!(r.m0 > 0.0) || !(r.omega0 > 0.0)) throw UnitsError("reference m0 and omega0 must be positive");
}

} // namespace quantum_detail

/// xi = -[i/(2 sigma) + (M sigma/2 - sigma')].
inline complex xi_coefficient(double M, double sigma, double sigma_dot) {
    return -complex(M * sigma / 2.0 - sigma_dot, 1.0 / (2.0 * sigma));
}

/// eta = -i conj(xi) = 1/(2 sigma) + i (M sigma/2 - sigma').
inline complex eta_coefficient(double M, double sigma, double sigma_dot) {
    return complex(1.0 / (2.0 * sigma), M * sigma / 2.0 - sigma_dot);
}

inline QuadratureReport quadratures(const ModelDescriptor& model, const ErmakovState& state, double hbar = 1.0) {
    quantum_detail::require_hbar(hbar);
    const CoefficientSample cs = coefficients(model, state.t);
    const double m = model.m(state.t);
    const double s = state.sigma;
    const double drift = state.sigma_dot - cs.M * s / 2.0;

    QuadratureReport r;
    r.t = state.t;
    r.hbar = hbar;
    r.xi = xi_coefficient(cs.M, s, state.sigma_dot);
    r.eta = eta_coefficient(cs.M, s, state.sigma_dot);
    r.varQ = hbar / m * s * s;
    r.varP = hbar * m * std::norm(r.xi);
    r.product = 0.5 * hbar * std::sqrt(1.0 + 4.0 * s * s * drift * drift);
    r.product_alt = std::sqrt(r.varQ * r.varP);
    return r;
}

/// mu = sqrt(m/(2 m0 w0)) [eta + (m0 w0/m) sigma], nu = sqrt(m/(2 m0 w0)) [eta - (m0 w0/m) sigma].
inline BogolubovPair bogolubov(const ModelDescriptor& model, const ErmakovState& state, const Reference& ref) {
    quantum_detail::require_reference(ref);
    const CoefficientSample cs = coefficients(model, state.t);
    const double m = model.m(state.t);
    const double pref = std::sqrt(m / (2.0 * ref.m0 * ref.omega0));
    const complex eta = eta_coefficient(cs.M, state.sigma, state.sigma_dot);
    const double shift = ref.m0 * ref.omega0 / m * state.sigma;
    return BogolubovPair{pref * (eta + shift), pref * (eta - shift), ref};
}

/// Reference taken from the model at time t0.
inline Reference reference_at(const ModelDescriptor& model, double t0) {
    return Reference{model.m(t0), model.omega(t0)};
}

/// |mu|^2 and |nu|^2 from the first integral E = k + F instead of the
/// complex coefficients:
///   |mu|^2 = m/(2 m0 w0) {E + (r^2 + M^2/2 - w^2 + M'/2) sigma^2 - M sigma sigma'} + 1/2,
/// with r = m0 w0 / m, and |nu|^2 the same expression minus 1/2.
struct BogolubovModuli {
    double mu2 = 0.0;
    double nu2 = 0.0;
};

inline BogolubovModuli bogolubov_moduli_from_invariant(const ModelDescriptor& model, const ErmakovState& state,
                                                       const Reference& ref) {
    quantum_detail::require_reference(ref);
    const CoefficientSample cs = coefficients(model, state.t);
    const double m = model.m(state.t);
    const double w = model.omega(state.t);
    const double r = ref.m0 * ref.omega0 / m;
    const double s = state.sigma;
    const double energy = state.k + state.F;
    const double brace = energy + (r * r + cs.M * cs.M / 2.0 - w * w + cs.M_dot / 2.0) * s * s -
                         cs.M * s * state.sigma_dot;
    const double pref = m / (2.0 * ref.m0 * ref.omega0);
    return {pref * brace + 0.5, pref * brace - 0.5};
}

/// (hbar/2) |mu + nu| |mu - nu|.
inline double uncertainty_via_bogolubov(const BogolubovPair& pair, double hbar = 1.0) {
    quantum_detail::require_hbar(hbar);
    return 0.5 * hbar * std::abs(pair.mu + pair.nu) * std::abs(pair.mu - pair.nu);
}

struct VacuumExpectations {
    double Q2 = 0.0;
    double P2 = 0.0;
    double H = 0.0;
};

inline VacuumExpectations vacuum_expectations(const ModelDescriptor& model, const ErmakovState& state,
                                              double hbar = 1.0) {
    const QuadratureReport q = quadratures(model, state, hbar);
    const double m = model.m(state.t);
    const double w = model.omega(state.t);
    return {q.varQ, q.varP, q.varP / (2.0 * m) + 0.5 * m * w * w * q.varQ};
}

/// Largest excess of the uncertainty product over hbar/2 along the oscillating
/// branch of the harmonic model, sampled over one period of sigma (pi/omega).
/// Returns 0 on the constant branch k = omega.
inline double oscillating_excess(double omega, double k, double hbar = 1.0, int n = 2001) {
    quantum_detail::require_hbar(hbar);
    if (!(omega > 0.0) || !(k >= omega)) throw ParameterError("oscillating_excess: need k >= omega > 0");
    if (n < 2) throw ParameterError("oscillating_excess: need at least two samples");
    const ModelDescriptor h = harmonic(1.0, omega);
    const OscillatingBranch b{omega, k, 0.0};
    const double period = std::numbers::pi / omega;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = period * i / (n - 1);
        const SigmaJet j = b.eval(t);
        ErmakovState st;
        st.t = t;
        st.sigma = j.sigma;
        st.sigma_dot = j.sigma_dot;
        worst = std::max(worst, quadratures(h, st, hbar).product - 0.5 * hbar);
    }
    return worst;
}

} // namespace tdo
