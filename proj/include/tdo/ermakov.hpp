#pragma once

// Auxiliary (Ermakov–Pinney) equation  sigma'' + Omega^2(t) sigma = K / sigma^3.

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "tdo/errors.hpp"
#include "tdo/models.hpp"
#include "tdo/ode.hpp"

namespace tdo {

inline constexpr double default_K = 0.25;

/// Two independent solutions of y'' + Omega^2 y = 0 and their Wronskian
/// W0 = y1 y2' - y1' y2.
struct BasisPair {
    std::function<Jet(double)> y1;
    std::function<Jet(double)> y2;
    double W0 = 0.0;
};

inline double wronskian(const BasisPair& pair, double t) {
    const Jet a = pair.y1(t), b = pair.y2(t);
    return a.value * b.d1 - a.d1 * b.value;
}

/// cos(Omega (t - t0)), sin(Omega (t - t0)) for constant Omega^2 > 0.
inline BasisPair oscillating_basis(double Omega, double t0 = 0.0) {
    if (!(Omega > 0.0)) throw ParameterError("oscillating_basis: Omega must be positive");
    BasisPair p;
    p.y1 = [=](double t) {
        const double c = std::cos(Omega * (t - t0)), s = std::sin(Omega * (t - t0));
        return Jet{c, -Omega * s, -Omega * Omega * c};
    };
    p.y2 = [=](double t) {
        const double c = std::cos(Omega * (t - t0)), s = std::sin(Omega * (t - t0));
        return Jet{s, Omega * c, -Omega * Omega * s};
    };
    p.W0 = Omega;
    return p;
}

/// cosh(kappa (t - t0)), sinh(kappa (t - t0)) for constant Omega^2 = -kappa^2 < 0.
inline BasisPair hyperbolic_basis(double kappa, double t0 = 0.0) {
    if (!(kappa > 0.0)) throw ParameterError("hyperbolic_basis: kappa must be positive");
    BasisPair p;
    p.y1 = [=](double t) {
        const double c = std::cosh(kappa * (t - t0)), s = std::sinh(kappa * (t - t0));
        return Jet{c, kappa * s, kappa * kappa * c};
    };
    p.y2 = [=](double t) {
        const double c = std::cosh(kappa * (t - t0)), s = std::sinh(kappa * (t - t0));
        return Jet{s, kappa * c, kappa * kappa * s};
    };
    p.W0 = kappa;
    return p;
}

/// Lifts two solutions q1, q2 of the equation of motion to the reduced
/// variable y = sqrt(m(t)/m(t_ref)) q. Second derivatives come from
/// y'' = -Omega^2 y.
inline BasisPair basis_from_eom(const ModelDescriptor& model, std::function<Jet(double)> q1,
                                std::function<Jet(double)> q2, double t_ref) {
    const double m_ref = model.m(t_ref);
    auto lift = [model, m_ref](std::function<Jet(double)> q) {
        return [model, m_ref, q = std::move(q)](double t) {
            const CoefficientSample cs = coefficients(model, t);
            const double scale = std::sqrt(model.m(t) / m_ref);
            const Jet j = q(t);
            const double y = scale * j.value;
            return Jet{y, scale * (j.d1 + 0.5 * cs.M * j.value), -cs.Omega2 * y};
        };
    };
    BasisPair p;
    p.y1 = lift(std::move(q1));
    p.y2 = lift(std::move(q2));
    p.W0 = wronskian(p, t_ref);
    if (p.W0 == 0.0) throw ParameterError("basis_from_eom: solutions are linearly dependent");
    return p;
}

/// Constants of the Pinney superposition sigma^2 = A y1^2 + B y2^2 + 2 C y1 y2
/// with AB - C^2 = K / W0^2.
struct PinneyCombination {
    double A = 0.0, B = 0.0, C = 0.0;
    double K = default_K;
};

/// sigma and its first two derivatives.
struct SigmaJet {
    double sigma = 0.0, sigma_dot = 0.0, sigma_ddot = 0.0;
};

inline SigmaJet sigma_from_basis(const BasisPair& pair, const PinneyCombination& comb, double t) {
    const double target = comb.K / (pair.W0 * pair.W0);
    const double mismatch = comb.A * comb.B - comb.C * comb.C - target;
    if (std::abs(mismatch) > 1e-8 * std::max(1.0, std::abs(target)))
        throw ConstraintViolation("Pinney constants violate AB - C^2 = K/W0^2 (mismatch " +
                                  std::to_string(mismatch) + ")");
    const Jet a = pair.y1(t), b = pair.y2(t);
    const double u = comb.A * a.value * a.value + comb.B * b.value * b.value + 2.0 * comb.C * a.value * b.value;
    if (!(u > 0.0)) throw NonRealSigma("Pinney radicand is not positive at t=" + std::to_string(t));
    const double u1 = 2.0 * (comb.A * a.value * a.d1 + comb.B * b.value * b.d1 +
                             comb.C * (a.d1 * b.value + a.value * b.d1));
    const double u2 = 2.0 * (comb.A * (a.d1 * a.d1 + a.value * a.d2) + comb.B * (b.d1 * b.d1 + b.value * b.d2) +
                             comb.C * (a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2));
    SigmaJet s;
    s.sigma = std::sqrt(u);
    s.sigma_dot = u1 / (2.0 * s.sigma);
    s.sigma_ddot = (0.5 * u2 - s.sigma_dot * s.sigma_dot) / s.sigma;
    return s;
}

/// sigma'' + Omega^2 sigma - K/sigma^3.
inline double ermakov_residual(double Omega2, double K, const SigmaJet& s) {
    return s.sigma_ddot + Omega2 * s.sigma - K / (s.sigma * s.sigma * s.sigma);
}

/// First integral sigma'^2 + Omega^2 sigma^2 + K/sigma^2.
inline double ermakov_energy(double Omega2, double K, double sigma, double sigma_dot) {
    return sigma_dot * sigma_dot + Omega2 * sigma * sigma + K / (sigma * sigma);
}

// ---------------------------------------------------------------------------
// Numerical integration

struct ErmakovState {
    double t = 0.0;
    double sigma = 0.0;
    double sigma_dot = 0.0;
    double theta = 0.0; // integral of dt/sigma^2 from the start time
    double k = 0.0;     // sigma'^2 + Omega^2 sigma^2 + K/sigma^2 - F, conserved
    double F = 0.0;     // integral of d(Omega^2)/dt sigma^2 from the start time
};

struct EpOptions {
    double K = default_K;
    double rtol = 1e-10;
    double atol = 1e-12;
    double dt_out = 0.0; // 0: one state per accepted step
    double sigma_floor = 1e-8;
    long max_steps = 10'000'000;
};

struct InitialSigma {
    double sigma = 0.0;
    double sigma_dot = 0.0;
};

/// Integrates sigma'' = -Omega^2 sigma + K/sigma^3 over [t0, t1]. The phase
/// theta and the functional F ride along as extra components so every
/// quantity shares the same error control. Returns states at t0, on the
/// dt_out grid, and at t1.
inline std::vector<ErmakovState> integrate_ep(const ModelDescriptor& model, const InitialSigma& init, double t0,
                                              double t1, const EpOptions& opt = {}) {
    if (!(t1 >= t0)) throw DomainError("integrate_ep: need t0 <= t1");
    model.require_in_domain(t0);
    model.require_in_domain(t1);
    if (!(opt.rtol > 0.0) || !(opt.atol > 0.0)) throw ParameterError("integrate_ep: tolerances must be positive");
    if (opt.dt_out < 0.0) throw ParameterError("integrate_ep: dt_out must be non-negative");
    if (!(init.sigma > opt.sigma_floor))
        throw SingularityApproached("integrate_ep: initial sigma " + std::to_string(init.sigma) +
                                    " is below the floor " + std::to_string(opt.sigma_floor));

    const double K = opt.K;
    auto rhs = [&model, K](double t, const ode::State<4>& y) {
        const CoefficientSample cs = coefficients(model, t);
        const double s = y[0];
        const double s2 = s * s;
        return ode::State<4>{y[1], -cs.Omega2 * s + K / (s2 * s), 1.0 / s2, cs.Omega2_dot * s2};
    };

    auto make_state = [&](double t, const ode::State<4>& y) {
        const CoefficientSample cs = coefficients(model, t);
        ErmakovState st;
        st.t = t;
        st.sigma = y[0];
        st.sigma_dot = y[1];
        st.theta = y[2];
        st.F = y[3];
        st.k = ermakov_energy(cs.Omega2, K, y[0], y[1]) - y[3];
        return st;
    };

    ode::Tolerances tol;
    tol.rtol = opt.rtol;
    tol.atol = opt.atol;
    tol.max_steps = opt.max_steps;
    auto stepper = ode::make_stepper<4>(rhs, t0, ode::State<4>{init.sigma, init.sigma_dot, 0.0, 0.0}, tol);

    std::vector<ErmakovState> out;
    out.push_back(make_state(t0, stepper.y()));

    auto guard = [&](double t, const ode::State<4>& y) {
        if (!(y[0] > opt.sigma_floor))
            throw SingularityApproached("integrate_ep: sigma fell below " + std::to_string(opt.sigma_floor) +
                                        " at t=" + std::to_string(t));
    };
    auto record_all = [&](double t, const ode::State<4>& y) {
        guard(t, y);
        out.push_back(make_state(t, y));
    };

    try {
        if (opt.dt_out == 0.0) {
            stepper.advance_to(t1, record_all);
        } else {
            for (long i = 1;; ++i) {
                const double target = std::min(t0 + static_cast<double>(i) * opt.dt_out, t1);
                stepper.advance_to(target, guard);
                if (target > out.back().t) out.push_back(make_state(target, stepper.y()));
                if (target >= t1) break;
            }
        }
    } catch (const StepSizeUnderflow& e) {
        if (stepper.y()[0] < 1e3 * opt.sigma_floor)
            throw SingularityApproached(std::string("integrate_ep: ") + e.what() + " near sigma collapse");
        throw;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed-form branches for constant Omega^2 with K = 1/4

namespace ermakov_detail {

// Continuous lift of arctan(beta tan(phi)) for beta > 0: equals phi at every
// multiple of pi/2 and stays within the same quarter period in between.
inline double lifted_arctan_tan(double beta, double phi) {
    const double a = std::atan2(beta * std::sin(phi), std::cos(phi));
    const double two_pi = 2.0 * std::numbers::pi;
    return a + two_pi * std::round((phi - a) / two_pi);
}

} // namespace ermakov_detail

/// sigma^2 = k/(2 w^2) - sqrt(k^2 - w^2)/(2 w^2) cos(2 c1 + 2 w t), k >= w > 0.
/// For k = w this is the constant solution sigma = 1/sqrt(2 w).
struct OscillatingBranch {
    double omega = 1.0;
    double k = 1.0;
    double c1 = 0.0;

    double amplitude() const { return std::sqrt(std::max(0.0, k * k - omega * omega)); }

    SigmaJet eval(double t) const {
        const double w2 = omega * omega;
        const double s = amplitude();
        const double ph = 2.0 * c1 + 2.0 * omega * t;
        const double u = (k - s * std::cos(ph)) / (2.0 * w2);
        const double u1 = s * std::sin(ph) / omega;
        const double u2 = 2.0 * s * std::cos(ph);
        SigmaJet j;
        j.sigma = std::sqrt(u);
        j.sigma_dot = u1 / (2.0 * j.sigma);
        j.sigma_ddot = (0.5 * u2 - j.sigma_dot * j.sigma_dot) / j.sigma;
        return j;
    }

    /// integral of dt/sigma^2 over [t0, t1], continuous through the tan poles.
    double phase(double t0, double t1) const {
        const double beta = (k + amplitude()) / omega;
        auto lift = [&](double t) { return ermakov_detail::lifted_arctan_tan(beta, c1 + omega * t); };
        return 2.0 * (lift(t1) - lift(t0));
    }

    /// Pinney constants for the basis cos(w (t - t0)), sin(w (t - t0)).
    PinneyCombination pinney(double t0) const {
        const double w2 = omega * omega;
        const double s = amplitude();
        const double x = 2.0 * c1 + 2.0 * omega * t0;
        PinneyCombination p;
        p.A = (k - s * std::cos(x)) / (2.0 * w2);
        p.B = (k + s * std::cos(x)) / (2.0 * w2);
        p.C = s * std::sin(x) / (2.0 * w2);
        p.K = default_K;
        return p;
    }
};

/// Branch through (sigma0, sigma_dot0) at t0 for constant Omega^2 = w^2 > 0, K = 1/4.
inline OscillatingBranch fit_oscillating(double omega, double sigma0, double sigma_dot0, double t0) {
    if (!(omega > 0.0) || !(sigma0 > 0.0)) throw ParameterError("fit_oscillating: need omega > 0, sigma0 > 0");
    OscillatingBranch b;
    b.omega = omega;
    b.k = ermakov_energy(omega * omega, default_K, sigma0, sigma_dot0);
    const double s = b.amplitude();
    if (s == 0.0) {
        b.c1 = 0.0;
        return b;
    }
    const double cos2 = (b.k - 2.0 * omega * omega * sigma0 * sigma0) / s;
    const double sin2 = 2.0 * omega * sigma0 * sigma_dot0 / s;
    const double phi0 = std::atan2(sin2, cos2); // 2 c1 + 2 w t0
    b.c1 = 0.5 * phi0 - omega * t0;
    return b;
}

/// sigma^2 = c1 + sqrt(c1^2 + 1/(4 kappa^2)) cosh(2 c2 + 2 kappa t) for Omega^2 = -kappa^2 < 0.
struct HyperbolicBranch {
    double kappa = 1.0;
    double c1 = 0.0;
    double c2 = 0.0;

    double amplitude() const { return std::sqrt(c1 * c1 + 0.25 / (kappa * kappa)); }

    SigmaJet eval(double t) const {
        const double b = amplitude();
        const double ph = 2.0 * c2 + 2.0 * kappa * t;
        const double u = c1 + b * std::cosh(ph);
        const double u1 = 2.0 * kappa * b * std::sinh(ph);
        const double u2 = 4.0 * kappa * kappa * b * std::cosh(ph);
        SigmaJet j;
        j.sigma = std::sqrt(u);
        j.sigma_dot = u1 / (2.0 * j.sigma);
        j.sigma_ddot = (0.5 * u2 - j.sigma_dot * j.sigma_dot) / j.sigma;
        return j;
    }

    double phase(double t0, double t1) const {
        const double beta = std::sqrt(4.0 * kappa * kappa * c1 * c1 + 1.0) - 2.0 * kappa * c1;
        auto f = [&](double t) { return std::atan(beta * std::tanh(c2 + kappa * t)); };
        return 2.0 * (f(t1) - f(t0));
    }
};

inline HyperbolicBranch fit_hyperbolic(double kappa, double sigma0, double sigma_dot0, double t0) {
    if (!(kappa > 0.0) || !(sigma0 > 0.0)) throw ParameterError("fit_hyperbolic: need kappa > 0, sigma0 > 0");
    HyperbolicBranch b;
    b.kappa = kappa;
    const double k = ermakov_energy(-kappa * kappa, default_K, sigma0, sigma_dot0);
    b.c1 = -k / (2.0 * kappa * kappa);
    const double amp = b.amplitude();
    const double ch = std::max(1.0, (sigma0 * sigma0 - b.c1) / amp);
    double psi2 = std::acosh(ch); // 2 c2 + 2 kappa t0
    if (sigma_dot0 < 0.0) psi2 = -psi2;
    b.c2 = 0.5 * psi2 - kappa * t0;
    return b;
}

} // namespace tdo
