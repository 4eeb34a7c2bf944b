#pragma once

// Minimum-uncertainty oscillators: m(t) omega(t) = 1/(2 c^2), sigma = c sqrt(m).

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tdo/ermakov.hpp"
#include "tdo/errors.hpp"
#include "tdo/models.hpp"

namespace tdo {

/// Uniform sampling grid over [t0, t1] with n points.
struct SampleWindow {
    double t0 = 0.0;
    double t1 = 0.0;
    int n = 201;
};

/// A window inside the model domain: [lo, hi] if finite, otherwise
/// starting at the lower end (or 0) and spanning 10 time units.
inline SampleWindow default_window(const ModelDescriptor& model, int n = 201) {
    const Interval& d = model.domain();
    const double lo = std::isfinite(d.lo) ? d.lo : 0.0;
    const double hi = std::isfinite(d.hi) ? d.hi : lo + 10.0;
    return SampleWindow{lo, hi, n};
}

inline std::vector<double> sample_times(const SampleWindow& w) {
    if (w.n <= 0 || !(w.t1 >= w.t0)) throw DomainError("empty sampling window");
    std::vector<double> t(static_cast<std::size_t>(w.n));
    if (w.n == 1) {
        t[0] = w.t0;
        return t;
    }
    for (int i = 0; i < w.n; ++i) t[i] = w.t0 + (w.t1 - w.t0) * static_cast<double>(i) / (w.n - 1);
    t.back() = w.t1;
    return t;
}

struct CriterionReport {
    bool is_minimum = false;
    double c = 0.0;
    double max_violation = 0.0; // max relative deviation of m omega from its median
    int samples = 0;
};

/// Tests m omega = const over the window. c is taken from the median of m omega.
inline CriterionReport check_criterion(const ModelDescriptor& model, double tol, const SampleWindow& window) {
    if (!(tol > 0.0)) throw ParameterError("check_criterion: tol must be positive");
    const auto ts = sample_times(window);
    std::vector<double> prod;
    prod.reserve(ts.size());
    for (double t : ts) {
        model.require_in_domain(t);
        prod.push_back(model.m(t) * model.omega(t));
    }
    std::vector<double> sorted = prod;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    if (!(median > 0.0)) throw DomainError("check_criterion: m omega must be positive");

    CriterionReport r;
    r.samples = static_cast<int>(n);
    r.c = 1.0 / std::sqrt(2.0 * median);
    for (double p : prod) r.max_violation = std::max(r.max_violation, std::abs(p - median) / median);
    r.is_minimum = r.max_violation <= tol;
    return r;
}

inline CriterionReport check_criterion(const ModelDescriptor& model, double tol) {
    return check_criterion(model, tol, default_window(model));
}

/// A model known to satisfy m omega = 1/(2 c^2).
struct MinUncertaintyModel {
    ModelDescriptor base;
    double c = 0.0;
};

/// Wraps `model` after confirming the criterion on `window` at `tol`.
inline MinUncertaintyModel make_min_model(const ModelDescriptor& model, const SampleWindow& window,
                                          double tol = 1e-8) {
    const CriterionReport r = check_criterion(model, tol, window);
    if (!r.is_minimum)
        throw CriterionViolated("model '" + model.name() + "' violates m*omega = const (relative deviation " +
                                std::to_string(r.max_violation) + ")");
    return MinUncertaintyModel{model, r.c};
}

inline MinUncertaintyModel make_min_model(const ModelDescriptor& model, double tol = 1e-8) {
    return make_min_model(model, default_window(model), tol);
}

namespace minimum_detail {

template <class F>
double integrate(F&& f, double a, double b) {
    if (a == b) return 0.0;
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 15>::integrate(f, a, b, 12, 1e-12);
}

} // namespace minimum_detail

/// The minimal branch sigma = c sqrt(m) with phase theta = 2 int_{t0}^{t} omega.
/// k and F are filled so that k + F equals the first integral at t.
inline ErmakovState sigma_minimum(const MinUncertaintyModel& mm, double t, double t0) {
    const ModelDescriptor& model = mm.base;
    model.require_in_domain(t);
    model.require_in_domain(t0);
    const double pointwise = model.m(t) * model.omega(t) * 2.0 * mm.c * mm.c;
    if (std::abs(pointwise - 1.0) > 1e-8)
        throw CriterionViolated("sigma_minimum: m*omega != 1/(2c^2) at t=" + std::to_string(t));

    const MassJet mj = model.mass(t);
    ErmakovState st;
    st.t = t;
    st.sigma = mm.c * std::sqrt(mj.m);
    st.sigma_dot = mm.c * mj.m_dot / (2.0 * std::sqrt(mj.m));
    st.theta = 2.0 * minimum_detail::integrate([&](double x) { return model.omega(x); }, t0, t);
    st.F = minimum_detail::integrate(
        [&](double x) { return coefficients(model, x).Omega2_dot * mm.c * mm.c * model.m(x); }, t0, t);
    const CoefficientSample cs = coefficients(model, t);
    st.k = ermakov_energy(cs.Omega2, default_K, st.sigma, st.sigma_dot) - st.F;
    return st;
}

/// Second derivative of the minimal sigma, for residual checks.
inline SigmaJet sigma_minimum_jet(const MinUncertaintyModel& mm, double t) {
    const MassJet mj = mm.base.mass(t);
    const double sq = std::sqrt(mj.m);
    SigmaJet j;
    j.sigma = mm.c * sq;
    j.sigma_dot = mm.c * mj.m_dot / (2.0 * sq);
    j.sigma_ddot = mm.c * (mj.m_ddot / (2.0 * sq) - mj.m_dot * mj.m_dot / (4.0 * mj.m * sq));
    return j;
}

/// 2 m m'' - m'^2 + 4 Omega^2 m^2 - 1/c^4; zero exactly when sigma = c sqrt(m) solves the auxiliary equation.
inline double mass_constraint_residual(const MinUncertaintyModel& mm, double t) {
    const MassJet mj = mm.base.mass(t);
    const CoefficientSample cs = coefficients(mm.base, t);
    const double c4 = mm.c * mm.c * mm.c * mm.c;
    return 2.0 * mj.m * mj.m_ddot - mj.m_dot * mj.m_dot + 4.0 * cs.Omega2 * mj.m * mj.m - 1.0 / c4;
}

/// q'' - (omega'/omega) q' + omega^2 q, the equation of motion once m omega is constant.
template <class Trajectory>
double minimum_eom_residual(const MinUncertaintyModel& mm, Trajectory&& q, double t) {
    mm.base.require_in_domain(t);
    const FrequencyJet f = mm.base.frequency(t);
    if (f.omega == 0.0) throw DomainError("minimum_eom_residual: omega vanishes");
    const Jet j = q(t);
    return j.d2 - (f.omega_dot / f.omega) * j.d1 + f.omega * f.omega * j.value;
}

} // namespace tdo
