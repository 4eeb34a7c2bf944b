#pragma once

// Built-in invariant suites. Every check is deterministic: fixed grids,
// fixed parameters, no randomness, and a fixed order of evaluation.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "json.hpp"

#include "tdo/alpha_series.hpp"
#include "tdo/bessel.hpp"
#include "tdo/ermakov.hpp"
#include "tdo/minimum.hpp"
#include "tdo/models.hpp"
#include "tdo/phase.hpp"
#include "tdo/quantum.hpp"
#include "tdo/series.hpp"

namespace tdo::verify {

struct Check {
    std::string name;
    bool pass = false;
    double max_err = 0.0;
    double tol = 0.0;
};

struct Report {
    std::string suite;
    std::vector<Check> checks;
    bool pass = true;

    void add(std::string name, double max_err, double tol) {
        const bool ok = std::isfinite(max_err) && max_err <= tol;
        checks.push_back({std::move(name), ok, max_err, tol});
        pass = pass && ok;
    }
    /// For boolean properties: max_err is 0 on success, 1 on failure.
    void add_flag(std::string name, bool ok) { add(std::move(name), ok ? 0.0 : 1.0, 0.0); }
};

struct Options {
    int order = 8; // highest order in the series decay check
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"models",  "ermakov", "bogolubov", "quantum",
                                                "minimum", "series",  "bessel"};
    return names;
}

namespace detail {

inline std::vector<double> grid(double a, double b, int n) {
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[i] = a + (b - a) * i / (n - 1);
    t.back() = b;
    return t;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// The four catalog models satisfying m omega = const, with windows away
/// from the tsquared origin.
struct MinCase {
    std::string label;
    ModelDescriptor model;
    SampleWindow window;
};

inline std::vector<MinCase> minimum_cases() {
    return {{"harmonic", harmonic(), {0.0, 10.0, 200}},
            {"exp_frequency", exp_frequency(), {0.0, 2.0, 200}},
            {"tsquared", tsquared(1.0, 1.0), {0.5, 3.0, 200}},
            {"bessel_type", bessel_type(), {0.05, 1.0, 200}}};
}

/// Default non-minimal initial condition sigma0 = 1/sqrt(2 omega), sigma_dot0 = M sigma0/2,
/// scaled by `factor` to move off the minimal branch.
inline InitialSigma perturbed_start(const ModelDescriptor& m, double t0, double factor) {
    const double s = factor / std::sqrt(2.0 * m.omega(t0));
    return {s, 0.5 * coefficients(m, t0).M * s};
}

inline EpOptions tight() {
    EpOptions o;
    o.rtol = 1e-12;
    o.atol = 1e-14;
    return o;
}

} // namespace detail

// ---------------------------------------------------------------------------

inline Report suite_models() {
    using namespace detail;
    Report r{"models", {}, true};

    for (const auto& mc : minimum_cases()) {
        const auto ts = sample_times(mc.window);
        const double ref = mc.model.m(ts.front()) * mc.model.omega(ts.front());
        double worst = 0.0;
        for (double t : ts) worst = std::max(worst, rel(mc.model.m(t) * mc.model.omega(t), ref));
        r.add("m_omega_constant/" + mc.label, worst, 1e-9);
    }

    // d(Omega^2)/dt against a central difference.
    for (const auto& model : catalog()) {
        const SampleWindow w = model.name() == "tsquared" ? SampleWindow{0.5, 3.0, 41}
                               : model.name() == "bessel_type" ? SampleWindow{0.1, 1.5, 41}
                                                               : SampleWindow{0.0, 3.0, 41};
        double worst = 0.0;
        const double h = 1e-5;
        for (double t : sample_times(w)) {
            const double fd = (coefficients(model, t + h).Omega2 - coefficients(model, t - h).Omega2) / (2 * h);
            const double an = coefficients(model, t).Omega2_dot;
            worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
        }
        r.add("omega2_dot_vs_difference/" + model.name(), worst, 1e-6);
    }

    // Elementary solutions of the equation of motion.
    {
        const ModelDescriptor m = exp_frequency(1.0, 1.0);
        auto q = [](double t) {
            const double u = std::exp(-t), du = -std::exp(-t), d2u = std::exp(-t);
            const double c = std::cos(u), s = std::sin(u);
            // 0.7 cos u + 0.3 sin u
            const double v = 0.7 * c + 0.3 * s, dv = -0.7 * s + 0.3 * c, d2v = -v;
            return Jet{v, dv * du, d2v * du * du + dv * d2u};
        };
        double worst = 0.0;
        for (double t : grid(0.0, 3.0, 61)) worst = std::max(worst, std::abs(eom_residual(m, q, t)));
        r.add("eom_closed_form/exp_frequency", worst, 1e-9);
    }
    {
        const ModelDescriptor m = tsquared(1.0, 1.0);
        const double a = 0.5;
        auto q = [a](double t) {
            const double u = a / t, du = -a / (t * t), d2u = 2.0 * a / (t * t * t);
            const double v = std::cos(u) - 0.4 * std::sin(u);
            const double dv = -std::sin(u) - 0.4 * std::cos(u);
            return Jet{v, dv * du, -v * du * du + dv * d2u};
        };
        double worst = 0.0;
        for (double t : {0.5, 1.0, 2.0}) worst = std::max(worst, std::abs(eom_residual(m, q, t)));
        r.add("eom_closed_form/tsquared", worst, 1e-9);
    }
    return r;
}

inline Report suite_ermakov() {
    using namespace detail;
    Report r{"ermakov", {}, true};
    EpOptions opt = tight();

    {   // constant branch
        const double s0 = 1.0 / std::sqrt(2.0);
        const auto traj = integrate_ep(harmonic(), {s0, 0.0}, 0.0, 20.0, opt);
        double worst = 0.0;
        for (const auto& st : traj) worst = std::max(worst, std::abs(st.sigma - s0));
        r.add("harmonic_constant_sigma", worst, 1e-9);
        r.add("harmonic_constant_theta", std::abs(traj.back().theta - 40.0), 1e-7);
    }
    {   // oscillating branch k = 2
        const OscillatingBranch b{1.0, 2.0, 0.0};
        const SigmaJet j0 = b.eval(0.0);
        const auto traj = integrate_ep(harmonic(), {j0.sigma, j0.sigma_dot}, 0.0, 20.0, opt);
        double worst = 0.0, worst_res = 0.0, worst_ph = 0.0;
        for (const auto& st : traj) {
            const SigmaJet j = b.eval(st.t);
            worst = std::max(worst, rel(st.sigma, j.sigma));
            worst_res = std::max(worst_res, std::abs(ermakov_residual(1.0, default_K, j)));
            worst_ph = std::max(worst_ph, std::abs(st.theta - b.phase(0.0, st.t)));
        }
        r.add("oscillating_branch_vs_numeric", worst, 1e-6);
        r.add("oscillating_branch_residual", worst_res, 1e-8);
        r.add("oscillating_branch_phase", worst_ph, 1e-6);
        r.add("oscillating_sigma0_squared", std::abs(j0.sigma * j0.sigma - (2.0 - std::sqrt(3.0)) / 2.0), 1e-12);
    }
    {   // hyperbolic branch, Kanai-Caldirola omega0 = 0.3, gamma = 1
        const ModelDescriptor kc = kanai_caldirola(1.0, 0.3, 1.0);
        const double kappa = std::sqrt(0.25 - 0.09);
        const InitialSigma init = perturbed_start(kc, 0.0, 1.0);
        const HyperbolicBranch b = fit_hyperbolic(kappa, init.sigma, init.sigma_dot, 0.0);
        const auto traj = integrate_ep(kc, init, 0.0, 3.0, opt);
        double worst = 0.0, worst_ph = 0.0;
        for (const auto& st : traj) {
            worst = std::max(worst, rel(st.sigma, b.eval(st.t).sigma));
            worst_ph = std::max(worst_ph, std::abs(st.theta - b.phase(0.0, st.t)));
        }
        r.add("hyperbolic_branch_vs_numeric", worst, 1e-6);
        r.add("hyperbolic_branch_phase", worst_ph, 1e-6);
    }
    {   // Pinney superposition reproduces the oscillating branch
        const OscillatingBranch b{1.0, 2.0, 0.3};
        const double t0 = 0.5;
        const BasisPair basis = oscillating_basis(1.0, t0);
        const PinneyCombination p = b.pinney(t0);
        double worst = 0.0, worst_res = 0.0;
        for (double t : grid(0.0, 10.0, 101)) {
            const SigmaJet s = sigma_from_basis(basis, p, t);
            worst = std::max(worst, rel(s.sigma, b.eval(t).sigma));
            worst_res = std::max(worst_res, std::abs(ermakov_residual(1.0, default_K, s)));
        }
        r.add("pinney_constants_vs_branch", worst, 1e-12);
        r.add("pinney_residual", worst_res, 1e-8);
    }
    {   // conserved k over 20 periods, constant Omega
        double worst = 0.0;
        for (const ModelDescriptor& m : {harmonic(), kanai_caldirola(1.0, 1.0, 1.0)}) {
            const double Om = std::sqrt(coefficients(m, 0.0).Omega2);
            const auto traj = integrate_ep(m, perturbed_start(m, 0.0, 1.4), 0.0, 20.0 * 2.0 * std::numbers::pi / Om, opt);
            for (const auto& st : traj) worst = std::max(worst, std::abs(st.k - traj.front().k));
        }
        r.add("conserved_k_constant_omega", worst, 1e-8);
    }
    {   // generalized balance with F, time-dependent Omega
        struct C {
            ModelDescriptor m;
            double t0, t1;
        };
        double worst = 0.0;
        for (const C& c : {C{exp_frequency(), 0.0, 2.0}, C{tsquared(1.0, 1.0), 0.5, 3.0}, C{bessel_type(), 0.1, 1.5}}) {
            const auto traj = integrate_ep(c.m, perturbed_start(c.m, c.t0, 1.3), c.t0, c.t1, opt);
            for (const auto& st : traj) worst = std::max(worst, std::abs(st.k - traj.front().k));
        }
        r.add("generalized_balance_with_F", worst, 1e-7);
    }
    {   // closed-form phases against integrated theta
        struct P {
            std::string id;
            PhaseParams params;
            ModelDescriptor model;
            double t0, t1;
            InitialSigma init;
        };
        const OscillatingBranch ob{1.0, 2.0, 0.0};
        const ModelDescriptor kc = kanai_caldirola(1.0, 0.3, 1.0);
        const InitialSigma kc_init = perturbed_start(kc, 0.0, 1.0);
        auto min_init = [](const ModelDescriptor& m, double t0) {
            const MinUncertaintyModel mm = make_min_model(m, SampleWindow{t0, t0 + 0.5, 11});
            const SigmaJet j = sigma_minimum_jet(mm, t0);
            return InitialSigma{j.sigma, j.sigma_dot};
        };
        const ModelDescriptor bt = bessel_type();
        std::vector<P> cases{
            {"harmonic_const", {{"omega0", 1.0}}, harmonic(), 0.0, 20.0, {1.0 / std::sqrt(2.0), 0.0}},
            {"harmonic_oscillating", {{"omega0", 1.0}, {"k", 2.0}, {"c1", 0.0}}, harmonic(), 0.0, 20.0,
             {ob.eval(0.0).sigma, ob.eval(0.0).sigma_dot}},
            {"kc_hyperbolic",
             {{"omega0", 0.3}, {"gamma", 1.0}, {"sigma0", kc_init.sigma}, {"sigma_dot0", kc_init.sigma_dot}},
             kc, 0.0, 3.0, kc_init},
            {"exp_frequency", {{"omega0", 1.0}, {"gamma0", 1.0}}, exp_frequency(), 0.0, 1.0,
             min_init(exp_frequency(), 0.0)},
            {"tsquared", {{"m0", 1.0}, {"c", 1.0}}, tsquared(1.0, 1.0), 1.0, 2.0, min_init(tsquared(1.0, 1.0), 1.0)},
            {"bessel_series", {{"omega0", 1.0}, {"lambda", 2.0}, {"mu_s", 1.0}, {"order", 10.0}}, bt, 0.1, 1.0,
             min_init(bt, 0.1)},
        };
        for (const auto& c : cases) {
            const auto traj = integrate_ep(c.model, c.init, c.t0, c.t1, opt);
            double worst = 0.0;
            for (const auto& st : traj)
                worst = std::max(worst, std::abs(st.theta - phase_closed_form(c.id, c.params, c.t0, st.t)));
            r.add("phase/" + c.id, worst, 1e-6);
        }
        r.add("phase/exp_frequency_value",
              std::abs(phase_closed_form("exp_frequency", {{"omega0", 1.0}, {"gamma0", 1.0}}, 0.0, 1.0) -
                       2.0 * (1.0 - std::exp(-1.0))),
              1e-12);
        r.add("phase/tsquared_value",
              std::abs(phase_closed_form("tsquared", {{"m0", 1.0}, {"c", 1.0}}, 1.0, 2.0) - 0.5), 1e-12);
    }
    return r;
}

namespace detail {

/// (model, states) pairs spanning every catalog model: minimal states from
/// sigma_minimum where the criterion holds, integrated non-minimal ones otherwise.
struct Sampled {
    std::string label;
    ModelDescriptor model;
    std::vector<ErmakovState> states;
    bool minimal = false;
    double c = 0.0;
};

inline std::vector<Sampled> sampled_trajectories() {
    std::vector<Sampled> out;
    for (const auto& mc : minimum_cases()) {
        const MinUncertaintyModel mm = make_min_model(mc.model, mc.window);
        Sampled s{mc.label + "/minimal", mc.model, {}, true, mm.c};
        for (double t : sample_times(mc.window)) s.states.push_back(sigma_minimum(mm, t, mc.window.t0));
        out.push_back(std::move(s));
    }
    EpOptions opt = tight();
    for (const auto& mc : minimum_cases()) {
        EpOptions o = opt;
        o.dt_out = (mc.window.t1 - mc.window.t0) / (mc.window.n - 1);
        out.push_back({mc.label + "/perturbed", mc.model,
                       integrate_ep(mc.model, perturbed_start(mc.model, mc.window.t0, 1.3), mc.window.t0,
                                    mc.window.t1, o),
                       false, 0.0});
    }
    {
        const ModelDescriptor kc = kanai_caldirola(1.0, 1.0, 1.0);
        EpOptions o = opt;
        o.dt_out = 5.0 / 199;
        out.push_back({"kanai_caldirola", kc, integrate_ep(kc, perturbed_start(kc, 0.0, 1.0), 0.0, 5.0, o), false, 0.0});
        const ModelDescriptor kc2 = kanai_caldirola(1.0, 0.3, 1.0);
        o.dt_out = 3.0 / 199;
        out.push_back({"kanai_caldirola_overdamped", kc2,
                       integrate_ep(kc2, perturbed_start(kc2, 0.0, 1.0), 0.0, 3.0, o), false, 0.0});
    }
    return out;
}

} // namespace detail

inline Report suite_bogolubov() {
    using namespace detail;
    Report r{"bogolubov", {}, true};
    for (const auto& s : sampled_trajectories()) {
        const Reference ref = reference_at(s.model, s.states.front().t);
        double norm = 0.0, moduli = 0.0, route = 0.0, mu1 = 0.0, nu0 = 0.0;
        for (const auto& st : s.states) {
            const BogolubovPair b = bogolubov(s.model, st, ref);
            const double m2 = std::norm(b.mu), n2 = std::norm(b.nu);
            norm = std::max(norm, std::abs(m2 - n2 - 1.0));
            const BogolubovModuli bm = bogolubov_moduli_from_invariant(s.model, st, ref);
            moduli = std::max({moduli, std::abs(bm.mu2 - m2) / std::max(1.0, m2), std::abs(bm.nu2 - n2) / std::max(1.0, m2)});
            route = std::max(route, rel(uncertainty_via_bogolubov(b), quadratures(s.model, st).product));
            mu1 = std::max(mu1, std::abs(b.mu - 1.0));
            nu0 = std::max(nu0, std::abs(b.nu));
        }
        r.add("normalization/" + s.label, norm, 1e-10);
        r.add("moduli_from_invariant/" + s.label, moduli, 1e-8);
        r.add("uncertainty_route/" + s.label, route, 1e-10);
        if (s.minimal) {
            r.add("mu_equals_one/" + s.label, mu1, 1e-9);
            r.add("nu_vanishes/" + s.label, nu0, 1e-9);
        }
    }
    return r;
}

inline Report suite_quantum() {
    using namespace detail;
    Report r{"quantum", {}, true};
    for (const double hbar : {1.0, 0.25}) {
        const std::string h = hbar == 1.0 ? "" : "/hbar=0.25";
        for (const auto& s : sampled_trajectories()) {
            double below = 0.0, routes = 0.0, sat = 0.0, q2 = 0.0, p2 = 0.0, hh = 0.0;
            for (const auto& st : s.states) {
                const QuadratureReport q = quadratures(s.model, st, hbar);
                below = std::max(below, 0.5 * hbar - q.product);
                routes = std::max(routes, rel(q.product_alt, q.product));
                if (s.minimal) {
                    sat = std::max(sat, std::abs(q.product - 0.5 * hbar));
                    const VacuumExpectations v = vacuum_expectations(s.model, st, hbar);
                    q2 = std::max(q2, rel(v.Q2, hbar * s.c * s.c));
                    p2 = std::max(p2, rel(v.P2, hbar / (4.0 * s.c * s.c)));
                    hh = std::max(hh, rel(v.H, 0.5 * hbar * s.model.omega(st.t)));
                }
            }
            r.add("heisenberg_bound/" + s.label + h, std::max(0.0, below), 1e-12);
            r.add("product_routes/" + s.label + h, routes, 1e-12);
            if (s.minimal) {
                r.add("saturation/" + s.label + h, sat, 1e-9);
                r.add("vacuum_Q2/" + s.label + h, q2, 1e-10);
                r.add("vacuum_P2/" + s.label + h, p2, 1e-10);
                r.add("vacuum_H/" + s.label + h, hh, 1e-9);
            }
        }
    }
    return r;
}

inline Report suite_minimum() {
    using namespace detail;
    Report r{"minimum", {}, true};
    {
        const CriterionReport e = check_criterion(exp_frequency(), 1e-8, {0.0, 2.0, 201});
        r.add_flag("criterion/exp_frequency_is_minimum", e.is_minimum);
        r.add("criterion/exp_frequency_c", std::abs(e.c - 1.0 / std::sqrt(2.0)), 1e-12);
        const CriterionReport k = check_criterion(kanai_caldirola(1.0, 1.0, 1.0), 1e-8, {0.0, 2.0, 201});
        r.add_flag("criterion/kanai_caldirola_not_minimum", !k.is_minimum);
        const CriterionReport h = check_criterion(harmonic(), 1e-8);
        r.add_flag("criterion/harmonic_is_minimum", h.is_minimum);
        r.add("criterion/harmonic_c", std::abs(h.c - 1.0 / std::sqrt(2.0)), 1e-12);
    }
    for (const auto& mc : minimum_cases()) {
        const MinUncertaintyModel mm = make_min_model(mc.model, mc.window);
        double mass = 0.0, ep = 0.0, ham = 0.0, eom = 0.0;
        const double h0 = vacuum_expectations(mc.model, sigma_minimum(mm, mc.window.t0, mc.window.t0)).H *
                          mc.model.m(mc.window.t0);
        auto q = [&](double t) {
            // Any trajectory: compare the reduced and full equations of motion.
            return Jet{std::sin(t) + 0.5, std::cos(t), -std::sin(t)};
        };
        for (double t : sample_times(mc.window)) {
            mass = std::max(mass, std::abs(mass_constraint_residual(mm, t)) * mm.c * mm.c * mm.c * mm.c);
            const SigmaJet j = sigma_minimum_jet(mm, t);
            const double O2 = coefficients(mc.model, t).Omega2;
            ep = std::max(ep, std::abs(ermakov_residual(O2, default_K, j)) /
                                  (1.0 + default_K / (j.sigma * j.sigma * j.sigma)));
            const ErmakovState st{t, j.sigma, j.sigma_dot, 0.0, 0.0, 0.0};
            ham = std::max(ham, rel(vacuum_expectations(mc.model, st).H * mc.model.m(t), h0));
            const double a = minimum_eom_residual(mm, q, t), b = eom_residual(mc.model, q, t);
            eom = std::max(eom, std::abs(a - b) / std::max(1.0, std::abs(b)));
        }
        r.add("mass_constraint/" + mc.label, mass, 1e-8);
        r.add("ep_residual/" + mc.label, ep, 1e-8);
        r.add("rescaled_hamiltonian/" + mc.label, ham, 1e-9);
        r.add("reduced_eom/" + mc.label, eom, 1e-10);

        // Quadratic growth of the product away from sigma_dot = M sigma/2.
        const double t = 0.5 * (mc.window.t0 + mc.window.t1);
        const SigmaJet j = sigma_minimum_jet(mm, t);
        double growth = 0.0;
        for (double eps : {1e-3, 1e-4}) {
            const ErmakovState st{t, j.sigma, j.sigma_dot + eps, 0.0, 0.0, 0.0};
            const double excess = quadratures(mc.model, st).product - 0.5;
            growth = std::max(growth, std::abs(excess / (j.sigma * j.sigma * eps * eps) - 1.0));
        }
        r.add("argmin_quadratic_growth/" + mc.label, growth, 1e-2);
    }
    {
        const MinUncertaintyModel mm = make_min_model(tsquared(1.0, 1.0), SampleWindow{1.0, 3.0, 21});
        double worst = 0.0;
        for (double t : {1.5, 2.0, 3.0}) {
            const ErmakovState st = sigma_minimum(mm, t, 1.0);
            worst = std::max({worst, std::abs(st.sigma - t), std::abs(st.theta - (1.0 - 1.0 / t))});
        }
        r.add("tsquared_sigma_and_theta", worst, 1e-10);
    }
    return r;
}

inline Report suite_series(const Options& o = {}) {
    using namespace detail;
    Report r{"series", {}, true};
    const int N = std::max(o.order, 4);
    {
        const rational l2(4), m2(1);
        const auto ra = ratio_recursion<rational>(l2, m2, 10);
        const auto pf = product_form<rational>(l2, m2, 10);
        r.add_flag("ratio_equals_product_form_exact", ra == pf);
        r.add_flag("a3_exact", ra[1] == rational(-1, 14));
        r.add_flag("a5_exact", ra[2] == rational(-1, 14) * rational(-3, 76));
    }
    {
        bool zero = true;
        const auto res = symbolic_residual_exact(2.0, 1.0, 10);
        for (const auto& c : res.coeff) zero = zero && c == 0;
        r.add_flag("symbolic_residual_exact_zero", zero);
        const AlphaSeries s = build_series<double>(1.0, 2.0, 1.0, 5);
        double worst = 0.0;
        for (double c : symbolic_residual(s).coeff) worst = std::max(worst, std::abs(c));
        r.add("symbolic_residual_float", worst, 1e-12);
        // a0 != 0 leaves lambda^2 a0^2 at t^-2.
        std::vector<double> dense = dense_coefficients(s);
        dense[0] = 0.1;
        const auto forced = convolution_residual<double>(dense, 1.0, 1.0, 4.0);
        r.add("a0_forcing_term", std::abs(forced.at(-2) - 4.0 * 0.01), 1e-15);
    }
    {
        std::vector<double> res;
        for (int n = 3; n <= N; ++n)
            res.push_back(alpha_numeric_check(build_series<precise_real>(1.0, 2.0, 1.0, n), 0.1, 0.8));
        bool decreasing = true;
        for (std::size_t i = 1; i < res.size(); ++i) decreasing = decreasing && res[i] < res[i - 1];
        r.add_flag("numeric_residual_strictly_decreasing_3_to_" + std::to_string(N), decreasing);
        r.add("numeric_residual_order_" + std::to_string(N), res.back(), 1e-6);
        r.add("numeric_residual_mu0", alpha_numeric_check(build_series<double>(1.0, 2.0, 0.0, 6), 0.1, 5.0), 1e-12);
    }
    {
        const AlphaSeries s = build_series<double>(1.0, 2.0, 1.0, 10);
        double worst = 0.0;
        for (double t : grid(0.05, 0.8, 31)) {
            const double prod = s.alpha(t) / (s.a.front() * t) * s.reciprocal(t);
            worst = std::max(worst, std::abs(prod - 1.0) - std::pow(t, 22.0));
        }
        r.add("reciprocal_identity", std::max(0.0, worst), 1e-12);

        const rational l2(4), m2(1);
        const auto ra = ratio_recursion<rational>(l2, m2, 6);
        const auto rt = reciprocal_series<rational>(ra, 6);
        bool same = true;
        for (int n = 0; n <= 6; ++n) same = same && reciprocal_by_determinant<rational>(ra, n) == rt[n];
        r.add_flag("reciprocal_determinant_form", same);

        using boost::math::quadrature::gauss_kronrod;
        const double quad = 2.0 * gauss_kronrod<double, 31>::integrate(
                                      [&](double t) { return s.omega0 / s.alpha(t); }, 0.5, 0.8, 15, 1e-15);
        r.add("theta_series_vs_quadrature", std::abs(theta_series(s, 0.5, 0.8) - quad), 1e-8);

        const AlphaSeries s0 = build_series<double>(1.0, 2.0, 0.0, 4);
        r.add("theta_series_mu0_log",
              std::abs(theta_series(s0, 0.2, 0.9) - 2.0 / s0.a.front() * std::log(0.9 / 0.2)), 1e-13);
    }
    {
        LargeK0Params p;
        p.Omega0 = 2.0;
        p.k0 = 1.0;
        p.omega0 = 1.0;
        p.c1 = 1.0;
        double worst = 0.0;
        for (double t : grid(0.0, 1.0, 101)) worst = std::max(worst, std::abs(large_k0_approx(p, t).eom_residual));
        r.add("large_k0_eom_residual", worst, 0.05);
    }
    {   // bessel_type model closure and full-stack minimum along an integrated trajectory
        const ModelDescriptor m = bessel_type();
        const MinUncertaintyModel mm = make_min_model(m, SampleWindow{0.05, 1.5, 101}, 1e-9);
        const SigmaJet j = sigma_minimum_jet(mm, 0.05);
        EpOptions opt = tight();
        opt.dt_out = 0.01;
        double worst = 0.0, drift = 0.0;
        for (const auto& st : integrate_ep(m, {j.sigma, j.sigma_dot}, 0.05, 1.5, opt)) {
            worst = std::max(worst, std::abs(quadratures(m, st).product - 0.5));
            drift = std::max(drift, rel(st.sigma, sigma_minimum_jet(mm, st.t).sigma));
        }
        r.add("bessel_type_full_stack_minimum", worst, 1e-8);
        r.add("bessel_type_full_stack_sigma", drift, 1e-8);
    }
    return r;
}

inline Report suite_bessel() {
    using namespace detail;
    Report r{"bessel", {}, true};
    const std::pair<double, const char*> orders[] = {{0.0, "0"}, {1.0 / 3.0, "1/3"}, {0.5, "1/2"}, {1.0, "1"}};
    for (const auto& [rho, label] : orders) {
        double worst = 0.0;
        for (double x : grid(0.1, 20.0, 400))
            worst = std::max(worst, std::abs(bessel::bessel_ode_residual(rho, x, bessel::besselj(rho, x))));
        r.add(std::string("bessel_ode/rho=") + label, worst, 1e-8);
    }
    r.add("reduction/rho=1/2", bessel_reduction_check(1.0, 1.0, 0.0, grid(0.1, 20.0, 200)), 1e-10);
    r.add("reduction/rho=0", bessel_reduction_check(1.0, 1.0, 0.5, grid(0.1, 20.0, 200)), 1e-7);
    r.add("reduction/rho=1/3", bessel_reduction_check(1.0, 1.0, std::sqrt(0.25 - 1.0 / 9.0), grid(0.1, 20.0, 200)), 1e-7);
    r.add("reduction/rho=1", bessel_reduction_check_nu2(1.0, 1.0, -0.75, grid(0.1, 20.0, 200)), 1e-7);
    {
        const PowerLawSolutions pl = power_law(3.0 / 16.0);
        double worst = 0.0;
        for (double t : grid(0.1, 10.0, 100))
            worst = std::max({worst, std::abs(power_law_eom_residual(3.0 / 16.0, pl.first(t), t)),
                              std::abs(power_law_eom_residual(3.0 / 16.0, pl.second(t), t))});
        r.add("power_law_quarter", worst, 1e-10);
    }
    return r;
}

inline Report run_suite(const std::string& name, const Options& o = {}) {
    if (name == "models") return suite_models();
    if (name == "ermakov") return suite_ermakov();
    if (name == "bogolubov") return suite_bogolubov();
    if (name == "quantum") return suite_quantum();
    if (name == "minimum") return suite_minimum();
    if (name == "series") return suite_series(o);
    if (name == "bessel") return suite_bessel();
    if (name == "all") {
        Report all{"all", {}, true};
        for (const auto& n : suite_names()) {
            Report part = run_suite(n, o);
            for (auto& c : part.checks) {
                c.name = n + "." + c.name;
                all.pass = all.pass && c.pass;
                all.checks.push_back(std::move(c));
            }
        }
        return all;
    }
    throw ParameterError("unknown verify suite '" + name + "'");
}

inline nlohmann::ordered_json to_json(const Report& r) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"max_err", c.max_err}, {"tol", c.tol}});
    return {{"suite", r.suite}, {"checks", checks}, {"pass", r.pass}};
}

} // namespace tdo::verify
