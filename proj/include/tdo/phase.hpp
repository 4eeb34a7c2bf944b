#pragma once

// Closed-form phases theta(t1) - theta(t0) for the solvable cases.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "tdo/alpha_series.hpp"
#include "tdo/ermakov.hpp"
#include "tdo/errors.hpp"
#include "tdo/series.hpp"

namespace tdo {

using PhaseParams = std::map<std::string, double>;

inline const std::vector<std::string>& phase_case_names() {
    static const std::vector<std::string> names{"harmonic_const", "harmonic_oscillating", "kc_hyperbolic",
                                                "exp_frequency",  "tsquared",             "bessel_series"};
    return names;
}

namespace phase_detail {

inline double get(const PhaseParams& p, const char* key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

inline double need(const PhaseParams& p, const std::string& id, const char* key) {
    auto it = p.find(key);
    if (it == p.end()) throw ParameterError("phase case '" + id + "' requires parameter '" + key + "'");
    return it->second;
}

} // namespace phase_detail

/// Parameters per case (defaults in brackets):
///   harmonic_const        omega0 [1]
///   harmonic_oscillating  omega0 [1], k [2], c1 [0]
///   kc_hyperbolic         omega0 [0.3], gamma [1], and either c1, c2 or sigma0, sigma_dot0, t_fit [0]
///   exp_frequency         omega0 [1], gamma0 [1]
///   tsquared              m0 [1], c [1/sqrt 2]
///   bessel_series         omega0 [1], lambda [2], mu_s [1], order [10]
inline double phase_closed_form(const std::string& id, const PhaseParams& p, double t0, double t1) {
    using phase_detail::get;
    const bool known = [&] {
        for (const auto& n : phase_case_names())
            if (n == id) return true;
        return false;
    }();
    if (!known) throw UnknownCase("no closed-form phase for case '" + id + "'");
    if (t0 == t1) return 0.0;

    if (id == "harmonic_const") return 2.0 * get(p, "omega0", 1.0) * (t1 - t0);

    if (id == "harmonic_oscillating") {
        OscillatingBranch b{get(p, "omega0", 1.0), get(p, "k", 2.0), get(p, "c1", 0.0)};
        if (!(b.omega > 0.0) || b.k < b.omega) throw ParameterError("harmonic_oscillating: need k >= omega0 > 0");
        return b.phase(t0, t1);
    }

    if (id == "kc_hyperbolic") {
        const double w = get(p, "omega0", 0.3), g = get(p, "gamma", 1.0);
        const double kappa2 = 0.25 * g * g - w * w;
        if (!(kappa2 > 0.0)) throw ParameterError("kc_hyperbolic: need gamma^2/4 > omega0^2");
        const double kappa = std::sqrt(kappa2);
        HyperbolicBranch b;
        if (p.count("sigma0")) {
            b = fit_hyperbolic(kappa, phase_detail::need(p, id, "sigma0"), get(p, "sigma_dot0", 0.0),
                               get(p, "t_fit", 0.0));
        } else {
            b.kappa = kappa;
            b.c1 = phase_detail::need(p, id, "c1");
            b.c2 = phase_detail::need(p, id, "c2");
        }
        return b.phase(t0, t1);
    }

    if (id == "exp_frequency") {
        const double w = get(p, "omega0", 1.0), g = get(p, "gamma0", 1.0);
        return 2.0 * w / g * (std::exp(-g * t0) - std::exp(-g * t1));
    }

    if (id == "tsquared") {
        const double m0 = get(p, "m0", 1.0), c = get(p, "c", 0.70710678118654752);
        if (!(t0 > 0.0) || !(t1 > 0.0)) throw DomainError("tsquared phase: times must be positive");
        return (1.0 / t0 - 1.0 / t1) / (m0 * c * c);
    }

    // bessel_series
    const double order = get(p, "order", 10.0);
    const auto s = build_series<double>(get(p, "omega0", 1.0), get(p, "lambda", 2.0), get(p, "mu_s", 1.0),
                                        static_cast<int>(order));
    return theta_series(s, t0, t1);
}

} // namespace tdo
