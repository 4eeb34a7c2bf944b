#pragma once

#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tdo/alpha_series.hpp"
#include "tdo/errors.hpp"
#include "tdo/interpolation.hpp"

namespace tdo {

/// Time interval with optionally open endpoints. Infinite endpoints are allowed.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_open = false;
    bool hi_open = false;

    bool contains(double t) const {
        const bool above = lo_open ? t > lo : t >= lo;
        const bool below = hi_open ? t < hi : t <= hi;
        return above && below;
    }
};

/// m and its first three time derivatives at one instant.
struct MassJet {
    double m, m_dot, m_ddot, m_dddot;
};

/// omega and its first time derivative at one instant.
struct FrequencyJet {
    double omega, omega_dot;
};

/// A scalar function of time with its first two derivatives.
struct Jet {
    double value = 0.0, d1 = 0.0, d2 = 0.0;
};

/// An oscillator with time-dependent mass m(t) and frequency omega(t).
/// Immutable once built; copies share the underlying closures.
class ModelDescriptor {
public:
    using MassFn = std::function<MassJet(double)>;
    using FrequencyFn = std::function<FrequencyJet(double)>;

    ModelDescriptor(std::string name, Interval domain, std::map<std::string, double> params,
                    MassFn mass, FrequencyFn frequency)
        : name_(std::move(name)),
          domain_(domain),
          params_(std::move(params)),
          mass_(std::make_shared<const MassFn>(std::move(mass))),
          frequency_(std::make_shared<const FrequencyFn>(std::move(frequency))) {}

    const std::string& name() const { return name_; }
    const Interval& domain() const { return domain_; }
    const std::map<std::string, double>& params() const { return params_; }

    double param(const std::string& key) const {
        auto it = params_.find(key);
        if (it == params_.end()) throw ParameterError("model '" + name_ + "' has no parameter '" + key + "'");
        return it->second;
    }

    MassJet mass(double t) const { return (*mass_)(t); }
    FrequencyJet frequency(double t) const { return (*frequency_)(t); }

    double m(double t) const { return mass(t).m; }
    double m_dot(double t) const { return mass(t).m_dot; }
    double m_ddot(double t) const { return mass(t).m_ddot; }
    double m_dddot(double t) const { return mass(t).m_dddot; }
    double omega(double t) const { return frequency(t).omega; }
    double omega_dot(double t) const { return frequency(t).omega_dot; }

    void require_in_domain(double t) const {
        if (!domain_.contains(t))
            throw DomainError("t=" + std::to_string(t) + " outside domain of model '" + name_ + "'");
    }

private:
    std::string name_;
    Interval domain_;
    std::map<std::string, double> params_;
    std::shared_ptr<const MassFn> mass_;
    std::shared_ptr<const FrequencyFn> frequency_;
};

/// Damping coefficient M = m'/m and effective squared frequency
/// Omega^2 = (4 omega^2 - 2 M' - M^2)/4 of the reduced equation y'' + Omega^2 y = 0.
struct CoefficientSample {
    double t = 0.0;
    double M = 0.0;
    double Omega2 = 0.0;
    double M_dot = 0.0;
    double Omega2_dot = 0.0; // d(Omega^2)/dt
};

inline CoefficientSample coefficients(const ModelDescriptor& model, double t) {
    model.require_in_domain(t);
    const MassJet mj = model.mass(t);
    const FrequencyJet fj = model.frequency(t);
    if (!(mj.m > 0.0)) throw DomainError("model '" + model.name() + "': m(t) <= 0");

    const double M = mj.m_dot / mj.m;
    const double M_dot = mj.m_ddot / mj.m - M * M;
    const double M_ddot = mj.m_dddot / mj.m - M * mj.m_ddot / mj.m - 2.0 * M * M_dot;

    CoefficientSample s;
    s.t = t;
    s.M = M;
    s.M_dot = M_dot;
    s.Omega2 = 0.25 * (4.0 * fj.omega * fj.omega - 2.0 * M_dot - M * M);
    s.Omega2_dot = 2.0 * fj.omega * fj.omega_dot - 0.5 * M_ddot - 0.5 * M * M_dot;
    return s;
}

/// q'' + M q' + omega^2 q for a trajectory q given as a Jet-valued callable.
template <class Trajectory>
double eom_residual(const ModelDescriptor& model, Trajectory&& q, double t) {
    model.require_in_domain(t);
    const Jet j = q(t);
    const MassJet mj = model.mass(t);
    const double w = model.omega(t);
    return j.d2 + (mj.m_dot / mj.m) * j.d1 + w * w * j.value;
}

// ---------------------------------------------------------------------------
// Catalog

namespace models_detail {

inline void require_positive(const std::string& model, const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ParameterError(model + ": parameter '" + name + "' must be positive and finite");
}

} // namespace models_detail

inline ModelDescriptor harmonic(double m0 = 1.0, double omega0 = 1.0) {
    models_detail::require_positive("harmonic", "m0", m0);
    models_detail::require_positive("harmonic", "omega0", omega0);
    return ModelDescriptor(
        "harmonic", Interval{}, {{"m0", m0}, {"omega0", omega0}},
        [m0](double) { return MassJet{m0, 0.0, 0.0, 0.0}; },
        [omega0](double) { return FrequencyJet{omega0, 0.0}; });
}

/// m = m0 exp(gamma t), omega = omega0; Omega^2 = omega0^2 - gamma^2/4 may have either sign.
inline ModelDescriptor kanai_caldirola(double m0 = 1.0, double omega0 = 1.0, double gamma = 1.0) {
    models_detail::require_positive("kanai_caldirola", "m0", m0);
    models_detail::require_positive("kanai_caldirola", "omega0", omega0);
    if (!std::isfinite(gamma)) throw ParameterError("kanai_caldirola: gamma must be finite");
    return ModelDescriptor(
        "kanai_caldirola", Interval{}, {{"m0", m0}, {"omega0", omega0}, {"gamma", gamma}},
        [m0, gamma](double t) {
            const double m = m0 * std::exp(gamma * t);
            return MassJet{m, gamma * m, gamma * gamma * m, gamma * gamma * gamma * m};
        },
        [omega0](double) { return FrequencyJet{omega0, 0.0}; });
}

/// omega = omega0 exp(-gamma0 t), m = exp(gamma0 t) / (2 c^2 omega0), so m omega = 1/(2 c^2).
inline ModelDescriptor exp_frequency(double omega0 = 1.0, double gamma0 = 1.0,
                                     double c = 0.70710678118654752) {
    models_detail::require_positive("exp_frequency", "omega0", omega0);
    models_detail::require_positive("exp_frequency", "gamma0", gamma0);
    models_detail::require_positive("exp_frequency", "c", c);
    const double scale = 1.0 / (2.0 * c * c * omega0);
    return ModelDescriptor(
        "exp_frequency", Interval{}, {{"omega0", omega0}, {"gamma0", gamma0}, {"c", c}},
        [scale, gamma0](double t) {
            const double m = scale * std::exp(gamma0 * t);
            const double g = gamma0;
            return MassJet{m, g * m, g * g * m, g * g * g * m};
        },
        [omega0, gamma0](double t) {
            const double w = omega0 * std::exp(-gamma0 * t);
            return FrequencyJet{w, -gamma0 * w};
        });
}

/// m = m0 t^2, omega = 1/(2 m0 c^2 t^2), defined for t >= t_min > 0.
inline ModelDescriptor tsquared(double m0 = 1.0, double c = 0.70710678118654752, double t_min = 1e-3) {
    models_detail::require_positive("tsquared", "m0", m0);
    models_detail::require_positive("tsquared", "c", c);
    models_detail::require_positive("tsquared", "t_min", t_min);
    const double a = 1.0 / (2.0 * m0 * c * c);
    return ModelDescriptor(
        "tsquared", Interval{t_min, std::numeric_limits<double>::infinity(), false, false},
        {{"m0", m0}, {"c", c}, {"t_min", t_min}},
        [m0](double t) { return MassJet{m0 * t * t, 2.0 * m0 * t, 2.0 * m0, 0.0}; },
        [a](double t) {
            const double w = a / (t * t);
            return FrequencyJet{w, -2.0 * w / t};
        });
}

/// m = m0 alpha(t), omega = omega0 / alpha(t) with alpha the truncated odd
/// series of order `order`; lambda = 2 Omega0 nu, mu_s = 2 Omega0 k0.
/// The domain is [t_min, 2/mu_s] (unbounded above when k0 = 0).
inline ModelDescriptor bessel_type(double m0 = 1.0, double omega0 = 1.0, double Omega0 = 1.0,
                                   double k0 = 0.5, double nu = 1.0, int order = 10,
                                   double t_min = 1e-3) {
    models_detail::require_positive("bessel_type", "m0", m0);
    models_detail::require_positive("bessel_type", "omega0", omega0);
    models_detail::require_positive("bessel_type", "t_min", t_min);
    const double lambda = 2.0 * Omega0 * nu;
    const double mu_s = 2.0 * Omega0 * k0;
    auto series = std::make_shared<const AlphaSeries>(build_series<double>(omega0, lambda, mu_s, order));
    const double t_max = series->radius_guard();
    if (!(t_max > t_min)) throw ParameterError("bessel_type: empty domain (t_min >= 2/mu_s)");

    return ModelDescriptor(
        "bessel_type", Interval{t_min, t_max, false, false},
        {{"m0", m0}, {"omega0", omega0}, {"Omega0", Omega0}, {"k0", k0}, {"nu", nu},
         {"order", static_cast<double>(order)}, {"t_min", t_min}, {"lambda", lambda}, {"mu_s", mu_s}},
        [m0, series](double t) {
            const auto j = series->jet(t);
            return MassJet{m0 * j[0], m0 * j[1], m0 * j[2], m0 * j[3]};
        },
        [omega0, series](double t) {
            const auto j = series->jet(t);
            const double w = omega0 / j[0];
            return FrequencyJet{w, -w * j[1] / j[0]};
        });
}

inline const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names{"harmonic", "kanai_caldirola", "exp_frequency",
                                                "tsquared", "bessel_type"};
    return names;
}

/// Builds a catalog model by name, overriding any subset of its default parameters.
inline ModelDescriptor make_model(const std::string& name, const std::map<std::string, double>& overrides = {}) {
    auto get = [&](const char* key, double fallback) {
        auto it = overrides.find(key);
        return it == overrides.end() ? fallback : it->second;
    };
    auto reject_unknown = [&](std::initializer_list<const char*> allowed) {
        for (const auto& [k, v] : overrides) {
            bool ok = false;
            for (const char* a : allowed) ok = ok || k == a;
            if (!ok) throw ParameterError("model '" + name + "' does not take parameter '" + k + "'");
        }
    };

    if (name == "harmonic") {
        reject_unknown({"m0", "omega0"});
        return harmonic(get("m0", 1.0), get("omega0", 1.0));
    }
    if (name == "kanai_caldirola") {
        reject_unknown({"m0", "omega0", "gamma"});
        return kanai_caldirola(get("m0", 1.0), get("omega0", 1.0), get("gamma", 1.0));
    }
    if (name == "exp_frequency") {
        reject_unknown({"omega0", "gamma0", "c"});
        return exp_frequency(get("omega0", 1.0), get("gamma0", 1.0), get("c", 0.70710678118654752));
    }
    if (name == "tsquared") {
        reject_unknown({"m0", "c", "t_min"});
        return tsquared(get("m0", 1.0), get("c", 0.70710678118654752), get("t_min", 1e-3));
    }
    if (name == "bessel_type") {
        reject_unknown({"m0", "omega0", "Omega0", "k0", "nu", "order", "t_min"});
        const double order = get("order", 10.0);
        if (order != std::floor(order)) throw ParameterError("bessel_type: order must be an integer");
        return bessel_type(get("m0", 1.0), get("omega0", 1.0), get("Omega0", 1.0), get("k0", 0.5),
                           get("nu", 1.0), static_cast<int>(order), get("t_min", 1e-3));
    }
    throw ParameterError("unknown model '" + name + "'");
}

/// The five catalog models with default parameters, in a fixed order.
inline std::vector<ModelDescriptor> catalog() {
    std::vector<ModelDescriptor> out;
    for (const auto& n : catalog_names()) out.push_back(make_model(n));
    return out;
}

// ---------------------------------------------------------------------------
// Tabulated models

struct TabulatedSample {
    double t, m, omega;
};

/// Model from (t, m, omega) samples through monotone cubic interpolation.
/// The domain is the closed tabulated range.
inline ModelDescriptor tabulated_model(const std::vector<TabulatedSample>& samples, std::string name = "tabulated") {
    if (samples.size() < 4) throw FormatError("tabulated model needs at least 4 rows");
    std::vector<double> t, m, w;
    for (const auto& s : samples) {
        if (!(s.m > 0.0)) throw FormatError("tabulated model: m must be positive");
        t.push_back(s.t);
        m.push_back(s.m);
        w.push_back(s.omega);
    }
    auto mi = std::make_shared<const MonotoneCubic>(t, m);
    auto wi = std::make_shared<const MonotoneCubic>(t, w);
    return ModelDescriptor(
        std::move(name), Interval{t.front(), t.back(), false, false},
        {{"rows", static_cast<double>(samples.size())}},
        [mi](double x) {
            const auto v = mi->eval(x);
            return MassJet{v[0], v[1], v[2], v[3]};
        },
        [wi](double x) {
            const auto v = wi->eval(x);
            return FrequencyJet{v[0], v[1]};
        });
}

/// Parses CSV with header `t,m,omega` and strictly increasing t.
inline std::vector<TabulatedSample> read_tabulated_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("tabulated csv: empty input");
    auto strip = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
    };
    if (strip(line) != "t,m,omega") throw FormatError("tabulated csv: header must be 't,m,omega'");

    std::vector<TabulatedSample> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(line);
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        double v[3];
        int n = 0;
        while (std::getline(ss, cell, ',')) {
            if (n >= 3) throw FormatError("tabulated csv: too many columns on line " + std::to_string(lineno));
            std::size_t used = 0;
            try {
                v[n] = std::stod(strip(cell), &used);
            } catch (const std::exception&) {
                throw FormatError("tabulated csv: bad number on line " + std::to_string(lineno));
            }
            if (used != strip(cell).size())
                throw FormatError("tabulated csv: bad number on line " + std::to_string(lineno));
            ++n;
        }
        if (n != 3) throw FormatError("tabulated csv: expected 3 columns on line " + std::to_string(lineno));
        if (!rows.empty() && !(v[0] > rows.back().t))
            throw FormatError("tabulated csv: t must be strictly increasing (line " + std::to_string(lineno) + ")");
        rows.push_back({v[0], v[1], v[2]});
    }
    if (rows.size() < 4) throw FormatError("tabulated csv: need at least 4 data rows");
    return rows;
}

} // namespace tdo
