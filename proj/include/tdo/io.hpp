#pragma once

#include <charconv>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "tdo/alpha_series.hpp"
#include "tdo/ermakov.hpp"
#include "tdo/minimum.hpp"
#include "tdo/quantum.hpp"

namespace tdo::io {

using json = nlohmann::ordered_json;

/// Shortest-safe text for a double: 17 significant digits, '.' decimal, locale independent.
inline std::string format_real(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (res.ec != std::errc{}) throw FormatError("format_real: conversion failed");
    return std::string(buf, res.ptr);
}

inline void write_row(std::ostream& os, const std::vector<double>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        os << format_real(row[i]);
    }
    os << '\n';
}

inline constexpr const char* trajectory_header = "t,sigma,sigma_dot,theta,k,F";
inline constexpr const char* uncertainty_header = "t,varQ,varP,product,mu_re,mu_im,nu_re,nu_im";

inline void write_trajectory_csv(std::ostream& os, const std::vector<ErmakovState>& states) {
    os << trajectory_header << '\n';
    for (const auto& s : states) write_row(os, {s.t, s.sigma, s.sigma_dot, s.theta, s.k, s.F});
}

struct UncertaintyRow {
    QuadratureReport q;
    BogolubovPair b;
};

inline void write_uncertainty_csv(std::ostream& os, const std::vector<UncertaintyRow>& rows) {
    os << uncertainty_header << '\n';
    for (const auto& r : rows)
        write_row(os, {r.q.t, r.q.varQ, r.q.varP, r.q.product, r.b.mu.real(), r.b.mu.imag(), r.b.nu.real(),
                       r.b.nu.imag()});
}

inline json trajectory_json(const std::vector<ErmakovState>& states) {
    json arr = json::array();
    for (const auto& s : states)
        arr.push_back({{"t", s.t}, {"sigma", s.sigma}, {"sigma_dot", s.sigma_dot}, {"theta", s.theta}, {"k", s.k},
                       {"F", s.F}});
    return arr;
}

inline json uncertainty_json(const std::vector<UncertaintyRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"t", r.q.t},
                       {"varQ", r.q.varQ},
                       {"varP", r.q.varP},
                       {"product", r.q.product},
                       {"mu_re", r.b.mu.real()},
                       {"mu_im", r.b.mu.imag()},
                       {"nu_re", r.b.nu.real()},
                       {"nu_im", r.b.nu.imag()}});
    return arr;
}

inline json series_json(const AlphaSeries& s) {
    return json{{"omega0", s.omega0}, {"lambda", s.lambda}, {"mu_s", s.mu_s},
                {"order", s.order},   {"a", s.a},           {"a_tilde", s.a_tilde}};
}

inline json criterion_json(const CriterionReport& r) {
    return json{{"is_minimum", r.is_minimum}, {"c", r.c}, {"max_violation", r.max_violation}, {"samples", r.samples}};
}

} // namespace tdo::io
