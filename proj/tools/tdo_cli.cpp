// tdo: command-line front end for the time-dependent oscillator library.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tdo/tdo.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_failed_checks = 1;
constexpr int exit_config = 2;
constexpr int exit_solver = 3;

/// Raised for anything wrong with the user's configuration.
struct ConfigError : tdo::error {
    explicit ConfigError(const std::string& msg) : tdo::error("ConfigError", msg) {}
};

struct Flags {
    std::optional<std::string> model, out, format, config, table;
    std::optional<double> t0, t1, dt_out, hbar, tol, sigma0, sigma_dot0, K;
    std::vector<std::string> sweeps;
    std::map<std::string, std::optional<double>> params;
};

// Model-parameter flags and the catalog key they set.
const std::vector<std::pair<std::string, std::string>> param_flags{
    {"--omega0", "omega0"}, {"--gamma", "gamma"}, {"--gamma0", "gamma0"}, {"--m0", "m0"},
    {"--c", "c"},           {"--k0", "k0"},       {"--nu", "nu"},         {"--Omega0", "Omega0"},
    {"--lambda", "lambda"}, {"--mu", "mu_s"},     {"--order", "order"},   {"--t-min", "t_min"}};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
}

/// Overlays `top` onto `base`; nested "params" objects merge key by key.
void overlay(json& base, const json& top) {
    if (!top.is_object()) throw ConfigError("config must be a JSON object");
    for (auto it = top.begin(); it != top.end(); ++it) {
        if (it.key() == "params" && it.value().is_object() && base.contains("params"))
            for (auto p = it.value().begin(); p != it.value().end(); ++p) base["params"][p.key()] = p.value();
        else
            base[it.key()] = it.value();
    }
}

/// Resolved run configuration: CLI flags over the --config file over the
/// TDO_DEFAULT_CONFIG file over built-in defaults.
json resolve(const Flags& f) {
    json cfg = {{"model", "harmonic"}, {"t0", 0.0},   {"t1", 10.0},       {"dt_out", 0.1},
                {"hbar", 1.0},         {"tol", 1e-10}, {"format", "csv"}, {"params", json::object()}};
    if (const char* env = std::getenv("TDO_DEFAULT_CONFIG"); env && *env) overlay(cfg, read_json_file(env));
    if (f.config) overlay(cfg, read_json_file(*f.config));

    json cli = json::object();
    if (f.model) cli["model"] = *f.model;
    if (f.out) cli["out"] = *f.out;
    if (f.table) {
        cli["table"] = *f.table;
        if (!f.model) cli["model"] = "tabulated";
    }
    if (f.format) cli["format"] = *f.format;
    if (f.t0) cli["t0"] = *f.t0;
    if (f.t1) cli["t1"] = *f.t1;
    if (f.dt_out) cli["dt_out"] = *f.dt_out;
    if (f.hbar) cli["hbar"] = *f.hbar;
    if (f.tol) cli["tol"] = *f.tol;
    if (f.sigma0) cli["sigma0"] = *f.sigma0;
    if (f.sigma_dot0) cli["sigma_dot0"] = *f.sigma_dot0;
    if (f.K) cli["K"] = *f.K;
    json params = json::object();
    for (const auto& [key, v] : f.params)
        if (v) params[key] = *v;
    if (!params.empty()) cli["params"] = params;
    overlay(cfg, cli);
    return cfg;
}

double number(const json& cfg, const char* key) {
    if (!cfg.contains(key)) throw ConfigError(std::string("missing '") + key + "'");
    if (!cfg[key].is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return cfg[key].get<double>();
}

std::map<std::string, double> model_params(const json& cfg) {
    std::map<std::string, double> out;
    const json& p = cfg.at("params");
    if (!p.is_object()) throw ConfigError("'params' must be an object");
    for (auto it = p.begin(); it != p.end(); ++it) {
        if (!it.value().is_number()) throw ConfigError("parameter '" + it.key() + "' must be a number");
        out[it.key()] = it.value().get<double>();
    }
    return out;
}

/// bessel_type takes Omega0, k0, nu; --lambda and --mu are converted through
/// lambda = 2 Omega0 nu and mu_s = 2 Omega0 k0.
tdo::ModelDescriptor build_model(const json& cfg) {
    if (!cfg.at("model").is_string()) throw ConfigError("'model' must be a string");
    const std::string name = cfg.at("model").get<std::string>();
    if (name == "tabulated") {
        if (!cfg.contains("table") || !cfg["table"].is_string()) throw ConfigError("model 'tabulated' needs --table");
        const std::string path = cfg["table"].get<std::string>();
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open table '" + path + "'");
        return tdo::tabulated_model(tdo::read_tabulated_csv(in), "tabulated");
    }
    auto params = model_params(cfg);
    if (name == "bessel_type") {
        const double Om = params.count("Omega0") ? params["Omega0"] : 1.0;
        if (auto it = params.find("lambda"); it != params.end()) {
            params["nu"] = it->second / (2.0 * Om);
            params.erase(it);
        }
        if (auto it = params.find("mu_s"); it != params.end()) {
            params["k0"] = it->second / (2.0 * Om);
            params.erase(it);
        }
    }
    return tdo::make_model(name, params);
}

struct Window {
    double t0, t1, dt_out;
};

Window window(const json& cfg) {
    Window w{number(cfg, "t0"), number(cfg, "t1"), number(cfg, "dt_out")};
    if (!(w.t0 < w.t1)) throw ConfigError("need t0 < t1 (got t0=" + tdo::io::format_real(w.t0) +
                                          ", t1=" + tdo::io::format_real(w.t1) + ")");
    if (!(w.dt_out > 0.0)) throw ConfigError("dt_out must be positive");
    return w;
}

std::string format_of(const json& cfg) {
    const std::string f = cfg.at("format").get<std::string>();
    if (f != "csv" && f != "json") throw ConfigError("format must be csv or json (got '" + f + "')");
    return f;
}

std::vector<tdo::ErmakovState> trajectory(const tdo::ModelDescriptor& model, const json& cfg, const Window& w) {
    tdo::EpOptions opt;
    opt.rtol = number(cfg, "tol");
    if (!(opt.rtol > 0.0)) throw ConfigError("tol must be positive");
    opt.atol = 1e-2 * opt.rtol;
    opt.dt_out = w.dt_out;
    if (cfg.contains("K")) opt.K = number(cfg, "K");

    // Coefficients at t0 may throw DomainError; that is a solver-side failure.
    const tdo::CoefficientSample cs = tdo::coefficients(model, w.t0);
    tdo::InitialSigma init;
    init.sigma = cfg.contains("sigma0") ? number(cfg, "sigma0") : 1.0 / std::sqrt(2.0 * model.omega(w.t0));
    init.sigma_dot = cfg.contains("sigma_dot0") ? number(cfg, "sigma_dot0") : 0.5 * cs.M * init.sigma;
    return tdo::integrate_ep(model, init, w.t0, w.t1, opt);
}

void emit(const json& cfg, const std::string& text) {
    if (cfg.contains("out") && cfg["out"].is_string() && !cfg["out"].get<std::string>().empty()) {
        const std::string path = cfg["out"].get<std::string>();
        std::ofstream os(path, std::ios::binary);
        if (!os) throw ConfigError("cannot write '" + path + "'");
        os << text;
    } else {
        std::cout << text;
    }
}

std::string run_solve(const json& cfg) {
    const Window w = window(cfg);
    const std::string fmt = format_of(cfg);
    const tdo::ModelDescriptor model = build_model(cfg);
    const auto states = trajectory(model, cfg, w);
    std::ostringstream os;
    if (fmt == "csv") {
        tdo::io::write_trajectory_csv(os, states);
    } else {
        os << json{{"model", model.name()}, {"params", model.params()}, {"rows", tdo::io::trajectory_json(states)}}
                  .dump(2)
           << '\n';
    }
    return os.str();
}

std::string run_uncertainty(const json& cfg) {
    const Window w = window(cfg);
    const std::string fmt = format_of(cfg);
    const double hbar = number(cfg, "hbar");
    if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
    const tdo::ModelDescriptor model = build_model(cfg);
    const auto states = trajectory(model, cfg, w);
    const tdo::Reference ref = tdo::reference_at(model, w.t0);
    std::vector<tdo::io::UncertaintyRow> rows;
    rows.reserve(states.size());
    for (const auto& st : states) rows.push_back({tdo::quadratures(model, st, hbar), tdo::bogolubov(model, st, ref)});
    std::ostringstream os;
    if (fmt == "csv") {
        tdo::io::write_uncertainty_csv(os, rows);
    } else {
        os << json{{"model", model.name()}, {"hbar", hbar}, {"rows", tdo::io::uncertainty_json(rows)}}.dump(2)
           << '\n';
    }
    return os.str();
}

std::string run_check_min(const json& cfg, bool window_given) {
    const tdo::ModelDescriptor model = build_model(cfg);
    const double tol = cfg.contains("tol_criterion") ? number(cfg, "tol_criterion") : 1e-8;
    tdo::SampleWindow sw = tdo::default_window(model);
    if (window_given) {
        sw.t0 = number(cfg, "t0");
        sw.t1 = number(cfg, "t1");
        if (!(sw.t0 < sw.t1)) throw ConfigError("need t0 < t1");
    }
    json out = tdo::io::criterion_json(tdo::check_criterion(model, tol, sw));
    return out.dump(2) + '\n';
}

std::string run_series(const json& cfg, bool diagnostics) {
    const auto p = model_params(cfg);
    auto get = [&](const char* k, double d) { return p.count(k) ? p.at(k) : d; };
    const double order = get("order", 5.0);
    if (order != std::floor(order)) throw ConfigError("order must be an integer");
    const double omega0 = get("omega0", 1.0), lambda = get("lambda", 2.0), mu = get("mu_s", 1.0);
    const tdo::AlphaSeries s = tdo::build_series<double>(omega0, lambda, mu, static_cast<int>(order));
    json out = tdo::io::series_json(s);
    if (diagnostics) {
        const double Om = get("Omega0", 1.0);
        const double nu = get("nu", lambda / (2.0 * Om));
        const tdo::A3Candidates c = tdo::a3_candidates(omega0, lambda, mu, nu);
        out["diagnostics"] = {{"a3_from_recursion", c.from_recursion},
                              {"a3_from_nu_squared", c.from_nu_squared},
                              {"nu", nu},
                              {"radius_guard", s.radius_guard()}};
    }
    return out.dump(2) + '\n';
}

std::string run_catalog(const json& cfg) {
    json arr = json::array();
    for (const auto& m : tdo::catalog()) {
        const tdo::Interval& d = m.domain();
        arr.push_back({{"name", m.name()},
                       {"params", m.params()},
                       {"domain", {std::isfinite(d.lo) ? json(d.lo) : json("-inf"),
                                   std::isfinite(d.hi) ? json(d.hi) : json("inf")}}});
    }
    if (cfg.contains("format") && cfg["format"] == "json") return arr.dump(2) + '\n';
    std::ostringstream os;
    for (const auto& m : arr) {
        os << m["name"].get<std::string>();
        for (auto it = m["params"].begin(); it != m["params"].end(); ++it)
            os << ' ' << it.key() << '=' << tdo::io::format_real(it.value().get<double>());
        os << '\n';
    }
    return os.str();
}

struct Sweep {
    std::string key;
    std::vector<double> values;
};

Sweep parse_sweep(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw ConfigError("sweep '" + spec + "': expected param=lo:hi:n");
    Sweep s;
    s.key = spec.substr(0, eq);
    std::vector<std::string> parts;
    std::stringstream ss(spec.substr(eq + 1));
    for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
    if (parts.size() != 3) throw ConfigError("sweep '" + spec + "': expected param=lo:hi:n");
    double lo, hi;
    long n;
    try {
        std::size_t used = 0;
        lo = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("lo");
        hi = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("hi");
        n = std::stol(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("n");
    } catch (const std::exception&) {
        throw ConfigError("sweep '" + spec + "': bad number");
    }
    if (n < 1) throw ConfigError("sweep '" + spec + "': n must be >= 1");
    for (long i = 0; i < n; ++i) s.values.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1));
    return s;
}

std::string suffixed(const std::string& path, std::size_t index) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    const std::string tag = "_" + std::to_string(index);
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + tag;
    return path.substr(0, dot) + tag + path.substr(dot);
}

/// Applies one sweep value: model parameters go into "params", run-level keys replace the top-level entry.
json with_value(json cfg, const std::string& key, double v) {
    static const std::vector<std::string> run_keys{"t0", "t1", "dt_out", "hbar", "tol", "sigma0", "sigma_dot0", "K"};
    if (std::find(run_keys.begin(), run_keys.end(), key) != run_keys.end())
        cfg[key] = v;
    else
        cfg["params"][key == "mu" ? "mu_s" : key] = v;
    return cfg;
}

template <class Job>
void run_jobs(const json& cfg, const std::vector<std::string>& sweep_specs, Job job) {
    if (sweep_specs.empty()) {
        emit(cfg, job(cfg));
        return;
    }
    if (sweep_specs.size() > 1) throw ConfigError("only one --sweep is supported per run");
    if (!cfg.contains("out") || !cfg["out"].is_string()) throw ConfigError("--sweep requires --out");
    const Sweep sw = parse_sweep(sweep_specs.front());
    const std::string base = cfg["out"].get<std::string>();

    std::vector<json> configs;
    for (std::size_t i = 0; i < sw.values.size(); ++i) {
        json c = with_value(cfg, sw.key, sw.values[i]);
        c["out"] = suffixed(base, i);
        configs.push_back(std::move(c));
    }
    std::vector<std::future<std::string>> results;
    for (const auto& c : configs) results.push_back(std::async(std::launch::async, job, c));
    // Collect in index order so the first failure reported is deterministic.
    std::vector<std::string> texts;
    for (auto& r : results) texts.push_back(r.get());
    for (std::size_t i = 0; i < configs.size(); ++i) emit(configs[i], texts[i]);
}

int fail(const std::string& kind, const std::string& message, int code) {
    std::string line = message;
    for (char& ch : line)
        if (ch == '\n' || ch == '\r') ch = ' ';
    std::cerr << kind << ": " << line << '\n';
    return code;
}

bool is_config_kind(const std::string& kind) {
    return kind == "ConfigError" || kind == "ParameterError" || kind == "UnknownCase" || kind == "UnitsError" ||
           kind == "FormatError";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-dependent quantum oscillator toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "tdo 0.1.0");

    Flags f;
    app.add_option("--model", f.model, "Catalog model name");
    app.add_option("--t0", f.t0, "Start time");
    app.add_option("--t1", f.t1, "End time");
    app.add_option("--dt-out", f.dt_out, "Output spacing");
    app.add_option("--hbar", f.hbar, "Reduced Planck constant");
    app.add_option("--tol", f.tol, "Relative tolerance");
    app.add_option("--out", f.out, "Output file (default: stdout)");
    app.add_option("--format", f.format, "csv or json");
    app.add_option("--config", f.config, "JSON config file");
    app.add_option("--table", f.table, "CSV with header t,m,omega (selects the tabulated model)");
    app.add_option("--sweep", f.sweeps, "param=lo:hi:n, outputs suffixed by index");
    app.add_option("--sigma0", f.sigma0, "Initial sigma (default 1/sqrt(2 omega(t0)))");
    app.add_option("--sigma-dot0", f.sigma_dot0, "Initial sigma' (default M sigma0 / 2)");
    app.add_option("--K", f.K, "Constant of the auxiliary equation (default 1/4)");
    for (const auto& [flag, key] : param_flags) {
        f.params[key];
        app.add_option(flag, f.params[key], "Model parameter " + key);
    }

    auto* catalog = app.add_subcommand("catalog", "List the built-in models");
    auto* solve = app.add_subcommand("solve", "Integrate the auxiliary equation");
    auto* uncertainty = app.add_subcommand("uncertainty", "Quadrature variances and Bogolubov coefficients");
    auto* verify = app.add_subcommand("verify", "Run the built-in invariant suites");
    auto* series = app.add_subcommand("series", "Build the alpha power series");
    auto* check_min = app.add_subcommand("check-min", "Test the minimum-uncertainty criterion");

    std::string suite = "all";
    verify->add_option("--suite", suite, "models|ermakov|bogolubov|quantum|minimum|series|bessel|all");
    bool diagnostics = false;
    series->add_flag("--diagnostics", diagnostics, "Include both candidate a3 values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help, --version
        return fail("ConfigError", e.what(), exit_config);
    }

    try {
        const json cfg = resolve(f);
        if (catalog->parsed()) {
            emit(cfg, run_catalog(cfg));
        } else if (solve->parsed()) {
            run_jobs(cfg, f.sweeps, run_solve);
        } else if (uncertainty->parsed()) {
            run_jobs(cfg, f.sweeps, run_uncertainty);
        } else if (series->parsed()) {
            emit(cfg, run_series(cfg, diagnostics));
        } else if (check_min->parsed()) {
            const bool given = f.t0.has_value() || f.t1.has_value();
            json c = cfg;
            if (f.tol) c["tol_criterion"] = *f.tol;
            emit(c, run_check_min(c, given));
        } else if (verify->parsed()) {
            tdo::verify::Options opt;
            if (const auto& o = f.params.at("order"); o) {
                if (*o != std::floor(*o) || *o < 3) throw ConfigError("--order must be an integer >= 3");
                opt.order = static_cast<int>(*o);
            }
            const tdo::verify::Report r = tdo::verify::run_suite(suite, opt);
            emit(cfg, tdo::verify::to_json(r).dump(2) + '\n');
            return r.pass ? exit_ok : exit_failed_checks;
        }
    } catch (const tdo::error& e) {
        return fail(e.kind(), e.what(), is_config_kind(e.kind()) ? exit_config : exit_solver);
    } catch (const std::exception& e) {
        return fail("InternalError", e.what(), exit_solver);
    }
    return exit_ok;
}
