#include "wgm/config.hpp"

#include <json.hpp>

#include <set>
#include <sstream>
#include <stdexcept>

namespace wgm {

using nlohmann::json;

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::potential: return "potential";
        case ExperimentKind::agmon: return "agmon";
        case ExperimentKind::solve: return "solve";
        case ExperimentKind::quasimode: return "quasimode";
        case ExperimentKind::decay: return "decay";
        case ExperimentKind::waves: return "waves";
        case ExperimentKind::report: return "report";
    }
    return "?";
}

std::string to_string(ExportFormat format) {
    switch (format) {
        case ExportFormat::csv: return "csv";
        case ExportFormat::json: return "json";
        case ExportFormat::gnuplot: return "gnuplot";
    }
    return "?";
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw std::invalid_argument("config: " + path + ": " + message);
}

void reject_unknown(const json& obj, const std::string& path,
                    const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown key");
}

double require_number(const json& obj, const std::string& path, const std::string& key,
                      double fallback, bool* present = nullptr) {
    if (!obj.contains(key)) {
        if (present) *present = false;
        return fallback;
    }
    if (present) *present = true;
    if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
    return obj[key].get<double>();
}

ExperimentKind parse_kind(const std::string& name, const std::string& path) {
    if (name == "potential") return ExperimentKind::potential;
    if (name == "agmon") return ExperimentKind::agmon;
    if (name == "solve") return ExperimentKind::solve;
    if (name == "quasimode") return ExperimentKind::quasimode;
    if (name == "decay") return ExperimentKind::decay;
    if (name == "waves") return ExperimentKind::waves;
    if (name == "report" || name == "full-report") return ExperimentKind::report;
    fail(path, "unknown experiment '" + name + "'");
}

ExportFormat parse_format(const std::string& name, const std::string& path) {
    if (name == "csv") return ExportFormat::csv;
    if (name == "json") return ExportFormat::json;
    if (name == "gnuplot") return ExportFormat::gnuplot;
    fail(path, "unknown format '" + name + "'");
}

std::vector<int> expand_range(const json& arr, const std::string& path) {
    if (!arr.is_array() || arr.size() != 3) fail(path, "expected [lo, hi, step]");
    const int lo = arr[0].get<int>(), hi = arr[1].get<int>(), step = arr[2].get<int>();
    if (step <= 0 || hi < lo) fail(path, "expected lo <= hi and step > 0");
    std::vector<int> out;
    for (int v = lo; v <= hi; v += step) out.push_back(v);
    return out;
}

}  // namespace

DomainSpec ExperimentConfig::make_domain() const {
    if (profile_kind == "annulus")
        return build_annulus(R0, R1, R2, c_minus, c_plus);
    if (profile_kind == "disk")
        return build_surface(RadialProfile::disk(L), s0, c_minus, c_plus);
    if (profile_kind == "tabulated")
        return build_surface(RadialProfile::tabulated(profile_samples), s0, c_minus, c_plus);
    throw std::invalid_argument("config: domain.profile.kind: unknown kind '" + profile_kind +
                                "'");
}

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw std::invalid_argument("config: top level must be an object");

    ExperimentConfig cfg;
    cfg.raw = json_text;
    reject_unknown(root, "<root>",
                   {"domain", "experiment", "params", "output", "threads"});

    if (root.contains("domain")) {
        const json& dom = root["domain"];
        if (!dom.is_object()) fail("domain", "expected an object");
        reject_unknown(dom, "domain",
                       {"profile", "R0", "R1", "R2", "L", "s0", "c_minus", "c_plus"});
        if (dom.contains("profile")) {
            const json& prof = dom["profile"];
            if (!prof.is_object()) fail("domain.profile", "expected an object");
            reject_unknown(prof, "domain.profile", {"kind", "samples"});
            if (prof.contains("kind")) cfg.profile_kind = prof["kind"].get<std::string>();
            if (prof.contains("samples")) {
                if (!prof["samples"].is_array())
                    fail("domain.profile.samples", "expected an array of [s, R] pairs");
                for (const auto& pair : prof["samples"]) {
                    if (!pair.is_array() || pair.size() != 2)
                        fail("domain.profile.samples", "expected [s, R] pairs");
                    cfg.profile_samples.push_back({pair[0].get<double>(), pair[1].get<double>()});
                }
            }
        }
        cfg.R0 = require_number(dom, "domain", "R0", cfg.R0);
        cfg.R1 = require_number(dom, "domain", "R1", cfg.R1);
        cfg.R2 = require_number(dom, "domain", "R2", cfg.R2);
        cfg.L = require_number(dom, "domain", "L", cfg.L);
        cfg.s0 = require_number(dom, "domain", "s0", cfg.s0);
        cfg.c_minus = require_number(dom, "domain", "c_minus", cfg.c_minus);
        cfg.c_plus = require_number(dom, "domain", "c_plus", cfg.c_plus);
        if (cfg.profile_kind == "annulus") cfg.s0 = cfg.R1;
    }

    if (root.contains("experiment"))
        cfg.experiment = parse_kind(root["experiment"].get<std::string>(), "experiment");

    if (root.contains("params")) {
        const json& par = root["params"];
        if (!par.is_object()) fail("params", "expected an object");
        reject_unknown(par, "params",
                       {"n_range", "n_values", "n", "nodes", "pole_cut", "omega", "eps", "T",
                        "h_list", "E", "window", "oracle", "seed", "potential_samples",
                        "agmon_samples"});
        if (par.contains("n_range")) cfg.n_values = expand_range(par["n_range"], "params.n_range");
        if (par.contains("n_values")) {
            cfg.n_values.clear();
            for (const auto& v : par["n_values"]) cfg.n_values.push_back(v.get<int>());
        }
        if (par.contains("n")) cfg.n = par["n"].get<int>();
        if (par.contains("nodes")) cfg.nodes = par["nodes"].get<int>();
        cfg.pole_cut = require_number(par, "params", "pole_cut", cfg.pole_cut);
        if (par.contains("omega")) {
            if (!par["omega"].is_array() || par["omega"].size() != 2)
                fail("params.omega", "expected [a, b]");
            cfg.omega = {par["omega"][0].get<double>(), par["omega"][1].get<double>()};
        }
        cfg.eps = require_number(par, "params", "eps", cfg.eps);
        cfg.T = require_number(par, "params", "T", cfg.T);
        if (par.contains("h_list")) {
            cfg.h_list.clear();
            for (const auto& v : par["h_list"]) cfg.h_list.push_back(v.get<double>());
        }
        cfg.E = require_number(par, "params", "E", cfg.E);
        if (par.contains("window")) {
            if (!par["window"].is_array() || par["window"].size() != 2)
                fail("params.window", "expected [lo, hi]");
            cfg.window = {par["window"][0].get<double>(), par["window"][1].get<double>()};
        }
        if (par.contains("oracle")) cfg.oracle = par["oracle"].get<bool>();
        if (par.contains("seed")) cfg.seed = par["seed"].get<std::uint64_t>();
        if (par.contains("potential_samples"))
            cfg.potential_samples = par["potential_samples"].get<int>();
        if (par.contains("agmon_samples")) cfg.agmon_samples = par["agmon_samples"].get<int>();
    }

    if (root.contains("output")) {
        const json& out = root["output"];
        if (!out.is_object()) fail("output", "expected an object");
        reject_unknown(out, "output", {"dir", "format"});
        if (out.contains("dir")) cfg.out_dir = out["dir"].get<std::string>();
        if (out.contains("format"))
            cfg.format = parse_format(out["format"].get<std::string>(), "output.format");
    }
    if (root.contains("threads")) {
        cfg.threads = root["threads"].get<int>();
        if (cfg.threads < 1) fail("threads", "must be >= 1");
    }

    // cross-field validation against the selected experiment
    const double interface_s = cfg.profile_kind == "annulus" ? cfg.R1 : cfg.s0;
    if (cfg.experiment == ExperimentKind::decay || cfg.experiment == ExperimentKind::waves ||
        cfg.experiment == ExperimentKind::report) {
        if (cfg.omega[0] >= cfg.omega[1]) fail("params.omega", "expected a < b");
        if (cfg.omega[0] <= interface_s && interface_s <= cfg.omega[1])
            fail("params.omega", "dist(omega, s0) must be positive");
        if (cfg.n_values.size() < 5) fail("params.n_range", "need at least 5 sweep values");
    }
    if (cfg.experiment == ExperimentKind::quasimode || cfg.experiment == ExperimentKind::report) {
        if (cfg.h_list.size() < 2) fail("params.h_list", "need at least 2 values");
        for (std::size_t i = 1; i < cfg.h_list.size(); ++i)
            if (!(cfg.h_list[i] < cfg.h_list[i - 1]))
                fail("params.h_list", "must be strictly decreasing");
    }
    if (cfg.experiment == ExperimentKind::solve && cfg.n < 0)
        fail("params.n", "must be nonnegative");
    if (cfg.eps <= 0.0) fail("params.eps", "must be positive");
    if (cfg.T <= 0.0) fail("params.T", "must be positive");
    return cfg;
}

std::string default_config_text(ExperimentKind kind) {
    json root;
    root["domain"] = {{"profile", {{"kind", "annulus"}}},
                      {"R0", 0.5},
                      {"R1", 1.0},
                      {"R2", 1.5},
                      {"c_minus", 1.0},
                      {"c_plus", 4.0}};
    root["experiment"] = to_string(kind);
    root["params"] = {{"n_range", {20, 80, 10}},
                      {"n", 40},
                      {"omega", {1.4, 1.5}},
                      {"eps", 0.25},
                      {"T", 1.0},
                      {"h_list", {0.05, 0.025, 0.0125, 0.00625}},
                      {"seed", 2654435769}};
    root["output"] = {{"dir", "out"}, {"format", "csv"}};
    root["threads"] = 1;
    return root.dump(2) + "\n";
}

}  // namespace wgm
