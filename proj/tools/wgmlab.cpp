// wgmlab: whispering-gallery mode laboratory.
//
// Subcommands run one experiment each against a JSON configuration (the
// canonical annulus when none is given); `report` runs everything. Exit code
// is 0 iff every executed invariant check passes.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "wgm/config.hpp"
#include "wgm/experiments.hpp"
#include "wgm/export.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct CliOverrides {
    std::string config_path;
    std::string out_dir;
    std::string format;
    int threads = 0;
    // per-subcommand knobs (0 / empty = keep config value)
    int n = 0;
    int nodes = 0;
    double pole_cut = -2.0;
    std::vector<double> window;
    std::vector<double> omega;
    std::vector<int> n_range;
    std::vector<double> h_list;
    double T = 0.0;
    double eps = 0.0;
    double E = -2.0;
    bool oracle = false;
};

wgm::ExperimentConfig resolve(wgm::ExperimentKind kind, const CliOverrides& cli) {
    std::string text = cli.config_path.empty() ? wgm::default_config_text(kind)
                                               : read_file(cli.config_path);
    wgm::ExperimentConfig cfg = wgm::parse_config(text);
    cfg.experiment = kind;
    if (!cli.out_dir.empty()) cfg.out_dir = cli.out_dir;
    if (!cli.format.empty()) {
        if (cli.format == "csv") cfg.format = wgm::ExportFormat::csv;
        else if (cli.format == "json") cfg.format = wgm::ExportFormat::json;
        else if (cli.format == "gnuplot") cfg.format = wgm::ExportFormat::gnuplot;
        else throw std::invalid_argument("unknown format: " + cli.format);
    }
    if (cli.threads > 0) cfg.threads = cli.threads;
    if (cli.n > 0) cfg.n = cli.n;
    if (cli.nodes > 0) cfg.nodes = cli.nodes;
    if (cli.pole_cut > -2.0) cfg.pole_cut = cli.pole_cut;
    if (cli.window.size() == 2) cfg.window = {cli.window[0], cli.window[1]};
    if (cli.omega.size() == 2) cfg.omega = {cli.omega[0], cli.omega[1]};
    if (cli.n_range.size() == 3) {
        cfg.n_values.clear();
        for (int v = cli.n_range[0]; v <= cli.n_range[1]; v += cli.n_range[2])
            cfg.n_values.push_back(v);
    }
    if (!cli.h_list.empty()) cfg.h_list = cli.h_list;
    if (cli.T > 0.0) cfg.T = cli.T;
    if (cli.eps > 0.0) cfg.eps = cli.eps;
    if (cli.E > -2.0) cfg.E = cli.E;
    if (cli.oracle) cfg.oracle = true;
    return cfg;
}

int run(wgm::ExperimentKind kind, const CliOverrides& cli) {
    const wgm::ExperimentConfig cfg = resolve(kind, cli);
    const wgm::ResultBundle bundle = wgm::run_experiment(cfg);
    const auto written = wgm::export_bundle(bundle, cfg.out_dir, cfg.format);
    // a JSON bundle always accompanies csv/gnuplot exports for provenance
    if (cfg.format != wgm::ExportFormat::json)
        wgm::export_bundle(bundle, cfg.out_dir, wgm::ExportFormat::json);

    for (const auto& check : bundle.checks)
        std::cout << (check.pass ? "[PASS] " : (check.fatal ? "[FAIL] " : "[WARN] "))
                  << check.name << ": " << check.detail << "\n";
    for (const auto& path : written) std::cout << "wrote " << path.string() << "\n";
    const bool ok = bundle.all_pass();
    std::cout << (ok ? "all checks passed" : "CHECKS FAILED") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"whispering-gallery mode laboratory"};
    app.require_subcommand(1);

    CliOverrides cli;
    app.add_option("--config", cli.config_path, "JSON configuration file");
    app.add_option("--out", cli.out_dir, "output directory");
    app.add_option("--format", cli.format, "csv | json | gnuplot");
    app.add_option("--threads", cli.threads, "worker threads for n sweeps");

    auto* potential = app.add_subcommand("potential", "effective potential profile");
    auto* agmon = app.add_subcommand("agmon", "Agmon distance and eikonal residual");
    auto* solve = app.add_subcommand("solve", "radial eigenpairs at one angular momentum");
    solve->add_option("--n", cli.n, "angular momentum");
    solve->add_option("--nodes", cli.nodes, "grid nodes (0 = resolution rule)");
    solve->add_option("--pole-cut", cli.pole_cut, "pole truncation (pole geometries)");
    solve->add_option("--window", cli.window, "eigenvalue window [lo hi]")->expected(2);
    solve->add_flag("--oracle", cli.oracle, "enable the shooting cross-check");
    auto* quasimode = app.add_subcommand("quasimode", "quasimode residual scaling");
    quasimode->add_option("--h-list", cli.h_list, "decreasing semiclassical parameters");
    quasimode->add_option("--E", cli.E, "energy level (default: ground level)");
    auto* decay = app.add_subcommand("decay", "exponential concentration fit");
    decay->add_option("--omega", cli.omega, "observation band [a b]")->expected(2);
    decay->add_option("--n-range", cli.n_range, "sweep [lo hi step]")->expected(3);
    decay->add_option("--eps", cli.eps, "localization band half-width");
    auto* waves = app.add_subcommand("waves", "wave observability saturation");
    waves->add_option("--T", cli.T, "time horizon");
    waves->add_option("--omega", cli.omega, "observation band [a b]")->expected(2);
    waves->add_option("--n-range", cli.n_range, "sweep [lo hi step]")->expected(3);
    auto* report = app.add_subcommand("report", "run every experiment");

    CLI11_PARSE(app, argc, argv);

    try {
        if (potential->parsed()) return run(wgm::ExperimentKind::potential, cli);
        if (agmon->parsed()) return run(wgm::ExperimentKind::agmon, cli);
        if (solve->parsed()) return run(wgm::ExperimentKind::solve, cli);
        if (quasimode->parsed()) return run(wgm::ExperimentKind::quasimode, cli);
        if (decay->parsed()) return run(wgm::ExperimentKind::decay, cli);
        if (waves->parsed()) return run(wgm::ExperimentKind::waves, cli);
        if (report->parsed()) return run(wgm::ExperimentKind::report, cli);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
