#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wgm/geometry.hpp"

// Experiment configuration: a strict JSON schema (unknown keys rejected with
// their paths) covering the domain, the experiment selection, and numeric
// parameters. The raw text is kept for bit-exact echo into result bundles.

namespace wgm {

enum class ExperimentKind { potential, agmon, solve, quasimode, decay, waves, report };

std::string to_string(ExperimentKind kind);

enum class ExportFormat { csv, json, gnuplot };

std::string to_string(ExportFormat format);

struct ExperimentConfig {
    // domain
    std::string profile_kind = "annulus";
    std::vector<std::array<double, 2>> profile_samples;  // tabulated only
    double R0 = 0.5, R1 = 1.0, R2 = 1.5;                 // annulus
    double L = 1.5, s0 = 1.0;                            // disk / tabulated / closed-form
    double c_minus = 1.0, c_plus = 4.0;

    ExperimentKind experiment = ExperimentKind::report;

    // numeric parameters (defaults are the canonical desk-scale settings)
    std::vector<int> n_values = {20, 30, 40, 50, 60, 70, 80};
    int n = 40;
    int nodes = 0;             // 0 = resolution rule
    double pole_cut = -1.0;    // auto
    std::array<double, 2> omega = {1.4, 1.5};
    double eps = 0.25;
    double T = 1.0;
    std::vector<double> h_list = {1.0 / 20, 1.0 / 40, 1.0 / 80, 1.0 / 160};
    double E = -1.0;           // -1 = ground level E0
    std::array<double, 2> window = {-1.0, -1.0};  // solve window, auto when negative
    bool oracle = false;
    std::uint64_t seed = 0x9e3779b9u;
    int potential_samples = 2001;
    int agmon_samples = 2001;

    int threads = 1;
    std::string out_dir = "out";
    ExportFormat format = ExportFormat::csv;

    std::string raw;  ///< exact configuration text for echo

    DomainSpec make_domain() const;
};

/// Parse + validate. Throws std::invalid_argument naming the violating key path.
ExperimentConfig parse_config(const std::string& json_text);

/// The canonical annulus configuration (R0=0.5, R1=1, R2=1.5, c=1|4) as JSON text.
std::string default_config_text(ExperimentKind kind);

}  // namespace wgm
