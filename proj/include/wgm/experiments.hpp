#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "wgm/config.hpp"

// Configuration-driven experiment runner binding all modules. Produces a
// reproducible result bundle: numeric tables for export, per-section JSON
// records, the bit-exact config echo, and a pass/fail summary of every
// invariant check executed.

namespace wgm {

inline constexpr const char* kVersion = "0.1.0";

struct Check {
    std::string name;
    bool pass = false;
    bool fatal = true;  ///< non-fatal checks are reported but do not gate the exit code
    std::string detail;
};

struct Table {
    std::string name;                      ///< file stem
    std::vector<std::string> columns;      ///< header names (units in parentheses)
    std::vector<std::vector<double>> rows;
};

struct ResultBundle {
    std::string config_echo;  ///< bit-exact input configuration
    nlohmann::json sections;  ///< per-experiment scalar records
    nlohmann::json provenance;
    std::vector<Table> tables;
    std::vector<Check> checks;

    bool all_pass() const;
    nlohmann::json to_json() const;
};

ResultBundle run_experiment(const ExperimentConfig& config);

}  // namespace wgm
