#pragma once

#include <filesystem>
#include <vector>

#include "wgm/experiments.hpp"

// Flat-file exports of result bundles: CSV tables (one per experiment
// section, deterministic formatting), the full JSON bundle, or gnuplot data
// plus a script reproducing the standard figure panels.

namespace wgm {

/// Writes the bundle in the requested format; returns the written paths.
/// I/O failures throw std::runtime_error naming the offending path.
std::vector<std::filesystem::path> export_bundle(const ResultBundle& bundle,
                                                 const std::filesystem::path& dir,
                                                 ExportFormat format);

/// Round-trip helper: parse a serialized bundle back (tables, checks, echo).
ResultBundle parse_bundle(const nlohmann::json& root);

}  // namespace wgm
