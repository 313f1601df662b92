// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lodas/record.hpp"

namespace lodas {

enum class FallacyExport {
    Auto,    // write fallacy CSVs only if the run is annotated
    Require, // throw AnnotationMissing if it is not
    Skip,
};

struct ExportResult {
    std::vector<std::filesystem::path> files;
    bool fallacy_written = false;
};

/// Scenario / model / statement columns shared by the CSV tables.
struct RunLabels {
    std::string scenario;
    std::string model;
    std::string statement; // "same" or "different"
};

RunLabels run_labels(const RunManifest& manifest);

/// Shortest decimal form that round-trips.
std::string format_double(double value);

/// Writes trajectories, acceptance matrices (counts and rates for both modes),
/// uniqueness, consensus and, per `fallacy`, the fallacy distribution and
/// change-rate tables into `out_dir`.
ExportResult write_metrics(const RunArtifacts& run, const std::filesystem::path& out_dir,
                           FallacyExport fallacy = FallacyExport::Auto);

/// Cross-run uniqueness.csv and change_rates.csv, one row per run.
std::vector<std::filesystem::path> write_summary(std::span<const RunArtifacts> runs, const std::filesystem::path& out_dir);

} // namespace lodas
