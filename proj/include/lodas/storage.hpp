// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lodas/record.hpp"

namespace lodas {

// Run directory layout:
//   manifest.json     resolved config, seed, hashes, counters, initial population
//   transcript.jsonl  one InteractionRecord per line
//   snapshots.csv     opinion histogram after each complete iteration
//   metrics/          CSV exports written by `analyze`
inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kTranscriptFile = "transcript.jsonl";
inline constexpr const char* kSnapshotsFile = "snapshots.csv";
inline constexpr const char* kPartialMarkerFile = "PARTIAL";

/// "<UTC timestamp>_seed<seed>", e.g. 20261015T120000Z_seed1.
std::string make_run_id(std::uint64_t seed);

/// Creates `parent/<run-id>` and writes the run there. Returns the run id.
std::string write_run(const RunArtifacts& artifacts, const std::filesystem::path& parent);

/// Writes (or overwrites) a run in an existing or new directory. Each file is
/// written to a temporary, fsynced, then renamed; the manifest goes last.
/// Throws IoError and leaves a PARTIAL marker on failure.
void write_run_to(const RunArtifacts& artifacts, const std::filesystem::path& run_dir);

/// Exact bytes of the transcript file for these records.
std::string serialize_transcript(const std::vector<InteractionRecord>& records);

struct AuditIssue {
    std::optional<std::size_t> record;
    std::string message;
};

/// Record invariants, replay of the record stream against the stored
/// snapshots and counters, and re-extraction of each verdict.
std::vector<AuditIssue> audit_run(const RunArtifacts& artifacts);

struct LoadOptions {
    /// Run audit_run and reject the run on the first issue.
    bool validate = true;
};

/// Throws LoadError (with the record index when one is at fault).
RunArtifacts load_run(const std::filesystem::path& run_dir, const LoadOptions& options = {});

/// Atomic text file write (temporary + fsync + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

} // namespace lodas
