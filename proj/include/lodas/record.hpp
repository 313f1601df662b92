// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lodas/core.hpp"
#include "lodas/fallacy_labels.hpp"

namespace lodas {

inline constexpr int kSchemaVersion = 1;

enum class AnnotationSource { Service, Mock };

std::string_view to_string(AnnotationSource s) noexcept;

/// Classifier verdict for one utterance. An empty label means
/// "no fallacy detected" (nothing found, or top-1 confidence below threshold).
struct FallacyAnnotation {
    std::optional<FallacyLabel> label;
    double confidence = 0.0;
    AnnotationSource source = AnnotationSource::Mock;

    bool fallacious() const noexcept { return label.has_value(); }
    bool operator==(const FallacyAnnotation&) const = default;
};

/// One Discussant/Opponent exchange.
struct InteractionRecord {
    int iteration = 0;
    int index = 0; // position within the iteration
    int discussant_id = 0;
    int opponent_id = 0;
    Opinion discussant_before;
    Opinion opponent_before;
    std::string opening;
    std::string opponent_utterance;
    std::string discussant_utterance;
    std::optional<std::string> closing_utterance;
    Decision decision = Decision::Ignore;
    int delta = 0;
    Opinion discussant_after;
    Opinion opponent_after;
    bool parse_failed = false;
    bool backend_failed = false;

    // Filled by the annotation pass; empty until then.
    std::optional<FallacyAnnotation> opponent_fallacy;
    std::optional<FallacyAnnotation> discussant_fallacy;
    std::optional<FallacyAnnotation> closing_fallacy;

    bool operator==(const InteractionRecord&) const = default;
};

struct RunCounters {
    std::int64_t interactions = 0;
    std::int64_t opinion_changes = 0;
    std::int64_t parse_failures = 0;
    std::int64_t parse_retries = 0;
    std::int64_t backend_failures = 0;

    bool operator==(const RunCounters&) const = default;
};

struct ClassifierInfo {
    std::string identity;
    double threshold = 0.5;
    bool include_closing = false;
    bool per_sentence = false;
    std::int64_t annotated_utterances = 0;
    std::int64_t deferred_utterances = 0;

    bool operator==(const ClassifierInfo&) const = default;
};

/// Everything needed to reproduce and audit a run.
struct RunManifest {
    int schema_version = kSchemaVersion;
    nlohmann::json config;   // resolved configuration
    std::uint64_t seed = 0;
    std::map<std::string, std::string> prompt_hashes;
    std::string backend_identity;
    std::optional<ClassifierInfo> classifier;
    std::string started_at;
    std::string finished_at;
    RunCounters counters;
    std::vector<AgentState> initial_population;
    int iterations_planned = 0;
    int iterations_completed = 0;
    bool aborted = false;
    std::string abort_reason;

    bool operator==(const RunManifest&) const = default;
};

struct RunArtifacts {
    RunManifest manifest;
    std::vector<InteractionRecord> records;
    /// snapshots[t] is the opinion histogram after t complete iterations.
    std::vector<Histogram> snapshots;

    bool operator==(const RunArtifacts&) const = default;
};

/// Histograms after each complete iteration obtained by replaying `records`
/// over `initial`. Element 0 is the initial histogram. Records of a trailing
/// partial iteration do not produce a snapshot.
std::vector<Histogram> replay_snapshots(std::span<const AgentState> initial, std::span<const InteractionRecord> records,
                                        int iterations_completed);

// JSON mapping; this is also the on-disk transcript/manifest schema.
void to_json(nlohmann::json& j, const FallacyAnnotation& a);
void from_json(const nlohmann::json& j, FallacyAnnotation& a);
void to_json(nlohmann::json& j, const InteractionRecord& r);
void from_json(const nlohmann::json& j, InteractionRecord& r);
void to_json(nlohmann::json& j, const RunManifest& m);
void from_json(const nlohmann::json& j, RunManifest& m);

} // namespace lodas
