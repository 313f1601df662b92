// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <memory>
#include <optional>

#include <nlohmann/json.hpp>

#include "lodas/fallacy.hpp"
#include "lodas/llm_backend.hpp"
#include "lodas/simulation.hpp"

namespace lodas {

struct BackendConfig {
    enum class Kind { Scripted, OpenAI };
    Kind kind = Kind::Scripted;
    ScriptedPolicy policy = default_policy();
    /// When false the policy seed is derived from the run seed.
    bool policy_seed_set = false;
    HttpBackendConfig http;
    /// Write request/response pairs to <run-dir>/requests.jsonl.
    bool log_requests = false;

    static ScriptedPolicy default_policy();
};

struct ClassifierConfig {
    enum class Kind { Mock, Service };
    Kind kind = Kind::Mock;
    FallacyServiceConfig service;
    AnnotateOptions options;
};

/// Everything a run needs. The JSON form is
///   {"simulation": {...}, "backend": {...}, "classifier": {...}, "prompts_dir": "..."}
/// and a run manifest's "config" member is itself a valid config document.
struct RunConfig {
    SimulationConfig simulation;
    BackendConfig backend;
    ClassifierConfig classifier;
    std::optional<std::filesystem::path> prompts_dir;
};

/// Throws ConfigError. Missing sections keep their defaults.
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& config);

/// Reads a config file, or the "config" member of a run manifest.
RunConfig load_run_config(const std::filesystem::path& path);

/// LODAS_BASE_URL overrides backend.http.base_url and LODAS_CLASSIFIER_URL
/// overrides the classifier URL. The API key is read by the backend itself.
void apply_env_overrides(RunConfig& config);

std::unique_ptr<ChatBackend> make_backend(const BackendConfig& config, std::uint64_t run_seed);
std::unique_ptr<FallacyClassifier> make_classifier(const ClassifierConfig& config);

} // namespace lodas
