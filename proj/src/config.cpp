// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "lodas/config.hpp"

#include <cstdlib>
#include <fstream>

#include "lodas/errors.hpp"

namespace lodas {

using nlohmann::json;

ScriptedPolicy BackendConfig::default_policy() {
    ScriptedPolicy p = ScriptedPolicy::uniform(0.5, 0.5);
    p.fallacy_marker_rate = 0.25;
    return p;
}

namespace {

BackendConfig backend_from_json(const json& j) {
    BackendConfig b;
    const std::string kind = j.value("kind", std::string("scripted"));
    if (kind == "scripted") {
        b.kind = BackendConfig::Kind::Scripted;
        if (j.contains("policy")) {
            const auto& p = j.at("policy");
            b.policy = p.is_string() ? ScriptedPolicy::from_preset(p.get<std::string>()) : ScriptedPolicy::from_json(p);
            b.policy_seed_set = p.is_object() && p.contains("seed");
        }
    } else if (kind == "openai") {
        b.kind = BackendConfig::Kind::OpenAI;
        auto& h = b.http;
        h.base_url = j.value("base_url", h.base_url);
        h.model = j.value("model", h.model);
        h.api_key = j.value("api_key", h.api_key);
        h.api_key_env = j.value("api_key_env", h.api_key_env);
        h.max_attempts = j.value("max_attempts", h.max_attempts);
        h.backoff_initial = std::chrono::milliseconds(j.value("backoff_initial_ms", h.backoff_initial.count()));
        h.backoff_factor = j.value("backoff_factor", h.backoff_factor);
        h.timeout = std::chrono::milliseconds(j.value("timeout_ms", h.timeout.count()));
        h.max_in_flight = j.value("max_in_flight", h.max_in_flight);
        b.log_requests = j.value("log_requests", false);
        h.validate();
    } else {
        throw ConfigError("unknown backend kind '" + kind + "' (expected scripted or openai)");
    }
    return b;
}

json backend_to_json(const BackendConfig& b) {
    if (b.kind == BackendConfig::Kind::Scripted) {
        json policy = b.policy.to_json();
        if (!b.policy_seed_set) policy.erase("seed");
        return {{"kind", "scripted"}, {"policy", policy}};
    }
    const auto& h = b.http;
    return {{"kind", "openai"},
            {"base_url", h.base_url},
            {"model", h.model},
            {"api_key_env", h.api_key_env},
            {"max_attempts", h.max_attempts},
            {"backoff_initial_ms", h.backoff_initial.count()},
            {"backoff_factor", h.backoff_factor},
            {"timeout_ms", h.timeout.count()},
            {"max_in_flight", h.max_in_flight},
            {"log_requests", b.log_requests}};
}

ClassifierConfig classifier_from_json(const json& j) {
    ClassifierConfig c;
    const std::string kind = j.value("kind", std::string("mock"));
    if (kind == "mock") {
        c.kind = ClassifierConfig::Kind::Mock;
    } else if (kind == "service") {
        c.kind = ClassifierConfig::Kind::Service;
    } else {
        throw ConfigError("unknown classifier kind '" + kind + "' (expected mock or service)");
    }
    auto& s = c.service;
    s.url = j.value("url", s.url);
    s.threshold = j.value("threshold", s.threshold);
    s.batch_size = j.value("batch_size", s.batch_size);
    s.parallelism = j.value("parallelism", s.parallelism);
    s.timeout = std::chrono::milliseconds(j.value("timeout_ms", s.timeout.count()));
    s.max_attempts = j.value("max_attempts", s.max_attempts);
    c.options.include_closing = j.value("include_closing", false);
    c.options.per_sentence = j.value("per_sentence", false);
    s.validate();
    return c;
}

json classifier_to_json(const ClassifierConfig& c) {
    const auto& s = c.service;
    return {{"kind", c.kind == ClassifierConfig::Kind::Mock ? "mock" : "service"},
            {"url", s.url},
            {"threshold", s.threshold},
            {"batch_size", s.batch_size},
            {"parallelism", s.parallelism},
            {"timeout_ms", s.timeout.count()},
            {"max_attempts", s.max_attempts},
            {"include_closing", c.options.include_closing},
            {"per_sentence", c.options.per_sentence}};
}

} // namespace

RunConfig run_config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    RunConfig c;
    try {
        if (j.contains("simulation")) c.simulation = simulation_config_from_json(j.at("simulation"));
        if (j.contains("backend")) c.backend = backend_from_json(j.at("backend"));
        if (j.contains("classifier")) c.classifier = classifier_from_json(j.at("classifier"));
        if (j.contains("prompts_dir") && !j.at("prompts_dir").is_null()) {
            c.prompts_dir = j.at("prompts_dir").get<std::string>();
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    return c;
}

json to_json(const RunConfig& c) {
    return {{"simulation", to_json(c.simulation)},
            {"backend", backend_to_json(c.backend)},
            {"classifier", classifier_to_json(c.classifier)},
            {"prompts_dir", c.prompts_dir ? json(c.prompts_dir->string()) : json(nullptr)}};
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read configuration file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("configuration file " + path.string() + " is not valid JSON: " + e.what());
    }
    if (j.contains("schema_version") && j.contains("config")) return run_config_from_json(j.at("config"));
    return run_config_from_json(j);
}

void apply_env_overrides(RunConfig& config) {
    if (const char* url = std::getenv("LODAS_BASE_URL"); url != nullptr && *url != '\0') config.backend.http.base_url = url;
    if (const char* url = std::getenv("LODAS_CLASSIFIER_URL"); url != nullptr && *url != '\0') {
        config.classifier.service.url = url;
    }
}

std::unique_ptr<ChatBackend> make_backend(const BackendConfig& config, std::uint64_t run_seed) {
    if (config.kind == BackendConfig::Kind::Scripted) {
        ScriptedPolicy policy = config.policy;
        if (!config.policy_seed_set) policy.seed = derive_seed(run_seed, "backend");
        return std::make_unique<ScriptedBackend>(std::move(policy));
    }
    return std::make_unique<HttpChatBackend>(config.http);
}

std::unique_ptr<FallacyClassifier> make_classifier(const ClassifierConfig& config) {
    if (config.kind == ClassifierConfig::Kind::Mock) return std::make_unique<MockFallacyClassifier>();
    return std::make_unique<ServiceFallacyClassifier>(config.service);
}

} // namespace lodas
