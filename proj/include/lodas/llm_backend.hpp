// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lodas/core.hpp"
#include "lodas/fallacy_labels.hpp"
#include "lodas/rng.hpp"

namespace lodas {

enum class ChatRole { System, User, Assistant };

std::string_view to_string(ChatRole r) noexcept;

struct ChatMessage {
    ChatRole role = ChatRole::User;
    std::string content;
};

struct SamplingParams {
    double temperature = 0.7;
    int max_tokens = 512;
};

/// Which step of the exchange a request belongs to.
enum class Turn { OpponentArgument, DiscussantVerdict, OpponentClosing };

/// Simulation-side facts about a request. Remote backends ignore it; the
/// scripted backend uses it instead of reading prompt text.
struct TurnHint {
    Turn turn = Turn::OpponentArgument;
    Opinion speaker_opinion;
    Opinion counterpart_opinion;
    std::optional<Decision> discussant_decision; // set for OpponentClosing
};

struct ChatRequest {
    std::string system_prompt;
    std::vector<ChatMessage> messages;
    SamplingParams sampling;
    std::string model_id;
    std::optional<TurnHint> hint;

    /// Throws ConfigError: messages empty, roles not alternating, bad sampling.
    void validate() const;
    /// OpenAI-compatible chat-completions body.
    nlohmann::json to_openai_json() const;
};

class ChatBackend {
  public:
    virtual ~ChatBackend() = default;

    /// Non-empty completion text. Throws BackendError once retries are exhausted.
    virtual std::string chat(const ChatRequest& request) = 0;

    /// Short stable description for the run manifest.
    virtual std::string identity() const = 0;
    virtual nlohmann::json describe() const = 0;
};

// ---------------------------------------------------------------------------
// Scripted backend

/// Deterministic stand-in for a language model.
struct ScriptedPolicy {
    /// P(ACCEPT) indexed [discussant opinion][opponent opinion].
    std::array<std::array<double, kOpinionCount>, kOpinionCount> accept_probability{};
    /// Share of the non-ACCEPT mass that goes to REJECT; the rest is IGNORE.
    double reject_share = 0.5;
    /// Probability that an argument carries a mock fallacy marker.
    double fallacy_marker_rate = 0.0;
    /// Probability that a verdict reply contains no verdict token at all.
    double malformed_rate = 0.0;
    /// Marker classes to draw from; empty means all 13.
    std::vector<FallacyLabel> marker_labels;
    std::uint64_t seed = 0;
    std::string preset = "custom";

    static ScriptedPolicy always(Decision decision);
    /// ACCEPT iff the opponent's opinion is >= the discussant's, REJECT otherwise.
    static ScriptedPolicy accept_if_not_lower();
    static ScriptedPolicy uniform(double accept_probability, double reject_share = 0.5);
    /// always-accept, always-reject, always-ignore, accept-if-not-lower, uniform.
    static ScriptedPolicy from_preset(std::string_view name);

    /// Throws ConfigError when a probability is outside [0, 1].
    void validate() const;

    nlohmann::json to_json() const;
    static ScriptedPolicy from_json(const nlohmann::json& j);
    /// SHA-256 of the canonical JSON form.
    std::string digest() const;
};

/// Synthetic persuasive argument grounded in `opinion`.
std::string scripted_opponent_reply(const ScriptedPolicy& policy, Opinion opinion, Rng& rng);

/// Verdict drawn from the policy table for (discussant, opponent).
Decision scripted_decision(const ScriptedPolicy& policy, Opinion discussant, Opinion opponent, Rng& rng);

std::string scripted_discussant_reply(const ScriptedPolicy& policy, Decision decision, Opinion discussant, Rng& rng);

class ScriptedBackend final : public ChatBackend {
  public:
    explicit ScriptedBackend(ScriptedPolicy policy);

    std::string chat(const ChatRequest& request) override;
    std::string identity() const override;
    nlohmann::json describe() const override;

    const ScriptedPolicy& policy() const noexcept { return policy_; }

  private:
    ScriptedPolicy policy_;
    std::mutex mutex_;
    Rng rng_;
};

// ---------------------------------------------------------------------------
// OpenAI-compatible HTTP backend

struct HttpBackendConfig {
    /// Base URL up to and including the API version, e.g. http://localhost:8000/v1.
    std::string base_url = "http://127.0.0.1:8000/v1";
    std::string model = "mistralai/Mistral-7B-Instruct-v0.2";
    std::string api_key;
    std::string api_key_env = "LODAS_API_KEY";
    int max_attempts = 3;
    std::chrono::milliseconds backoff_initial{1000};
    double backoff_factor = 2.0;
    std::chrono::milliseconds timeout{120000};
    int max_in_flight = 4;
    std::optional<std::filesystem::path> request_log;

    void validate() const;
};

/// Delay before retry number `retry` (0-based): initial * factor^retry.
std::chrono::milliseconds backoff_delay(const HttpBackendConfig& config, int retry);

class HttpChatBackend final : public ChatBackend {
  public:
    using Sleeper = std::function<void(std::chrono::milliseconds)>;

    explicit HttpChatBackend(HttpBackendConfig config, Sleeper sleeper = {});
    ~HttpChatBackend() override;

    std::string chat(const ChatRequest& request) override;
    std::string identity() const override;
    nlohmann::json describe() const override;

  private:
    void log_exchange(const nlohmann::json& entry);

    HttpBackendConfig config_;
    std::string api_key_;
    Sleeper sleeper_;
    std::counting_semaphore<1024> in_flight_;
    std::mutex log_mutex_;
    std::ofstream log_;
};

} // namespace lodas
