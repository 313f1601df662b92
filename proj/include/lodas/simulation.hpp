// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <stop_token>
#include <string>
#include <utility>

#include "lodas/core.hpp"
#include "lodas/llm_backend.hpp"
#include "lodas/population.hpp"
#include "lodas/prompts.hpp"
#include "lodas/record.hpp"
#include "lodas/rng.hpp"

namespace lodas {

struct SimulationConfig {
    ScenarioSpec scenario = build_scenario(ScenarioName::Balanced);
    std::string topic = "theseus";
    Valence valence = Valence::Positive;
    int iterations = 30;
    std::uint64_t seed = 1;
    /// Stop after the first iteration in which no opinion moved.
    bool early_stop = false;
    /// Extra generations of the Discussant turn when no verdict can be parsed.
    int parse_retries = 2;
    SamplingParams sampling;
    std::string model_id;

    void validate() const;
};

nlohmann::json to_json(const SimulationConfig& config);
/// Inverse of to_json; missing keys keep their defaults. Throws ConfigError.
SimulationConfig simulation_config_from_json(const nlohmann::json& j);

/// Ordered pair of distinct indices, uniform over the n*(n-1) possibilities.
/// First is the Discussant, second the Opponent. Throws ConfigError for n < 2.
std::pair<std::size_t, std::size_t> sample_pair(Rng& rng, std::size_t n);

struct InteractionContext {
    const PromptRenderer& renderer;
    ChatBackend& backend;
    SamplingParams sampling{};
    std::string model_id;
    int parse_retries = 2;
};

/// One Discussant/Opponent exchange: opening question, Opponent argument,
/// Discussant verdict, Opponent closing. Only the Discussant's opinion moves.
/// `iteration` and `index` are copied into the record; `counters` (optional)
/// accumulates parse/backend failures.
InteractionRecord run_interaction(const AgentState& discussant, const AgentState& opponent, const Statement& statement,
                                  const InteractionContext& ctx, int iteration = 0, int index = 0,
                                  RunCounters* counters = nullptr);

struct RunOptions {
    PromptRenderer renderer{};
    std::stop_token stop{};
    /// Called after each complete iteration with its index and the histogram.
    std::function<void(int, const Histogram&)> on_iteration{};
};

/// T iterations of N sequential interactions with immediate opinion updates.
/// Never throws for backend trouble: failures are flagged per record, and any
/// other error or a stop request ends the run with manifest.aborted set.
RunArtifacts run_simulation(const SimulationConfig& config, ChatBackend& backend, const RunOptions& options = {});

/// UTC timestamp, e.g. 2026-10-15T12:00:00Z.
std::string utc_timestamp();
/// UTC timestamp without separators, e.g. 20261015T120000Z.
std::string utc_compact_timestamp();

} // namespace lodas
