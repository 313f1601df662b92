// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "lodas/simulation.hpp"

#include <chrono>
#include <ctime>

#include "lodas/decision_parser.hpp"
#include "lodas/errors.hpp"

namespace lodas {

void SimulationConfig::validate() const {
    lodas::validate(scenario);
    if (scenario.total < 2) throw ConfigError("population needs at least 2 agents");
    if (iterations < 0) throw ConfigError("iterations must be >= 0");
    if (parse_retries < 0) throw ConfigError("parse_retries must be >= 0");
    if (!(sampling.temperature >= 0.0)) throw ConfigError("temperature must be >= 0");
    if (sampling.max_tokens <= 0) throw ConfigError("max_tokens must be positive");
    statement_text(topic, static_cast<int>(valence));
}

nlohmann::json to_json(const SimulationConfig& c) {
    nlohmann::json counts = nlohmann::json::object();
    for (int o = 0; o < kOpinionCount; ++o) {
        const int n = c.scenario.counts[static_cast<std::size_t>(o)];
        if (n > 0) counts[std::to_string(o)] = n;
    }
    return {{"scenario", {{"name", std::string(to_string(c.scenario.name))}, {"counts", counts}}},
            {"topic", c.topic},
            {"valence", std::string(to_string(c.valence))},
            {"iterations", c.iterations},
            {"seed", c.seed},
            {"early_stop", c.early_stop},
            {"parse_retries", c.parse_retries},
            {"sampling", {{"temperature", c.sampling.temperature}, {"max_tokens", c.sampling.max_tokens}}},
            {"model_id", c.model_id}};
}

SimulationConfig simulation_config_from_json(const nlohmann::json& j) {
    SimulationConfig c;
    try {
        if (j.contains("scenario")) {
            const auto& s = j.at("scenario");
            if (s.is_string()) {
                c.scenario = build_scenario(s.get<std::string>());
            } else {
                std::optional<CountMap> counts;
                if (s.contains("counts")) {
                    counts.emplace();
                    for (const auto& [key, value] : s.at("counts").items()) {
                        std::size_t used = 0;
                        const int opinion = std::stoi(key, &used);
                        if (used != key.size()) throw ConfigError("scenario count key '" + key + "' is not an opinion");
                        (*counts)[opinion] = value.get<int>();
                    }
                }
                c.scenario = build_scenario(s.value("name", std::string(counts ? "custom" : "balanced")), counts);
            }
        }
        c.topic = j.value("topic", c.topic);
        if (j.contains("valence")) {
            const auto& v = j.at("valence");
            c.valence = v.is_number() ? valence_from_int(v.get<int>()) : valence_from_string(v.get<std::string>());
        }
        c.iterations = j.value("iterations", c.iterations);
        c.seed = j.value("seed", c.seed);
        c.early_stop = j.value("early_stop", c.early_stop);
        c.parse_retries = j.value("parse_retries", c.parse_retries);
        if (j.contains("sampling")) {
            c.sampling.temperature = j.at("sampling").value("temperature", c.sampling.temperature);
            c.sampling.max_tokens = j.at("sampling").value("max_tokens", c.sampling.max_tokens);
        }
        c.model_id = j.value("model_id", c.model_id);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid simulation config: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw ConfigError("scenario count keys must be opinion values 0-6");
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    c.validate();
    return c;
}

std::pair<std::size_t, std::size_t> sample_pair(Rng& rng, std::size_t n) {
    if (n < 2) throw ConfigError("pair sampling needs at least 2 agents");
    const auto d = static_cast<std::size_t>(rng.uniform_index(n));
    auto o = static_cast<std::size_t>(rng.uniform_index(n - 1));
    if (o >= d) ++o;
    return {d, o};
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string utc_compact_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
    return buf;
}

InteractionRecord run_interaction(const AgentState& discussant, const AgentState& opponent, const Statement& statement,
                                  const InteractionContext& ctx, int iteration, int index, RunCounters* counters) {
    if (discussant.agent_id == opponent.agent_id) throw ConfigError("an agent cannot debate itself");

    InteractionRecord rec;
    rec.iteration = iteration;
    rec.index = index;
    rec.discussant_id = discussant.agent_id;
    rec.opponent_id = opponent.agent_id;
    rec.discussant_before = discussant.opinion;
    rec.opponent_before = opponent.opinion;
    rec.discussant_after = discussant.opinion;
    rec.opponent_after = opponent.opinion;

    const PromptBundle prompts = ctx.renderer.render(discussant, opponent, statement);
    rec.opening = prompts.opening;

    auto request = [&](const std::string& system, std::vector<ChatMessage> messages, TurnHint hint) {
        ChatRequest r;
        r.system_prompt = system;
        r.messages = std::move(messages);
        r.sampling = ctx.sampling;
        r.model_id = ctx.model_id;
        r.hint = hint;
        return r;
    };
    auto note_backend_failure = [&] {
        if (counters) ++counters->backend_failures;
    };

    try {
        rec.opponent_utterance = ctx.backend.chat(request(prompts.opponent_system, {{ChatRole::User, prompts.opening}},
                                                          TurnHint{Turn::OpponentArgument, opponent.opinion,
                                                                   discussant.opinion, std::nullopt}));

        const ChatRequest verdict_request =
            request(prompts.discussant_system,
                    {{ChatRole::Assistant, prompts.opening}, {ChatRole::User, rec.opponent_utterance}},
                    TurnHint{Turn::DiscussantVerdict, discussant.opinion, opponent.opinion, std::nullopt});
        std::optional<Decision> decision;
        for (int attempt = 0; attempt <= ctx.parse_retries; ++attempt) {
            if (attempt > 0 && counters) ++counters->parse_retries;
            rec.discussant_utterance = ctx.backend.chat(verdict_request);
            decision = try_extract_decision(rec.discussant_utterance);
            if (decision) break;
        }
        if (decision) {
            rec.decision = *decision;
        } else {
            rec.decision = Decision::Ignore;
            rec.parse_failed = true;
            if (counters) ++counters->parse_failures;
        }
    } catch (const BackendError&) {
        rec.decision = Decision::Ignore;
        rec.backend_failed = true;
        note_backend_failure();
        return rec;
    }

    rec.delta = update_delta(rec.decision, rec.discussant_before, rec.opponent_before);
    rec.discussant_after = rec.discussant_before.shifted(rec.delta);

    // The closing turn never changes opinions; a failure here only loses the text.
    try {
        rec.closing_utterance = ctx.backend.chat(
            request(prompts.opponent_system,
                    {{ChatRole::User, prompts.opening},
                     {ChatRole::Assistant, rec.opponent_utterance},
                     {ChatRole::User, rec.discussant_utterance}},
                    TurnHint{Turn::OpponentClosing, opponent.opinion, discussant.opinion, rec.decision}));
    } catch (const BackendError&) {
        note_backend_failure();
    }
    return rec;
}

RunArtifacts run_simulation(const SimulationConfig& config, ChatBackend& backend, const RunOptions& options) {
    config.validate();

    RunArtifacts out;
    RunManifest& m = out.manifest;
    m.seed = config.seed;
    m.config = {{"simulation", to_json(config)}, {"backend", backend.describe()}};
    m.prompt_hashes = options.renderer.templates().hashes();
    m.backend_identity = backend.identity();
    m.started_at = utc_timestamp();
    m.iterations_planned = config.iterations;

    std::vector<AgentState> agents = init_population(config.scenario, derive_seed(config.seed, "population"));
    m.initial_population = agents;
    Rng pair_rng(derive_seed(config.seed, "pairs"));

    const Statement statement = make_statement(config.topic, config.valence);
    const InteractionContext ctx{options.renderer, backend, config.sampling, config.model_id, config.parse_retries};
    const std::size_t n = agents.size();

    out.snapshots.push_back(histogram_of(agents));
    out.records.reserve(static_cast<std::size_t>(config.iterations) * n);

    try {
        for (int t = 0; t < config.iterations; ++t) {
            int moved = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (options.stop.stop_requested()) {
                    m.aborted = true;
                    m.abort_reason = "stop requested";
                    break;
                }
                const auto [d, o] = sample_pair(pair_rng, n);
                InteractionRecord rec =
                    run_interaction(agents[d], agents[o], statement, ctx, t, static_cast<int>(k), &m.counters);
                agents[d].opinion = rec.discussant_after;
                ++m.counters.interactions;
                if (rec.delta != 0) {
                    ++m.counters.opinion_changes;
                    ++moved;
                }
                out.records.push_back(std::move(rec));
            }
            if (m.aborted) break;
            m.iterations_completed = t + 1;
            out.snapshots.push_back(histogram_of(agents));
            if (options.on_iteration) options.on_iteration(t, out.snapshots.back());
            if (config.early_stop && moved == 0) break;
        }
    } catch (const std::exception& e) {
        m.aborted = true;
        m.abort_reason = e.what();
    }
    m.finished_at = utc_timestamp();
    return out;
}

} // namespace lodas
