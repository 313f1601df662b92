// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "lodas/record.hpp"

#include <unordered_map>

#include "lodas/errors.hpp"

namespace lodas {

using nlohmann::json;

std::string_view to_string(AnnotationSource s) noexcept { return s == AnnotationSource::Service ? "service" : "mock"; }

std::vector<Histogram> replay_snapshots(std::span<const AgentState> initial, std::span<const InteractionRecord> records,
                                        int iterations_completed) {
    std::unordered_map<int, int> opinion_of;
    Histogram h{};
    for (const auto& a : initial) {
        opinion_of[a.agent_id] = a.opinion.value();
        ++h[static_cast<std::size_t>(a.opinion.value())];
    }
    std::vector<Histogram> out{h};
    std::size_t next = 0;
    for (int t = 0; t < iterations_completed; ++t) {
        while (next < records.size() && records[next].iteration == t) {
            const auto& r = records[next++];
            auto it = opinion_of.find(r.discussant_id);
            if (it == opinion_of.end()) throw LoadError("unknown discussant id " + std::to_string(r.discussant_id), next - 1);
            --h[static_cast<std::size_t>(it->second)];
            it->second = r.discussant_after.value();
            ++h[static_cast<std::size_t>(it->second)];
        }
        out.push_back(h);
    }
    return out;
}

void to_json(json& j, const FallacyAnnotation& a) {
    j = json{{"label", a.label ? json(std::string(to_string(*a.label))) : json(nullptr)},
             {"confidence", a.confidence},
             {"source", std::string(to_string(a.source))}};
}

void from_json(const json& j, FallacyAnnotation& a) {
    const auto& label = j.at("label");
    if (label.is_null()) {
        a.label.reset();
    } else {
        a.label = fallacy_label_from_string(label.get<std::string>());
        if (!a.label) throw DomainError("unknown fallacy label '" + label.get<std::string>() + "'");
    }
    a.confidence = j.at("confidence").get<double>();
    if (!(a.confidence >= 0.0 && a.confidence <= 1.0)) throw DomainError("fallacy confidence outside [0, 1]");
    const auto source = j.at("source").get<std::string>();
    if (source == "service") {
        a.source = AnnotationSource::Service;
    } else if (source == "mock") {
        a.source = AnnotationSource::Mock;
    } else {
        throw DomainError("unknown annotation source '" + source + "'");
    }
}

namespace {

json optional_annotation(const std::optional<FallacyAnnotation>& a) { return a ? json(*a) : json(nullptr); }

std::optional<FallacyAnnotation> read_annotation(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<FallacyAnnotation>();
}

} // namespace

void to_json(json& j, const InteractionRecord& r) {
    j = json{
        {"schema_version", kSchemaVersion},
        {"iteration", r.iteration},
        {"index", r.index},
        {"discussant_id", r.discussant_id},
        {"opponent_id", r.opponent_id},
        {"opinions_before", {{"discussant", r.discussant_before.value()}, {"opponent", r.opponent_before.value()}}},
        {"opening", r.opening},
        {"opponent_utterance", r.opponent_utterance},
        {"discussant_utterance", r.discussant_utterance},
        {"closing_utterance", r.closing_utterance ? json(*r.closing_utterance) : json(nullptr)},
        {"decision", std::string(to_string(r.decision))},
        {"delta", r.delta},
        {"opinions_after", {{"discussant", r.discussant_after.value()}, {"opponent", r.opponent_after.value()}}},
        {"parse_failed", r.parse_failed},
        {"backend_failed", r.backend_failed},
        {"fallacy_annotations",
         {{"opponent", optional_annotation(r.opponent_fallacy)},
          {"discussant", optional_annotation(r.discussant_fallacy)},
          {"closing", optional_annotation(r.closing_fallacy)}}},
    };
}

void from_json(const json& j, InteractionRecord& r) {
    r.iteration = j.at("iteration").get<int>();
    r.index = j.at("index").get<int>();
    r.discussant_id = j.at("discussant_id").get<int>();
    r.opponent_id = j.at("opponent_id").get<int>();
    r.discussant_before = Opinion(j.at("opinions_before").at("discussant").get<int>());
    r.opponent_before = Opinion(j.at("opinions_before").at("opponent").get<int>());
    r.opening = j.at("opening").get<std::string>();
    r.opponent_utterance = j.at("opponent_utterance").get<std::string>();
    r.discussant_utterance = j.at("discussant_utterance").get<std::string>();
    const auto& closing = j.at("closing_utterance");
    r.closing_utterance = closing.is_null() ? std::nullopt : std::optional<std::string>(closing.get<std::string>());
    r.decision = decision_from_string(j.at("decision").get<std::string>());
    r.delta = j.at("delta").get<int>();
    r.discussant_after = Opinion(j.at("opinions_after").at("discussant").get<int>());
    r.opponent_after = Opinion(j.at("opinions_after").at("opponent").get<int>());
    r.parse_failed = j.at("parse_failed").get<bool>();
    r.backend_failed = j.at("backend_failed").get<bool>();
    const auto& ann = j.at("fallacy_annotations");
    r.opponent_fallacy = read_annotation(ann, "opponent");
    r.discussant_fallacy = read_annotation(ann, "discussant");
    r.closing_fallacy = read_annotation(ann, "closing");
}

void to_json(json& j, const RunManifest& m) {
    json population = json::array();
    for (const auto& a : m.initial_population) {
        population.push_back({{"agent_id", a.agent_id}, {"opinion", a.opinion.value()}, {"display_name", a.display_name}});
    }
    json classifier = nullptr;
    if (m.classifier) {
        const auto& c = *m.classifier;
        classifier = {{"identity", c.identity},
                      {"threshold", c.threshold},
                      {"include_closing", c.include_closing},
                      {"per_sentence", c.per_sentence},
                      {"annotated_utterances", c.annotated_utterances},
                      {"deferred_utterances", c.deferred_utterances}};
    }
    j = json{
        {"schema_version", m.schema_version},
        {"config", m.config},
        {"seed", m.seed},
        {"prompt_hashes", m.prompt_hashes},
        {"backend_identity", m.backend_identity},
        {"classifier", classifier},
        {"started_at", m.started_at},
        {"finished_at", m.finished_at},
        {"counters",
         {{"interactions", m.counters.interactions},
          {"opinion_changes", m.counters.opinion_changes},
          {"parse_failures", m.counters.parse_failures},
          {"parse_retries", m.counters.parse_retries},
          {"backend_failures", m.counters.backend_failures}}},
        {"initial_population", population},
        {"iterations_planned", m.iterations_planned},
        {"iterations_completed", m.iterations_completed},
        {"aborted", m.aborted},
        {"abort_reason", m.abort_reason},
    };
}

void from_json(const json& j, RunManifest& m) {
    m.schema_version = j.at("schema_version").get<int>();
    m.config = j.at("config");
    m.seed = j.at("seed").get<std::uint64_t>();
    m.prompt_hashes = j.at("prompt_hashes").get<std::map<std::string, std::string>>();
    m.backend_identity = j.at("backend_identity").get<std::string>();
    const auto& c = j.at("classifier");
    if (c.is_null()) {
        m.classifier.reset();
    } else {
        m.classifier = ClassifierInfo{c.at("identity").get<std::string>(),      c.at("threshold").get<double>(),
                                      c.at("include_closing").get<bool>(),      c.at("per_sentence").get<bool>(),
                                      c.at("annotated_utterances").get<std::int64_t>(),
                                      c.at("deferred_utterances").get<std::int64_t>()};
    }
    m.started_at = j.at("started_at").get<std::string>();
    m.finished_at = j.at("finished_at").get<std::string>();
    const auto& k = j.at("counters");
    m.counters = RunCounters{k.at("interactions").get<std::int64_t>(), k.at("opinion_changes").get<std::int64_t>(),
                             k.at("parse_failures").get<std::int64_t>(), k.at("parse_retries").get<std::int64_t>(),
                             k.at("backend_failures").get<std::int64_t>()};
    m.initial_population.clear();
    for (const auto& a : j.at("initial_population")) {
        m.initial_population.push_back(AgentState{a.at("agent_id").get<int>(), Opinion(a.at("opinion").get<int>()),
                                                  a.at("display_name").get<std::string>()});
    }
    m.iterations_planned = j.at("iterations_planned").get<int>();
    m.iterations_completed = j.at("iterations_completed").get<int>();
    m.aborted = j.at("aborted").get<bool>();
    m.abort_reason = j.at("abort_reason").get<std::string>();
}

} // namespace lodas
