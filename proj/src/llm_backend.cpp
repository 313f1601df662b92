// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "lodas/llm_backend.hpp"

#include <array>
#include <cmath>

#include "lodas/errors.hpp"
#include "lodas/hash.hpp"
#include "lodas/prompts.hpp"

namespace lodas {

using nlohmann::json;

std::string_view to_string(ChatRole r) noexcept {
    switch (r) {
    case ChatRole::System:
        return "system";
    case ChatRole::User:
        return "user";
    case ChatRole::Assistant:
        return "assistant";
    }
    return "user";
}

void ChatRequest::validate() const {
    if (messages.empty()) throw ConfigError("chat request has no messages");
    for (std::size_t i = 0; i < messages.size(); ++i) {
        if (messages[i].role == ChatRole::System) throw ConfigError("system text belongs in system_prompt");
        if (i > 0 && messages[i].role == messages[i - 1].role) throw ConfigError("chat roles must alternate");
    }
    if (!(sampling.temperature >= 0.0)) throw ConfigError("temperature must be >= 0");
    if (sampling.max_tokens <= 0) throw ConfigError("max_tokens must be positive");
}

json ChatRequest::to_openai_json() const {
    json msgs = json::array();
    if (!system_prompt.empty()) msgs.push_back({{"role", "system"}, {"content", system_prompt}});
    for (const auto& m : messages) msgs.push_back({{"role", std::string(to_string(m.role))}, {"content", m.content}});
    return json{{"model", model_id},
                {"messages", msgs},
                {"temperature", sampling.temperature},
                {"max_tokens", sampling.max_tokens},
                {"stream", false}};
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::string_view, 8> kAgreeReasons = {
    "a ship is defined by its continuous history and purpose rather than by its planks",
    "identity survives gradual repair just as a person stays the same while their cells are renewed",
    "the crew, the name and the voyage never changed, so the ship never stopped being Theseus's ship",
    "no single replacement turned it into another vessel, so no moment of change can be found",
    "the form and function of the ship were preserved at every step of the journey",
    "we still call a repaired house the same house, and the same holds for a ship",
    "continuity of use matters more than the origin of the wood",
    "the ship remained registered, sailed and commanded as one and the same vessel",
};

constexpr std::array<std::string_view, 8> kDisagreeReasons = {
    "once every original part is gone nothing material of the first ship remains",
    "a ship is its matter, and all of that matter has been replaced",
    "if the old planks were reassembled we would have two claims to be the original ship",
    "a name is a label we attach, it does not preserve the identity of the object",
    "by the end of the journey Theseus is sailing a copy built at sea",
    "replacing everything is the same as building anew, only more slowly",
    "memory of the original ship does not make the new timber the original ship",
    "identity requires some physical continuity and here there is none left",
};

constexpr std::array<std::string_view, 6> kNeutralReasons = {
    "the answer depends on whether we define a ship by its parts or by its function",
    "both readings of identity are defensible and neither is clearly wrong",
    "the paradox shows that our concept of sameness is vague at the edges",
    "it is the same in name and purpose but not in material",
    "the question cannot be settled without first agreeing on what identity means",
    "there are good arguments on both sides and I do not lean either way",
};

constexpr std::array<std::string_view, 5> kClosers = {
    "This is why I hold my view.",
    "I hope you can see the strength of this reasoning.",
    "Think about it carefully before deciding.",
    "That is the most reasonable conclusion.",
    "Most thoughtful people would see it this way.",
};

std::string_view pick_reason(Opinion opinion, Rng& rng) {
    if (opinion.value() > 3) return kAgreeReasons[rng.uniform_index(kAgreeReasons.size())];
    if (opinion.value() < 3) return kDisagreeReasons[rng.uniform_index(kDisagreeReasons.size())];
    return kNeutralReasons[rng.uniform_index(kNeutralReasons.size())];
}

void maybe_append_marker(const ScriptedPolicy& policy, std::string& text, Rng& rng) {
    if (!rng.bernoulli(policy.fallacy_marker_rate)) return;
    FallacyLabel label;
    if (policy.marker_labels.empty()) {
        label = kAllFallacyLabels[rng.uniform_index(kAllFallacyLabels.size())];
    } else {
        label = policy.marker_labels[rng.uniform_index(policy.marker_labels.size())];
    }
    text += ' ';
    text += mock_marker(label);
}

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(what) + " must be in [0, 1]");
}

} // namespace

ScriptedPolicy ScriptedPolicy::always(Decision decision) {
    ScriptedPolicy p;
    const double accept = decision == Decision::Accept ? 1.0 : 0.0;
    for (auto& row : p.accept_probability) row.fill(accept);
    p.reject_share = decision == Decision::Reject ? 1.0 : 0.0;
    switch (decision) {
    case Decision::Accept:
        p.preset = "always-accept";
        break;
    case Decision::Reject:
        p.preset = "always-reject";
        break;
    case Decision::Ignore:
        p.preset = "always-ignore";
        break;
    }
    return p;
}

ScriptedPolicy ScriptedPolicy::accept_if_not_lower() {
    ScriptedPolicy p;
    for (int d = 0; d < kOpinionCount; ++d) {
        for (int o = 0; o < kOpinionCount; ++o) {
            p.accept_probability[static_cast<std::size_t>(d)][static_cast<std::size_t>(o)] = o >= d ? 1.0 : 0.0;
        }
    }
    p.reject_share = 1.0;
    p.preset = "accept-if-not-lower";
    return p;
}

ScriptedPolicy ScriptedPolicy::uniform(double accept_probability, double reject_share) {
    check_probability(accept_probability, "accept probability");
    ScriptedPolicy p;
    for (auto& row : p.accept_probability) row.fill(accept_probability);
    p.reject_share = reject_share;
    p.preset = "uniform";
    return p;
}

ScriptedPolicy ScriptedPolicy::from_preset(std::string_view name) {
    if (name == "always-accept") return always(Decision::Accept);
    if (name == "always-reject") return always(Decision::Reject);
    if (name == "always-ignore") return always(Decision::Ignore);
    if (name == "accept-if-not-lower") return accept_if_not_lower();
    if (name == "uniform") return uniform(0.5);
    throw ConfigError("unknown scripted policy preset '" + std::string(name) + "'");
}

void ScriptedPolicy::validate() const {
    for (const auto& row : accept_probability) {
        for (double p : row) check_probability(p, "accept probability");
    }
    check_probability(reject_share, "reject_share");
    check_probability(fallacy_marker_rate, "fallacy_marker_rate");
    check_probability(malformed_rate, "malformed_rate");
}

json ScriptedPolicy::to_json() const {
    json markers = json::array();
    for (auto l : marker_labels) markers.push_back(std::string(lodas::to_string(l)));
    return json{{"preset", preset},
                {"accept_probability", accept_probability},
                {"reject_share", reject_share},
                {"fallacy_marker_rate", fallacy_marker_rate},
                {"malformed_rate", malformed_rate},
                {"marker_labels", markers},
                {"seed", seed}};
}

ScriptedPolicy ScriptedPolicy::from_json(const json& j) {
    ScriptedPolicy p;
    if (j.contains("preset")) p = from_preset(j.at("preset").get<std::string>());
    if (j.contains("accept_probability")) {
        const auto& t = j.at("accept_probability");
        if (!t.is_array() || t.size() != kOpinionCount) throw ConfigError("accept_probability must be a 7x7 table");
        for (std::size_t d = 0; d < kOpinionCount; ++d) {
            if (!t[d].is_array() || t[d].size() != kOpinionCount) throw ConfigError("accept_probability must be a 7x7 table");
            for (std::size_t o = 0; o < kOpinionCount; ++o) p.accept_probability[d][o] = t[d][o].get<double>();
        }
        if (!j.contains("preset")) p.preset = "custom";
    }
    if (j.contains("accept")) {
        // Shorthand for a constant table.
        p.accept_probability = uniform(j.at("accept").get<double>()).accept_probability;
        if (!j.contains("preset")) p.preset = "uniform";
    }
    p.reject_share = j.value("reject_share", p.reject_share);
    p.fallacy_marker_rate = j.value("fallacy_marker_rate", p.fallacy_marker_rate);
    p.malformed_rate = j.value("malformed_rate", p.malformed_rate);
    if (j.contains("marker_labels")) {
        p.marker_labels.clear();
        for (const auto& name : j.at("marker_labels")) {
            auto label = fallacy_label_from_string(name.get<std::string>());
            if (!label) throw ConfigError("unknown fallacy label '" + name.get<std::string>() + "'");
            p.marker_labels.push_back(*label);
        }
    }
    p.seed = j.value("seed", p.seed);
    p.validate();
    return p;
}

std::string ScriptedPolicy::digest() const { return sha256_hex(to_json().dump()); }

std::string scripted_opponent_reply(const ScriptedPolicy& policy, Opinion opinion, Rng& rng) {
    std::string text = "I ";
    text += stance_phrase(opinion);
    text += " on the provided reasoning conclusions. I think that ";
    text += pick_reason(opinion, rng);
    text += ". ";
    text += kClosers[rng.uniform_index(kClosers.size())];
    maybe_append_marker(policy, text, rng);
    return text;
}

Decision scripted_decision(const ScriptedPolicy& policy, Opinion discussant, Opinion opponent, Rng& rng) {
    const double p_accept =
        policy.accept_probability[static_cast<std::size_t>(discussant.value())][static_cast<std::size_t>(opponent.value())];
    const double u = rng.uniform01();
    if (u < p_accept) return Decision::Accept;
    // Residual mass split between REJECT and IGNORE.
    if (u < p_accept + (1.0 - p_accept) * policy.reject_share) return Decision::Reject;
    return Decision::Ignore;
}

std::string scripted_discussant_reply(const ScriptedPolicy& policy, Decision decision, Opinion discussant, Rng& rng) {
    std::string text = "My original opinion was I ";
    text += stance_phrase(discussant);
    text += " on the reasoning. After reading your argument my conclusions are: ";
    if (rng.bernoulli(policy.malformed_rate)) {
        text += "this is an interesting perspective that deserves more thought.";
        return text;
    }
    text += "I ";
    text += to_string(decision);
    text += " your stance because ";
    text += pick_reason(discussant, rng);
    text += '.';
    maybe_append_marker(policy, text, rng);
    return text;
}

ScriptedBackend::ScriptedBackend(ScriptedPolicy policy) : policy_(std::move(policy)), rng_(policy_.seed) {
    policy_.validate();
}

std::string ScriptedBackend::chat(const ChatRequest& request) {
    request.validate();
    if (!request.hint) throw ConfigError("scripted backend needs a turn hint");
    const TurnHint& hint = *request.hint;
    std::lock_guard lock(mutex_);
    switch (hint.turn) {
    case Turn::OpponentArgument:
        return scripted_opponent_reply(policy_, hint.speaker_opinion, rng_);
    case Turn::DiscussantVerdict: {
        const Decision d = scripted_decision(policy_, hint.speaker_opinion, hint.counterpart_opinion, rng_);
        return scripted_discussant_reply(policy_, d, hint.speaker_opinion, rng_);
    }
    case Turn::OpponentClosing:
        if (hint.discussant_decision == Decision::Reject) {
            std::string text = "I REJECT your stance: I still ";
            text += stance_phrase(hint.speaker_opinion);
            text += " on the provided reasoning conclusions, but I respect that you ";
            text += stance_phrase(hint.counterpart_opinion);
            text += ". Thank you for the discussion.";
            return text;
        }
        return "END";
    }
    return "END";
}

std::string ScriptedBackend::identity() const { return "scripted:" + policy_.preset + ":" + policy_.digest().substr(0, 16); }

json ScriptedBackend::describe() const { return json{{"kind", "scripted"}, {"policy", policy_.to_json()}}; }

} // namespace lodas
