// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "lodas/core.hpp"

#include <algorithm>

#include "lodas/errors.hpp"

namespace lodas {

namespace {

constexpr std::array<std::string_view, kOpinionCount> kLabels = {
    "strongly disagree", "disagree", "mildly disagree", "neutral", "mildly agree", "agree", "strongly agree",
};

struct TopicTexts {
    std::string_view id;
    std::string_view positive;
    std::string_view negative;
};

constexpr TopicTexts kTopics[] = {
    {"theseus",
     "Theseus set sail to reclaim the throne as king of Athens. During the journey, parts of Theseus's ship began "
     "to break or decay; Theseus and his crew replaced these parts as they sailed. Eventually, each part of the ship "
     "is replaced. In the end the Ship of Theseus is still the same ship on which he originally sailed.",
     "Theseus set sail to reclaim the throne as king of Athens. During the journey, parts of Theseus's ship began "
     "to break or decay; Theseus and his crew replaced these parts as they sailed. Eventually, each part of the ship "
     "is replaced. In the end, the Ship of Theseus is completely different from the one he originally sailed."},
};

} // namespace

Opinion::Opinion(int value) : value_(value) {
    if (value < kMinOpinion || value > kMaxOpinion) {
        throw DomainError("opinion " + std::to_string(value) + " outside [0, 6]");
    }
}

std::string_view Opinion::label() const noexcept { return kLabels[static_cast<std::size_t>(value_)]; }

Opinion Opinion::shifted(int delta) const noexcept {
    Opinion out;
    out.value_ = std::clamp(value_ + delta, kMinOpinion, kMaxOpinion);
    return out;
}

std::string_view opinion_label(int value) { return Opinion(value).label(); }

Opinion opinion_from_label(std::string_view label) {
    for (int i = 0; i < kOpinionCount; ++i) {
        if (kLabels[static_cast<std::size_t>(i)] == label) return Opinion(i);
    }
    throw DomainError("unknown opinion label '" + std::string(label) + "'");
}

std::string_view to_string(Decision d) noexcept {
    switch (d) {
    case Decision::Accept:
        return "ACCEPT";
    case Decision::Reject:
        return "REJECT";
    case Decision::Ignore:
        return "IGNORE";
    }
    return "IGNORE";
}

Decision decision_from_string(std::string_view s) {
    if (s == "ACCEPT") return Decision::Accept;
    if (s == "REJECT") return Decision::Reject;
    if (s == "IGNORE") return Decision::Ignore;
    throw DomainError("unknown decision '" + std::string(s) + "'");
}

int update_delta(Decision decision, Opinion discussant, Opinion opponent) noexcept {
    if (decision != Decision::Accept) return 0;
    const int diff = opponent.value() - discussant.value();
    return (diff > 0) - (diff < 0);
}

Valence valence_from_int(int v) {
    if (v == 1) return Valence::Positive;
    if (v == -1) return Valence::Negative;
    throw DomainError("statement valence must be +1 or -1, got " + std::to_string(v));
}

Valence valence_from_string(std::string_view s) {
    if (s == "positive" || s == "+1" || s == "1" || s == "same") return Valence::Positive;
    if (s == "negative" || s == "-1" || s == "different") return Valence::Negative;
    throw ConfigError("unknown valence '" + std::string(s) + "' (expected positive or negative)");
}

std::string_view to_string(Valence v) noexcept { return v == Valence::Positive ? "positive" : "negative"; }

std::string statement_text(std::string_view topic_id, int valence) {
    const Valence v = valence_from_int(valence);
    for (const auto& t : kTopics) {
        if (t.id == topic_id) return std::string(v == Valence::Positive ? t.positive : t.negative);
    }
    throw ConfigError("unknown topic '" + std::string(topic_id) + "'");
}

Statement make_statement(std::string_view topic_id, Valence valence) {
    return Statement{std::string(topic_id), statement_text(topic_id, static_cast<int>(valence)), valence};
}

std::string default_display_name(int agent_id) { return "Agent_" + std::to_string(agent_id); }

Histogram histogram_of(std::span<const AgentState> agents) noexcept {
    Histogram h{};
    for (const auto& a : agents) ++h[static_cast<std::size_t>(a.opinion.value())];
    return h;
}

} // namespace lodas
