// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "lodas/fallacy_labels.hpp"

#include <cctype>
#include <string>

namespace lodas {

namespace {

struct LabelInfo {
    FallacyLabel label;
    std::string_view name;
    std::string_view marker;
    std::string_view alias;
};

constexpr LabelInfo kInfo[] = {
    {FallacyLabel::Relevance, "fallacy of relevance", "[MOCK-RELEVANCE]", "relevance"},
    {FallacyLabel::Credibility, "fallacy of credibility", "[MOCK-CREDIBILITY]", "credibility"},
    {FallacyLabel::AppealToEmotion, "appeal to emotion", "[MOCK-EMOTION]", "emotion"},
    {FallacyLabel::CircularReasoning, "circular reasoning", "[MOCK-CIRCULAR]", "circular"},
    {FallacyLabel::FaultyGeneralization, "faulty generalization", "[MOCK-GENERALIZATION]", "generalization"},
    {FallacyLabel::FalseCausality, "false causality", "[MOCK-CAUSALITY]", "causality"},
    {FallacyLabel::AdHominem, "ad hominem", "[MOCK-AD-HOMINEM]", "hominem"},
    {FallacyLabel::AdPopulum, "ad populum", "[MOCK-AD-POPULUM]", "populum"},
    {FallacyLabel::FalseDilemma, "false dilemma", "[MOCK-FALSE-DILEMMA]", "dilemma"},
    {FallacyLabel::Equivocation, "equivocation", "[MOCK-EQUIVOCATION]", "equivocation"},
    {FallacyLabel::Extension, "fallacy of extension", "[MOCK-EXTENSION]", "extension"},
    {FallacyLabel::Logic, "fallacy of logic", "[MOCK-LOGIC]", "logic"},
    {FallacyLabel::Intentional, "intentional", "[MOCK-INTENTIONAL]", "intentional fallacy"},
};

const LabelInfo& info(FallacyLabel label) noexcept { return kInfo[static_cast<std::size_t>(label)]; }

} // namespace

std::string_view to_string(FallacyLabel label) noexcept { return info(label).name; }

std::string_view mock_marker(FallacyLabel label) noexcept { return info(label).marker; }

std::optional<FallacyLabel> fallacy_label_from_string(std::string_view name) {
    std::string norm;
    norm.reserve(name.size());
    for (char c : name) {
        if (c == '_' || c == '-') c = ' ';
        norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    while (!norm.empty() && norm.back() == ' ') norm.pop_back();
    while (!norm.empty() && norm.front() == ' ') norm.erase(norm.begin());
    for (const auto& i : kInfo) {
        if (norm == i.name || norm == i.alias) return i.label;
    }
    return std::nullopt;
}

} // namespace lodas
