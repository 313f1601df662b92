// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace lodas {

/// The 13 single-label classes of the LOGIC fallacy corpus.
enum class FallacyLabel {
    Relevance,
    Credibility,
    AppealToEmotion,
    CircularReasoning,
    FaultyGeneralization,
    FalseCausality,
    AdHominem,
    AdPopulum,
    FalseDilemma,
    Equivocation,
    Extension,
    Logic,
    Intentional,
};

inline constexpr std::array<FallacyLabel, 13> kAllFallacyLabels = {
    FallacyLabel::Relevance,         FallacyLabel::Credibility,          FallacyLabel::AppealToEmotion,
    FallacyLabel::CircularReasoning, FallacyLabel::FaultyGeneralization, FallacyLabel::FalseCausality,
    FallacyLabel::AdHominem,         FallacyLabel::AdPopulum,            FallacyLabel::FalseDilemma,
    FallacyLabel::Equivocation,      FallacyLabel::Extension,            FallacyLabel::Logic,
    FallacyLabel::Intentional,
};

/// Canonical lower-case name, e.g. "fallacy of relevance".
std::string_view to_string(FallacyLabel label) noexcept;

/// Lenient inverse of to_string: case-insensitive, '_' and '-' read as spaces,
/// and the bare class names used by the published classifier ("relevance",
/// "credibility", "emotion") are accepted.
std::optional<FallacyLabel> fallacy_label_from_string(std::string_view name);

/// Marker phrase recognized by the mock classifier, e.g. "[MOCK-RELEVANCE]".
std::string_view mock_marker(FallacyLabel label) noexcept;

} // namespace lodas
