// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lodas/record.hpp"

namespace lodas {

enum class AcceptanceMode {
    Movement, // opinion moved one step toward the Opponent
    Decision, // ACCEPT was declared
};

std::string_view to_string(AcceptanceMode m) noexcept;

/// Interaction tallies indexed [discussant opinion before][opponent opinion].
struct AcceptanceMatrix {
    AcceptanceMode mode = AcceptanceMode::Decision;
    std::array<std::array<std::int64_t, kOpinionCount>, kOpinionCount> counts{};
    std::array<std::array<std::int64_t, kOpinionCount>, kOpinionCount> accepted{};

    /// accepted/counts, or nullopt for an empty cell.
    std::optional<double> rate(int discussant, int opponent) const;
};

/// Records flagged backend_failed are skipped.
AcceptanceMatrix acceptance_matrix(std::span<const InteractionRecord> records, AcceptanceMode mode);

using TrajectoryRow = std::array<double, kOpinionCount>;

/// Row t = snapshot t divided by the population size.
std::vector<TrajectoryRow> trajectories(std::span<const Histogram> snapshots);
std::vector<TrajectoryRow> trajectories(const RunArtifacts& run);

enum class Role { Opponent, Discussant };

std::string_view to_string(Role r) noexcept;

/// Trim, collapse internal whitespace to one space, ASCII case-fold.
std::string normalize_utterance(std::string_view text);

/// 100 * distinct normalized utterances / total utterances for the role.
/// Throws DomainError when the role has no utterances.
double uniqueness_rate(std::span<const InteractionRecord> records, Role role);

/// Per speaker opinion (at utterance time), the share of each label among
/// that opinion's fallacious utterances. Opinions without fallacies map to an
/// empty distribution.
using FallacyDistribution = std::array<std::map<FallacyLabel, double>, kOpinionCount>;

/// Throws AnnotationMissing if a counted utterance has no annotation.
FallacyDistribution fallacy_distribution(std::span<const InteractionRecord> records, Role role);

/// Share of opinion changes whose Opponent utterance was fallacious;
/// nullopt when there were no changes. Throws AnnotationMissing.
std::optional<double> change_after_fallacy_rate(std::span<const InteractionRecord> records);

/// Share of fallacious Opponent utterances that were followed by an opinion
/// change; nullopt when no utterance was fallacious. Throws AnnotationMissing.
std::optional<double> fallacy_persuasion_rate(std::span<const InteractionRecord> records);

struct ConsensusSummary {
    bool consensus = false;
    Opinion majority_opinion;
    double majority_share = 0.0;

    bool operator==(const ConsensusSummary&) const = default;
};

/// Ties go to the lower opinion index.
ConsensusSummary consensus_summary(const Histogram& final_histogram);
ConsensusSummary consensus_summary(const RunArtifacts& run);

/// True when every non-failed Opponent and Discussant utterance carries an annotation.
bool fully_annotated(std::span<const InteractionRecord> records);

} // namespace lodas
