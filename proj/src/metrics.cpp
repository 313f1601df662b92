// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "lodas/metrics.hpp"

#include <cctype>
#include <numeric>
#include <unordered_set>

#include "lodas/errors.hpp"

namespace lodas {

namespace {

const std::string& utterance_of(const InteractionRecord& r, Role role) {
    return role == Role::Opponent ? r.opponent_utterance : r.discussant_utterance;
}

const std::optional<FallacyAnnotation>& annotation_of(const InteractionRecord& r, Role role) {
    return role == Role::Opponent ? r.opponent_fallacy : r.discussant_fallacy;
}

Opinion speaker_opinion(const InteractionRecord& r, Role role) {
    return role == Role::Opponent ? r.opponent_before : r.discussant_before;
}

bool counted(const InteractionRecord& r, Role role) { return !r.backend_failed && !utterance_of(r, role).empty(); }

const FallacyAnnotation& require_annotation(const InteractionRecord& r, Role role, std::size_t index) {
    const auto& a = annotation_of(r, role);
    if (!a) {
        throw AnnotationMissing("record " + std::to_string(index) + " has no " + std::string(to_string(role)) +
                                " fallacy annotation; run the annotate pass first");
    }
    return *a;
}

} // namespace

std::string_view to_string(AcceptanceMode m) noexcept { return m == AcceptanceMode::Movement ? "movement" : "decision"; }

std::string_view to_string(Role r) noexcept { return r == Role::Opponent ? "opponent" : "discussant"; }

std::optional<double> AcceptanceMatrix::rate(int discussant, int opponent) const {
    const auto d = static_cast<std::size_t>(discussant);
    const auto o = static_cast<std::size_t>(opponent);
    if (counts[d][o] == 0) return std::nullopt;
    return static_cast<double>(accepted[d][o]) / static_cast<double>(counts[d][o]);
}

AcceptanceMatrix acceptance_matrix(std::span<const InteractionRecord> records, AcceptanceMode mode) {
    AcceptanceMatrix m;
    m.mode = mode;
    for (const auto& r : records) {
        if (r.backend_failed) continue;
        const auto d = static_cast<std::size_t>(r.discussant_before.value());
        const auto o = static_cast<std::size_t>(r.opponent_before.value());
        ++m.counts[d][o];
        bool hit = false;
        if (mode == AcceptanceMode::Decision) {
            hit = r.decision == Decision::Accept;
        } else {
            const int toward = (o > d) - (o < d);
            hit = toward != 0 && r.delta == toward;
        }
        if (hit) ++m.accepted[d][o];
    }
    return m;
}

std::vector<TrajectoryRow> trajectories(std::span<const Histogram> snapshots) {
    std::vector<TrajectoryRow> rows;
    rows.reserve(snapshots.size());
    for (const auto& h : snapshots) {
        const int n = std::accumulate(h.begin(), h.end(), 0);
        if (n <= 0) throw DomainError("empty opinion snapshot");
        TrajectoryRow row{};
        for (std::size_t i = 0; i < row.size(); ++i) row[i] = static_cast<double>(h[i]) / static_cast<double>(n);
        rows.push_back(row);
    }
    return rows;
}

std::vector<TrajectoryRow> trajectories(const RunArtifacts& run) { return trajectories(std::span(run.snapshots)); }

std::string normalize_utterance(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

double uniqueness_rate(std::span<const InteractionRecord> records, Role role) {
    std::unordered_set<std::string> distinct;
    std::size_t total = 0;
    for (const auto& r : records) {
        if (!counted(r, role)) continue;
        ++total;
        distinct.insert(normalize_utterance(utterance_of(r, role)));
    }
    if (total == 0) throw DomainError("no " + std::string(to_string(role)) + " utterances to measure");
    return 100.0 * static_cast<double>(distinct.size()) / static_cast<double>(total);
}

FallacyDistribution fallacy_distribution(std::span<const InteractionRecord> records, Role role) {
    std::array<std::map<FallacyLabel, std::int64_t>, kOpinionCount> tallies;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (!counted(r, role)) continue;
        const auto& a = require_annotation(r, role, i);
        if (a.fallacious()) ++tallies[static_cast<std::size_t>(speaker_opinion(r, role).value())][*a.label];
    }
    FallacyDistribution out;
    for (std::size_t o = 0; o < tallies.size(); ++o) {
        std::int64_t total = 0;
        for (const auto& [label, n] : tallies[o]) total += n;
        for (const auto& [label, n] : tallies[o]) out[o][label] = static_cast<double>(n) / static_cast<double>(total);
    }
    return out;
}

std::optional<double> change_after_fallacy_rate(std::span<const InteractionRecord> records) {
    std::int64_t changes = 0;
    std::int64_t after_fallacy = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.delta == 0) continue;
        ++changes;
        if (require_annotation(r, Role::Opponent, i).fallacious()) ++after_fallacy;
    }
    if (changes == 0) return std::nullopt;
    return static_cast<double>(after_fallacy) / static_cast<double>(changes);
}

std::optional<double> fallacy_persuasion_rate(std::span<const InteractionRecord> records) {
    std::int64_t fallacious = 0;
    std::int64_t persuaded = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (!counted(r, Role::Opponent)) continue;
        if (!require_annotation(r, Role::Opponent, i).fallacious()) continue;
        ++fallacious;
        if (r.delta != 0) ++persuaded;
    }
    if (fallacious == 0) return std::nullopt;
    return static_cast<double>(persuaded) / static_cast<double>(fallacious);
}

ConsensusSummary consensus_summary(const Histogram& h) {
    const int n = std::accumulate(h.begin(), h.end(), 0);
    if (n <= 0) throw DomainError("empty opinion histogram");
    std::size_t best = 0;
    for (std::size_t i = 1; i < h.size(); ++i) {
        if (h[i] > h[best]) best = i;
    }
    ConsensusSummary s;
    s.majority_opinion = Opinion(static_cast<int>(best));
    s.majority_share = static_cast<double>(h[best]) / static_cast<double>(n);
    s.consensus = h[best] == n;
    return s;
}

ConsensusSummary consensus_summary(const RunArtifacts& run) {
    if (run.snapshots.empty()) throw DomainError("run has no snapshots");
    return consensus_summary(run.snapshots.back());
}

bool fully_annotated(std::span<const InteractionRecord> records) {
    for (const auto& r : records) {
        for (Role role : {Role::Opponent, Role::Discussant}) {
            if (counted(r, role) && !annotation_of(r, role)) return false;
        }
    }
    return true;
}

} // namespace lodas
