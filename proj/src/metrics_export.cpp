// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "lodas/metrics_export.hpp"

#include <charconv>

#include "lodas/errors.hpp"
#include "lodas/metrics.hpp"
#include "lodas/storage.hpp"

namespace lodas {

namespace fs = std::filesystem;

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

RunLabels run_labels(const RunManifest& manifest) {
    RunLabels labels{"unknown", manifest.backend_identity, "unknown"};
    const auto& sim = manifest.config.contains("simulation") ? manifest.config.at("simulation") : manifest.config;
    if (sim.contains("scenario") && sim.at("scenario").contains("name")) {
        labels.scenario = sim.at("scenario").at("name").get<std::string>();
    }
    if (sim.contains("valence")) {
        labels.statement = sim.at("valence").get<std::string>() == "negative" ? "different" : "same";
    }
    return labels;
}

namespace {

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : "NA"; }

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string matrix_header() {
    std::string h = "discussant\\opponent";
    for (int o = 0; o < kOpinionCount; ++o) h += "," + std::string(opinion_label(o));
    return h + "\n";
}

std::string counts_csv(const AcceptanceMatrix& m) {
    std::string out = matrix_header();
    for (int d = 0; d < kOpinionCount; ++d) {
        out += opinion_label(d);
        for (int o = 0; o < kOpinionCount; ++o) out += "," + std::to_string(m.counts[static_cast<std::size_t>(d)][static_cast<std::size_t>(o)]);
        out += '\n';
    }
    return out;
}

std::string rates_csv(const AcceptanceMatrix& m) {
    std::string out = matrix_header();
    for (int d = 0; d < kOpinionCount; ++d) {
        out += opinion_label(d);
        for (int o = 0; o < kOpinionCount; ++o) out += "," + optional_cell(m.rate(d, o));
        out += '\n';
    }
    return out;
}

std::string uniqueness_row(const RunArtifacts& run) {
    const auto labels = run_labels(run.manifest);
    auto rate = [&](Role role) -> std::string {
        try {
            return format_double(uniqueness_rate(run.records, role));
        } catch (const DomainError&) {
            return "NA";
        }
    };
    return csv_quote(labels.scenario) + "," + csv_quote(labels.model) + "," + labels.statement + "," +
           rate(Role::Opponent) + "," + rate(Role::Discussant) + "\n";
}

constexpr const char* kUniquenessHeader = "scenario,model,statement,opponent_unique_pct,discussant_unique_pct\n";
constexpr const char* kChangeHeader =
    "scenario,model,statement,opinion_changes,changes_after_fallacy,change_after_fallacy_rate,"
    "fallacious_opponent_utterances,fallacy_persuasion_rate\n";

std::string change_row(const RunArtifacts& run) {
    const auto labels = run_labels(run.manifest);
    std::int64_t changes = 0;
    std::int64_t after = 0;
    std::int64_t fallacious = 0;
    for (const auto& r : run.records) {
        const bool f = r.opponent_fallacy && r.opponent_fallacy->fallacious();
        if (r.delta != 0) {
            ++changes;
            if (f) ++after;
        }
        if (f && !r.backend_failed) ++fallacious;
    }
    return csv_quote(labels.scenario) + "," + csv_quote(labels.model) + "," + labels.statement + "," +
           std::to_string(changes) + "," + std::to_string(after) + "," +
           optional_cell(change_after_fallacy_rate(run.records)) + "," + std::to_string(fallacious) + "," +
           optional_cell(fallacy_persuasion_rate(run.records)) + "\n";
}

} // namespace

ExportResult write_metrics(const RunArtifacts& run, const fs::path& out_dir, FallacyExport fallacy) {
    bool with_fallacy = false;
    switch (fallacy) {
    case FallacyExport::Skip:
        break;
    case FallacyExport::Auto:
        with_fallacy = fully_annotated(run.records);
        break;
    case FallacyExport::Require:
        if (!fully_annotated(run.records)) {
            throw AnnotationMissing("transcript is not annotated; run `lodas annotate <run-dir>` first");
        }
        with_fallacy = true;
        break;
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    ExportResult result;
    auto emit = [&](const char* name, const std::string& contents) {
        write_file_atomic(out_dir / name, contents);
        result.files.push_back(out_dir / name);
    };

    {
        std::string csv = "iteration";
        for (int o = 0; o < kOpinionCount; ++o) csv += "," + std::string(opinion_label(o));
        csv += '\n';
        const auto rows = trajectories(run);
        for (std::size_t t = 0; t < rows.size(); ++t) {
            csv += std::to_string(t);
            for (double v : rows[t]) csv += "," + format_double(v);
            csv += '\n';
        }
        emit("trajectories.csv", csv);
    }
    for (AcceptanceMode mode : {AcceptanceMode::Decision, AcceptanceMode::Movement}) {
        const auto m = acceptance_matrix(run.records, mode);
        const std::string base = "acceptance_" + std::string(to_string(mode));
        emit((base + "_counts.csv").c_str(), counts_csv(m));
        emit((base + "_rates.csv").c_str(), rates_csv(m));
    }
    emit("uniqueness.csv", std::string(kUniquenessHeader) + uniqueness_row(run));
    {
        const auto c = consensus_summary(run);
        emit("consensus.csv", "consensus,majority_opinion,majority_label,majority_share\n" +
                                  std::string(c.consensus ? "true" : "false") + "," +
                                  std::to_string(c.majority_opinion.value()) + "," + std::string(c.majority_opinion.label()) +
                                  "," + format_double(c.majority_share) + "\n");
    }

    if (with_fallacy) {
        const auto labels = run_labels(run.manifest);
        std::string csv = "scenario,role,opinion,label,fraction\n";
        for (Role role : {Role::Opponent, Role::Discussant}) {
            const auto dist = fallacy_distribution(run.records, role);
            for (int o = 0; o < kOpinionCount; ++o) {
                for (const auto& [label, fraction] : dist[static_cast<std::size_t>(o)]) {
                    csv += csv_quote(labels.scenario) + "," + std::string(to_string(role)) + "," + std::to_string(o) + "," +
                           std::string(to_string(label)) + "," + format_double(fraction) + "\n";
                }
            }
        }
        emit("fallacy_distribution.csv", csv);
        emit("change_rates.csv", std::string(kChangeHeader) + change_row(run));
        result.fallacy_written = true;
    }
    return result;
}

std::vector<fs::path> write_summary(std::span<const RunArtifacts> runs, const fs::path& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    std::string uniqueness = kUniquenessHeader;
    std::string changes = kChangeHeader;
    bool any_annotated = false;
    for (const auto& run : runs) {
        uniqueness += uniqueness_row(run);
        if (fully_annotated(run.records)) {
            changes += change_row(run);
            any_annotated = true;
        }
    }
    std::vector<fs::path> files{out_dir / "uniqueness.csv"};
    write_file_atomic(files.back(), uniqueness);
    if (any_annotated) {
        files.push_back(out_dir / "change_rates.csv");
        write_file_atomic(files.back(), changes);
    }
    return files;
}

} // namespace lodas
