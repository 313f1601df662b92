// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "lodas/storage.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "lodas/decision_parser.hpp"
#include "lodas/errors.hpp"
#include "lodas/simulation.hpp"

namespace lodas {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void fsync_directory(const fs::path& dir) {
    const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
    if (fd >= 0) {
        ::fsync(fd);
        ::close(fd);
    }
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string snapshots_csv(const std::vector<Histogram>& snapshots) {
    std::string out = "iteration";
    for (int o = 0; o < kOpinionCount; ++o) {
        out += ',';
        out += opinion_label(o);
    }
    out += '\n';
    for (std::size_t t = 0; t < snapshots.size(); ++t) {
        out += std::to_string(t);
        for (int c : snapshots[t]) {
            out += ',';
            out += std::to_string(c);
        }
        out += '\n';
    }
    return out;
}

std::vector<Histogram> parse_snapshots(const std::string& text) {
    std::vector<Histogram> out;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line); // header
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream cells(line);
        std::string cell;
        std::vector<int> values;
        while (std::getline(cells, cell, ',')) {
            try {
                values.push_back(std::stoi(cell));
            } catch (const std::exception&) {
                throw LoadError("snapshots.csv row " + std::to_string(row) + " is not numeric");
            }
        }
        if (values.size() != kOpinionCount + 1 || values[0] != static_cast<int>(row)) {
            throw LoadError("snapshots.csv row " + std::to_string(row) + " is malformed");
        }
        Histogram h{};
        for (std::size_t i = 0; i < h.size(); ++i) h[i] = values[i + 1];
        out.push_back(h);
        ++row;
    }
    return out;
}

} // namespace

void write_file_atomic(const fs::path& path, const std::string& contents) {
    const fs::path tmp = path.string() + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (f == nullptr) throw IoError("cannot open " + tmp.string() + ": " + std::strerror(errno));
    const bool written = std::fwrite(contents.data(), 1, contents.size(), f) == contents.size();
    const bool flushed = std::fflush(f) == 0 && ::fsync(::fileno(f)) == 0;
    const bool closed = std::fclose(f) == 0;
    if (!(written && flushed && closed)) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw IoError("cannot write " + path.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
    fsync_directory(path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

std::string make_run_id(std::uint64_t seed) {
    return utc_compact_timestamp() + "_seed" + std::to_string(seed);
}

std::string serialize_transcript(const std::vector<InteractionRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        out += json(r).dump(-1, ' ', false, json::error_handler_t::replace);
        out += '\n';
    }
    return out;
}

void write_run_to(const RunArtifacts& artifacts, const fs::path& run_dir) {
    std::error_code ec;
    fs::create_directories(run_dir, ec);
    if (ec) throw IoError("cannot create run directory " + run_dir.string() + ": " + ec.message());
    const fs::path marker = run_dir / kPartialMarkerFile;
    try {
        write_file_atomic(marker, "write in progress\n");
        write_file_atomic(run_dir / kTranscriptFile, serialize_transcript(artifacts.records));
        write_file_atomic(run_dir / kSnapshotsFile, snapshots_csv(artifacts.snapshots));
        write_file_atomic(run_dir / kManifestFile,
                          json(artifacts.manifest).dump(2, ' ', false, json::error_handler_t::replace) + "\n");
    } catch (const IoError&) {
        std::ofstream(marker) << "write failed\n";
        throw;
    }
    fs::remove(marker, ec);
}

std::string write_run(const RunArtifacts& artifacts, const fs::path& parent) {
    std::string id = make_run_id(artifacts.manifest.seed);
    for (int k = 1; fs::exists(parent / id); ++k) id = make_run_id(artifacts.manifest.seed) + "-" + std::to_string(k);
    write_run_to(artifacts, parent / id);
    return id;
}

RunArtifacts load_run(const fs::path& run_dir, const LoadOptions& options) {
    if (!fs::is_directory(run_dir)) throw LoadError("run directory " + run_dir.string() + " does not exist");
    if (!fs::exists(run_dir / kManifestFile)) throw LoadError("run directory has no " + std::string(kManifestFile));
    if (!fs::exists(run_dir / kTranscriptFile)) throw LoadError("run directory has no " + std::string(kTranscriptFile));

    RunArtifacts out;
    try {
        const json m = json::parse(read_file(run_dir / kManifestFile));
        const int version = m.at("schema_version").get<int>();
        if (version != kSchemaVersion) {
            throw LoadError("manifest schema_version " + std::to_string(version) + " is not supported (expected " +
                            std::to_string(kSchemaVersion) + ")");
        }
        out.manifest = m.get<RunManifest>();
    } catch (const LoadError&) {
        throw;
    } catch (const std::exception& e) {
        throw LoadError(std::string("invalid manifest: ") + e.what());
    }

    std::istringstream transcript(read_file(run_dir / kTranscriptFile));
    std::string line;
    std::size_t index = 0;
    while (std::getline(transcript, line)) {
        if (line.empty()) continue;
        try {
            const json j = json::parse(line);
            const int version = j.at("schema_version").get<int>();
            if (version != kSchemaVersion) {
                throw LoadError("record schema_version " + std::to_string(version) + " is not supported", index);
            }
            out.records.push_back(j.get<InteractionRecord>());
        } catch (const LoadError&) {
            throw;
        } catch (const std::exception& e) {
            throw LoadError(std::string("malformed record: ") + e.what(), index);
        }
        ++index;
    }

    if (fs::exists(run_dir / kSnapshotsFile)) {
        out.snapshots = parse_snapshots(read_file(run_dir / kSnapshotsFile));
    } else {
        throw LoadError("run directory has no " + std::string(kSnapshotsFile));
    }

    if (options.validate) {
        const auto issues = audit_run(out);
        if (!issues.empty()) {
            const auto& first = issues.front();
            if (first.record) throw LoadError(first.message, *first.record);
            throw LoadError(first.message);
        }
    }
    return out;
}

std::vector<AuditIssue> audit_run(const RunArtifacts& a) {
    std::vector<AuditIssue> issues;
    const auto& m = a.manifest;
    auto fail = [&](std::optional<std::size_t> i, std::string msg) { issues.push_back({i, std::move(msg)}); };

    if (m.schema_version != kSchemaVersion) fail(std::nullopt, "unsupported manifest schema_version");
    const std::size_t n = m.initial_population.size();
    if (n < 2) {
        fail(std::nullopt, "manifest initial population has fewer than 2 agents");
        return issues;
    }

    std::unordered_map<int, Opinion> state;
    for (const auto& agent : m.initial_population) {
        if (!state.emplace(agent.agent_id, agent.opinion).second) {
            fail(std::nullopt, "duplicate agent id " + std::to_string(agent.agent_id));
        }
    }

    RunCounters tally;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        const auto& r = a.records[i];
        if (r.iteration != static_cast<int>(i / n) || r.index != static_cast<int>(i % n)) {
            fail(i, "iteration/index out of sequence");
        }
        const auto d_it = state.find(r.discussant_id);
        const auto o_it = state.find(r.opponent_id);
        if (d_it == state.end() || o_it == state.end()) {
            fail(i, "unknown agent id");
            continue;
        }
        if (r.discussant_id == r.opponent_id) fail(i, "discussant and opponent are the same agent");
        if (r.discussant_before != d_it->second) fail(i, "discussant opinion before does not match replayed state");
        if (r.opponent_before != o_it->second) fail(i, "opponent opinion before does not match replayed state");

        if (r.backend_failed && (r.decision != Decision::Ignore || r.delta != 0)) {
            fail(i, "backend-failed interaction must be IGNORE with delta 0");
        }
        if (r.parse_failed && r.decision != Decision::Ignore) fail(i, "parse-failed interaction must be IGNORE");
        if (r.delta != update_delta(r.decision, r.discussant_before, r.opponent_before)) {
            fail(i, "delta contradicts decision");
        }
        if (r.discussant_after != r.discussant_before.shifted(r.delta)) {
            fail(i, "discussant opinion after != before + delta");
        }
        if (r.opponent_after != r.opponent_before) fail(i, "opponent opinion changed");
        if (!r.parse_failed && !r.backend_failed) {
            const auto parsed = try_extract_decision(r.discussant_utterance);
            if (!parsed) {
                fail(i, "discussant utterance has no verdict but parse_failed is false");
            } else if (*parsed != r.decision) {
                fail(i, "decision does not match the verdict in the discussant utterance");
            }
        }
        d_it->second = r.discussant_after;

        ++tally.interactions;
        if (r.delta != 0) ++tally.opinion_changes;
        if (r.parse_failed) ++tally.parse_failures;
        if (r.backend_failed) ++tally.backend_failures;
    }

    const auto expected_min = static_cast<std::size_t>(m.iterations_completed) * n;
    if (m.aborted ? (a.records.size() < expected_min || a.records.size() >= expected_min + n)
                  : a.records.size() != expected_min) {
        fail(std::nullopt, "transcript has " + std::to_string(a.records.size()) + " records for " +
                               std::to_string(m.iterations_completed) + " iterations of " + std::to_string(n) +
                               " interactions");
    }
    if (m.iterations_completed > m.iterations_planned) fail(std::nullopt, "more iterations completed than planned");

    if (m.counters.interactions != tally.interactions) fail(std::nullopt, "manifest interaction counter mismatch");
    if (m.counters.opinion_changes != tally.opinion_changes) fail(std::nullopt, "manifest opinion-change counter mismatch");
    if (m.counters.parse_failures != tally.parse_failures) fail(std::nullopt, "manifest parse-failure counter mismatch");
    if (m.counters.backend_failures < tally.backend_failures) fail(std::nullopt, "manifest backend-failure counter mismatch");

    try {
        const auto replayed = replay_snapshots(m.initial_population, a.records, m.iterations_completed);
        if (replayed.size() != a.snapshots.size()) {
            fail(std::nullopt, "snapshot count " + std::to_string(a.snapshots.size()) + " != " +
                                   std::to_string(replayed.size()) + " replayed");
        } else {
            for (std::size_t t = 0; t < replayed.size(); ++t) {
                if (replayed[t] != a.snapshots[t]) fail(std::nullopt, "snapshot " + std::to_string(t) + " differs from replay");
            }
        }
    } catch (const LoadError& e) {
        fail(std::nullopt, e.what());
    }
    return issues;
}

} // namespace lodas
