// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite. Each criterion prints one PASS/FAIL line; the exit code is
// nonzero if any criterion fails. Everything runs against the scripted backend
// and the mock classifier.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "lodas/cli.hpp"
#include "lodas/decision_parser.hpp"
#include "lodas/errors.hpp"
#include "lodas/fallacy.hpp"
#include "lodas/metrics.hpp"
#include "lodas/simulation.hpp"
#include "lodas/storage.hpp"
#include "oracle.hpp"
#include "parser_cases.hpp"
#include "temp_dir.hpp"

using namespace lodas;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kOracleTolerance = 1e-12;
constexpr double kVolumeSecondsLimit = 10.0;
constexpr int kUpdateRuleTriples = 10000;
constexpr int kConvergenceSeeds = 20;
constexpr int kConvergenceIterations = 60;
constexpr double kConvergenceShare = 0.95;
constexpr int kDominanceTranscripts = 50;
constexpr int kTampersPerFieldInMemory = 200;
constexpr int kTampersPerFieldOnDisk = 10;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    std::string name;
    std::function<Outcome()> check;
};

RunArtifacts scripted_run(ScriptedPolicy policy, std::uint64_t seed, int iterations = 30,
                          std::string_view scenario = "balanced") {
    SimulationConfig c;
    c.scenario = build_scenario(scenario);
    c.iterations = iterations;
    c.seed = seed;
    policy.seed = derive_seed(seed, "backend");
    ScriptedBackend backend(policy);
    return run_simulation(c, backend);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "lodas");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

// ---------------------------------------------------------------------------

Outcome scenario_fidelity() {
    std::vector<const char*> argv{"lodas", "scenarios", "--json"};
    std::ostringstream out, err;
    if (run_cli(static_cast<int>(argv.size()), argv.data(), out, err) != 0) return {false, "scenarios failed"};
    const json listed = json::parse(out.str());
    const std::map<std::string, std::map<std::string, int>> expected = {
        {"balanced", {{"0", 20}, {"1", 20}, {"2", 20}, {"3", 20}, {"4", 20}, {"5", 20}, {"6", 20}}},
        {"polarized", {{"0", 72}, {"6", 69}}},
        {"unbalanced", {{"0", 101}, {"1", 20}, {"2", 19}}},
    };
    std::map<std::string, std::map<std::string, int>> got;
    for (const auto& s : listed) got[s.at("name")] = s.at("counts").get<std::map<std::string, int>>();
    if (got != expected) return {false, "counts differ: " + listed.dump()};
    for (const auto& spec : canonical_scenarios()) {
        if (histogram_of(init_population(spec, 1)) != spec.counts) return {false, "population histogram differs"};
    }
    return {true, "balanced 20x7, polarized 72/69, unbalanced 101/20/19"};
}

Outcome protocol_volume() {
    const auto start = std::chrono::steady_clock::now();
    const auto run = scripted_run(ScriptedPolicy::uniform(0.5), 1);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu records in %.2f s", run.records.size(), seconds);
    return {run.records.size() == 4200 && run.snapshots.size() == 31 && seconds < kVolumeSecondsLimit, buf};
}

Outcome determinism() {
    lodas::testing::TempDir dir;
    auto transcript = [&](std::uint64_t seed, const std::string& id) {
        const int code = cli({"run", "--scenario", "balanced", "--backend", "scripted", "--seed", std::to_string(seed),
                              "--out", dir.path().string(), "--run-id", id, "--quiet"});
        if (code != 0) throw Error("run failed with exit code " + std::to_string(code));
        return slurp(dir.path() / id / kTranscriptFile);
    };
    const std::string a = transcript(11, "a");
    const std::string b = transcript(11, "b");
    const std::string c = transcript(12, "c");
    const bool same = a == b;
    const bool differs = a != c;
    return {same && differs && !a.empty(), std::string(same ? "identical" : "NOT identical") + " for equal seeds, " +
                                               (differs ? "different" : "NOT different") + " for another seed"};
}

Outcome update_rule() {
    std::mt19937 gen(2024);
    std::uniform_int_distribution<int> op(-2, 8); // includes out-of-range values to exercise validation
    std::uniform_int_distribution<int> dec(0, 2);
    int checked = 0;
    while (checked < kUpdateRuleTriples) {
        const int d = op(gen);
        const int o = op(gen);
        const auto decision = static_cast<Decision>(dec(gen));
        if (d < 0 || d > 6 || o < 0 || o > 6) {
            try {
                (void)Opinion(d);
                (void)Opinion(o);
                return {false, "out-of-range opinion accepted"};
            } catch (const DomainError&) {
                continue;
            }
        }
        const int sign = o > d ? 1 : (o < d ? -1 : 0);
        const int expected = decision == Decision::Accept ? sign : 0;
        const int delta = update_delta(decision, Opinion(d), Opinion(o));
        const int after = Opinion(d).shifted(delta).value();
        if (delta != expected || after < 0 || after > 6) {
            return {false, "triple (" + std::string(to_string(decision)) + "," + std::to_string(d) + "," +
                               std::to_string(o) + ") gave delta " + std::to_string(delta)};
        }
        ++checked;
    }
    const auto run = scripted_run(ScriptedPolicy::always(Decision::Accept), 3);
    for (const auto& r : run.records) {
        const int o = r.opponent_before.value();
        const int before = std::abs(r.discussant_before.value() - o);
        const int after = std::abs(r.discussant_after.value() - o);
        if (after != std::max(before - 1, 0)) return {false, "always-ACCEPT record violates distance rule"};
    }
    return {true, std::to_string(checked) + " triples, " + std::to_string(run.records.size()) +
                      " always-ACCEPT records"};
}

Outcome convergence() {
    int converged = 0;
    int slowest = 0;
    for (int s = 1; s <= kConvergenceSeeds; ++s) {
        SimulationConfig c;
        c.iterations = kConvergenceIterations;
        c.seed = static_cast<std::uint64_t>(s);
        ScriptedPolicy p = ScriptedPolicy::accept_if_not_lower();
        p.seed = derive_seed(c.seed, "backend");
        ScriptedBackend backend(p);
        int reached = -1;
        RunOptions options;
        options.on_iteration = [&](int t, const Histogram& h) {
            if (reached < 0 && h[6] == c.scenario.total) reached = t + 1;
        };
        run_simulation(c, backend, options);
        if (reached > 0) {
            ++converged;
            slowest = std::max(slowest, reached);
        }
    }
    const double share = static_cast<double>(converged) / kConvergenceSeeds;
    return {share >= kConvergenceShare, std::to_string(converged) + "/" + std::to_string(kConvergenceSeeds) +
                                            " seeds reached full opinion-6 consensus, slowest after " +
                                            std::to_string(slowest) + " iterations"};
}

Outcome oracle_equivalence() {
    auto hc = lodas::testing::handcrafted_run(10, 10, 77);
    if (hc.records.size() != 100) return {false, "fixture is not 100 records"};
    MockFallacyClassifier mock;
    annotate_run(hc.records, mock);

    double worst = 0.0;
    auto compare = [&](double a, double b) { worst = std::max(worst, std::abs(a - b)); };

    for (bool decision_mode : {true, false}) {
        const auto m = acceptance_matrix(hc.records, decision_mode ? AcceptanceMode::Decision : AcceptanceMode::Movement);
        for (int d = 0; d < 7; ++d) {
            for (int o = 0; o < 7; ++o) {
                const auto cell = oracle::acceptance_cell(hc.records, d, o, decision_mode);
                const auto rate = m.rate(d, o);
                if (rate.has_value() != (cell.total > 0)) return {false, "defined cells differ"};
                if (rate) compare(*rate, static_cast<double>(cell.hits) / static_cast<double>(cell.total));
            }
        }
    }

    RunArtifacts run;
    run.manifest.initial_population = hc.population;
    run.manifest.iterations_completed = hc.iterations;
    run.records = hc.records;
    run.snapshots = replay_snapshots(hc.population, hc.records, hc.iterations);
    const auto rows = trajectories(run);
    const auto expected_rows = oracle::trajectory_rows(hc.population, hc.records, hc.iterations);
    if (rows.size() != expected_rows.size()) return {false, "trajectory length differs"};
    for (std::size_t t = 0; t < rows.size(); ++t) {
        for (std::size_t v = 0; v < 7; ++v) compare(rows[t][v], expected_rows[t][v]);
    }

    for (Role role : {Role::Opponent, Role::Discussant}) {
        const bool opp = role == Role::Opponent;
        compare(uniqueness_rate(hc.records, role), oracle::uniqueness_percent(hc.records, opp));
        const auto dist = fallacy_distribution(hc.records, role);
        for (int op = 0; op < 7; ++op) {
            const auto expected = oracle::fallacy_fractions(hc.records, opp, op);
            const auto& got = dist[static_cast<std::size_t>(op)];
            if (got.size() != expected.size()) return {false, "fallacy label sets differ"};
            for (const auto& [label, share] : got) {
                const auto it = expected.find(std::string(to_string(label)));
                if (it == expected.end()) return {false, "unexpected fallacy label"};
                compare(share, it->second);
            }
        }
    }

    const auto rate = change_after_fallacy_rate(hc.records);
    const auto expected_rate = oracle::change_after_fallacy(hc.records);
    if (rate.has_value() != expected_rate.has_value()) return {false, "change rate definedness differs"};
    if (rate) compare(*rate, *expected_rate);

    char buf[64];
    std::snprintf(buf, sizeof buf, "max abs difference %.3g", worst);
    return {worst <= kOracleTolerance, buf};
}

Outcome mode_dominance() {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    long cells = 0;
    for (int i = 0; i < kDominanceTranscripts; ++i) {
        ScriptedPolicy p;
        for (auto& row : p.accept_probability) {
            for (auto& v : row) v = unit(gen);
        }
        p.reject_share = unit(gen);
        const char* scenario = i % 3 == 0 ? "balanced" : (i % 3 == 1 ? "polarized" : "unbalanced");
        const auto run = scripted_run(p, static_cast<std::uint64_t>(1000 + i), 5, scenario);
        const auto dec = acceptance_matrix(run.records, AcceptanceMode::Decision);
        const auto mov = acceptance_matrix(run.records, AcceptanceMode::Movement);
        for (int d = 0; d < 7; ++d) {
            for (int o = 0; o < 7; ++o) {
                if (d == o || !dec.rate(d, o)) continue;
                ++cells;
                if (*dec.rate(d, o) < *mov.rate(d, o)) {
                    return {false, "transcript " + std::to_string(i) + " cell (" + std::to_string(d) + "," +
                                       std::to_string(o) + ")"};
                }
            }
        }
    }
    return {cells > 0, std::to_string(cells) + " defined off-diagonal cells over " +
                           std::to_string(kDominanceTranscripts) + " transcripts"};
}

/// Every way to change one field of a record to a different legal value.
std::vector<std::function<void(json&)>> field_tampers(const json& rec, std::mt19937& gen) {
    std::vector<std::function<void(json&)>> out;
    const int delta = rec.at("delta");
    const int other_delta = delta == 0 ? (gen() % 2 ? 1 : -1) : 0;
    out.push_back([other_delta](json& j) { j["delta"] = other_delta; });

    static const std::vector<std::string> kDecisions{"ACCEPT", "REJECT", "IGNORE"};
    std::string other = rec.at("decision");
    while (other == rec.at("decision")) other = kDecisions[gen() % 3];
    out.push_back([other](json& j) { j["decision"] = other; });

    const bool opponent_side = gen() % 2 == 1;
    const char* side = opponent_side ? "opponent" : "discussant";
    const int value = rec.at("opinions_after").at(side);
    const int shifted = (value + 1 + static_cast<int>(gen() % 6)) % 7;
    out.push_back([side, shifted](json& j) { j["opinions_after"][side] = shifted; });
    return out;
}

Outcome persistence_audit() {
    lodas::testing::TempDir dir;
    auto policy = ScriptedPolicy::uniform(0.5);
    policy.fallacy_marker_rate = 0.25;
    auto run = scripted_run(policy, 5);
    MockFallacyClassifier mock;
    annotate_run(run.records, mock);
    if (run.records.size() != 4200) return {false, "expected 4200 records"};

    const fs::path run_dir = dir.path() / "run";
    write_run_to(run, run_dir);
    if (load_run(run_dir) != run) return {false, "round trip changed the run"};
    if (cli({"verify", run_dir.string()}) != 0) return {false, "pristine run failed verify"};

    std::mt19937 gen(7);
    std::uniform_int_distribution<std::size_t> pick(0, run.records.size() - 1);

    // In memory: the same audit `verify` runs, applied to records parsed from edited JSON.
    int missed = 0;
    int tried = 0;
    for (int k = 0; k < kTampersPerFieldInMemory; ++k) {
        const std::size_t idx = pick(gen);
        const json original = run.records[idx];
        const auto tampers = field_tampers(original, gen);
        for (const auto& edit : tampers) {
            json changed = original;
            edit(changed);
            RunArtifacts copy = run;
            copy.records[idx] = changed.get<InteractionRecord>();
            ++tried;
            if (audit_run(copy).empty()) ++missed;
        }
    }

    // On disk, through the CLI.
    const std::string pristine = slurp(run_dir / kTranscriptFile);
    std::vector<std::string> lines;
    {
        std::istringstream in(pristine);
        for (std::string line; std::getline(in, line);) lines.push_back(line);
    }
    for (int k = 0; k < kTampersPerFieldOnDisk; ++k) {
        const std::size_t idx = pick(gen);
        const json original = json::parse(lines[idx]);
        for (const auto& edit : field_tampers(original, gen)) {
            json changed = original;
            edit(changed);
            std::string text;
            for (std::size_t i = 0; i < lines.size(); ++i) text += (i == idx ? changed.dump() : lines[i]) + '\n';
            write_file_atomic(run_dir / kTranscriptFile, text);
            ++tried;
            if (cli({"verify", run_dir.string()}) == 0) ++missed;
        }
    }
    write_file_atomic(run_dir / kTranscriptFile, pristine);
    return {missed == 0, "round trip identical; " + std::to_string(tried - missed) + "/" + std::to_string(tried) +
                             " single-field tampers detected"};
}

Outcome parser_table() {
    int ok = 0;
    int total = 0;
    std::string first_failure;
    for (const auto& c : lodas::testing::parser_cases()) {
        ++total;
        std::optional<Decision> got;
        try {
            got = extract_decision(c.text);
        } catch (const ParseError&) {
            got = std::nullopt;
        }
        if (got == c.expected) {
            ++ok;
        } else if (first_failure.empty()) {
            first_failure = std::string(c.text);
        }
    }
    std::string detail = std::to_string(ok) + "/" + std::to_string(total) + " cases";
    if (!first_failure.empty()) detail += ", first failure: " + first_failure;
    return {ok == total && total >= 20, detail};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"scenario fidelity", scenario_fidelity},
        {"protocol volume", protocol_volume},
        {"determinism", determinism},
        {"update-rule properties", update_rule},
        {"convergence sanity", convergence},
        {"oracle equivalence", oracle_equivalence},
        {"mode dominance", mode_dominance},
        {"persistence audit", persistence_audit},
        {"parser table", parser_table},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS  " : "FAIL  ") << c.name << ": " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
