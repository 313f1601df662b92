// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "lodas/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <sstream>

#include "lodas/config.hpp"
#include "lodas/errors.hpp"
#include "lodas/metrics_export.hpp"
#include "lodas/storage.hpp"

namespace lodas {

namespace fs = std::filesystem;

namespace {

CountMap parse_counts(const std::string& text) {
    CountMap counts;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ConfigError("--counts entries look like OPINION:COUNT, got '" + item + "'");
        try {
            counts[std::stoi(item.substr(0, colon))] = std::stoi(item.substr(colon + 1));
        } catch (const std::exception&) {
            throw ConfigError("--counts entry '" + item + "' is not numeric");
        }
    }
    return counts;
}

struct RunFlags {
    std::string config_path;
    std::string scenario;
    std::string counts;
    std::string valence;
    std::string backend;
    std::string policy;
    std::optional<std::uint64_t> seed;
    std::optional<int> iterations;
    bool early_stop = false;
    std::string model;
    std::string base_url;
    std::string out_dir = "runs";
    std::string run_id;
    std::string prompts_dir;
    bool quiet = false;
};

int cmd_run(const RunFlags& f, std::ostream& out, std::ostream& err, std::stop_token stop) {
    RunConfig config = f.config_path.empty() ? RunConfig{} : load_run_config(f.config_path);
    auto& sim = config.simulation;
    if (!f.scenario.empty() || !f.counts.empty()) {
        std::optional<CountMap> counts;
        if (!f.counts.empty()) counts = parse_counts(f.counts);
        const std::string name = f.scenario.empty() ? "custom" : f.scenario;
        sim.scenario = build_scenario(name, counts);
    }
    if (!f.valence.empty()) sim.valence = valence_from_string(f.valence);
    if (f.seed) sim.seed = *f.seed;
    if (f.iterations) sim.iterations = *f.iterations;
    if (f.early_stop) sim.early_stop = true;
    if (!f.backend.empty()) {
        if (f.backend == "scripted") {
            config.backend.kind = BackendConfig::Kind::Scripted;
        } else if (f.backend == "openai") {
            config.backend.kind = BackendConfig::Kind::OpenAI;
        } else {
            throw ConfigError("unknown backend '" + f.backend + "'");
        }
    }
    if (!f.policy.empty()) {
        config.backend.policy = ScriptedPolicy::from_preset(f.policy);
        config.backend.policy_seed_set = false;
    }
    if (!f.model.empty()) {
        config.backend.http.model = f.model;
        sim.model_id = f.model;
    }
    if (!f.base_url.empty()) config.backend.http.base_url = f.base_url;
    if (!f.prompts_dir.empty()) config.prompts_dir = f.prompts_dir;
    apply_env_overrides(config);
    sim.validate();

    const fs::path parent(f.out_dir);
    std::string run_id = f.run_id.empty() ? make_run_id(sim.seed) : f.run_id;
    if (f.run_id.empty()) {
        for (int k = 1; fs::exists(parent / run_id); ++k) run_id = make_run_id(sim.seed) + "-" + std::to_string(k);
    } else if (fs::exists(parent / run_id / kManifestFile)) {
        throw ConfigError("run directory " + (parent / run_id).string() + " already holds a run");
    }
    const fs::path run_dir = parent / run_id;
    fs::create_directories(run_dir);
    if (config.backend.kind == BackendConfig::Kind::OpenAI && config.backend.log_requests) {
        config.backend.http.request_log = run_dir / "requests.jsonl";
    }

    RunOptions options;
    options.renderer = PromptRenderer(config.prompts_dir ? PromptTemplates::load(*config.prompts_dir)
                                                         : PromptTemplates::builtin());
    options.stop = stop;
    if (!f.quiet) {
        options.on_iteration = [&](int t, const Histogram& h) {
            err << "iteration " << (t + 1) << "/" << sim.iterations << ":";
            for (int c : h) err << ' ' << c;
            err << '\n';
        };
    }

    auto backend = make_backend(config.backend, sim.seed);
    RunArtifacts artifacts = run_simulation(sim, *backend, options);
    artifacts.manifest.config = to_json(config);
    artifacts.manifest.config["backend_resolved"] = backend->describe();
    write_run_to(artifacts, run_dir);

    out << run_dir.string() << '\n';
    if (artifacts.manifest.aborted) {
        err << "run aborted: " << artifacts.manifest.abort_reason << " (partial transcript saved)\n";
        return 1;
    }
    const auto& c = artifacts.manifest.counters;
    if (!f.quiet) {
        err << c.interactions << " interactions, " << c.opinion_changes << " opinion changes, " << c.parse_failures
            << " parse failures, " << c.backend_failures << " backend failures\n";
    }
    return 0;
}

struct AnnotateFlags {
    std::string run_dir;
    std::string classifier;
    std::string url;
    std::optional<double> threshold;
    bool include_closing = false;
    bool per_sentence = false;
};

int cmd_annotate(const AnnotateFlags& f, std::ostream& out, std::ostream& err) {
    RunArtifacts run = load_run(f.run_dir);
    RunConfig config = run_config_from_json(run.manifest.config);
    auto& cc = config.classifier;
    if (!f.classifier.empty()) {
        if (f.classifier == "mock") {
            cc.kind = ClassifierConfig::Kind::Mock;
        } else if (f.classifier == "service") {
            cc.kind = ClassifierConfig::Kind::Service;
        } else {
            throw ConfigError("unknown classifier '" + f.classifier + "'");
        }
    }
    if (!f.url.empty()) cc.service.url = f.url;
    if (f.threshold) cc.service.threshold = *f.threshold;
    if (f.include_closing) cc.options.include_closing = true;
    if (f.per_sentence) cc.options.per_sentence = true;
    apply_env_overrides(config);
    cc.service.validate();

    auto classifier = make_classifier(cc);
    if (auto* service = dynamic_cast<ServiceFallacyClassifier*>(classifier.get())) {
        try {
            service->health();
        } catch (const BackendError& e) {
            err << "warning: " << e.what() << "\n";
        }
    }
    const AnnotateReport report = annotate_run(run.records, *classifier, cc.options);
    run.manifest.classifier = ClassifierInfo{classifier->identity(), classifier->threshold(), cc.options.include_closing,
                                             cc.options.per_sentence,  report.annotated,        report.deferred};
    run.manifest.config["classifier"] = to_json(config)["classifier"];
    write_run_to(run, f.run_dir);

    out << report.annotated << " utterances annotated, " << report.deferred << " deferred\n";
    if (report.deferred > 0) {
        err << "classifier failed for " << report.deferred << " utterances; re-run annotate when it is reachable\n";
        return 1;
    }
    return 0;
}

struct AnalyzeFlags {
    std::vector<std::string> run_dirs;
    std::string out_dir;
    std::string summary_dir;
    bool require_fallacies = false;
    bool skip_fallacies = false;
};

int cmd_analyze(const AnalyzeFlags& f, std::ostream& out, std::ostream& err) {
    if (f.require_fallacies && f.skip_fallacies) throw ConfigError("--fallacies and --no-fallacies are exclusive");
    if (!f.out_dir.empty() && f.run_dirs.size() > 1) throw ConfigError("--out takes a single run directory");
    const FallacyExport mode =
        f.require_fallacies ? FallacyExport::Require : (f.skip_fallacies ? FallacyExport::Skip : FallacyExport::Auto);

    std::vector<RunArtifacts> runs;
    for (const auto& dir : f.run_dirs) {
        RunArtifacts run = load_run(dir);
        const fs::path target = f.out_dir.empty() ? fs::path(dir) / "metrics" : fs::path(f.out_dir);
        ExportResult result;
        try {
            result = write_metrics(run, target, mode);
        } catch (const AnnotationMissing&) {
            err << "error: " << dir << " has no fallacy annotations; run `lodas annotate " << dir << "` first\n";
            return 1;
        }
        for (const auto& file : result.files) out << file.string() << '\n';
        if (!result.fallacy_written && mode == FallacyExport::Auto) {
            err << "note: " << dir << " is not annotated; fallacy tables skipped (run `lodas annotate " << dir
                << "`)\n";
        }
        if (!f.summary_dir.empty()) runs.push_back(std::move(run));
    }
    if (!f.summary_dir.empty()) {
        for (const auto& file : write_summary(runs, f.summary_dir)) out << file.string() << '\n';
    }
    return 0;
}

int cmd_verify(const std::string& run_dir, std::ostream& out, std::ostream& err) {
    RunArtifacts run = load_run(run_dir, LoadOptions{.validate = false});
    const auto issues = audit_run(run);
    if (issues.empty()) {
        out << "ok: " << run.records.size() << " records, " << run.snapshots.size() << " snapshots verified\n";
        return 0;
    }
    for (const auto& issue : issues) {
        err << (issue.record ? "record " + std::to_string(*issue.record) + ": " : std::string()) << issue.message << '\n';
    }
    err << issues.size() << " issue(s) found\n";
    return 1;
}

int cmd_scenarios(bool as_json, std::ostream& out) {
    const auto specs = canonical_scenarios();
    if (as_json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& s : specs) {
            nlohmann::json counts = nlohmann::json::object();
            for (int o = 0; o < kOpinionCount; ++o) {
                if (s.counts[static_cast<std::size_t>(o)] > 0) counts[std::to_string(o)] = s.counts[static_cast<std::size_t>(o)];
            }
            j.push_back({{"name", std::string(to_string(s.name))}, {"total", s.total}, {"counts", counts}});
        }
        out << j.dump(2) << '\n';
        return 0;
    }
    out << std::left << std::setw(12) << "scenario" << std::setw(7) << "total";
    for (int o = 0; o < kOpinionCount; ++o) out << std::setw(5) << o;
    out << '\n';
    for (const auto& s : specs) {
        out << std::setw(12) << to_string(s.name) << std::setw(7) << s.total;
        for (int c : s.counts) out << std::setw(5) << c;
        out << '\n';
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::stop_token stop) {
    CLI::App app{"Language-driven opinion dynamics simulator", "lodas"};
    app.require_subcommand(1);

    RunFlags run_flags;
    auto* run = app.add_subcommand("run", "Execute a configured simulation");
    run->add_option("--config", run_flags.config_path, "Configuration file (JSON) or a previous run's manifest.json");
    run->add_option("--scenario", run_flags.scenario, "balanced, polarized, unbalanced or custom");
    run->add_option("--counts", run_flags.counts, "Explicit counts, e.g. 0:72,6:69");
    run->add_option("--valence", run_flags.valence, "positive (ship is the same) or negative (ship is different)");
    run->add_option("--backend", run_flags.backend, "scripted or openai");
    run->add_option("--policy", run_flags.policy,
                    "Scripted policy preset: always-accept, always-reject, always-ignore, accept-if-not-lower, uniform");
    run->add_option("--seed", run_flags.seed, "Root random seed");
    run->add_option("--iterations", run_flags.iterations, "Number of iterations T");
    run->add_flag("--early-stop", run_flags.early_stop, "Stop after an iteration without opinion changes");
    run->add_option("--model", run_flags.model, "Model id sent to the chat endpoint");
    run->add_option("--base-url", run_flags.base_url, "OpenAI-compatible base URL, e.g. http://localhost:8000/v1");
    run->add_option("--out", run_flags.out_dir, "Parent directory for run directories")->capture_default_str();
    run->add_option("--run-id", run_flags.run_id, "Run directory name (default: timestamp and seed)");
    run->add_option("--prompts", run_flags.prompts_dir, "Directory with discussant.txt, opponent.txt, opening.txt");
    run->add_flag("--quiet", run_flags.quiet, "No progress output");

    AnnotateFlags annotate_flags;
    auto* annotate = app.add_subcommand("annotate", "Fallacy classification pass over a run");
    annotate->add_option("run_dir", annotate_flags.run_dir, "Run directory")->required();
    annotate->add_option("--classifier", annotate_flags.classifier, "mock or service");
    annotate->add_option("--url", annotate_flags.url, "Fallacy service base URL");
    annotate->add_option("--threshold", annotate_flags.threshold, "Confidence threshold for a fallacy label");
    annotate->add_flag("--include-closing", annotate_flags.include_closing, "Also annotate closing utterances");
    annotate->add_flag("--per-sentence", annotate_flags.per_sentence, "Classify sentence by sentence");

    AnalyzeFlags analyze_flags;
    auto* analyze = app.add_subcommand("analyze", "Write metric CSVs for one or more runs");
    analyze->add_option("run_dirs", analyze_flags.run_dirs, "Run directories")->required();
    analyze->add_option("--out", analyze_flags.out_dir, "Output directory (default: <run-dir>/metrics)");
    analyze->add_option("--summary", analyze_flags.summary_dir, "Also write cross-run summary tables here");
    analyze->add_flag("--fallacies", analyze_flags.require_fallacies, "Require fallacy tables (run must be annotated)");
    analyze->add_flag("--no-fallacies", analyze_flags.skip_fallacies, "Skip fallacy tables");

    std::string verify_dir;
    auto* verify = app.add_subcommand("verify", "Replay and invariant audit of a run");
    verify->add_option("run_dir", verify_dir, "Run directory")->required();

    bool scenarios_json = false;
    auto* scenarios = app.add_subcommand("scenarios", "List the canonical initial distributions");
    scenarios->add_flag("--json", scenarios_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run) return cmd_run(run_flags, out, err, stop);
        if (*annotate) return cmd_annotate(annotate_flags, out, err);
        if (*analyze) return cmd_analyze(analyze_flags, out, err);
        if (*verify) return cmd_verify(verify_dir, out, err);
        if (*scenarios) return cmd_scenarios(scenarios_json, out);
    } catch (const LoadError& e) {
        err << "error: cannot load run: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace lodas
