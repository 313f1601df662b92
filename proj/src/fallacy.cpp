// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "lodas/fallacy.hpp"

#include <algorithm>
#include <cctype>
#include <future>

#include <nlohmann/json.hpp>

#include "http_client.hpp"
#include "lodas/errors.hpp"

namespace lodas {

using nlohmann::json;

FallacyAnnotation FallacyClassifier::classify(std::string_view utterance) {
    if (utterance.empty()) throw ConfigError("cannot classify an empty utterance");
    const std::string text(utterance);
    auto out = classify_batch(std::span<const std::string>(&text, 1));
    if (out.size() != 1) throw BackendError("classifier returned " + std::to_string(out.size()) + " results for 1 text", 1);
    return out.front();
}

FallacyAnnotation mock_classify(std::string_view text) {
    FallacyAnnotation a;
    a.source = AnnotationSource::Mock;
    std::size_t best = std::string_view::npos;
    for (FallacyLabel label : kAllFallacyLabels) {
        const auto pos = text.find(mock_marker(label));
        if (pos < best) {
            best = pos;
            a.label = label;
        }
    }
    a.confidence = a.label ? 1.0 : 0.0;
    return a;
}

std::vector<FallacyAnnotation> MockFallacyClassifier::classify_batch(std::span<const std::string> texts) {
    std::vector<FallacyAnnotation> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(mock_classify(t));
    return out;
}

// ---------------------------------------------------------------------------

void FallacyServiceConfig::validate() const {
    detail::parse_base_url(url);
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("classifier threshold must be in [0, 1]");
    if (batch_size < 1 || batch_size > 256) throw ConfigError("classifier batch_size must be in [1, 256]");
    if (parallelism < 1) throw ConfigError("classifier parallelism must be >= 1");
    if (max_attempts < 1) throw ConfigError("classifier max_attempts must be >= 1");
}

ServiceFallacyClassifier::ServiceFallacyClassifier(FallacyServiceConfig config) : config_(std::move(config)) {
    config_.validate();
}

std::string ServiceFallacyClassifier::identity() const {
    std::lock_guard lock(mutex_);
    return "service:" + config_.url + (model_version_.empty() ? std::string() : "@" + model_version_);
}

std::string ServiceFallacyClassifier::health() {
    const auto url = detail::parse_base_url(config_.url);
    const auto res = detail::http_get(url, "/health", config_.timeout);
    if (!res.transport_ok) throw BackendError("fallacy service unreachable: " + res.error, 1);
    if (res.status != 200) throw BackendError("fallacy service unhealthy: HTTP " + std::to_string(res.status), 1);
    try {
        auto version = json::parse(res.body).at("model_version").get<std::string>();
        std::lock_guard lock(mutex_);
        model_version_ = version;
        return model_version_;
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed health body: ") + e.what(), 1);
    }
}

std::vector<FallacyAnnotation> ServiceFallacyClassifier::classify_batch(std::span<const std::string> texts) {
    if (texts.empty()) return {};
    if (texts.size() > config_.batch_size) throw ConfigError("batch larger than the configured batch_size");
    for (const auto& t : texts) {
        if (t.empty()) throw ConfigError("cannot classify an empty utterance");
    }
    const auto url = detail::parse_base_url(config_.url);
    const std::string payload = json{{"texts", texts}}.dump();

    std::string last_error;
    for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
        const auto res = detail::http_post_json(url, "/classify", payload, {}, config_.timeout);
        if (!res.transport_ok) {
            last_error = "fallacy service unreachable: " + res.error;
            continue;
        }
        if (res.status != 200) {
            last_error = "fallacy service returned HTTP " + std::to_string(res.status);
            if (res.status < 500) break; // 400/413 will not improve on retry
            continue;
        }
        try {
            const json reply = json::parse(res.body);
            const auto& labels = reply.at("labels");
            const auto& confidences = reply.at("confidences");
            if (labels.size() != texts.size() || confidences.size() != texts.size()) {
                throw BackendError("fallacy service returned " + std::to_string(labels.size()) + " labels for " +
                                       std::to_string(texts.size()) + " texts",
                                   attempt);
            }
            if (reply.contains("model_version")) {
                std::lock_guard lock(mutex_);
                model_version_ = reply.at("model_version").get<std::string>();
            }
            std::vector<FallacyAnnotation> out;
            out.reserve(texts.size());
            for (std::size_t i = 0; i < texts.size(); ++i) {
                const auto name = labels[i].get<std::string>();
                const auto label = fallacy_label_from_string(name);
                if (!label) throw BackendError("fallacy service returned unknown label '" + name + "'", attempt);
                const double conf = confidences[i].get<double>();
                if (!(conf >= 0.0 && conf <= 1.0)) throw BackendError("fallacy confidence outside [0, 1]", attempt);
                FallacyAnnotation a;
                a.source = AnnotationSource::Service;
                a.confidence = conf;
                if (conf >= config_.threshold) a.label = label;
                out.push_back(a);
            }
            return out;
        } catch (const json::exception& e) {
            last_error = std::string("malformed classify body: ") + e.what();
        }
    }
    throw BackendError(last_error, config_.max_attempts);
}

// ---------------------------------------------------------------------------

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    std::string current;
    auto flush = [&] {
        auto b = current.find_first_not_of(" \t\r\n");
        auto e = current.find_last_not_of(" \t\r\n");
        if (b != std::string::npos) out.push_back(current.substr(b, e - b + 1));
        current.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        current.push_back(c);
        const bool terminal = c == '.' || c == '!' || c == '?' || c == '\n';
        const bool boundary = i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1]));
        if (terminal && boundary) flush();
    }
    flush();
    return out;
}

namespace {

enum class Slot { Opponent, Discussant, Closing };

struct Unit {
    std::size_t record;
    Slot slot;
    std::size_t first_text; // index into the flat text list
    std::size_t text_count;
};

std::optional<FallacyAnnotation>& slot_of(InteractionRecord& r, Slot s) {
    switch (s) {
    case Slot::Opponent:
        return r.opponent_fallacy;
    case Slot::Discussant:
        return r.discussant_fallacy;
    case Slot::Closing:
        return r.closing_fallacy;
    }
    return r.opponent_fallacy;
}

FallacyAnnotation merge_sentences(std::span<const FallacyAnnotation> parts) {
    FallacyAnnotation best = parts.front();
    for (const auto& p : parts) {
        if (p.fallacious() && (!best.fallacious() || p.confidence > best.confidence)) best = p;
        if (!p.fallacious() && !best.fallacious() && p.confidence > best.confidence) best = p;
    }
    return best;
}

} // namespace

AnnotateReport annotate_run(std::vector<InteractionRecord>& records, FallacyClassifier& classifier,
                            const AnnotateOptions& options) {
    std::vector<std::string> texts;
    std::vector<Unit> units;
    auto add = [&](std::size_t idx, Slot slot, const std::string& utterance) {
        if (utterance.empty()) return;
        Unit u{idx, slot, texts.size(), 0};
        if (options.per_sentence) {
            for (auto& s : split_sentences(utterance)) texts.push_back(std::move(s));
        } else {
            texts.push_back(utterance);
        }
        u.text_count = texts.size() - u.first_text;
        if (u.text_count > 0) units.push_back(u);
    };
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto& r = records[i];
        r.opponent_fallacy.reset();
        r.discussant_fallacy.reset();
        r.closing_fallacy.reset();
        add(i, Slot::Opponent, r.opponent_utterance);
        add(i, Slot::Discussant, r.discussant_utterance);
        if (options.include_closing && r.closing_utterance) add(i, Slot::Closing, *r.closing_utterance);
    }

    const std::size_t batch = std::max<std::size_t>(1, classifier.max_batch());
    const std::size_t chunk_count = (texts.size() + batch - 1) / batch;
    std::vector<std::optional<std::vector<FallacyAnnotation>>> chunk_results(chunk_count);

    const auto run_chunk = [&](std::size_t c) -> std::optional<std::vector<FallacyAnnotation>> {
        const std::size_t begin = c * batch;
        const std::size_t n = std::min(batch, texts.size() - begin);
        try {
            auto out = classifier.classify_batch(std::span<const std::string>(texts).subspan(begin, n));
            if (out.size() != n) return std::nullopt;
            return out;
        } catch (const BackendError&) {
            return std::nullopt;
        }
    };

    const std::size_t wave = static_cast<std::size_t>(std::max(1, classifier.parallelism()));
    for (std::size_t start = 0; start < chunk_count; start += wave) {
        const std::size_t end = std::min(chunk_count, start + wave);
        if (end - start == 1) {
            chunk_results[start] = run_chunk(start);
            continue;
        }
        std::vector<std::future<std::optional<std::vector<FallacyAnnotation>>>> futures;
        for (std::size_t c = start; c < end; ++c) futures.push_back(std::async(std::launch::async, run_chunk, c));
        for (std::size_t c = start; c < end; ++c) chunk_results[c] = futures[c - start].get();
    }

    const auto annotation_at = [&](std::size_t text_index) -> const FallacyAnnotation* {
        const auto& chunk = chunk_results[text_index / batch];
        return chunk ? &(*chunk)[text_index % batch] : nullptr;
    };

    AnnotateReport report;
    for (const auto& u : units) {
        std::vector<FallacyAnnotation> parts;
        bool complete = true;
        for (std::size_t k = 0; k < u.text_count; ++k) {
            const auto* a = annotation_at(u.first_text + k);
            if (a == nullptr) {
                complete = false;
                break;
            }
            parts.push_back(*a);
        }
        if (!complete) {
            ++report.deferred;
            continue;
        }
        slot_of(records[u.record], u.slot) = merge_sentences(parts);
        ++report.annotated;
    }
    return report;
}

} // namespace lodas
