// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lodas/record.hpp"

namespace lodas {

class FallacyClassifier {
  public:
    virtual ~FallacyClassifier() = default;

    /// One annotation per text, in order. Throws BackendError if the batch
    /// could not be classified.
    virtual std::vector<FallacyAnnotation> classify_batch(std::span<const std::string> texts) = 0;

    FallacyAnnotation classify(std::string_view utterance);

    virtual std::string identity() const = 0;
    virtual double threshold() const = 0;
    /// Largest batch handed to classify_batch by annotate_run.
    virtual std::size_t max_batch() const { return 256; }
    /// Number of batches annotate_run may have in flight.
    virtual int parallelism() const { return 1; }
};

/// Marker lookup: the earliest "[MOCK-...]" marker in the text decides the
/// label with confidence 1; no marker means no fallacy.
class MockFallacyClassifier final : public FallacyClassifier {
  public:
    std::vector<FallacyAnnotation> classify_batch(std::span<const std::string> texts) override;
    std::string identity() const override { return "mock-marker-v1"; }
    double threshold() const override { return 0.5; }
};

FallacyAnnotation mock_classify(std::string_view text);

struct FallacyServiceConfig {
    std::string url = "http://127.0.0.1:8080";
    double threshold = 0.5;
    std::size_t batch_size = 256;
    int parallelism = 4;
    std::chrono::milliseconds timeout{60000};
    int max_attempts = 3;

    void validate() const;
};

/// Client of the fallacy classification service:
/// POST /classify {"texts": [...]} -> {"labels": [...], "confidences": [...], "model_version": "..."}.
class ServiceFallacyClassifier final : public FallacyClassifier {
  public:
    explicit ServiceFallacyClassifier(FallacyServiceConfig config);

    std::vector<FallacyAnnotation> classify_batch(std::span<const std::string> texts) override;
    std::string identity() const override;
    double threshold() const override { return config_.threshold; }
    std::size_t max_batch() const override { return config_.batch_size; }
    int parallelism() const override { return config_.parallelism; }

    /// GET /health; returns the reported model_version. Throws BackendError.
    std::string health();

  private:
    FallacyServiceConfig config_;
    mutable std::mutex mutex_;
    std::string model_version_;
};

struct AnnotateOptions {
    bool include_closing = false;
    /// Classify each sentence separately; the utterance takes the most
    /// confident fallacious sentence.
    bool per_sentence = false;
};

struct AnnotateReport {
    std::int64_t annotated = 0;
    std::int64_t deferred = 0; // left unannotated after a service failure
};

/// Sentence splitter used by per-sentence annotation.
std::vector<std::string> split_sentences(std::string_view text);

/// Annotates Opponent and Discussant utterances (and closings when enabled).
/// Overwrites existing annotations; utterances whose batch fails are reset to
/// unannotated. Texts and opinions are never modified.
AnnotateReport annotate_run(std::vector<InteractionRecord>& records, FallacyClassifier& classifier,
                            const AnnotateOptions& options = {});

} // namespace lodas
