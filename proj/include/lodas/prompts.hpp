// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "lodas/core.hpp"

namespace lodas {

/// Raw prompt templates. Placeholders use `{Name}` syntax:
/// {Discussant_opinion}, {Opponent_opinion}, {Discussant.name}, {Opponent.name}, {s}.
struct PromptTemplates {
    std::string discussant;
    std::string opponent;
    std::string opening;

    /// Templates compiled into the library from prompts/*.txt.
    static PromptTemplates builtin();
    /// Reads discussant.txt, opponent.txt and opening.txt from `dir`.
    /// One trailing newline per file is dropped. Throws ConfigError.
    static PromptTemplates load(const std::filesystem::path& dir);

    /// SHA-256 per template, keyed by template name.
    std::map<std::string, std::string> hashes() const;
};

/// Fully rendered prompts for one interaction.
struct PromptBundle {
    std::string discussant_system;
    std::string opponent_system;
    std::string opening;
};

/// Verb phrase interpolated for an opinion, e.g. "strongly disagree".
std::string_view stance_phrase(Opinion opinion) noexcept;

/// Replaces every `{key}` with vars.at(key). Throws ConfigError on unknown
/// placeholders or an unterminated brace.
std::string substitute(std::string_view tmpl, const std::map<std::string, std::string, std::less<>>& vars);

class PromptRenderer {
  public:
    PromptRenderer() : PromptRenderer(PromptTemplates::builtin()) {}
    /// Throws ConfigError when a template lacks the verdict tokens or the END clause.
    explicit PromptRenderer(PromptTemplates templates);

    /// `opinion_label` is one of the seven canonical labels.
    std::string render_discussant(std::string_view opinion_label, std::string_view opponent_name) const;
    std::string render_opponent(std::string_view opinion_label, std::string_view discussant_name) const;
    std::string render_opening(const Statement& statement) const;

    PromptBundle render(const AgentState& discussant, const AgentState& opponent, const Statement& statement) const;

    const PromptTemplates& templates() const noexcept { return templates_; }

  private:
    PromptTemplates templates_;
};

std::string render_discussant(std::string_view opinion_label, std::string_view opponent_name);
std::string render_opponent(std::string_view opinion_label, std::string_view discussant_name);
std::string render_opening(const Statement& statement);

} // namespace lodas
