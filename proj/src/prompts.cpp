// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "lodas/prompts.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "embedded_prompts.hpp"
#include "lodas/errors.hpp"
#include "lodas/hash.hpp"

namespace lodas {

namespace {

// Label 3 reads "You feel neutral on ..." rather than the ungrammatical "You neutral on ...".
constexpr std::array<std::string_view, kOpinionCount> kStancePhrases = {
    "strongly disagree", "disagree", "mildly disagree", "feel neutral", "mildly agree", "agree", "strongly agree",
};

std::string read_template(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read prompt template " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    if (!text.empty() && text.back() == '\r') text.pop_back();
    return text;
}

std::string phrase_for_label(std::string_view label) {
    if (label.empty()) throw ConfigError("empty opinion label");
    try {
        return std::string(stance_phrase(opinion_from_label(label)));
    } catch (const DomainError&) {
        throw ConfigError("unknown opinion label '" + std::string(label) + "'");
    }
}

void require_name(std::string_view name) {
    if (name.empty()) throw ConfigError("empty agent name in prompt");
}

} // namespace

PromptTemplates PromptTemplates::builtin() {
    return PromptTemplates{std::string(detail::kDiscussantTemplate), std::string(detail::kOpponentTemplate),
                           std::string(detail::kOpeningTemplate)};
}

PromptTemplates PromptTemplates::load(const std::filesystem::path& dir) {
    return PromptTemplates{read_template(dir / "discussant.txt"), read_template(dir / "opponent.txt"),
                           read_template(dir / "opening.txt")};
}

std::map<std::string, std::string> PromptTemplates::hashes() const {
    return {{"discussant", sha256_hex(discussant)}, {"opponent", sha256_hex(opponent)}, {"opening", sha256_hex(opening)}};
}

std::string_view stance_phrase(Opinion opinion) noexcept {
    return kStancePhrases[static_cast<std::size_t>(opinion.value())];
}

std::string substitute(std::string_view tmpl, const std::map<std::string, std::string, std::less<>>& vars) {
    std::string out;
    out.reserve(tmpl.size() + 256);
    std::size_t pos = 0;
    while (pos < tmpl.size()) {
        const std::size_t open = tmpl.find('{', pos);
        if (open == std::string_view::npos) {
            out.append(tmpl.substr(pos));
            break;
        }
        out.append(tmpl.substr(pos, open - pos));
        const std::size_t close = tmpl.find('}', open + 1);
        if (close == std::string_view::npos) throw ConfigError("unterminated placeholder in prompt template");
        const std::string_view key = tmpl.substr(open + 1, close - open - 1);
        const auto it = vars.find(key);
        if (it == vars.end()) throw ConfigError("unknown placeholder {" + std::string(key) + "} in prompt template");
        out.append(it->second);
        pos = close + 1;
    }
    return out;
}

PromptRenderer::PromptRenderer(PromptTemplates templates) : templates_(std::move(templates)) {
    for (std::string_view token : {"ACCEPT", "REJECT", "IGNORE"}) {
        if (templates_.discussant.find(token) == std::string::npos) {
            throw ConfigError("discussant template lacks the " + std::string(token) + " token");
        }
    }
    if (templates_.opponent.find("END") == std::string::npos) {
        throw ConfigError("opponent template lacks the END instruction");
    }
    if (templates_.opening.find("{s}") == std::string::npos) {
        throw ConfigError("opening template lacks the {s} placeholder");
    }
}

std::string PromptRenderer::render_discussant(std::string_view opinion_label, std::string_view opponent_name) const {
    const std::string phrase = phrase_for_label(opinion_label);
    require_name(opponent_name);
    return substitute(templates_.discussant,
                      {{"Discussant_opinion", phrase}, {"Opponent.name", std::string(opponent_name)}});
}

std::string PromptRenderer::render_opponent(std::string_view opinion_label, std::string_view discussant_name) const {
    const std::string phrase = phrase_for_label(opinion_label);
    require_name(discussant_name);
    return substitute(templates_.opponent,
                      {{"Opponent_opinion", phrase}, {"Discussant.name", std::string(discussant_name)}});
}

std::string PromptRenderer::render_opening(const Statement& statement) const {
    if (statement.text.empty()) throw ConfigError("statement text is empty");
    return substitute(templates_.opening, {{"s", statement.text}});
}

PromptBundle PromptRenderer::render(const AgentState& discussant, const AgentState& opponent,
                                    const Statement& statement) const {
    return PromptBundle{render_discussant(discussant.opinion.label(), opponent.display_name),
                        render_opponent(opponent.opinion.label(), discussant.display_name), render_opening(statement)};
}

namespace {
const PromptRenderer& builtin_renderer() {
    static const PromptRenderer renderer;
    return renderer;
}
} // namespace

std::string render_discussant(std::string_view opinion_label, std::string_view opponent_name) {
    return builtin_renderer().render_discussant(opinion_label, opponent_name);
}

std::string render_opponent(std::string_view opinion_label, std::string_view discussant_name) {
    return builtin_renderer().render_opponent(opinion_label, discussant_name);
}

std::string render_opening(const Statement& statement) { return builtin_renderer().render_opening(statement); }

} // namespace lodas
