// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "lodas/decision_parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "lodas/errors.hpp"

namespace lodas {

namespace {

struct Word {
    std::string upper;
    std::size_t begin;
    std::size_t end;
};

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

char to_upper(char c) { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); }

// Blanks out template echoes such as "<ACCEPT|REJECT|IGNORE>" so they do not count as verdicts.
std::string mask_template_echoes(std::string_view text) {
    std::string upper(text.size(), ' ');
    for (std::size_t i = 0; i < text.size(); ++i) upper[i] = to_upper(text[i]);
    std::string masked(text);
    for (std::string_view echo : {"ACCEPT|REJECT|IGNORE", "ACCEPT/REJECT/IGNORE"}) {
        for (auto pos = upper.find(echo); pos != std::string::npos; pos = upper.find(echo, pos + echo.size())) {
            masked.replace(pos, echo.size(), echo.size(), ' ');
        }
    }
    return masked;
}

std::vector<Word> words_of(std::string_view text) {
    std::vector<Word> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_alpha(text[i])) {
            ++i;
            continue;
        }
        const std::size_t begin = i;
        std::string w;
        while (i < text.size() && is_alpha(text[i])) w.push_back(to_upper(text[i++]));
        out.push_back(Word{std::move(w), begin, i});
    }
    return out;
}

// Gap between two words of the frame may hold only spacing, emphasis and quoting.
bool soft_gap(std::string_view text, std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) {
        const char c = text[i];
        if (!(std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '_' || c == '\'' || c == '"' ||
              c == '`' || c == '<' || c == '>')) {
            return false;
        }
    }
    return true;
}

std::optional<Decision> verdict_word(const std::string& w) {
    if (w == "ACCEPT") return Decision::Accept;
    if (w == "REJECT") return Decision::Reject;
    if (w == "IGNORE") return Decision::Ignore;
    return std::nullopt;
}

bool is_possessive(const std::string& w) { return w == "YOUR" || w == "HIS" || w == "HER" || w == "THEIR"; }

} // namespace

std::optional<Decision> try_extract_decision(std::string_view utterance) noexcept {
    try {
        const std::string text = mask_template_echoes(utterance);
        const std::vector<Word> words = words_of(text);

        for (std::size_t i = 0; i + 3 < words.size(); ++i) {
            if (words[i].upper != "I") continue;
            const auto v = verdict_word(words[i + 1].upper);
            if (!v) continue;
            if (!is_possessive(words[i + 2].upper) || words[i + 3].upper != "STANCE") continue;
            if (soft_gap(text, words[i].end, words[i + 1].begin) && soft_gap(text, words[i + 1].end, words[i + 2].begin) &&
                soft_gap(text, words[i + 2].end, words[i + 3].begin)) {
                return v;
            }
        }
        for (const auto& w : words) {
            if (auto v = verdict_word(w.upper)) return v;
        }
    } catch (...) {
    }
    return std::nullopt;
}

Decision extract_decision(std::string_view utterance) {
    if (auto d = try_extract_decision(utterance)) return *d;
    throw ParseError("no ACCEPT/REJECT/IGNORE verdict in utterance");
}

bool extract_end(std::string_view utterance) noexcept {
    auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    std::size_t b = 0;
    std::size_t e = utterance.size();
    while (b < e && is_space(utterance[b])) ++b;
    while (e > b && is_space(utterance[e - 1])) --e;
    std::string_view t = utterance.substr(b, e - b);

    if (t.size() == 3 && to_upper(t[0]) == 'E' && to_upper(t[1]) == 'N' && to_upper(t[2]) == 'D') return true;

    auto is_trailing_punct = [&](char c) {
        return c == '.' || c == '!' || c == '?' || c == '\'' || c == '"' || c == '*' || c == '`' || c == ')' || is_space(c);
    };
    while (!t.empty() && is_trailing_punct(t.back())) t.remove_suffix(1);
    std::size_t start = t.size();
    while (start > 0 && !is_space(t[start - 1])) --start;
    std::string_view last = t.substr(start);
    while (!last.empty() && (last.front() == '\'' || last.front() == '"' || last.front() == '*' || last.front() == '`' ||
                             last.front() == '(')) {
        last.remove_prefix(1);
    }
    return last == "END";
}

} // namespace lodas
