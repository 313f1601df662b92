// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <span>
#include <string>
#include <string_view>

namespace lodas {

inline constexpr int kOpinionCount = 7;
inline constexpr int kMinOpinion = 0;
inline constexpr int kMaxOpinion = 6;

/// Discrete Likert opinion, 0 = strongly disagree ... 6 = strongly agree.
class Opinion {
  public:
    constexpr Opinion() = default;
    /// Throws DomainError outside [0, 6].
    explicit Opinion(int value);

    constexpr int value() const noexcept { return value_; }
    std::string_view label() const noexcept;

    /// Clamped addition; the result always stays on the scale.
    Opinion shifted(int delta) const noexcept;

    friend constexpr auto operator<=>(Opinion, Opinion) = default;

  private:
    int value_ = 3;
};

std::string_view opinion_label(int value);
/// Inverse of opinion_label. Throws DomainError for unknown labels.
Opinion opinion_from_label(std::string_view label);

enum class Decision { Accept, Reject, Ignore };

std::string_view to_string(Decision d) noexcept;
/// Accepts the upper-case wire names ACCEPT/REJECT/IGNORE.
Decision decision_from_string(std::string_view s);

/// Opinion change of the Discussant: sign(opponent - discussant) on ACCEPT, 0 otherwise.
int update_delta(Decision decision, Opinion discussant, Opinion opponent) noexcept;

enum class Valence : int { Positive = 1, Negative = -1 };

Valence valence_from_int(int v);
Valence valence_from_string(std::string_view s); // "positive" / "negative" / "+1" / "-1"
std::string_view to_string(Valence v) noexcept;

struct Statement {
    std::string topic_id;
    std::string text;
    Valence valence = Valence::Positive;

    bool operator==(const Statement&) const = default;
};

/// Exact statement text for a known topic. Throws DomainError for valence
/// outside {+1, -1} and ConfigError for unknown topics.
std::string statement_text(std::string_view topic_id, int valence);
Statement make_statement(std::string_view topic_id, Valence valence);

struct AgentState {
    int agent_id = 0;
    Opinion opinion;
    std::string display_name;

    bool operator==(const AgentState&) const = default;
};

std::string default_display_name(int agent_id);

using Histogram = std::array<int, kOpinionCount>;

Histogram histogram_of(std::span<const AgentState> agents) noexcept;

} // namespace lodas
