// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>

#include "lodas/core.hpp"

namespace lodas {

/// Verdict of a Discussant utterance.
///
/// The framed form "I <verdict> your stance" wins when present (first such
/// frame). Otherwise the first standalone ACCEPT/REJECT/IGNORE word, scanning
/// left to right, case-insensitively. Echoes of the template placeholder
/// ("<ACCEPT|REJECT|IGNORE>") are skipped. Throws ParseError if no verdict is found.
Decision extract_decision(std::string_view utterance);

std::optional<Decision> try_extract_decision(std::string_view utterance) noexcept;

/// True iff the trimmed utterance is END (any case) or ends with END as a
/// standalone token.
bool extract_end(std::string_view utterance) noexcept;

} // namespace lodas
