// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

// Labeled Discussant utterances. Expected verdicts were assigned by hand from
// the parsing rule: first "I <verdict> your stance" frame, else the first
// standalone verdict word; no verdict means a parse error.
#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "lodas/core.hpp"

namespace lodas::testing {

struct ParserCase {
    std::string_view text;
    std::optional<Decision> expected; // nullopt: ParseError
};

inline const std::vector<ParserCase>& parser_cases() {
    using enum Decision;
    static const std::vector<ParserCase> cases = {
        {"My original opinion was I strongly disagree. After reading your argument my conclusions are: "
         "I ACCEPT your stance because the purpose of the ship is preserved.",
         Accept},
        {"I will not ACCEPT; I REJECT your stance because the planks are all new.", Reject},
        {"I will not ACCEPT this; I reject it.", Accept},
        {"Interesting point.", std::nullopt},
        {"I REJECT your stance because the ship is new.", Reject},
        {"I IGNORE your stance because I remain neutral.", Ignore},
        {"i accept your stance because it is sound", Accept},
        {"I **ACCEPT** your stance because continuity matters.", Accept},
        {"I 'REJECT' your stance because matter is what counts.", Reject},
        {"After careful thought I IGNORE your stance.", Ignore},
        {"I <ACCEPT|REJECT|IGNORE> your stance because <argument>. I REJECT your stance because it is circular.",
         Reject},
        {"You might expect me to REJECT it, but I ACCEPT your stance because you convinced me.", Accept},
        {"Accepted. Your argument is fine.", std::nullopt},
        {"I accept his stance on the matter.", Accept},
        {"REJECT", Reject},
        {"My verdict: IGNORE.", Ignore},
        {"I REJECT. Your stance is weak, and yet I ACCEPT your stance because of the evidence.", Accept},
        {"I reject the idea at first, yet I accept your stance because of continuity.", Accept},
        {"Reject? Ignore? No: I IGNORE your stance because it does not matter.", Ignore},
        {"The ship is the same ship.", std::nullopt},
        {"I ACCEPTyour stance", std::nullopt},
        {"", std::nullopt},
        {"I ACCEPT your stance because X. Later: I REJECT your stance.", Accept},
        {"Unacceptable! I REJECT your stance", Reject},
        {"Ignoring the rhetoric, I would say: reject.", Reject},
        {"I\tREJECT\n your  stance because of the timber.", Reject},
        {"Choose one of ACCEPT/REJECT/IGNORE: I pick IGNORE.", Ignore},
    };
    return cases;
}

} // namespace lodas::testing
