// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "lodas/decision_parser.hpp"
#include "lodas/errors.hpp"
#include "parser_cases.hpp"

using namespace lodas;

TEST_CASE("labeled utterances") {
    for (const auto& c : lodas::testing::parser_cases()) {
        CAPTURE(c.text);
        if (c.expected) {
            CHECK(extract_decision(c.text) == *c.expected);
        } else {
            CHECK_THROWS_AS(extract_decision(c.text), ParseError);
        }
        CHECK(try_extract_decision(c.text) == c.expected);
    }
}

TEST_CASE("END detection") {
    CHECK(extract_end("END"));
    CHECK(extract_end("  end \n"));
    CHECK(extract_end("Thank you for the discussion. END"));
    CHECK(extract_end("Thank you for the discussion. END."));
    CHECK(extract_end("'END'"));
    CHECK_FALSE(extract_end("ENDLESS debate!"));
    CHECK_FALSE(extract_end("In the end we disagree."));
    CHECK_FALSE(extract_end("END of story, I REJECT his stance."));
    CHECK_FALSE(extract_end(""));
}
