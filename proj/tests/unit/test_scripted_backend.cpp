// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "lodas/decision_parser.hpp"
#include "lodas/errors.hpp"
#include "lodas/fallacy.hpp"
#include "lodas/llm_backend.hpp"

using namespace lodas;

namespace {

ChatRequest verdict_request(int d, int o) {
    ChatRequest r;
    r.system_prompt = "sys";
    r.messages = {{ChatRole::Assistant, "opening"}, {ChatRole::User, "argument"}};
    r.hint = TurnHint{Turn::DiscussantVerdict, Opinion(d), Opinion(o), std::nullopt};
    return r;
}

ChatRequest argument_request(int o) {
    ChatRequest r;
    r.system_prompt = "sys";
    r.messages = {{ChatRole::User, "opening"}};
    r.hint = TurnHint{Turn::OpponentArgument, Opinion(o), Opinion(3), std::nullopt};
    return r;
}

} // namespace

TEST_CASE("always presets produce the declared verdict") {
    for (Decision d : {Decision::Accept, Decision::Reject, Decision::Ignore}) {
        ScriptedBackend backend(ScriptedPolicy::always(d));
        for (int i = 0; i < 20; ++i) {
            const std::string reply = backend.chat(verdict_request(i % 7, (i * 3) % 7));
            CHECK(reply.find("I " + std::string(to_string(d)) + " your stance") != std::string::npos);
            CHECK(extract_decision(reply) == d);
        }
    }
}

TEST_CASE("accept-if-not-lower table") {
    const auto p = ScriptedPolicy::accept_if_not_lower();
    Rng rng(1);
    for (int d = 0; d < 7; ++d) {
        for (int o = 0; o < 7; ++o) {
            CHECK(scripted_decision(p, Opinion(d), Opinion(o), rng) == (o >= d ? Decision::Accept : Decision::Reject));
        }
    }
}

TEST_CASE("opponent argument adheres to its opinion") {
    ScriptedBackend backend(ScriptedPolicy::always(Decision::Accept));
    const std::string reply = backend.chat(argument_request(5));
    CHECK(reply.starts_with("I agree on the provided reasoning conclusions. I think that "));
}

TEST_CASE("fallacy markers at rate 1 and 0") {
    auto with = ScriptedPolicy::always(Decision::Accept);
    with.fallacy_marker_rate = 1.0;
    with.marker_labels = {FallacyLabel::Relevance};
    ScriptedBackend marked(with);
    for (int i = 0; i < 10; ++i) {
        const std::string reply = marked.chat(argument_request(i % 7));
        CHECK(reply.find("[MOCK-RELEVANCE]") != std::string::npos);
        CHECK(mock_classify(reply).label == FallacyLabel::Relevance);
    }
    ScriptedBackend clean(ScriptedPolicy::always(Decision::Accept));
    for (int i = 0; i < 10; ++i) CHECK(clean.chat(argument_request(i % 7)).find("[MOCK-") == std::string::npos);
}

TEST_CASE("malformed verdicts do not parse") {
    auto p = ScriptedPolicy::always(Decision::Accept);
    p.malformed_rate = 1.0;
    ScriptedBackend backend(p);
    CHECK_FALSE(try_extract_decision(backend.chat(verdict_request(1, 2))).has_value());
}

TEST_CASE("closing turn") {
    ScriptedBackend backend(ScriptedPolicy::always(Decision::Reject));
    ChatRequest r;
    r.messages = {{ChatRole::User, "o"}, {ChatRole::Assistant, "a"}, {ChatRole::User, "d"}};
    r.hint = TurnHint{Turn::OpponentClosing, Opinion(6), Opinion(0), Decision::Reject};
    CHECK_FALSE(extract_end(backend.chat(r)));
    r.hint->discussant_decision = Decision::Accept;
    CHECK(extract_end(backend.chat(r)));
}

TEST_CASE("scripted backend is deterministic per seed") {
    auto p = ScriptedPolicy::uniform(0.4);
    p.fallacy_marker_rate = 0.3;
    p.seed = 17;
    ScriptedBackend a(p), b(p);
    for (int i = 0; i < 50; ++i) {
        CHECK(a.chat(argument_request(i % 7)) == b.chat(argument_request(i % 7)));
        CHECK(a.chat(verdict_request(i % 7, 6 - i % 7)) == b.chat(verdict_request(i % 7, 6 - i % 7)));
    }
    CHECK(a.identity() == b.identity());
    CHECK(a.identity().starts_with("scripted:uniform:"));
}

TEST_CASE("policy validation and presets") {
    auto p = ScriptedPolicy::uniform(0.5);
    p.accept_probability[2][3] = 1.5;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    CHECK_THROWS_AS(ScriptedPolicy::from_preset("sometimes"), ConfigError);
    const auto q = ScriptedPolicy::from_preset("accept-if-not-lower");
    CHECK(ScriptedPolicy::from_json(q.to_json()).digest() == q.digest());
    CHECK(q.digest() != ScriptedPolicy::from_preset("always-accept").digest());
}

TEST_CASE("scripted backend requires a hint and valid messages") {
    ScriptedBackend backend(ScriptedPolicy::always(Decision::Accept));
    ChatRequest r;
    r.messages = {{ChatRole::User, "x"}};
    CHECK_THROWS_AS(backend.chat(r), ConfigError);
    ChatRequest empty;
    empty.hint = TurnHint{};
    CHECK_THROWS_AS(backend.chat(empty), ConfigError);
}

TEST_CASE("openai request body") {
    ChatRequest r = verdict_request(1, 2);
    r.messages.insert(r.messages.begin(), {ChatRole::User, "question"});
    r.model_id = "m";
    const auto j = r.to_openai_json();
    CHECK(j["model"] == "m");
    CHECK(j["messages"][0]["role"] == "system");
    CHECK(j["messages"][0]["content"] == "sys");
    CHECK(j["messages"][1]["role"] == "user");
    CHECK(j["messages"][2]["role"] == "assistant");
    CHECK(j["temperature"] == doctest::Approx(0.7));
    CHECK(j["max_tokens"] == 512);
    CHECK_FALSE(j.contains("hint"));
}
