// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdlib>

#include "doctest.h"
#include "lodas/core.hpp"
#include "lodas/errors.hpp"
#include "lodas/rng.hpp"

using namespace lodas;

TEST_CASE("opinion labels round trip") {
    CHECK(opinion_label(0) == "strongly disagree");
    CHECK(opinion_label(3) == "neutral");
    CHECK(opinion_label(6) == "strongly agree");
    for (int v = 0; v < kOpinionCount; ++v) {
        CHECK(opinion_from_label(opinion_label(v)).value() == v);
        CHECK(Opinion(v).label() == opinion_label(v));
    }
    CHECK_THROWS_AS(opinion_label(7), DomainError);
    CHECK_THROWS_AS(opinion_label(-1), DomainError);
    CHECK_THROWS_AS(opinion_from_label("very agree"), DomainError);
    CHECK_THROWS_AS(Opinion(7), DomainError);
}

TEST_CASE("update rule examples") {
    CHECK(update_delta(Decision::Accept, Opinion(2), Opinion(5)) == 1);
    CHECK(update_delta(Decision::Accept, Opinion(4), Opinion(1)) == -1);
    CHECK(update_delta(Decision::Accept, Opinion(3), Opinion(3)) == 0);
    CHECK(update_delta(Decision::Reject, Opinion(0), Opinion(6)) == 0);
    CHECK(update_delta(Decision::Ignore, Opinion(6), Opinion(0)) == 0);
}

TEST_CASE("update rule properties over random triples") {
    Rng rng(99);
    for (int i = 0; i < 2000; ++i) {
        const Opinion d(static_cast<int>(rng.uniform_index(7)));
        const Opinion o(static_cast<int>(rng.uniform_index(7)));
        const auto decision = static_cast<Decision>(rng.uniform_index(3));
        const int delta = update_delta(decision, d, o);
        const Opinion after = d.shifted(delta);
        CHECK(std::abs(delta) <= 1);
        CHECK(after.value() >= kMinOpinion);
        CHECK(after.value() <= kMaxOpinion);
        if (decision != Decision::Accept) CHECK(delta == 0);
        if (delta != 0) CHECK(std::abs(after.value() - o.value()) < std::abs(d.value() - o.value()));
    }
}

TEST_CASE("shifted clamps") {
    CHECK(Opinion(6).shifted(1).value() == 6);
    CHECK(Opinion(0).shifted(-1).value() == 0);
    CHECK(Opinion(3).shifted(-2).value() == 1);
}

TEST_CASE("decision and valence names") {
    CHECK(to_string(Decision::Accept) == "ACCEPT");
    CHECK(decision_from_string("REJECT") == Decision::Reject);
    CHECK_THROWS_AS(decision_from_string("maybe"), DomainError);
    CHECK(valence_from_int(1) == Valence::Positive);
    CHECK(valence_from_int(-1) == Valence::Negative);
    CHECK_THROWS_AS(valence_from_int(0), DomainError);
    CHECK(valence_from_string("negative") == Valence::Negative);
    CHECK(valence_from_string("same") == Valence::Positive);
    CHECK_THROWS_AS(valence_from_string("sideways"), ConfigError);
}

TEST_CASE("statement texts") {
    const std::string same = statement_text("theseus", 1);
    const std::string different = statement_text("theseus", -1);
    CHECK(same.ends_with("In the end the Ship of Theseus is still the same ship on which he originally sailed."));
    CHECK(different.ends_with("In the end, the Ship of Theseus is completely different from the one he originally sailed."));
    CHECK(same.starts_with("Theseus set sail to reclaim the throne as king of Athens."));
    CHECK_THROWS_AS(statement_text("theseus", 0), DomainError);
    CHECK_THROWS_AS(statement_text("trolley", 1), ConfigError);
    const Statement s = make_statement("theseus", Valence::Negative);
    CHECK(s.text == different);
    CHECK(s.valence == Valence::Negative);
}

TEST_CASE("histogram_of") {
    std::vector<AgentState> agents{{0, Opinion(1), "a"}, {1, Opinion(1), "b"}, {2, Opinion(6), "c"}};
    const Histogram h = histogram_of(agents);
    CHECK(h == Histogram{0, 2, 0, 0, 0, 0, 1});
    CHECK(default_display_name(12) == "Agent_12");
}

TEST_CASE("rng streams are stable and independent") {
    CHECK(derive_seed(1, "pairs") == derive_seed(1, "pairs"));
    CHECK(derive_seed(1, "pairs") != derive_seed(1, "population"));
    CHECK(derive_seed(1, "pairs") != derive_seed(2, "pairs"));
    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng r(11);
    std::array<int, 5> counts{};
    for (int i = 0; i < 50000; ++i) {
        const auto k = r.uniform_index(5);
        REQUIRE(k < 5);
        ++counts[k];
    }
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
