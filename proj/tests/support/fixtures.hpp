// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

// Handcrafted transcripts for metric tests. Built from fixed formulas and a
// local LCG so that nothing here shares code with the simulation engine.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lodas/core.hpp"
#include "lodas/record.hpp"

namespace lodas::testing {

inline InteractionRecord make_record(int discussant, int opponent, Decision decision, std::string opp_text = "arg",
                                     std::string disc_text = "") {
    InteractionRecord r;
    r.discussant_id = 0;
    r.opponent_id = 1;
    r.discussant_before = Opinion(discussant);
    r.opponent_before = Opinion(opponent);
    r.decision = decision;
    const int diff = opponent - discussant;
    r.delta = decision == Decision::Accept ? (diff > 0) - (diff < 0) : 0;
    r.discussant_after = Opinion(discussant + r.delta);
    r.opponent_after = Opinion(opponent);
    r.opponent_utterance = std::move(opp_text);
    r.discussant_utterance =
        disc_text.empty() ? "I " + std::string(to_string(decision)) + " your stance because reasons." : std::move(disc_text);
    r.closing_utterance = decision == Decision::Reject ? "Thanks for the talk." : "END";
    return r;
}

struct Lcg {
    std::uint64_t state;
    std::uint32_t next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<std::uint32_t>(state >> 33);
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint32_t>(n)); }
};

/// A consistent transcript over a small population: agent states are tracked so
/// opinions_before always match, iteration/index follow the N-per-iteration layout,
/// and utterances repeat often enough to exercise the uniqueness metric. Some
/// Opponent utterances carry mock fallacy markers.
struct HandcraftedRun {
    std::vector<AgentState> population;
    std::vector<InteractionRecord> records;
    int iterations = 0;
};

inline HandcraftedRun handcrafted_run(int agents, int iterations, std::uint64_t seed) {
    static const char* kMarkers[] = {"", "", " [MOCK-RELEVANCE]", " [MOCK-CREDIBILITY]", "", " [MOCK-EMOTION]",
                                     " [MOCK-RELEVANCE]", ""};
    static const char* kArgs[] = {"The parts changed but the purpose stayed", "Matter is all that counts",
                                  "Names do not preserve identity", "Continuity is what matters",
                                  "  the PARTS changed   but the purpose stayed "};
    Lcg rng{seed};
    HandcraftedRun run;
    for (int i = 0; i < agents; ++i) {
        run.population.push_back(AgentState{i, Opinion(i % kOpinionCount), "Agent_" + std::to_string(i)});
    }
    std::vector<int> state;
    for (const auto& a : run.population) state.push_back(a.opinion.value());
    for (int t = 0; t < iterations; ++t) {
        for (int k = 0; k < agents; ++k) {
            const int d = rng.below(agents);
            int o = rng.below(agents - 1);
            if (o >= d) ++o;
            const int pick = rng.below(10);
            const Decision decision = pick < 5 ? Decision::Accept : (pick < 8 ? Decision::Reject : Decision::Ignore);
            std::string opp = std::string(kArgs[rng.below(5)]) + kMarkers[rng.below(8)];
            std::string disc = "I " + std::string(to_string(decision)) + " your stance because " + kArgs[rng.below(5)] +
                               kMarkers[rng.below(8)];
            InteractionRecord r = make_record(state[static_cast<std::size_t>(d)], state[static_cast<std::size_t>(o)],
                                              decision, opp, disc);
            r.iteration = t;
            r.index = k;
            r.discussant_id = d;
            r.opponent_id = o;
            state[static_cast<std::size_t>(d)] = r.discussant_after.value();
            run.records.push_back(std::move(r));
        }
    }
    run.iterations = iterations;
    return run;
}

} // namespace lodas::testing
