// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "lodas/population.hpp"

#include <numeric>

#include "lodas/errors.hpp"
#include "lodas/rng.hpp"

namespace lodas {

std::string_view to_string(ScenarioName n) noexcept {
    switch (n) {
    case ScenarioName::Balanced:
        return "balanced";
    case ScenarioName::Polarized:
        return "polarized";
    case ScenarioName::Unbalanced:
        return "unbalanced";
    case ScenarioName::Custom:
        return "custom";
    }
    return "custom";
}

ScenarioName scenario_name_from_string(std::string_view s) {
    if (s == "balanced") return ScenarioName::Balanced;
    if (s == "polarized") return ScenarioName::Polarized;
    if (s == "unbalanced") return ScenarioName::Unbalanced;
    if (s == "custom") return ScenarioName::Custom;
    throw ConfigError("unknown scenario '" + std::string(s) + "'");
}

ScenarioSpec build_scenario(std::string_view name, const std::optional<CountMap>& overrides) {
    return build_scenario(scenario_name_from_string(name), overrides);
}

ScenarioSpec build_scenario(ScenarioName name, const std::optional<CountMap>& overrides) {
    ScenarioSpec spec;
    spec.name = name;
    if (overrides) {
        for (const auto& [opinion, count] : *overrides) {
            if (opinion < kMinOpinion || opinion > kMaxOpinion) {
                throw ConfigError("scenario count for opinion " + std::to_string(opinion) + " is outside [0, 6]");
            }
            if (count < 0) throw ConfigError("negative agent count for opinion " + std::to_string(opinion));
            spec.counts[static_cast<std::size_t>(opinion)] = count;
        }
    } else {
        switch (name) {
        case ScenarioName::Balanced:
            spec.counts = {20, 20, 20, 20, 20, 20, 20};
            break;
        case ScenarioName::Polarized:
            // 72 + 69 = 141, one more than the nominal population of 140.
            spec.counts = {72, 0, 0, 0, 0, 0, 69};
            break;
        case ScenarioName::Unbalanced:
            spec.counts = {101, 20, 19, 0, 0, 0, 0};
            break;
        case ScenarioName::Custom:
            throw ConfigError("custom scenario requires explicit counts");
        }
    }
    spec.total = std::accumulate(spec.counts.begin(), spec.counts.end(), 0);
    if (spec.total == 0) throw ConfigError("scenario has no agents");
    return spec;
}

void validate(const ScenarioSpec& spec) {
    int sum = 0;
    for (int c : spec.counts) {
        if (c < 0) throw ConfigError("negative agent count in scenario");
        sum += c;
    }
    if (sum != spec.total) {
        throw ConfigError("scenario counts sum to " + std::to_string(sum) + " but total is " + std::to_string(spec.total));
    }
    if (spec.total <= 0) throw ConfigError("scenario has no agents");
}

std::vector<AgentState> init_population(const ScenarioSpec& spec, std::uint64_t seed) {
    validate(spec);
    std::vector<int> opinions;
    opinions.reserve(static_cast<std::size_t>(spec.total));
    for (int o = 0; o < kOpinionCount; ++o) {
        opinions.insert(opinions.end(), static_cast<std::size_t>(spec.counts[static_cast<std::size_t>(o)]), o);
    }
    Rng rng(seed);
    rng.shuffle(std::span<int>(opinions));

    std::vector<AgentState> agents;
    agents.reserve(opinions.size());
    for (std::size_t i = 0; i < opinions.size(); ++i) {
        const int id = static_cast<int>(i);
        agents.push_back(AgentState{id, Opinion(opinions[i]), default_display_name(id)});
    }
    return agents;
}

std::vector<ScenarioSpec> canonical_scenarios() {
    return {build_scenario(ScenarioName::Balanced), build_scenario(ScenarioName::Polarized),
            build_scenario(ScenarioName::Unbalanced)};
}

} // namespace lodas
