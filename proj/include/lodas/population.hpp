// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lodas/core.hpp"

namespace lodas {

enum class ScenarioName { Balanced, Polarized, Unbalanced, Custom };

std::string_view to_string(ScenarioName n) noexcept;
ScenarioName scenario_name_from_string(std::string_view s);

/// Initial opinion composition of a population.
struct ScenarioSpec {
    ScenarioName name = ScenarioName::Balanced;
    Histogram counts{};
    int total = 0;

    bool operator==(const ScenarioSpec&) const = default;
};

/// Opinion value -> agent count, as written in configuration files.
using CountMap = std::map<int, int>;

/// Canonical counts for the named scenario, or `overrides` in their place.
/// Custom scenarios require overrides. Throws ConfigError on empty or invalid maps.
ScenarioSpec build_scenario(std::string_view name, const std::optional<CountMap>& overrides = std::nullopt);
ScenarioSpec build_scenario(ScenarioName name, const std::optional<CountMap>& overrides = std::nullopt);

/// Throws ConfigError when counts are negative or do not sum to total.
void validate(const ScenarioSpec& spec);

/// Agents 0..total-1 with the spec's opinion multiset, in seed-determined order.
std::vector<AgentState> init_population(const ScenarioSpec& spec, std::uint64_t seed);

/// balanced, polarized, unbalanced in that order.
std::vector<ScenarioSpec> canonical_scenarios();

} // namespace lodas
