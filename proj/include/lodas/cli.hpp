// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <stop_token>

namespace lodas {

/// Entry point of the `lodas` tool: run, annotate, analyze, verify, scenarios.
/// Returns 0 on success, 2 on usage errors, 1 on any other failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::stop_token stop = {});

} // namespace lodas
