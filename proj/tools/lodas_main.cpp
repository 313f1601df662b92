// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include <csignal>
#include <iostream>
#include <stop_token>

#include "lodas/cli.hpp"

namespace {
std::stop_source g_stop;

extern "C" void on_interrupt(int) { g_stop.request_stop(); }
} // namespace

int main(int argc, char** argv) {
    std::signal(SIGINT, on_interrupt);
    std::signal(SIGTERM, on_interrupt);
    return lodas::run_cli(argc, argv, std::cout, std::cerr, g_stop.get_token());
}
