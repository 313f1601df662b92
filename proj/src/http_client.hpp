// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lodas::detail {

/// "http://host:8000/v1" -> origin "http://host:8000", path prefix "/v1".
struct ParsedUrl {
    std::string origin;
    std::string path_prefix;
};

ParsedUrl parse_base_url(std::string_view url);

struct HttpResult {
    bool transport_ok = false;
    int status = 0;
    std::string body;
    std::string error; // transport error description
};

using Headers = std::vector<std::pair<std::string, std::string>>;

HttpResult http_post_json(const ParsedUrl& url, std::string_view path, const std::string& body, const Headers& headers,
                          std::chrono::milliseconds timeout);

HttpResult http_get(const ParsedUrl& url, std::string_view path, std::chrono::milliseconds timeout);

} // namespace lodas::detail
