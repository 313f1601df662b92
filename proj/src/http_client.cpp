// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include "http_client.hpp"

#include <httplib.h>

#include "lodas/errors.hpp"

namespace lodas::detail {

ParsedUrl parse_base_url(std::string_view url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) throw ConfigError("URL lacks a scheme: " + std::string(url));
    const std::string_view scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") throw ConfigError("unsupported URL scheme: " + std::string(url));
    const auto path_start = url.find('/', scheme_end + 3);
    ParsedUrl out;
    if (path_start == std::string_view::npos) {
        out.origin = std::string(url);
    } else {
        out.origin = std::string(url.substr(0, path_start));
        out.path_prefix = std::string(url.substr(path_start));
        while (!out.path_prefix.empty() && out.path_prefix.back() == '/') out.path_prefix.pop_back();
    }
    if (out.origin.size() <= scheme_end + 3) throw ConfigError("URL lacks a host: " + std::string(url));
    return out;
}

namespace {

httplib::Client make_client(const ParsedUrl& url, std::chrono::milliseconds timeout) {
    httplib::Client client(url.origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    return client;
}

HttpResult to_result(const httplib::Result& res) {
    HttpResult out;
    if (!res) {
        out.error = httplib::to_string(res.error());
        return out;
    }
    out.transport_ok = true;
    out.status = res->status;
    out.body = res->body;
    return out;
}

} // namespace

HttpResult http_post_json(const ParsedUrl& url, std::string_view path, const std::string& body, const Headers& headers,
                          std::chrono::milliseconds timeout) {
    auto client = make_client(url, timeout);
    httplib::Headers h;
    for (const auto& [k, v] : headers) h.emplace(k, v);
    return to_result(client.Post(url.path_prefix + std::string(path), h, body, "application/json"));
}

HttpResult http_get(const ParsedUrl& url, std::string_view path, std::chrono::milliseconds timeout) {
    auto client = make_client(url, timeout);
    return to_result(client.Get(url.path_prefix + std::string(path)));
}

} // namespace lodas::detail
