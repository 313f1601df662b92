// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdlib>
#include <thread>

#include "http_client.hpp"
#include "lodas/errors.hpp"
#include "lodas/llm_backend.hpp"

namespace lodas {

using nlohmann::json;

void HttpBackendConfig::validate() const {
    detail::parse_base_url(base_url);
    if (max_attempts < 1) throw ConfigError("max_attempts must be >= 1");
    if (backoff_initial.count() < 0) throw ConfigError("backoff_initial must be >= 0");
    if (backoff_factor < 1.0) throw ConfigError("backoff_factor must be >= 1");
    if (timeout.count() <= 0) throw ConfigError("timeout must be positive");
    if (max_in_flight < 1 || max_in_flight > 1024) throw ConfigError("max_in_flight must be in [1, 1024]");
}

std::chrono::milliseconds backoff_delay(const HttpBackendConfig& config, int retry) {
    const double ms = static_cast<double>(config.backoff_initial.count()) * std::pow(config.backoff_factor, retry);
    return std::chrono::milliseconds(static_cast<std::int64_t>(ms));
}

namespace {

bool transient_status(int status) { return status == 408 || status == 429 || status >= 500; }

} // namespace

HttpChatBackend::HttpChatBackend(HttpBackendConfig config, Sleeper sleeper)
    : config_(std::move(config)), sleeper_(std::move(sleeper)), in_flight_(config_.max_in_flight) {
    config_.validate();
    api_key_ = config_.api_key;
    if (!config_.api_key_env.empty()) {
        if (const char* env = std::getenv(config_.api_key_env.c_str()); env != nullptr && *env != '\0') api_key_ = env;
    }
    if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
    if (config_.request_log) {
        log_.open(*config_.request_log, std::ios::app);
        if (!log_) throw IoError("cannot open request log " + config_.request_log->string());
    }
}

HttpChatBackend::~HttpChatBackend() = default;

void HttpChatBackend::log_exchange(const json& entry) {
    if (!log_.is_open()) return;
    std::lock_guard lock(log_mutex_);
    log_ << entry.dump() << '\n';
    log_.flush();
}

std::string HttpChatBackend::chat(const ChatRequest& request) {
    request.validate();
    ChatRequest resolved = request;
    if (resolved.model_id.empty()) resolved.model_id = config_.model;
    const json body = resolved.to_openai_json();
    const std::string payload = body.dump();

    detail::Headers headers;
    if (!api_key_.empty()) headers.emplace_back("Authorization", "Bearer " + api_key_);
    const auto url = detail::parse_base_url(config_.base_url);

    std::string last_error;
    for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
        detail::HttpResult res;
        {
            in_flight_.acquire();
            struct Release {
                std::counting_semaphore<1024>& s;
                ~Release() { s.release(); }
            } release{in_flight_};
            res = detail::http_post_json(url, "/chat/completions", payload, headers, config_.timeout);
        }

        bool transient = true;
        if (!res.transport_ok) {
            last_error = "transport error: " + res.error;
        } else if (res.status != 200) {
            last_error = "HTTP status " + std::to_string(res.status);
            transient = transient_status(res.status);
        } else {
            try {
                const json reply = json::parse(res.body);
                const auto& content = reply.at("choices").at(0).at("message").at("content");
                std::string text = content.is_null() ? std::string() : content.get<std::string>();
                log_exchange({{"attempt", attempt}, {"request", body}, {"status", res.status}, {"response", reply}});
                if (!text.empty()) return text;
                last_error = "empty completion";
            } catch (const json::exception& e) {
                last_error = std::string("malformed completion body: ") + e.what();
            }
        }
        log_exchange({{"attempt", attempt}, {"request", body}, {"status", res.status}, {"error", last_error}});
        if (!transient) throw BackendError(last_error, attempt);
        if (attempt < config_.max_attempts) sleeper_(backoff_delay(config_, attempt - 1));
    }
    throw BackendError(last_error, config_.max_attempts);
}

std::string HttpChatBackend::identity() const { return "openai:" + config_.model; }

json HttpChatBackend::describe() const {
    return json{{"kind", "openai"},
                {"base_url", config_.base_url},
                {"model", config_.model},
                {"max_attempts", config_.max_attempts},
                {"backoff_initial_ms", config_.backoff_initial.count()},
                {"backoff_factor", config_.backoff_factor},
                {"timeout_ms", config_.timeout.count()},
                {"max_in_flight", config_.max_in_flight}};
}

} // namespace lodas
