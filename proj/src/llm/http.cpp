#include "catchforge/llm/http.hpp"

#include <chrono>
#include <cstdlib>

#include "httplib.h"
#include "json.hpp"

namespace catchforge::llm {

std::string EndpointConfig::resolved_key() const {
    if (!api_key_env.empty()) {
        if (const char* v = std::getenv(api_key_env.c_str()); v && *v) return v;
    }
    return api_key;
}

HttpBackend::HttpBackend(EndpointConfig config) : config_(std::move(config)) {}

ChatResponse HttpBackend::complete(const ChatRequest& request) {
    nlohmann::json body;
    body["model"] = request.model_id;
    body["temperature"] = request.temperature;
    body["max_tokens"] = request.max_tokens;
    auto& messages = body["messages"] = nlohmann::json::array();
    for (const auto& m : request.messages)
        messages.push_back({{"role", m.role}, {"content", m.content}});

    httplib::Client client(config_.base_url);
    client.set_read_timeout(config_.timeout_seconds, 0);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    httplib::Headers headers;
    if (auto key = config_.resolved_key(); !key.empty())
        headers.emplace("Authorization", "Bearer " + key);

    auto start = std::chrono::steady_clock::now();
    auto res = client.Post(config_.path, headers, body.dump(), "application/json");
    auto elapsed = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();

    if (!res) throw TransportError("connection to " + config_.base_url + " failed");
    if (res->status == 401 || res->status == 403)
        throw AuthError("authentication rejected (" + std::to_string(res->status) + ")");
    if (res->status >= 500 || res->status == 429)
        throw TransportError("server returned " + std::to_string(res->status));
    if (res->status != 200)
        throw GatewayError("unexpected status " + std::to_string(res->status) + ": " +
                           res->body);

    auto j = nlohmann::json::parse(res->body, nullptr, false);
    if (j.is_discarded()) throw GatewayError("unparseable completion body");
    ChatResponse out;
    try {
        out.content = j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw GatewayError(std::string("completion body missing fields: ") + e.what());
    }
    if (j.contains("usage")) {
        out.prompt_tokens = j["usage"].value("prompt_tokens", 0L);
        out.completion_tokens = j["usage"].value("completion_tokens", 0L);
    }
    out.latency_ms = elapsed;
    out.provider_id = config_.base_url;
    return out;
}

}  // namespace catchforge::llm
