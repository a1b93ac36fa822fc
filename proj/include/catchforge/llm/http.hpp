#pragma once

#include <string>

#include "catchforge/llm/gateway.hpp"

namespace catchforge::llm {

struct EndpointConfig {
    std::string base_url;              // e.g. http://localhost:8000
    std::string path = "/v1/chat/completions";
    std::string api_key;               // empty: no Authorization header
    std::string api_key_env;           // env var override for the key
    int timeout_seconds = 120;

    std::string resolved_key() const;
};

/// OpenAI-compatible chat-completions client. 5xx and connection failures
/// raise TransportError (retriable at the Gateway), 401/403 raise AuthError.
class HttpBackend : public ChatBackend {
public:
    explicit HttpBackend(EndpointConfig config);

    ChatResponse complete(const ChatRequest& request) override;
    std::string provider_id() const override { return config_.base_url; }

private:
    EndpointConfig config_;
};

}  // namespace catchforge::llm
