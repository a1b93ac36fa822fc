#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catchforge/llm/gateway.hpp"

namespace catchforge::llm {

/// One scenario rule. A rule matches a request when every present field
/// matches: `tag` equals the request tag, `match` is a substring of the
/// concatenated message contents, and `temperature` equals the request
/// temperature (within 1e-9). First matching rule wins.
struct MockRule {
    std::optional<std::string> tag;
    std::optional<std::string> match;
    std::optional<double> temperature;
    std::string response;
};

class MockNoMatch : public GatewayError {
public:
    using GatewayError::GatewayError;
};

/// Deterministic offline backend driven by a JSONL scenario file. A pure
/// function of the request: identical requests always produce identical
/// responses.
class MockBackend : public ChatBackend {
public:
    explicit MockBackend(std::vector<MockRule> rules);
    static MockBackend from_file(const std::string& path);

    ChatResponse complete(const ChatRequest& request) override;
    std::string provider_id() const override { return "mock"; }

private:
    std::vector<MockRule> rules_;
};

}  // namespace catchforge::llm
