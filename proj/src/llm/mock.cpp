#include "catchforge/llm/mock.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

namespace catchforge::llm {

MockBackend::MockBackend(std::vector<MockRule> rules) : rules_(std::move(rules)) {}

MockBackend MockBackend::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GatewayError("cannot open mock scenario: " + path);
    std::vector<MockRule> rules;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw GatewayError("bad scenario rule at line " + std::to_string(lineno));
        MockRule r;
        if (j.contains("tag")) r.tag = j.at("tag").get<std::string>();
        if (j.contains("match")) r.match = j.at("match").get<std::string>();
        if (j.contains("temperature")) r.temperature = j.at("temperature").get<double>();
        r.response = j.at("response").get<std::string>();
        rules.push_back(std::move(r));
    }
    return MockBackend(std::move(rules));
}

ChatResponse MockBackend::complete(const ChatRequest& request) {
    std::string full;
    for (const auto& m : request.messages) {
        full += m.content;
        full += '\n';
    }
    for (const auto& r : rules_) {
        if (r.tag && *r.tag != request.tag) continue;
        if (r.match && full.find(*r.match) == std::string::npos) continue;
        if (r.temperature && std::fabs(*r.temperature - request.temperature) > 1e-9) continue;
        ChatResponse resp;
        resp.content = r.response;
        resp.prompt_tokens = static_cast<long>(full.size() / 4);
        resp.completion_tokens = static_cast<long>(r.response.size() / 4);
        resp.latency_ms = 0.0;
        resp.provider_id = "mock";
        return resp;
    }
    throw MockNoMatch("no scenario rule matches tag '" + request.tag + "'");
}

}  // namespace catchforge::llm
