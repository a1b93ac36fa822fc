#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace catchforge::llm {

struct ChatMessage {
    std::string role;  // system | user | assistant
    std::string content;
};

struct ChatRequest {
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    int max_tokens = 2048;
    std::string model_id;
    std::string tag;  // pipeline-step label, used for logging and mock routing
};

struct ChatResponse {
    std::string content;
    long prompt_tokens = 0;
    long completion_tokens = 0;
    double latency_ms = 0.0;
    std::string provider_id;
};

class GatewayError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TransportError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

class AuthError : public GatewayError {
public:
    using GatewayError::GatewayError;
};

class BudgetExceeded : public GatewayError {
public:
    using GatewayError::GatewayError;
};

class PreconditionViolation : public GatewayError {
public:
    using GatewayError::GatewayError;
};

class AttemptOutOfRange : public GatewayError {
public:
    using GatewayError::GatewayError;
};

/// Temperature-escalating retry schedule for regeneration loops.
struct RetryPolicy {
    int max_attempts = 4;
    double base_temperature = 0.3;
    double temperature_increment = 0.2;
    double temperature_cap = 1.0;
    int backoff_initial_ms = 250;  // transport-error backoff, doubled per retry
};

/// min(base + (attempt-1)*increment, cap); attempt is 1-based.
double escalate(const RetryPolicy& policy, int attempt);

class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    virtual ChatResponse complete(const ChatRequest& request) = 0;
    virtual std::string provider_id() const = 0;
};

/// Serializes dispatch to a configurable requests-per-second budget.
class RateLimiter {
public:
    explicit RateLimiter(double requests_per_second = 0.0);
    void acquire();

private:
    std::mutex mutex_;
    std::chrono::steady_clock::duration min_interval_{};
    std::chrono::steady_clock::time_point next_slot_{};
};

/// Front door for every model call: validates the request, rate-limits,
/// retries transport errors with backoff, and enforces a request budget.
class Gateway {
public:
    Gateway(std::shared_ptr<ChatBackend> backend, RetryPolicy transport_policy = {},
            double requests_per_second = 0.0, long max_requests = 0);

    ChatResponse complete(const ChatRequest& request);

    long requests_made() const { return requests_made_; }

private:
    std::shared_ptr<ChatBackend> backend_;
    RetryPolicy transport_policy_;
    RateLimiter limiter_;
    long max_requests_;
    long requests_made_ = 0;
    std::mutex count_mutex_;
};

}  // namespace catchforge::llm
