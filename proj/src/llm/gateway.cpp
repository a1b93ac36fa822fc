#include "catchforge/llm/gateway.hpp"

#include <algorithm>
#include <thread>

namespace catchforge::llm {

double escalate(const RetryPolicy& policy, int attempt) {
    if (attempt < 1 || attempt > policy.max_attempts)
        throw AttemptOutOfRange("attempt " + std::to_string(attempt) + " outside [1, " +
                                std::to_string(policy.max_attempts) + "]");
    double t = policy.base_temperature + (attempt - 1) * policy.temperature_increment;
    return std::min(t, policy.temperature_cap);
}

RateLimiter::RateLimiter(double requests_per_second) {
    if (requests_per_second > 0.0) {
        min_interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
            std::chrono::duration<double>(1.0 / requests_per_second));
    }
}

void RateLimiter::acquire() {
    if (min_interval_.count() == 0) return;
    std::chrono::steady_clock::time_point wait_until;
    {
        std::lock_guard lock(mutex_);
        auto now = std::chrono::steady_clock::now();
        wait_until = std::max(now, next_slot_);
        next_slot_ = wait_until + min_interval_;
    }
    std::this_thread::sleep_until(wait_until);
}

Gateway::Gateway(std::shared_ptr<ChatBackend> backend, RetryPolicy transport_policy,
                 double requests_per_second, long max_requests)
    : backend_(std::move(backend)),
      transport_policy_(transport_policy),
      limiter_(requests_per_second),
      max_requests_(max_requests) {}

ChatResponse Gateway::complete(const ChatRequest& request) {
    if (request.messages.empty())
        throw PreconditionViolation("chat request has no messages");
    const auto& first = request.messages.front().role;
    if (first != "system" && first != "user")
        throw PreconditionViolation("first message role must be system or user");
    if (request.temperature < 0.0 || request.temperature > 2.0)
        throw PreconditionViolation("temperature outside [0, 2]");

    {
        std::lock_guard lock(count_mutex_);
        if (max_requests_ > 0 && requests_made_ >= max_requests_)
            throw BudgetExceeded("request budget of " + std::to_string(max_requests_) +
                                 " exhausted");
        ++requests_made_;
    }

    int backoff_ms = transport_policy_.backoff_initial_ms;
    for (int attempt = 1;; ++attempt) {
        limiter_.acquire();
        try {
            return backend_->complete(request);
        } catch (const TransportError&) {
            if (attempt >= transport_policy_.max_attempts) throw;
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
        }
    }
}

}  // namespace catchforge::llm
