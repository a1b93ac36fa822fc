#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "catchforge/llm/gateway.hpp"
#include "catchforge/llm/json_extract.hpp"
#include "catchforge/llm/mock.hpp"
#include "support/testkit.hpp"

using namespace catchforge::llm;
using testkit::FnBackend;

namespace {

ChatRequest user_request(const std::string& content, double temperature = 0.3,
                         const std::string& tag = "t") {
    ChatRequest r;
    r.messages = {{"user", content}};
    r.temperature = temperature;
    r.tag = tag;
    return r;
}

}  // namespace

TEST_CASE("temperature escalation follows min(base + (k-1)*inc, cap)") {
    RetryPolicy p;  // defaults: 0.3 / +0.2 / cap 1.0 / 4 attempts
    CHECK(escalate(p, 1) == doctest::Approx(0.3));
    CHECK(escalate(p, 2) == doctest::Approx(0.5));
    CHECK(escalate(p, 3) == doctest::Approx(0.7));
    CHECK(escalate(p, 4) == doctest::Approx(0.9));

    RetryPolicy long_run = p;
    long_run.max_attempts = 10;
    CHECK(escalate(long_run, 5) == doctest::Approx(1.0));
    CHECK(escalate(long_run, 10) == doctest::Approx(1.0));  // capped

    CHECK_THROWS_AS(escalate(p, 0), AttemptOutOfRange);
    CHECK_THROWS_AS(escalate(p, 5), AttemptOutOfRange);
}

TEST_CASE("escalation properties hold for random policies") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> base(0.0, 1.0), inc(0.0, 0.5), cap(0.5, 1.5);
    for (int trial = 0; trial < 200; ++trial) {
        RetryPolicy p;
        p.base_temperature = base(rng);
        p.temperature_increment = inc(rng);
        p.temperature_cap = std::max(p.base_temperature, cap(rng));
        p.max_attempts = 8;
        double prev = -1.0;
        for (int a = 1; a <= p.max_attempts; ++a) {
            double t = escalate(p, a);
            CHECK(t >= prev);  // monotone non-decreasing
            CHECK(t <= p.temperature_cap + 1e-12);
            prev = t;
        }
        CHECK(escalate(p, 1) == doctest::Approx(std::min(p.base_temperature,
                                                         p.temperature_cap)));
    }
}

TEST_CASE("json extraction") {
    SUBCASE("bare object") {
        auto j = extract_json_block(R"({"a": 1})");
        CHECK(j.at("a") == 1);
    }
    SUBCASE("fenced block wins") {
        auto j = extract_json_block("noise\n```json\n{\"a\": 2}\n```\ntrailing {\"b\":3}");
        CHECK(j.at("a") == 2);
    }
    SUBCASE("prose around the object") {
        auto j = extract_json_block("Here you go: {\"k\": [1, 2, {\"n\": true}]} done.");
        CHECK(j.at("k")[2].at("n") == true);
    }
    SUBCASE("braces inside string literals") {
        auto j = extract_json_block(R"(reply {"s": "curly } brace { inside", "v": 5})");
        CHECK(j.at("v") == 5);
    }
    SUBCASE("escaped quotes") {
        auto j = extract_json_block(R"({"s": "she said \"hi\""})");
        CHECK(j.at("s") == "she said \"hi\"");
    }
    SUBCASE("no json") {
        CHECK_THROWS_AS(extract_json_block("just words"), NoJsonFound);
    }
    SUBCASE("round trip through dump") {
        nlohmann::json j{{"x", 1.5}, {"y", {{"z", "w"}}}};
        CHECK(extract_json_block("prefix " + j.dump() + " suffix") == j);
    }
}

TEST_CASE("mock backend matching") {
    std::vector<MockRule> rules = {
        {"tagged", std::nullopt, std::nullopt, "by-tag"},
        {std::nullopt, "needle", std::nullopt, "by-match"},
        {std::nullopt, std::nullopt, 0.7, "by-temp"},
        {std::nullopt, std::nullopt, std::nullopt, "fallback"},
    };
    MockBackend mock(rules);

    CHECK(mock.complete(user_request("x", 0.3, "tagged")).content == "by-tag");
    CHECK(mock.complete(user_request("hay needle stack", 0.3)).content == "by-match");
    CHECK(mock.complete(user_request("x", 0.7)).content == "by-temp");
    CHECK(mock.complete(user_request("x", 0.2)).content == "fallback");

    SUBCASE("first match wins") {
        // The tag rule precedes the match rule, so a request satisfying both
        // gets the earlier response.
        CHECK(mock.complete(user_request("needle", 0.3, "tagged")).content == "by-tag");
    }
    SUBCASE("temperature tolerance is tight") {
        CHECK(mock.complete(user_request("x", 0.7 + 1e-10)).content == "by-temp");
        CHECK(mock.complete(user_request("x", 0.71)).content == "fallback");
    }
    SUBCASE("no match raises") {
        MockBackend strict({{"only", std::nullopt, std::nullopt, "r"}});
        CHECK_THROWS_AS(strict.complete(user_request("x")), MockNoMatch);
    }
    SUBCASE("pure function of the request") {
        auto req = user_request("hay needle", 0.3);
        auto first = mock.complete(req).content;
        for (int i = 0; i < 50; ++i) CHECK(mock.complete(req).content == first);
    }
}

TEST_CASE("gateway validates requests") {
    auto gw = testkit::gateway({{std::nullopt, std::nullopt, std::nullopt, "ok"}});
    CHECK(gw->complete(user_request("hello")).content == "ok");

    ChatRequest empty;
    CHECK_THROWS_AS(gw->complete(empty), PreconditionViolation);

    ChatRequest bad_role;
    bad_role.messages = {{"assistant", "hi"}};
    CHECK_THROWS_AS(gw->complete(bad_role), PreconditionViolation);

    CHECK_THROWS_AS(gw->complete(user_request("x", -0.1)), PreconditionViolation);
    CHECK_THROWS_AS(gw->complete(user_request("x", 2.5)), PreconditionViolation);
}

TEST_CASE("gateway enforces the request budget") {
    auto backend = std::make_shared<FnBackend>(
        [](const ChatRequest&) { return ChatResponse{"ok", 0, 0, 0.0, "fn"}; });
    Gateway gw(backend, {}, 0.0, 3);
    for (int i = 0; i < 3; ++i) CHECK(gw.complete(user_request("x")).content == "ok");
    CHECK_THROWS_AS(gw.complete(user_request("x")), BudgetExceeded);
    CHECK(backend->calls == 3);
}

TEST_CASE("gateway retries transport errors with bounded attempts") {
    RetryPolicy p;
    p.max_attempts = 3;
    p.backoff_initial_ms = 1;

    SUBCASE("recovers when a later attempt succeeds") {
        auto backend = std::make_shared<FnBackend>([](const ChatRequest&) -> ChatResponse {
            static int n = 0;
            if (++n < 3) throw TransportError("flaky");
            return ChatResponse{"recovered", 0, 0, 0.0, "fn"};
        });
        Gateway gw(backend, p);
        CHECK(gw.complete(user_request("x")).content == "recovered");
        CHECK(backend->calls == 3);
    }
    SUBCASE("gives up after max attempts") {
        auto backend = std::make_shared<FnBackend>(
            [](const ChatRequest&) -> ChatResponse { throw TransportError("down"); });
        Gateway gw(backend, p);
        CHECK_THROWS_AS(gw.complete(user_request("x")), TransportError);
        CHECK(backend->calls == 3);
    }
    SUBCASE("auth errors are not retried") {
        auto backend = std::make_shared<FnBackend>(
            [](const ChatRequest&) -> ChatResponse { throw AuthError("bad key"); });
        Gateway gw(backend, p);
        CHECK_THROWS_AS(gw.complete(user_request("x")), AuthError);
        CHECK(backend->calls == 1);
    }
}
