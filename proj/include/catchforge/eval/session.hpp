#pragma once

#include <map>
#include <memory>

#include "json.hpp"
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "catchforge/llm/gateway.hpp"
#include "catchforge/prompts/registry.hpp"

namespace catchforge::eval {

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A group asked for in aggregation has no sessions or no usable scores.
class EmptyGroup : public EvalError {
public:
    using EvalError::EvalError;
};

enum class Attitude { Open, Neutral, Resistant };
std::string to_string(Attitude a);
std::optional<Attitude> attitude_from_string(const std::string& s);

struct IntakeForm {
    std::string form_id;
    std::string persona;
    std::string negative_thoughts;
    Attitude attitude = Attitude::Neutral;

    std::string rendered() const;
};

enum class SessionEnd { ClientEndToken, TurnCap };

struct SessionTurn {
    std::string client;
    std::string counselor;
};

struct SessionTranscript {
    std::string form_id;
    std::string model_id;
    Attitude attitude = Attitude::Neutral;
    std::vector<SessionTurn> turns;
    SessionEnd ended_by = SessionEnd::TurnCap;
    bool degenerate = false;  // a party fell silent on two consecutive turns

    std::string render() const;
};

struct SessionConfig {
    int min_end_turn = 20;  // the client end token is honored from here on
    int max_turns = 25;
    double counselor_temperature = 0.6;
    double client_temperature = 0.6;
    bool reasoning_counselor = true;  // emit <think> blocks (stripped in transcript)
    std::string counselor_model = "counselor";
    std::string client_model = "client";
};

/// Token a simulated client emits to end the session.
inline constexpr const char* kEndToken = "[/END]";

/// Drives one simulated counseling session between a counselor backend and
/// a client-simulator backend.
class SessionRunner {
public:
    SessionRunner(std::shared_ptr<llm::Gateway> counselor,
                  std::shared_ptr<llm::Gateway> client,
                  const prompts::PromptRegistry* registry, SessionConfig config);

    SessionTranscript run(const IntakeForm& form);

    const SessionConfig& config() const { return config_; }

private:
    std::string client_turn(const IntakeForm& form, const SessionTranscript& so_far);
    std::string counselor_turn(const SessionTranscript& so_far);

    std::shared_ptr<llm::Gateway> counselor_;
    std::shared_ptr<llm::Gateway> client_;
    const prompts::PromptRegistry* registry_;
    SessionConfig config_;
};

struct MetricScore {
    double value = 0.0;
    bool clamped = false;  // judge answered outside [0, 6]
};

struct SessionScore {
    std::string form_id;
    std::string model_id;
    Attitude attitude = Attitude::Neutral;
    // metric id -> score; nullopt when the judge reply stayed unparseable
    std::map<std::string, std::optional<MetricScore>> metrics;
};

/// The six rubric metric ids, in reporting order.
const std::vector<std::string>& metric_ids();

/// Scores a transcript against each rubric with a judge model at
/// temperature 0. Unparseable replies get one re-ask, then the metric is
/// recorded as missing.
class SessionJudge {
public:
    SessionJudge(std::shared_ptr<llm::Gateway> judge, const prompts::PromptRegistry* registry,
                 std::string judge_model = "judge");

    SessionScore score(const SessionTranscript& transcript);

    /// Parse a "score, explanation" judge reply; nullopt if no leading number.
    static std::optional<double> parse_score_reply(const std::string& reply);

private:
    std::shared_ptr<llm::Gateway> gateway_;
    const prompts::PromptRegistry* registry_;
    std::string model_;
};

struct GroupStats {
    size_t sessions = 0;
    std::map<std::string, double> metric_means;  // metrics with >= 1 usable score
};

std::map<std::string, GroupStats> aggregate_by_attitude(
    const std::vector<SessionScore>& scores);
std::map<std::string, GroupStats> aggregate_by_model(const std::vector<SessionScore>& scores);

void to_json(nlohmann::json& j, const IntakeForm& v);
void from_json(const nlohmann::json& j, IntakeForm& v);
void to_json(nlohmann::json& j, const SessionTranscript& v);
void from_json(const nlohmann::json& j, SessionTranscript& v);
void to_json(nlohmann::json& j, const SessionScore& v);
void from_json(const nlohmann::json& j, SessionScore& v);

}  // namespace catchforge::eval
