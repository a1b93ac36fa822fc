#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "catchforge/core/types.hpp"
#include "catchforge/llm/gateway.hpp"
#include "catchforge/prompts/registry.hpp"

namespace catchforge::pds {

class SynthError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ExtractionParseError : public SynthError {
public:
    using SynthError::SynthError;
};

class GoalCriteriaFailed : public SynthError {
public:
    GoalCriteriaFailed(std::string what, std::vector<std::string> failed)
        : SynthError(std::move(what)), failed_flags(std::move(failed)) {}
    std::vector<std::string> failed_flags;
};

class PlanValidationFailed : public SynthError {
public:
    using SynthError::SynthError;
};

class TurnCountMismatch : public SynthError {
public:
    using SynthError::SynthError;
};

class FormatParseError : public SynthError {
public:
    using SynthError::SynthError;
};

class OrderCheckFailed : public SynthError {
public:
    using SynthError::SynthError;
};

class ElementMissing : public SynthError {
public:
    ElementMissing(std::string which)
        : SynthError("closing lacks element: " + which), element(std::move(which)) {}
    std::string element;
};

class LeakGuardViolation : public SynthError {
public:
    using SynthError::SynthError;
};

struct SynthConfig {
    int goal_turns = 6;
    int working_turns = 10;
    int negative_count = 2;  // configurable 0-4
    llm::RetryPolicy policy;
    std::string model_id = "default";
    std::string example_dialogue = "(no example provided)";
    size_t leak_word_threshold = 15;
};

/// Parsed "Turn N:" block. Counselor may be empty on the final block.
struct TurnBlock {
    int index = 0;
    std::string client;
    std::string counselor;
};

/// Parse the "Turn N: / Client: / Counselor:" reply format. A reply may open
/// with a bare "Counselor:" line (the working-stage bridge), returned via
/// `leading_counselor`.
std::vector<TurnBlock> parse_turn_blocks(const std::string& reply,
                                         std::string* leading_counselor = nullptr);

/// Keywords (content words, length >= 4) of a resource description.
std::vector<std::string> description_keywords(const std::string& description);

/// First-mention order check: every resource must be mentioned (by one of
/// its description keywords) and first mentions must be non-decreasing in
/// label order across the working turns.
bool resources_in_order(const core::ResourcePlan& plan,
                        const std::vector<core::DialogueTurn>& working_turns);

struct WorkingStageResult {
    std::string bridge;  // counselor utterance completing the previous stage
    std::vector<core::DialogueTurn> turns;
};

/// Progressive stage-wise synthesis plus the one-time generation baseline.
class Synthesizer {
public:
    Synthesizer(std::shared_ptr<llm::Gateway> gateway, const prompts::PromptRegistry* registry,
                SynthConfig config);

    core::BigFiveProfile extract_personality(const std::string& case_text);
    core::CounselingGoal acquire_goal(const core::ConsultationCase& c);
    core::ResourcePlan acquire_resources(const core::ConsultationCase& c,
                                         const core::CounselingGoal& goal, int negative_count);
    std::vector<core::DialogueTurn> gen_goal_stage(const core::ConsultationCase& c,
                                                   const core::CounselingGoal& goal, int turns);
    WorkingStageResult gen_working_stage(const core::ConsultationCase& c,
                                         const std::vector<core::DialogueTurn>& context,
                                         const core::CounselingGoal& goal,
                                         const core::ResourcePlan& plan, int turns);
    std::string gen_ending_stage(const std::vector<core::DialogueTurn>& context,
                                 const core::CounselingGoal& goal,
                                 const core::Solution& solution);

    core::StagedDialogue synthesize_dialogue(const core::ConsultationCase& c);
    core::StagedDialogue synthesize_onetime(const core::ConsultationCase& c);

    const SynthConfig& config() const { return config_; }

private:
    llm::ChatResponse call(const std::string& tag, const std::string& prompt,
                           double temperature);
    // Runs `attempt` under the escalation schedule until it stops throwing.
    template <typename F>
    auto with_retries(F&& attempt) -> decltype(attempt(0.0));

    std::shared_ptr<llm::Gateway> gateway_;
    const prompts::PromptRegistry* registry_;
    SynthConfig config_;
};

}  // namespace catchforge::pds
