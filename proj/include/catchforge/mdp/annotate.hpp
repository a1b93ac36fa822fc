#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "catchforge/core/types.hpp"
#include "catchforge/core/validate.hpp"
#include "catchforge/llm/gateway.hpp"
#include "catchforge/prompts/registry.hpp"

namespace catchforge::mdp {

class MdpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An agent kept failing verification after the full escalation budget.
class AnnotationExhausted : public MdpError {
public:
    AnnotationExhausted(std::string agent_name, int turn)
        : MdpError("agent '" + agent_name + "' exhausted attempts at turn " +
                   std::to_string(turn)),
          agent(std::move(agent_name)),
          turn_index(turn) {}
    std::string agent;
    int turn_index = 0;
};

struct AnnotateConfig {
    llm::RetryPolicy policy;
    std::string model_id = "default";
    bool semantic_check = true;  // run the judge after deterministic rules
};

/// One audited agent attempt, for the regeneration trail.
struct AttemptRecord {
    int turn_index = 0;
    std::string agent;
    int attempt = 0;
    double temperature = 0.0;
    bool accepted = false;
    std::string rule;  // rejection rule, empty when accepted
};

using AuditSink = std::function<void(const AttemptRecord&)>;

/// Dialogue position being annotated. `turn_index` runs 1..turns for the
/// counselor reply of each turn and turns+1 for the closing message.
struct AnnotationContext {
    const core::StagedDialogue* dialogue = nullptr;
    int turn_index = 1;
    std::string prior_fused = "None";  // fused reasoning of the previous turn

    core::Stage current_stage() const;
    core::Stage previous_stage() const;
    std::string client_utterance() const;   // utterance the reply answers
    std::string counselor_reply() const;    // actual reply (closing for turns+1)
    std::string history() const;            // rendered up to the client utterance
    bool is_last_goal_turn() const;
};

/// Reconstructs per-turn counselor reasoning with a memory, planning,
/// strategy, verification, and fusion agent. Verification combines
/// deterministic consistency rules with a semantic judge; rejected artifacts
/// are regenerated at escalated temperature with the rejection rule appended
/// to the prompt.
class Annotator {
public:
    Annotator(std::shared_ptr<llm::Gateway> gateway, const prompts::PromptRegistry* registry,
              AnnotateConfig config, AuditSink audit = nullptr);

    core::MemorySummary capture_memory(const AnnotationContext& ctx, int* attempts = nullptr);
    core::GlobalPlan plan_globally(const AnnotationContext& ctx, int* attempts = nullptr);
    core::StrategyDecision reason_strategy(const AnnotationContext& ctx,
                                           const core::GlobalPlan& plan,
                                           int* attempts = nullptr);
    std::string fuse(const AnnotationContext& ctx, const core::MemorySummary& memory,
                     const core::GlobalPlan& plan, const core::StrategyDecision& strategy,
                     int* attempts = nullptr);

    /// Deterministic consistency rules for one artifact kind
    /// ("memory" | "plan" | "strategy").
    core::ValidityVerdict check_memory(const AnnotationContext& ctx,
                                       const core::MemorySummary& memory) const;
    core::ValidityVerdict check_plan(const AnnotationContext& ctx,
                                     const core::GlobalPlan& plan) const;
    core::ValidityVerdict check_strategy(const AnnotationContext& ctx,
                                         const core::StrategyDecision& strategy) const;

    core::MdpAnnotation annotate_turn(const AnnotationContext& ctx);
    /// One annotation per counselor reply, in order; the last entry covers
    /// the closing. Throws AnnotationExhausted with partial results lost to
    /// the caller's discretion (use the audit sink for the trail).
    std::vector<core::MdpAnnotation> annotate_dialogue(const core::StagedDialogue& dialogue);

    const AnnotateConfig& config() const { return config_; }

private:
    core::ValidityVerdict semantic_verdict(const AnnotationContext& ctx,
                                           const std::string& kind,
                                           const std::string& artifact);
    llm::ChatResponse call(const std::string& tag, const std::string& prompt,
                           double temperature);
    void audit(const AttemptRecord& rec) const;

    std::shared_ptr<llm::Gateway> gateway_;
    const prompts::PromptRegistry* registry_;
    AnnotateConfig config_;
    AuditSink audit_;
};

}  // namespace catchforge::mdp
