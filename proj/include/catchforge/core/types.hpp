#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace catchforge::core {

using json = nlohmann::json;

/// Therapy stage of a dialogue turn.
enum class Stage { Goal, Working, Ending };

/// Finer-grained step inside a stage.
enum class Step {
    BuildingRapport,
    ClarifyingGoal,
    ExploringResources,
    ImplementingActions,
    Closing
};

/// Planning decision for the next counselor reply.
enum class NextStepKind { Remain, StepShiftWithinStage, StageTransition };

Stage stage_of_step(Step step);

std::string to_string(Stage s);
std::string to_string(Step s);
std::string to_string(NextStepKind k);

std::optional<Stage> stage_from_string(const std::string& s);
std::optional<NextStepKind> next_step_from_string(const std::string& s);

/// Qualitative Big Five descriptors extracted from the self-report.
struct BigFiveProfile {
    std::string openness;
    std::string conscientiousness;
    std::string extraversion;
    std::string agreeableness;
    std::string neuroticism;

    bool complete() const;
};

struct ConsultationCase {
    std::string case_id;
    std::string self_report;
    BigFiveProfile traits;
    std::string source;
};

/// Session goal plus the six judge-recorded acceptance flags.
struct CounselingGoal {
    std::string text;
    bool unique = false;
    bool specific = false;
    bool feasible = false;
    bool positive = false;
    bool measurable = false;
    bool psychological = false;

    bool all_criteria_met() const {
        return unique && specific && feasible && positive && measurable && psychological;
    }
    std::vector<std::string> failed_flags() const;
};

enum class ResourceKind { Internal, External };
enum class ResourceValence { Positive, Negative };

struct Resource {
    int label = 0;
    ResourceKind kind = ResourceKind::Internal;
    ResourceValence valence = ResourceValence::Negative;
    std::string description;
    std::string relevance;
    std::optional<int> next_label;
    std::string change;
};

struct Solution {
    std::string text;
};

/// Ordered resource chain ending in a single positive resource, plus the
/// derived action plan.
struct ResourcePlan {
    std::vector<Resource> resources;
    Solution solution;
};

struct DialogueTurn {
    int index = 0;
    std::string client_utterance;
    std::string counselor_utterance;  // empty only on the final client-only turn
    Stage stage_label = Stage::Goal;
};

/// Fully stitched multi-turn dialogue. The ending stage is stored as a single
/// counselor `closing` message; in the label sequence it counts as one Ending
/// entry after the turn labels.
struct StagedDialogue {
    std::string case_id;
    CounselingGoal goal;
    ResourcePlan plan;
    std::vector<DialogueTurn> turns;
    std::string closing;
    bool flagged_nonmonotone = false;  // set by the one-time baseline labeler

    std::vector<Stage> label_sequence() const;
};

struct MemorySummary {
    std::string personal_info;
    std::string internal_resources = "None";
    std::string external_resources = "None";
    std::string counseling_goal = "None";
};

struct GlobalPlan {
    std::string analysis;
    Stage previous_stage = Stage::Goal;
    NextStepKind next_step = NextStepKind::Remain;
    Stage expected_stage = Stage::Goal;
};

struct StrategyDecision {
    std::string analysis;
    std::string response;
};

/// Per-turn annotation assembled by the agent pipeline.
struct MdpAnnotation {
    int turn_index = 0;
    MemorySummary memory;
    GlobalPlan plan;
    StrategyDecision strategy;
    std::string fused_cot;
    std::map<std::string, int> attempts;  // agent name -> attempts used
};

struct SftSample {
    std::string system;
    std::string history;
    std::string target;
};

// JSON round-trips, snake_case field names.
void to_json(json& j, const BigFiveProfile& v);
void from_json(const json& j, BigFiveProfile& v);
void to_json(json& j, const ConsultationCase& v);
void from_json(const json& j, ConsultationCase& v);
void to_json(json& j, const CounselingGoal& v);
void from_json(const json& j, CounselingGoal& v);
void to_json(json& j, const Resource& v);
void from_json(const json& j, Resource& v);
void to_json(json& j, const ResourcePlan& v);
void from_json(const json& j, ResourcePlan& v);
void to_json(json& j, const DialogueTurn& v);
void from_json(const json& j, DialogueTurn& v);
void to_json(json& j, const StagedDialogue& v);
void from_json(const json& j, StagedDialogue& v);
void to_json(json& j, const MemorySummary& v);
void from_json(const json& j, MemorySummary& v);
void to_json(json& j, const GlobalPlan& v);
void from_json(const json& j, GlobalPlan& v);
void to_json(json& j, const StrategyDecision& v);
void from_json(const json& j, StrategyDecision& v);
void to_json(json& j, const MdpAnnotation& v);
void from_json(const json& j, MdpAnnotation& v);
void to_json(json& j, const SftSample& v);
void from_json(const json& j, SftSample& v);

}  // namespace catchforge::core
