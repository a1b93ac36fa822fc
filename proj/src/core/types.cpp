#include "catchforge/core/types.hpp"

#include <stdexcept>

namespace catchforge::core {

Stage stage_of_step(Step step) {
    switch (step) {
        case Step::BuildingRapport:
        case Step::ClarifyingGoal:
            return Stage::Goal;
        case Step::ExploringResources:
        case Step::ImplementingActions:
            return Stage::Working;
        case Step::Closing:
            return Stage::Ending;
    }
    throw std::logic_error("unknown step");
}

std::string to_string(Stage s) {
    switch (s) {
        case Stage::Goal: return "goal";
        case Stage::Working: return "working";
        case Stage::Ending: return "ending";
    }
    throw std::logic_error("unknown stage");
}

std::string to_string(Step s) {
    switch (s) {
        case Step::BuildingRapport: return "building_rapport";
        case Step::ClarifyingGoal: return "clarifying_goal";
        case Step::ExploringResources: return "exploring_resources";
        case Step::ImplementingActions: return "implementing_actions";
        case Step::Closing: return "closing";
    }
    throw std::logic_error("unknown step");
}

std::string to_string(NextStepKind k) {
    switch (k) {
        case NextStepKind::Remain: return "remain";
        case NextStepKind::StepShiftWithinStage: return "step shift within stage";
        case NextStepKind::StageTransition: return "stage transition";
    }
    throw std::logic_error("unknown next step kind");
}

std::optional<Stage> stage_from_string(const std::string& s) {
    if (s == "goal") return Stage::Goal;
    if (s == "working") return Stage::Working;
    if (s == "ending") return Stage::Ending;
    return std::nullopt;
}

std::optional<NextStepKind> next_step_from_string(const std::string& s) {
    if (s == "remain") return NextStepKind::Remain;
    if (s == "step shift within stage") return NextStepKind::StepShiftWithinStage;
    if (s == "stage transition") return NextStepKind::StageTransition;
    return std::nullopt;
}

namespace {

bool nonblank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") != std::string::npos;
}

}  // namespace

bool BigFiveProfile::complete() const {
    return nonblank(openness) && nonblank(conscientiousness) && nonblank(extraversion) &&
           nonblank(agreeableness) && nonblank(neuroticism);
}

std::vector<std::string> CounselingGoal::failed_flags() const {
    std::vector<std::string> out;
    if (!unique) out.push_back("unique");
    if (!specific) out.push_back("specific");
    if (!feasible) out.push_back("feasible");
    if (!positive) out.push_back("positive");
    if (!measurable) out.push_back("measurable");
    if (!psychological) out.push_back("psychological");
    return out;
}

std::vector<Stage> StagedDialogue::label_sequence() const {
    std::vector<Stage> seq;
    seq.reserve(turns.size() + 1);
    for (const auto& t : turns) seq.push_back(t.stage_label);
    if (nonblank(closing)) seq.push_back(Stage::Ending);
    return seq;
}

void to_json(json& j, const BigFiveProfile& v) {
    j = json{{"openness", v.openness},
             {"conscientiousness", v.conscientiousness},
             {"extraversion", v.extraversion},
             {"agreeableness", v.agreeableness},
             {"neuroticism", v.neuroticism}};
}

void from_json(const json& j, BigFiveProfile& v) {
    j.at("openness").get_to(v.openness);
    j.at("conscientiousness").get_to(v.conscientiousness);
    j.at("extraversion").get_to(v.extraversion);
    j.at("agreeableness").get_to(v.agreeableness);
    j.at("neuroticism").get_to(v.neuroticism);
}

void to_json(json& j, const ConsultationCase& v) {
    j = json{{"case_id", v.case_id},
             {"self_report", v.self_report},
             {"traits", v.traits},
             {"source", v.source}};
}

void from_json(const json& j, ConsultationCase& v) {
    j.at("case_id").get_to(v.case_id);
    j.at("self_report").get_to(v.self_report);
    if (j.contains("traits")) j.at("traits").get_to(v.traits);
    if (j.contains("source")) j.at("source").get_to(v.source);
}

void to_json(json& j, const CounselingGoal& v) {
    j = json{{"text", v.text},
             {"criteria_flags",
              {{"unique", v.unique},
               {"specific", v.specific},
               {"feasible", v.feasible},
               {"positive", v.positive},
               {"measurable", v.measurable},
               {"psychological", v.psychological}}}};
}

void from_json(const json& j, CounselingGoal& v) {
    j.at("text").get_to(v.text);
    if (j.contains("criteria_flags")) {
        const auto& f = j.at("criteria_flags");
        f.at("unique").get_to(v.unique);
        f.at("specific").get_to(v.specific);
        f.at("feasible").get_to(v.feasible);
        f.at("positive").get_to(v.positive);
        f.at("measurable").get_to(v.measurable);
        f.at("psychological").get_to(v.psychological);
    }
}

void to_json(json& j, const Resource& v) {
    j = json{{"label", v.label},
             {"kind", v.kind == ResourceKind::Internal ? "internal" : "external"},
             {"valence", v.valence == ResourceValence::Positive ? "positive" : "negative"},
             {"description", v.description},
             {"relevance", v.relevance},
             {"change", v.change}};
    if (v.next_label)
        j["next_label"] = *v.next_label;
    else
        j["next_label"] = nullptr;
}

void from_json(const json& j, Resource& v) {
    j.at("label").get_to(v.label);
    v.kind = j.at("kind").get<std::string>() == "external" ? ResourceKind::External
                                                           : ResourceKind::Internal;
    v.valence = j.at("valence").get<std::string>() == "positive" ? ResourceValence::Positive
                                                                 : ResourceValence::Negative;
    j.at("description").get_to(v.description);
    if (j.contains("relevance") && !j.at("relevance").is_null())
        j.at("relevance").get_to(v.relevance);
    if (j.contains("change") && !j.at("change").is_null()) j.at("change").get_to(v.change);
    if (j.contains("next_label") && !j.at("next_label").is_null())
        v.next_label = j.at("next_label").get<int>();
    else
        v.next_label.reset();
}

void to_json(json& j, const ResourcePlan& v) {
    j = json{{"resources", v.resources}, {"solution", v.solution.text}};
}

void from_json(const json& j, ResourcePlan& v) {
    j.at("resources").get_to(v.resources);
    j.at("solution").get_to(v.solution.text);
}

void to_json(json& j, const DialogueTurn& v) {
    j = json{{"index", v.index},
             {"client_utterance", v.client_utterance},
             {"counselor_utterance", v.counselor_utterance},
             {"stage_label", to_string(v.stage_label)}};
}

void from_json(const json& j, DialogueTurn& v) {
    j.at("index").get_to(v.index);
    j.at("client_utterance").get_to(v.client_utterance);
    j.at("counselor_utterance").get_to(v.counselor_utterance);
    auto s = stage_from_string(j.at("stage_label").get<std::string>());
    if (!s) throw std::invalid_argument("bad stage_label");
    v.stage_label = *s;
}

void to_json(json& j, const StagedDialogue& v) {
    j = json{{"case_id", v.case_id},
             {"goal", v.goal},
             {"plan", v.plan},
             {"turns", v.turns},
             {"closing", v.closing},
             {"flagged_nonmonotone", v.flagged_nonmonotone}};
}

void from_json(const json& j, StagedDialogue& v) {
    j.at("case_id").get_to(v.case_id);
    j.at("goal").get_to(v.goal);
    j.at("plan").get_to(v.plan);
    j.at("turns").get_to(v.turns);
    j.at("closing").get_to(v.closing);
    if (j.contains("flagged_nonmonotone")) j.at("flagged_nonmonotone").get_to(v.flagged_nonmonotone);
}

void to_json(json& j, const MemorySummary& v) {
    j = json{{"personal_info", v.personal_info},
             {"internal_resources", v.internal_resources},
             {"external_resources", v.external_resources},
             {"counseling_goal", v.counseling_goal}};
}

void from_json(const json& j, MemorySummary& v) {
    j.at("personal_info").get_to(v.personal_info);
    j.at("internal_resources").get_to(v.internal_resources);
    j.at("external_resources").get_to(v.external_resources);
    j.at("counseling_goal").get_to(v.counseling_goal);
}

void to_json(json& j, const GlobalPlan& v) {
    j = json{{"analysis", v.analysis},
             {"previous_stage", to_string(v.previous_stage)},
             {"next_step", to_string(v.next_step)},
             {"expected_stage", to_string(v.expected_stage)}};
}

void from_json(const json& j, GlobalPlan& v) {
    j.at("analysis").get_to(v.analysis);
    auto prev = stage_from_string(j.at("previous_stage").get<std::string>());
    auto step = next_step_from_string(j.at("next_step").get<std::string>());
    auto exp = stage_from_string(j.at("expected_stage").get<std::string>());
    if (!prev || !step || !exp) throw std::invalid_argument("bad plan enumerant");
    v.previous_stage = *prev;
    v.next_step = *step;
    v.expected_stage = *exp;
}

void to_json(json& j, const StrategyDecision& v) {
    j = json{{"analysis", v.analysis}, {"response", v.response}};
}

void from_json(const json& j, StrategyDecision& v) {
    j.at("analysis").get_to(v.analysis);
    j.at("response").get_to(v.response);
}

void to_json(json& j, const MdpAnnotation& v) {
    j = json{{"turn_index", v.turn_index},
             {"memory", v.memory},
             {"plan", v.plan},
             {"strategy", v.strategy},
             {"fused_cot", v.fused_cot},
             {"attempts", v.attempts}};
}

void from_json(const json& j, MdpAnnotation& v) {
    j.at("turn_index").get_to(v.turn_index);
    j.at("memory").get_to(v.memory);
    j.at("plan").get_to(v.plan);
    j.at("strategy").get_to(v.strategy);
    j.at("fused_cot").get_to(v.fused_cot);
    if (j.contains("attempts")) j.at("attempts").get_to(v.attempts);
}

void to_json(json& j, const SftSample& v) {
    j = json{{"system", v.system}, {"history", v.history}, {"target", v.target}};
}

void from_json(const json& j, SftSample& v) {
    j.at("system").get_to(v.system);
    j.at("history").get_to(v.history);
    j.at("target").get_to(v.target);
}

}  // namespace catchforge::core
