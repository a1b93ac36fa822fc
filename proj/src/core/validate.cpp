#include "catchforge/core/validate.hpp"

#include <algorithm>

namespace catchforge::core {

ValidityVerdict validate_transition(Stage previous, NextStepKind step, Stage expected) {
    switch (step) {
        case NextStepKind::Remain:
            if (expected != previous) return ValidityVerdict::reject("remain-stage-changed");
            return ValidityVerdict::accept();
        case NextStepKind::StepShiftWithinStage:
            if (previous == Stage::Ending)
                return ValidityVerdict::reject("step-shift-in-ending");
            if (expected != previous) return ValidityVerdict::reject("step-shift-stage-changed");
            return ValidityVerdict::accept();
        case NextStepKind::StageTransition:
            if ((previous == Stage::Goal && expected == Stage::Working) ||
                (previous == Stage::Working && expected == Stage::Ending))
                return ValidityVerdict::accept();
            return ValidityVerdict::reject("illegal-transition");
    }
    return ValidityVerdict::reject("illegal-transition");
}

ValidityVerdict validate_resource_plan(const ResourcePlan& plan) {
    const auto& rs = plan.resources;
    if (rs.empty()) return ValidityVerdict::reject("empty-chain");
    const int n = static_cast<int>(rs.size());
    for (int i = 0; i < n; ++i) {
        if (rs[static_cast<size_t>(i)].label != i + 1)
            return ValidityVerdict::reject("label-gap");
    }
    for (int i = 0; i < n; ++i) {
        const auto& r = rs[static_cast<size_t>(i)];
        const bool last = (i == n - 1);
        if (last) {
            if (r.next_label) return ValidityVerdict::reject("terminal-has-next");
        } else {
            if (!r.next_label || *r.next_label != r.label + 1)
                return ValidityVerdict::reject("broken-next-label");
        }
    }
    int positives = 0;
    for (const auto& r : rs)
        if (r.valence == ResourceValence::Positive) ++positives;
    if (positives != 1) return ValidityVerdict::reject("positive-count");
    if (rs.back().valence != ResourceValence::Positive)
        return ValidityVerdict::reject("positive-not-terminal");
    if (plan.solution.text.find_first_not_of(" \t\r\n") == std::string::npos)
        return ValidityVerdict::reject("empty-solution");
    return ValidityVerdict::accept();
}

namespace {

bool blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

std::vector<Violation> validate_dialogue(const StagedDialogue& dialogue) {
    std::vector<Violation> out;
    const auto& turns = dialogue.turns;
    if (turns.empty()) {
        out.push_back({"no-turns", 0});
        return out;
    }
    int prev_index = 0;
    Stage prev_stage = Stage::Goal;
    bool seen[3] = {false, false, false};
    for (size_t i = 0; i < turns.size(); ++i) {
        const auto& t = turns[i];
        if (t.index <= prev_index) out.push_back({"index-order", t.index});
        prev_index = t.index;
        if (static_cast<int>(t.stage_label) < static_cast<int>(prev_stage))
            out.push_back({"stage-regression", t.index});
        prev_stage = t.stage_label;
        seen[static_cast<int>(t.stage_label)] = true;
        if (blank(t.client_utterance)) out.push_back({"empty-utterance", t.index});
        // The final turn's counselor slot is answered by the closing message.
        const bool final_turn = (i + 1 == turns.size());
        if (blank(t.counselor_utterance) && !(final_turn && !blank(dialogue.closing)))
            out.push_back({"empty-utterance", t.index});
    }
    if (!blank(dialogue.closing)) seen[static_cast<int>(Stage::Ending)] = true;
    if (!seen[static_cast<int>(Stage::Goal)]) out.push_back({"missing-stage-goal", 0});
    if (!seen[static_cast<int>(Stage::Working)]) out.push_back({"missing-stage-working", 0});
    if (!seen[static_cast<int>(Stage::Ending)]) out.push_back({"missing-stage-ending", 0});
    return out;
}

}  // namespace catchforge::core
