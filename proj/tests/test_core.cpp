#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <tuple>

#include "catchforge/core/types.hpp"
#include "catchforge/core/validate.hpp"
#include "support/testkit.hpp"

using namespace catchforge::core;

namespace {

using Triple = std::tuple<Stage, NextStepKind, Stage>;

// Independent oracle: the full set of legal (previous, step, expected)
// combinations, enumerated by hand from the stage machine definition.
const std::set<Triple>& legal_triples() {
    static const std::set<Triple> s = {
        {Stage::Goal, NextStepKind::Remain, Stage::Goal},
        {Stage::Working, NextStepKind::Remain, Stage::Working},
        {Stage::Ending, NextStepKind::Remain, Stage::Ending},
        {Stage::Goal, NextStepKind::StepShiftWithinStage, Stage::Goal},
        {Stage::Working, NextStepKind::StepShiftWithinStage, Stage::Working},
        {Stage::Goal, NextStepKind::StageTransition, Stage::Working},
        {Stage::Working, NextStepKind::StageTransition, Stage::Ending},
    };
    return s;
}

ResourcePlan valid_plan() {
    ResourcePlan p;
    p.resources = {
        {1, ResourceKind::Internal, ResourceValence::Negative, "a", "r", 2, "c"},
        {2, ResourceKind::Internal, ResourceValence::Negative, "b", "r", 3, "c"},
        {3, ResourceKind::External, ResourceValence::Positive, "d", "r", std::nullopt, "c"},
    };
    p.solution.text = "weekly walks with a friend";
    return p;
}

bool has_rule(const std::vector<Violation>& vs, const std::string& rule) {
    for (const auto& v : vs)
        if (v.rule == rule) return true;
    return false;
}

}  // namespace

TEST_CASE("transition legality matches the hand-enumerated oracle on all 27 triples") {
    const Stage stages[] = {Stage::Goal, Stage::Working, Stage::Ending};
    const NextStepKind steps[] = {NextStepKind::Remain, NextStepKind::StepShiftWithinStage,
                                  NextStepKind::StageTransition};
    int legal = 0;
    for (auto prev : stages)
        for (auto step : steps)
            for (auto exp : stages) {
                const bool expected = legal_triples().count({prev, step, exp}) > 0;
                auto v = validate_transition(prev, step, exp);
                CAPTURE(to_string(prev));
                CAPTURE(to_string(step));
                CAPTURE(to_string(exp));
                CHECK(v.ok == expected);
                if (!v.ok) CHECK_FALSE(v.rule.empty());
                if (v.ok) ++legal;
            }
    CHECK(legal == 7);
}

TEST_CASE("step to stage mapping") {
    CHECK(stage_of_step(Step::BuildingRapport) == Stage::Goal);
    CHECK(stage_of_step(Step::ClarifyingGoal) == Stage::Goal);
    CHECK(stage_of_step(Step::ExploringResources) == Stage::Working);
    CHECK(stage_of_step(Step::ImplementingActions) == Stage::Working);
    CHECK(stage_of_step(Step::Closing) == Stage::Ending);
}

TEST_CASE("enum string round trips") {
    for (auto s : {Stage::Goal, Stage::Working, Stage::Ending})
        CHECK(stage_from_string(to_string(s)) == s);
    for (auto k : {NextStepKind::Remain, NextStepKind::StepShiftWithinStage,
                   NextStepKind::StageTransition})
        CHECK(next_step_from_string(to_string(k)) == k);
    CHECK_FALSE(stage_from_string("closing").has_value());
    CHECK_FALSE(next_step_from_string("jump").has_value());
}

TEST_CASE("resource plan validation") {
    CHECK(validate_resource_plan(valid_plan()).ok);

    SUBCASE("empty chain") {
        ResourcePlan p;
        p.solution.text = "x";
        CHECK(validate_resource_plan(p).rule == "empty-chain");
    }
    SUBCASE("label gap") {
        auto p = valid_plan();
        p.resources[1].label = 5;
        CHECK(validate_resource_plan(p).rule == "label-gap");
    }
    SUBCASE("terminal has next") {
        auto p = valid_plan();
        p.resources.back().next_label = 4;
        CHECK(validate_resource_plan(p).rule == "terminal-has-next");
    }
    SUBCASE("broken next label") {
        auto p = valid_plan();
        p.resources[0].next_label = 3;
        CHECK(validate_resource_plan(p).rule == "broken-next-label");
    }
    SUBCASE("no positive") {
        auto p = valid_plan();
        p.resources.back().valence = ResourceValence::Negative;
        CHECK(validate_resource_plan(p).rule == "positive-count");
    }
    SUBCASE("two positives") {
        auto p = valid_plan();
        p.resources[0].valence = ResourceValence::Positive;
        CHECK(validate_resource_plan(p).rule == "positive-count");
    }
    SUBCASE("positive mid-chain") {
        auto p = valid_plan();
        p.resources[1].valence = ResourceValence::Positive;
        p.resources[2].valence = ResourceValence::Negative;
        CHECK(validate_resource_plan(p).rule == "positive-not-terminal");
    }
    SUBCASE("blank solution") {
        auto p = valid_plan();
        p.solution.text = "  \n ";
        CHECK(validate_resource_plan(p).rule == "empty-solution");
    }
}

TEST_CASE("dialogue validation") {
    auto d = testkit::make_dialogue(2, 3);
    CHECK(validate_dialogue(d).empty());

    SUBCASE("no turns") {
        StagedDialogue e;
        CHECK(has_rule(validate_dialogue(e), "no-turns"));
    }
    SUBCASE("index disorder") {
        auto bad = d;
        std::swap(bad.turns[1], bad.turns[2]);
        CHECK(has_rule(validate_dialogue(bad), "index-order"));
    }
    SUBCASE("stage regression") {
        auto bad = d;
        bad.turns.back().stage_label = Stage::Goal;
        CHECK(has_rule(validate_dialogue(bad), "stage-regression"));
    }
    SUBCASE("blank client utterance") {
        auto bad = d;
        bad.turns[1].client_utterance = "   ";
        CHECK(has_rule(validate_dialogue(bad), "empty-utterance"));
    }
    SUBCASE("blank counselor utterance mid-dialogue") {
        auto bad = d;
        bad.turns[1].counselor_utterance.clear();
        CHECK(has_rule(validate_dialogue(bad), "empty-utterance"));
    }
    SUBCASE("final turn may be client-only only when a closing exists") {
        CHECK(d.turns.back().counselor_utterance.empty());
        CHECK(validate_dialogue(d).empty());
        auto bad = d;
        bad.closing.clear();
        CHECK(has_rule(validate_dialogue(bad), "empty-utterance"));
    }
    SUBCASE("missing stages") {
        auto bad = d;
        for (auto& t : bad.turns) t.stage_label = Stage::Goal;
        bad.closing.clear();
        bad.turns.back().counselor_utterance = "filled in";
        auto vs = validate_dialogue(bad);
        CHECK(has_rule(vs, "missing-stage-working"));
        CHECK(has_rule(vs, "missing-stage-ending"));
    }
}

TEST_CASE("label sequence is goal^a working^b ending") {
    auto d = testkit::make_dialogue(6, 10);
    auto seq = d.label_sequence();
    REQUIRE(seq.size() == 17);
    for (int i = 0; i < 6; ++i) CHECK(seq[static_cast<size_t>(i)] == Stage::Goal);
    for (int i = 6; i < 16; ++i) CHECK(seq[static_cast<size_t>(i)] == Stage::Working);
    CHECK(seq.back() == Stage::Ending);

    auto no_closing = d;
    no_closing.closing.clear();
    CHECK(no_closing.label_sequence().size() == 16);
}

TEST_CASE("domain types survive a JSON round trip") {
    auto d = testkit::make_dialogue(3, 4);
    json j = d;
    auto back = j.get<StagedDialogue>();
    CHECK(json(back) == j);
    CHECK(back.turns.size() == d.turns.size());
    CHECK(back.plan.resources.size() == 2);
    CHECK_FALSE(back.plan.resources[1].next_label.has_value());

    MdpAnnotation a;
    a.turn_index = 3;
    a.memory.personal_info = "p";
    a.plan.analysis = "x";
    a.plan.next_step = NextStepKind::StageTransition;
    a.plan.previous_stage = Stage::Goal;
    a.plan.expected_stage = Stage::Working;
    a.strategy = {"an", "resp"};
    a.fused_cot = "fused";
    a.attempts = {{"memory", 1}, {"plan", 3}};
    json aj = a;
    CHECK(json(aj.get<MdpAnnotation>()) == aj);
}
