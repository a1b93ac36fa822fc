#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "catchforge/mdp/annotate.hpp"
#include "support/testkit.hpp"

using namespace catchforge;
using namespace catchforge::mdp;
using testkit::marker;

namespace {

const prompts::PromptRegistry& reg() {
    static auto r = prompts::PromptRegistry::builtin();
    return r;
}

Annotator make_annotator(std::vector<llm::MockRule> rules, AuditSink audit = nullptr,
                         bool semantic = true) {
    AnnotateConfig cfg;
    cfg.semantic_check = semantic;
    return Annotator(testkit::gateway(std::move(rules)), &reg(), cfg, std::move(audit));
}

}  // namespace

TEST_CASE("deterministic consistency rules") {
    auto d = testkit::make_dialogue(2, 3);  // turns 1-2 goal, 3-5 working, closing
    auto annot = make_annotator({});

    SUBCASE("memory cannot claim the goal before it is settled") {
        core::MemorySummary m;
        m.counseling_goal = testkit::kGoalText;
        AnnotationContext early{&d, 1};
        CHECK(annot.check_memory(early, m).rule == "goal-too-early");
        AnnotationContext last_goal{&d, 2};
        CHECK(annot.check_memory(last_goal, m));
        m.counseling_goal = "None";
        CHECK(annot.check_memory(early, m));
    }
    SUBCASE("plan checks previous stage, transition legality, and label") {
        AnnotationContext ctx{&d, 3};  // goal -> working boundary
        core::GlobalPlan p;
        p.analysis = "time to move into the work";
        p.previous_stage = core::Stage::Goal;
        p.next_step = core::NextStepKind::StageTransition;
        p.expected_stage = core::Stage::Working;
        CHECK(annot.check_plan(ctx, p));

        p.previous_stage = core::Stage::Working;
        CHECK(annot.check_plan(ctx, p).rule == "previous-stage-mismatch");

        p.previous_stage = core::Stage::Goal;
        p.next_step = core::NextStepKind::Remain;
        CHECK(annot.check_plan(ctx, p).rule == "illegal-transition");

        AnnotationContext mid{&d, 4};  // working -> working
        p.previous_stage = core::Stage::Working;
        p.next_step = core::NextStepKind::StageTransition;
        p.expected_stage = core::Stage::Ending;
        CHECK(annot.check_plan(mid, p).rule == "stage-label-mismatch");
    }
    SUBCASE("strategy must restate the reply verbatim up to normalization") {
        AnnotationContext ctx{&d, 1};
        core::StrategyDecision s;
        s.analysis = "mirror the worry without adding advice";
        s.response = d.turns[0].counselor_utterance;
        CHECK(annot.check_strategy(ctx, s));

        // Curly quotes fold to ASCII and whitespace collapses before comparing.
        auto fancy_dialogue = d;
        fancy_dialogue.turns[0].counselor_utterance =
            "\"Quoted\"  " + s.response.substr(0);
        AnnotationContext fctx{&fancy_dialogue, 1};
        core::StrategyDecision fancy = s;
        fancy.response = "“Quoted” " + s.response;
        CHECK(annot.check_strategy(fctx, fancy));

        s.response = "a different sentence entirely";
        CHECK(annot.check_strategy(ctx, s).rule == "response-mismatch");

        s.response = d.turns[0].counselor_utterance;
        s.analysis = "I will say: " + s.response;
        CHECK(annot.check_strategy(ctx, s).rule == "analysis-contains-response");
    }
}

TEST_CASE("annotating a full dialogue covers every counselor reply once") {
    auto d = testkit::make_dialogue(2, 3);
    auto annot = make_annotator(testkit::mdp_rules(d));
    auto annotations = annot.annotate_dialogue(d);

    auto expected = testkit::annotated_indexes(d);
    REQUIRE(annotations.size() == expected.size());
    for (size_t i = 0; i < annotations.size(); ++i) {
        CHECK(annotations[i].turn_index == expected[i]);
        CHECK(annotations[i].strategy.response ==
              (expected[i] <= static_cast<int>(d.turns.size())
                   ? d.turns[static_cast<size_t>(expected[i] - 1)].counselor_utterance
                   : d.closing));
        for (const char* agent : {"memory", "plan", "strategy", "fusion"})
            CHECK(annotations[i].attempts.at(agent) == 1);
        CHECK_FALSE(annotations[i].fused_cot.empty());
    }
    // The final working turn is client-only: no annotation at that index.
    for (const auto& a : annotations) CHECK(a.turn_index != 5);
}

TEST_CASE("invalid dialogues are rejected before any model call") {
    auto d = testkit::make_dialogue();
    d.turns[0].client_utterance.clear();
    auto annot = make_annotator({});
    CHECK_THROWS_AS(annot.annotate_dialogue(d), llm::PreconditionViolation);
}

TEST_CASE("rejected artifacts regenerate at escalated temperature") {
    auto d = testkit::make_dialogue(2, 3);
    AnnotationContext ctx{&d, 1};

    // Plan agent: wrong stage at 0.3 and 0.5, correct at 0.7.
    nlohmann::json bad{{"analysis", "stay put"},
                       {"previous_stage", "working"},
                       {"next_step", "remain"},
                       {"expected_stage", "working"}};
    nlohmann::json good{{"analysis", "open by mapping the concern"},
                        {"previous_stage", "goal"},
                        {"next_step", "remain"},
                        {"expected_stage", "goal"}};
    std::vector<llm::MockRule> rules = {
        {"plan_agent", std::nullopt, 0.3, bad.dump()},
        {"plan_agent", std::nullopt, 0.5, bad.dump()},
        {"plan_agent", std::nullopt, 0.7, good.dump()},
        {"semantic_check", std::nullopt, std::nullopt, R"({"check_result": true})"},
    };
    std::vector<AttemptRecord> trail;
    auto annot = make_annotator(rules, [&](const AttemptRecord& r) { trail.push_back(r); });

    int attempts = 0;
    auto plan = annot.plan_globally(ctx, &attempts);
    CHECK(attempts == 3);
    CHECK(plan.expected_stage == core::Stage::Goal);

    REQUIRE(trail.size() == 3);
    CHECK(trail[0].temperature == doctest::Approx(0.3));
    CHECK(trail[1].temperature == doctest::Approx(0.5));
    CHECK(trail[2].temperature == doctest::Approx(0.7));
    CHECK(trail[0].rule == "previous-stage-mismatch");
    CHECK(trail[1].rule == "previous-stage-mismatch");
    CHECK(trail[2].accepted);
    for (const auto& r : trail) {
        CHECK(r.agent == "plan");
        CHECK(r.turn_index == 1);
    }
}

TEST_CASE("exhausting the budget names the agent and turn") {
    auto d = testkit::make_dialogue(2, 3);
    AnnotationContext ctx{&d, 3};
    auto annot = make_annotator({{"memory_agent", std::nullopt, std::nullopt, "not json"}});
    try {
        annot.capture_memory(ctx);
        FAIL("expected AnnotationExhausted");
    } catch (const AnnotationExhausted& e) {
        CHECK(e.agent == "memory");
        CHECK(e.turn_index == 3);
    }
}

TEST_CASE("semantic judge rejections feed back into regeneration") {
    auto d = testkit::make_dialogue(2, 3);
    AnnotationContext ctx{&d, 1};

    nlohmann::json mem_a{{"Personal Information", "artifact-A"},
                         {"Internal Resources", "None"},
                         {"External Resources", "None"},
                         {"Counseling Goal", "None"}};
    nlohmann::json mem_b = mem_a;
    mem_b["Personal Information"] = "artifact-B";
    // The judge sees the artifact text inside its prompt: reject A, accept B.
    std::vector<llm::MockRule> rules = {
        {"memory_agent", std::nullopt, 0.3, mem_a.dump()},
        {"memory_agent", std::nullopt, std::nullopt, mem_b.dump()},
        {"semantic_check", "artifact-A", std::nullopt,
         R"({"check_result": false, "feedback": "too vague"})"},
        {"semantic_check", std::nullopt, std::nullopt, R"({"check_result": true})"},
    };
    std::vector<AttemptRecord> trail;
    auto annot = make_annotator(rules, [&](const AttemptRecord& r) { trail.push_back(r); });
    int attempts = 0;
    auto m = annot.capture_memory(ctx, &attempts);
    CHECK(attempts == 2);
    CHECK(m.personal_info == "artifact-B");
    REQUIRE(trail.size() == 2);
    CHECK(trail[0].rule == "semantic:too vague");
    CHECK(trail[1].accepted);
}

TEST_CASE("fused reasoning threads forward but never quotes the reply") {
    auto d = testkit::make_dialogue(2, 3);
    AnnotationContext ctx{&d, 1};
    core::MemorySummary mem;
    core::GlobalPlan plan;
    plan.analysis = "keep mapping";
    core::StrategyDecision strat;
    strat.analysis = "reflect";
    strat.response = d.turns[0].counselor_utterance;

    std::vector<llm::MockRule> rules = {
        {"fusion_agent", std::nullopt, 0.3,
         "I will reply: " + d.turns[0].counselor_utterance},
        {"fusion_agent", std::nullopt, std::nullopt, "Hold the thread and mirror."},
        {"semantic_check", std::nullopt, std::nullopt, R"({"check_result": true})"},
    };
    std::vector<AttemptRecord> trail;
    auto annot = make_annotator(rules, [&](const AttemptRecord& r) { trail.push_back(r); });
    int attempts = 0;
    auto fused = annot.fuse(ctx, mem, plan, strat, &attempts);
    CHECK(attempts == 2);
    CHECK(fused == "Hold the thread and mirror.");
    CHECK(trail[0].rule == "analysis-contains-response");
}
