#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "catchforge/core/validate.hpp"
#include "catchforge/llm/mock.hpp"
#include "catchforge/pds/synth.hpp"
#include "support/testkit.hpp"

using namespace catchforge;
using namespace catchforge::pds;
using testkit::gateway;

namespace {

core::ConsultationCase e2e_case() {
    core::ConsultationCase c;
    c.case_id = "case-001";
    c.self_report =
        "I am 29 and work at a print shop. For months I have been staying up far too "
        "late, and the mornings feel heavy. I snap at people I like and then regret it. "
        "I want the evenings to stop swallowing me.";
    return c;
}

Synthesizer asset_synth(std::shared_ptr<llm::Gateway>* out_gw = nullptr) {
    static auto registry = prompts::PromptRegistry::builtin();
    auto gw = std::make_shared<llm::Gateway>(std::make_shared<llm::MockBackend>(
        llm::MockBackend::from_file(std::string(CF_ASSET_DIR) +
                                    "/mock/pipeline_scenario.jsonl")));
    if (out_gw) *out_gw = gw;
    return Synthesizer(gw, &registry, SynthConfig{});
}

const prompts::PromptRegistry& reg() {
    static auto r = prompts::PromptRegistry::builtin();
    return r;
}

}  // namespace

TEST_CASE("turn block parsing") {
    SUBCASE("plain blocks") {
        auto blocks = parse_turn_blocks(
            "Turn 1:\nClient: hello\nCounselor: welcome\nTurn 2:\nClient: more");
        REQUIRE(blocks.size() == 2);
        CHECK(blocks[0].index == 1);
        CHECK(blocks[0].client == "hello");
        CHECK(blocks[0].counselor == "welcome");
        CHECK(blocks[1].counselor.empty());
    }
    SUBCASE("leading counselor bridge") {
        std::string bridge;
        auto blocks =
            parse_turn_blocks("Counselor: let us continue\nTurn 3:\nClient: ok", &bridge);
        CHECK(bridge == "let us continue");
        REQUIRE(blocks.size() == 1);
        CHECK(blocks[0].index == 3);
    }
    SUBCASE("multi-line utterances accumulate") {
        auto blocks = parse_turn_blocks(
            "Turn 1:\nClient: first line\nsecond line\nCounselor: reply\ncontinued");
        CHECK(blocks[0].client == "first line second line");
        CHECK(blocks[0].counselor == "reply continued");
    }
    SUBCASE("case-insensitive markers") {
        auto blocks = parse_turn_blocks("TURN 2:\nCLIENT: a\ncounselor: b");
        REQUIRE(blocks.size() == 1);
        CHECK(blocks[0].client == "a");
        CHECK(blocks[0].counselor == "b");
    }
    SUBCASE("client line before any turn header") {
        CHECK_THROWS_AS(parse_turn_blocks("Client: orphan"), FormatParseError);
    }
}

TEST_CASE("resource order checking") {
    auto d = testkit::make_dialogue(2, 4);
    std::vector<core::DialogueTurn> working(d.turns.begin() + 2, d.turns.end());

    SUBCASE("keywords extracted from descriptions") {
        auto kw = description_keywords("compulsive midnight journaling");
        CHECK(std::find(kw.begin(), kw.end(), "journaling") != kw.end());
        CHECK(std::find(kw.begin(), kw.end(), "midnight") != kw.end());
    }
    SUBCASE("in-order mentions pass") {
        working[0].counselor_utterance += " that journaling habit";
        working[2].client_utterance += " badminton tomorrow";
        CHECK(resources_in_order(d.plan, working));
    }
    SUBCASE("missing resource fails") {
        working[0].counselor_utterance += " that journaling habit";
        CHECK_FALSE(resources_in_order(d.plan, working));
    }
    SUBCASE("out-of-order mentions fail") {
        working[0].client_utterance += " badminton with my cousin";
        working[2].counselor_utterance += " the journaling";
        CHECK_FALSE(resources_in_order(d.plan, working));
    }
}

TEST_CASE("full stage-wise synthesis against the bundled scenario") {
    auto synth = asset_synth();
    auto d = synth.synthesize_dialogue(e2e_case());

    CHECK(d.case_id == "case-001");
    CHECK(core::validate_dialogue(d).empty());
    REQUIRE(d.turns.size() == 16);
    auto seq = d.label_sequence();
    REQUIRE(seq.size() == 17);
    for (int i = 0; i < 6; ++i) CHECK(seq[static_cast<size_t>(i)] == core::Stage::Goal);
    for (int i = 6; i < 16; ++i) CHECK(seq[static_cast<size_t>(i)] == core::Stage::Working);
    CHECK(seq.back() == core::Stage::Ending);

    // The bridge fills the last goal turn; the final working turn is
    // client-only and answered by the closing.
    CHECK_FALSE(d.turns[5].counselor_utterance.empty());
    CHECK(d.turns[15].counselor_utterance.empty());
    CHECK_FALSE(d.closing.empty());
    CHECK(d.plan.resources.size() == 3);
    CHECK(d.plan.resources.back().valence == core::ResourceValence::Positive);
    CHECK(d.goal.all_criteria_met());

    SUBCASE("deterministic: same case gives byte-identical output") {
        auto synth2 = asset_synth();
        auto d2 = synth2.synthesize_dialogue(e2e_case());
        CHECK(nlohmann::json(d) == nlohmann::json(d2));
    }
}

TEST_CASE("goal acquisition surfaces failed criteria flags") {
    std::vector<llm::MockRule> rules = {
        {"goal_gen", std::nullopt, std::nullopt, "Goal: sleep better"},
        {"goal_check", std::nullopt, std::nullopt,
         R"({"unique":true,"specific":false,"feasible":true,"positive":true,
             "measurable":false,"psychological":true})"},
    };
    Synthesizer synth(gateway(rules), &reg(), SynthConfig{});
    try {
        synth.acquire_goal(e2e_case());
        FAIL("expected GoalCriteriaFailed");
    } catch (const GoalCriteriaFailed& e) {
        CHECK(e.failed_flags == std::vector<std::string>{"specific", "measurable"});
    }
}

TEST_CASE("resource acquisition rejects malformed chains") {
    // Two positive resources: structurally invalid.
    nlohmann::json bad{{"resource",
                        {{{"label", 1}, {"type", "internal"}, {"valence", "positive"},
                          {"description", "a"}, {"relevance", "r"}, {"next_label", 2},
                          {"change", "c"}},
                         {{"label", 2}, {"type", "external"}, {"valence", "positive"},
                          {"description", "b"}, {"relevance", "r"},
                          {"next_label", nullptr}, {"change", "c"}}}},
                       {"solution", "walks"}};
    std::vector<llm::MockRule> rules = {
        {"resource_gen", std::nullopt, std::nullopt, bad.dump()}};
    Synthesizer synth(gateway(rules), &reg(), SynthConfig{});
    core::CounselingGoal goal;
    goal.text = "g";
    CHECK_THROWS_AS(synth.acquire_resources(e2e_case(), goal, 1), PlanValidationFailed);
}

TEST_CASE("stage generation regenerates at escalated temperature until valid") {
    // Temperature-keyed rules: the first two attempts (0.3, 0.5) return a
    // wrong turn count, the third (0.7) is correct.
    const std::string good =
        "Turn 1:\nClient: first concern\nCounselor: welcome\nTurn 2:\nClient: second";
    const std::string bad = "Turn 1:\nClient: only one turn";
    std::vector<llm::MockRule> rules = {
        {"stage_goal_dialogue", std::nullopt, 0.3, bad},
        {"stage_goal_dialogue", std::nullopt, 0.5, bad},
        {"stage_goal_dialogue", std::nullopt, 0.7, good},
    };
    Synthesizer synth(gateway(rules), &reg(), SynthConfig{});
    core::CounselingGoal goal;
    goal.text = "a calmer evening routine";
    auto turns = synth.gen_goal_stage(e2e_case(), goal, 2);
    REQUIRE(turns.size() == 2);
    CHECK(turns[1].counselor_utterance.empty());

    SUBCASE("exhaustion rethrows the last failure") {
        std::vector<llm::MockRule> always_bad = {
            {"stage_goal_dialogue", std::nullopt, std::nullopt, bad}};
        Synthesizer s2(gateway(always_bad), &reg(), SynthConfig{});
        CHECK_THROWS_AS(s2.gen_goal_stage(e2e_case(), goal, 2), TurnCountMismatch);
    }
}

TEST_CASE("leak guard rejects counselor turns quoting the background") {
    auto c = e2e_case();
    // Counselor reply copies a 20-word run straight from the self report.
    std::string leak = c.self_report.substr(0, 140);
    std::string reply = "Turn 1:\nClient: hi\nCounselor: " + leak + "\nTurn 2:\nClient: ok";
    std::vector<llm::MockRule> rules = {
        {"stage_goal_dialogue", std::nullopt, std::nullopt, reply}};
    Synthesizer synth(gateway(rules), &reg(), SynthConfig{});
    core::CounselingGoal goal;
    goal.text = "g";
    CHECK_THROWS_AS(synth.gen_goal_stage(c, goal, 2), LeakGuardViolation);
}

TEST_CASE("ending stage enforces length and the three closing elements") {
    core::CounselingGoal goal;
    goal.text = "g";
    core::Solution sol{"short walks"};
    std::vector<core::DialogueTurn> ctx = {{1, "hi", "hello", core::Stage::Working}};

    SUBCASE("short closing regenerates, longer one passes") {
        std::vector<llm::MockRule> rules = {
            {"stage_ending", std::nullopt, 0.3, "Counselor: One sentence only."},
            {"stage_ending", std::nullopt, std::nullopt,
             "Counselor: We summarized the path. Try the walks this week. You have "
             "what it takes."},
            {"ending_check", std::nullopt, std::nullopt,
             R"({"summary":true,"homework":true,"encouragement":true})"},
        };
        Synthesizer synth(gateway(rules), &reg(), SynthConfig{});
        auto closing = synth.gen_ending_stage(ctx, goal, sol);
        CHECK(closing.find("summarized") != std::string::npos);
    }
    SUBCASE("missing element is reported by name") {
        std::vector<llm::MockRule> rules = {
            {"stage_ending", std::nullopt, std::nullopt,
             "Counselor: We summarized. Try walks. You can do it."},
            {"ending_check", std::nullopt, std::nullopt,
             R"({"summary":true,"homework":false,"encouragement":true})"},
        };
        Synthesizer synth(gateway(rules), &reg(), SynthConfig{});
        try {
            synth.gen_ending_stage(ctx, goal, sol);
            FAIL("expected ElementMissing");
        } catch (const ElementMissing& e) {
            CHECK(e.element == "homework");
        }
    }
}

TEST_CASE("one-time baseline labels turns post hoc and flags regressions") {
    nlohmann::json traits{{"openness", "o"}, {"conscientiousness", "c"},
                          {"extraversion", "e"}, {"agreeableness", "a"},
                          {"neuroticism", "n"}};
    const std::string dialogue_reply =
        "Turn 1:\nClient: hi\nCounselor: hello\n"
        "Turn 2:\nClient: more\nCounselor: go on\n"
        "Closing:\nCounselor: Good luck out there.";
    std::vector<llm::MockRule> rules = {
        {"trait_extract", std::nullopt, std::nullopt, traits.dump()},
        {"onetime_dialogue", std::nullopt, std::nullopt, dialogue_reply},
        {"stage_label", std::nullopt, std::nullopt,
         R"({"labels": ["working", "goal", "ending"]})"},
    };
    SynthConfig cfg;
    cfg.goal_turns = 1;
    cfg.working_turns = 1;
    Synthesizer synth(gateway(rules), &reg(), cfg);
    auto d = synth.synthesize_onetime(e2e_case());
    REQUIRE(d.turns.size() == 2);
    CHECK(d.turns[0].stage_label == core::Stage::Working);
    CHECK(d.turns[1].stage_label == core::Stage::Goal);
    CHECK(d.flagged_nonmonotone);  // working -> goal regresses
    CHECK(d.closing == "Good luck out there.");
}
