#include "catchforge/pds/synth.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "catchforge/core/render.hpp"
#include "catchforge/core/text.hpp"
#include "catchforge/core/validate.hpp"
#include "catchforge/llm/json_extract.hpp"

namespace catchforge::pds {

namespace text = core::text;
using nlohmann::json;

namespace {

bool starts_with_icase(const std::string& line, const std::string& prefix) {
    if (line.size() < prefix.size()) return false;
    for (size_t i = 0; i < prefix.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(line[i])) !=
            std::tolower(static_cast<unsigned char>(prefix[i])))
            return false;
    return true;
}

bool parse_bool(const json& v) {
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_string()) {
        auto s = text::to_lower(text::trim(v.get<std::string>()));
        return s == "true" || s == "yes" || s == "1";
    }
    if (v.is_number()) return v.get<double>() != 0.0;
    return false;
}

int parse_int_field(const json& v) {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_string()) return std::stoi(v.get<std::string>());
    throw FormatParseError("expected integer field");
}

const std::vector<std::string>& ending_language() {
    static const std::vector<std::string> terms = {"goodbye", "talk to you next time",
                                                   "see you next time", "farewell"};
    return terms;
}

}  // namespace

std::vector<TurnBlock> parse_turn_blocks(const std::string& reply,
                                         std::string* leading_counselor) {
    std::vector<TurnBlock> blocks;
    std::string* active = nullptr;  // field receiving continuation lines
    std::string lead;
    bool before_first_turn = true;

    std::istringstream in(reply);
    std::string line;
    while (std::getline(in, line)) {
        std::string trimmed = text::trim(line);
        if (starts_with_icase(trimmed, "turn ")) {
            size_t colon = trimmed.find(':');
            std::string num = trimmed.substr(5, colon == std::string::npos
                                                    ? std::string::npos
                                                    : colon - 5);
            try {
                TurnBlock b;
                b.index = std::stoi(text::trim(num));
                blocks.push_back(b);
                before_first_turn = false;
                active = nullptr;
                continue;
            } catch (const std::exception&) {
                // not a turn header; fall through as continuation text
            }
        }
        if (starts_with_icase(trimmed, "client:")) {
            if (blocks.empty()) throw FormatParseError("client line before any turn header");
            blocks.back().client = text::trim(trimmed.substr(7));
            active = &blocks.back().client;
            continue;
        }
        if (starts_with_icase(trimmed, "counselor:")) {
            std::string content = text::trim(trimmed.substr(10));
            if (before_first_turn) {
                lead = content;
                active = &lead;
            } else {
                blocks.back().counselor = content;
                active = &blocks.back().counselor;
            }
            continue;
        }
        if (active && !trimmed.empty()) {
            *active += " " + trimmed;
        }
    }
    if (leading_counselor) *leading_counselor = lead;
    return blocks;
}

std::vector<std::string> description_keywords(const std::string& description) {
    static const std::set<std::string> stop = {"with", "from", "that", "this", "their",
                                               "have", "habit", "more", "some", "very"};
    std::vector<std::string> out;
    for (auto& w : text::word_tokens(description))
        if (w.size() >= 4 && !stop.count(w)) out.push_back(w);
    return out;
}

bool resources_in_order(const core::ResourcePlan& plan,
                        const std::vector<core::DialogueTurn>& working_turns) {
    int last_mention = -1;
    for (const auto& r : plan.resources) {
        auto keywords = description_keywords(r.description);
        int first = -1;
        for (size_t i = 0; i < working_turns.size() && first < 0; ++i) {
            const std::string joined =
                working_turns[i].client_utterance + " " + working_turns[i].counselor_utterance;
            for (const auto& kw : keywords) {
                if (text::contains_term(joined, kw)) {
                    first = static_cast<int>(i);
                    break;
                }
            }
        }
        if (first < 0) return false;          // resource never mentioned
        if (first < last_mention) return false;  // mentioned out of label order
        last_mention = first;
    }
    return true;
}

Synthesizer::Synthesizer(std::shared_ptr<llm::Gateway> gateway,
                         const prompts::PromptRegistry* registry, SynthConfig config)
    : gateway_(std::move(gateway)), registry_(registry), config_(std::move(config)) {}

llm::ChatResponse Synthesizer::call(const std::string& tag, const std::string& prompt,
                                    double temperature) {
    llm::ChatRequest req;
    req.messages = {{"user", prompt}};
    req.temperature = temperature;
    req.model_id = config_.model_id;
    req.tag = tag;
    return gateway_->complete(req);
}

template <typename F>
auto Synthesizer::with_retries(F&& attempt) -> decltype(attempt(0.0)) {
    std::exception_ptr last;
    for (int a = 1; a <= config_.policy.max_attempts; ++a) {
        try {
            return attempt(llm::escalate(config_.policy, a));
        } catch (const SynthError&) {
            last = std::current_exception();
        }
    }
    std::rethrow_exception(last);
}

core::BigFiveProfile Synthesizer::extract_personality(const std::string& case_text) {
    if (text::trim(case_text).empty())
        throw llm::PreconditionViolation("empty case text");
    return with_retries([&](double temp) {
        auto reply = call("trait_extract",
                          registry_->render("trait_extract", {{"client info", case_text}}),
                          temp);
        json j;
        try {
            j = llm::extract_json_block(reply.content);
        } catch (const std::exception& e) {
            throw ExtractionParseError(e.what());
        }
        core::BigFiveProfile p;
        auto field = [&](const char* key) -> std::string {
            if (!j.contains(key)) throw ExtractionParseError(std::string("missing ") + key);
            return text::trim(j.at(key).get<std::string>());
        };
        p.openness = field("openness");
        p.conscientiousness = field("conscientiousness");
        p.extraversion = field("extraversion");
        p.agreeableness = field("agreeableness");
        p.neuroticism = field("neuroticism");
        if (!p.complete()) throw ExtractionParseError("empty trait descriptor");
        return p;
    });
}

core::CounselingGoal Synthesizer::acquire_goal(const core::ConsultationCase& c) {
    if (text::trim(c.self_report).empty())
        throw llm::PreconditionViolation("case has empty self_report");
    return with_retries([&](double temp) {
        auto reply = call("goal_gen",
                          registry_->render("goal_gen", {{"client info", c.self_report}}),
                          temp);
        std::string goal_text;
        std::istringstream in(reply.content);
        std::string line;
        while (std::getline(in, line)) {
            auto t = text::trim(line);
            if (starts_with_icase(t, "goal:")) {
                goal_text = text::trim(t.substr(5));
                break;
            }
        }
        if (goal_text.empty()) throw FormatParseError("no goal: line in reply");

        // Judge calls run at temperature 0.
        auto verdict =
            call("goal_check",
                 registry_->render("goal_check",
                                   {{"client info", c.self_report}, {"goal info", goal_text}}),
                 0.0);
        json j;
        try {
            j = llm::extract_json_block(verdict.content);
        } catch (const std::exception& e) {
            throw FormatParseError(e.what());
        }
        core::CounselingGoal goal;
        goal.text = goal_text;
        goal.unique = parse_bool(j.value("unique", json(false)));
        goal.specific = parse_bool(j.value("specific", json(false)));
        goal.feasible = parse_bool(j.value("feasible", json(false)));
        goal.positive = parse_bool(j.value("positive", json(false)));
        goal.measurable = parse_bool(j.value("measurable", json(false)));
        goal.psychological = parse_bool(j.value("psychological", json(false)));
        if (!goal.all_criteria_met())
            throw GoalCriteriaFailed("goal failed criteria", goal.failed_flags());
        return goal;
    });
}

core::ResourcePlan Synthesizer::acquire_resources(const core::ConsultationCase& c,
                                                  const core::CounselingGoal& goal,
                                                  int negative_count) {
    if (negative_count < 0) throw llm::PreconditionViolation("negative_count < 0");
    return with_retries([&](double temp) {
        auto prompt = registry_->render(
            "resource_gen", {{"client info", c.self_report},
                             {"personality info", json(c.traits).dump()},
                             {"goal info", goal.text},
                             {"negative num", std::to_string(negative_count)}});
        auto reply = call("resource_gen", prompt, temp);
        json j;
        try {
            j = llm::extract_json_block(reply.content);
        } catch (const std::exception& e) {
            throw FormatParseError(e.what());
        }
        core::ResourcePlan plan;
        try {
            for (const auto& rj : j.at("resource")) {
                core::Resource r;
                r.label = parse_int_field(rj.at("label"));
                r.kind = text::to_lower(rj.value("type", "internal")) == "external"
                             ? core::ResourceKind::External
                             : core::ResourceKind::Internal;
                r.valence = text::to_lower(rj.value("valence", "negative")) == "positive"
                                ? core::ResourceValence::Positive
                                : core::ResourceValence::Negative;
                r.description = rj.value("description", "");
                r.relevance = rj.value("relevance", "");
                r.change = rj.value("change", "");
                if (rj.contains("next_label") && !rj.at("next_label").is_null()) {
                    const auto& nl = rj.at("next_label");
                    if (!(nl.is_string() && text::to_lower(nl.get<std::string>()) == "null"))
                        r.next_label = parse_int_field(nl);
                }
                plan.resources.push_back(std::move(r));
            }
            plan.solution.text = j.at("solution").get<std::string>();
        } catch (const json::exception& e) {
            throw FormatParseError(std::string("bad resource JSON: ") + e.what());
        }
        auto verdict = core::validate_resource_plan(plan);
        if (!verdict) throw PlanValidationFailed("resource plan rejected: " + verdict.rule);
        int negatives = 0;
        for (const auto& r : plan.resources)
            if (r.valence == core::ResourceValence::Negative) ++negatives;
        if (negatives != negative_count)
            throw PlanValidationFailed("expected " + std::to_string(negative_count) +
                                       " negative resources, got " + std::to_string(negatives));
        return plan;
    });
}

std::vector<core::DialogueTurn> Synthesizer::gen_goal_stage(const core::ConsultationCase& c,
                                                            const core::CounselingGoal& goal,
                                                            int turns) {
    if (turns < 2) throw llm::PreconditionViolation("goal stage needs >= 2 turns");
    return with_retries([&](double temp) {
        auto prompt = registry_->render(
            "stage_goal_dialogue", {{"example", config_.example_dialogue},
                                    {"client info", c.self_report},
                                    {"personality info", json(c.traits).dump()},
                                    {"goal info", goal.text},
                                    {"turn num", std::to_string(turns)}});
        auto reply = call("stage_goal_dialogue", prompt, temp);
        auto blocks = parse_turn_blocks(reply.content);
        if (static_cast<int>(blocks.size()) != turns)
            throw TurnCountMismatch("expected " + std::to_string(turns) + " turns, got " +
                                    std::to_string(blocks.size()));
        std::vector<core::DialogueTurn> out;
        for (int i = 0; i < turns; ++i) {
            const auto& b = blocks[static_cast<size_t>(i)];
            if (b.index != i + 1) throw FormatParseError("non-sequential turn numbers");
            if (b.client.empty()) throw FormatParseError("empty client utterance");
            const bool last = (i == turns - 1);
            if (!last && b.counselor.empty())
                throw FormatParseError("missing counselor utterance mid-stage");
            if (last && !b.counselor.empty())
                throw FormatParseError("final goal-stage turn must be client-only");
            if (text::shares_consecutive_words(b.counselor, goal.text,
                                               config_.leak_word_threshold) ||
                text::shares_consecutive_words(b.counselor, c.self_report,
                                               config_.leak_word_threshold))
                throw LeakGuardViolation("counselor quotes background at turn " +
                                         std::to_string(b.index));
            out.push_back({b.index, b.client, b.counselor, core::Stage::Goal});
        }
        return out;
    });
}

WorkingStageResult Synthesizer::gen_working_stage(const core::ConsultationCase& c,
                                                  const std::vector<core::DialogueTurn>& context,
                                                  const core::CounselingGoal& goal,
                                                  const core::ResourcePlan& plan, int turns) {
    const int negatives = static_cast<int>(plan.resources.size()) - 1;
    if (turns < negatives + 2)
        throw llm::PreconditionViolation("working stage needs >= negative_count + 2 turns");
    if (context.empty()) throw llm::PreconditionViolation("goal stage context required");
    const int begin = context.back().index + 1;

    return with_retries([&](double temp) {
        auto prompt = registry_->render(
            "stage_working_dialogue",
            {{"example", config_.example_dialogue},
             {"personality info", json(c.traits).dump()},
             {"goal info", goal.text},
             {"resource", json(plan).dump(2)},
             {"solution", plan.solution.text},
             {"turn num", std::to_string(begin + turns - 1)},
             {"begin turn", std::to_string(begin)},
             {"dialogue", core::render_turns(context)}});
        auto reply = call("stage_working_dialogue", prompt, temp);
        std::string bridge;
        auto blocks = parse_turn_blocks(reply.content, &bridge);
        if (bridge.empty()) throw FormatParseError("missing bridging counselor utterance");
        if (static_cast<int>(blocks.size()) != turns)
            throw TurnCountMismatch("expected " + std::to_string(turns) + " turns, got " +
                                    std::to_string(blocks.size()));
        WorkingStageResult result;
        result.bridge = bridge;
        for (int i = 0; i < turns; ++i) {
            const auto& b = blocks[static_cast<size_t>(i)];
            if (b.index != begin + i) throw FormatParseError("non-sequential turn numbers");
            if (b.client.empty()) throw FormatParseError("empty client utterance");
            const bool last = (i == turns - 1);
            if (!last && b.counselor.empty())
                throw FormatParseError("missing counselor utterance mid-stage");
            for (const auto& term : ending_language())
                if (text::contains_term(b.counselor, term))
                    throw FormatParseError("session-ending language mid-stage at turn " +
                                           std::to_string(b.index));
            result.turns.push_back({b.index, b.client, b.counselor, core::Stage::Working});
        }
        if (!resources_in_order(plan, result.turns))
            throw OrderCheckFailed("resource keywords not visited in label order");

        auto verdict = call(
            "resource_order_check",
            registry_->render("resource_order_check",
                              {{"resource", json(plan).dump(2)},
                               {"dialogue", core::render_turns(result.turns)}}),
            0.0);
        json j;
        try {
            j = llm::extract_json_block(verdict.content);
        } catch (const std::exception& e) {
            throw FormatParseError(e.what());
        }
        if (!parse_bool(j.value("check_result", json(false))))
            throw OrderCheckFailed("judge rejected resource exploration order");
        return result;
    });
}

std::string Synthesizer::gen_ending_stage(const std::vector<core::DialogueTurn>& context,
                                          const core::CounselingGoal& goal,
                                          const core::Solution& solution) {
    if (context.empty()) throw llm::PreconditionViolation("working stage context required");
    return with_retries([&](double temp) {
        auto prompt = registry_->render("stage_ending",
                                        {{"goal info", goal.text},
                                         {"solution", solution.text},
                                         {"dialogue", core::render_turns(context)}});
        auto reply = call("stage_ending", prompt, temp);
        std::string closing = text::trim(reply.content);
        if (starts_with_icase(closing, "counselor:"))
            closing = text::trim(closing.substr(10));
        if (closing.empty()) throw FormatParseError("empty closing");
        if (text::count_sentences(closing) < 3)
            throw FormatParseError("closing shorter than 3 sentences");

        auto verdict = call("ending_check",
                            registry_->render("ending_check", {{"goal info", goal.text},
                                                               {"solution", solution.text},
                                                               {"closing", closing}}),
                            0.0);
        json j;
        try {
            j = llm::extract_json_block(verdict.content);
        } catch (const std::exception& e) {
            throw FormatParseError(e.what());
        }
        for (const char* el : {"summary", "homework", "encouragement"})
            if (!parse_bool(j.value(el, json(false)))) throw ElementMissing(el);
        return closing;
    });
}

core::StagedDialogue Synthesizer::synthesize_dialogue(const core::ConsultationCase& c) {
    core::ConsultationCase work = c;
    if (!work.traits.complete()) work.traits = extract_personality(work.self_report);

    core::StagedDialogue d;
    d.case_id = work.case_id;
    d.goal = acquire_goal(work);
    d.plan = acquire_resources(work, d.goal, config_.negative_count);

    auto turns = gen_goal_stage(work, d.goal, config_.goal_turns);
    auto working = gen_working_stage(work, turns, d.goal, d.plan, config_.working_turns);
    turns.back().counselor_utterance = working.bridge;
    for (auto& t : working.turns) turns.push_back(std::move(t));
    d.closing = gen_ending_stage(turns, d.goal, d.plan.solution);
    d.turns = std::move(turns);

    auto violations = core::validate_dialogue(d);
    if (!violations.empty())
        throw SynthError("stitched dialogue failed validation: " + violations.front().rule);
    return d;
}

core::StagedDialogue Synthesizer::synthesize_onetime(const core::ConsultationCase& c) {
    core::ConsultationCase work = c;
    if (!work.traits.complete()) work.traits = extract_personality(work.self_report);

    const int total = config_.goal_turns + config_.working_turns;
    return with_retries([&](double temp) {
        auto prompt = registry_->render(
            "onetime_dialogue", {{"SST KB", prompts::sst_knowledge().text},
                                 {"client info", work.self_report},
                                 {"personality info", json(work.traits).dump()},
                                 {"total turns", std::to_string(total)}});
        auto reply = call("onetime_dialogue", prompt, temp);

        std::string turns_part = reply.content;
        std::string closing;
        if (auto pos = reply.content.find("Closing:"); pos != std::string::npos) {
            turns_part = reply.content.substr(0, pos);
            closing = text::trim(reply.content.substr(pos + 8));
            if (starts_with_icase(closing, "counselor:"))
                closing = text::trim(closing.substr(10));
        }
        auto blocks = parse_turn_blocks(turns_part);
        if (blocks.empty()) throw FormatParseError("no turns in one-time reply");

        core::StagedDialogue d;
        d.case_id = work.case_id;
        d.closing = closing;
        for (const auto& b : blocks) {
            if (b.client.empty() || b.counselor.empty())
                throw FormatParseError("incomplete turn in one-time reply");
            d.turns.push_back({b.index, b.client, b.counselor, core::Stage::Goal});
        }

        // Post-hoc stage labeling; the baseline is allowed to violate
        // monotonicity, so bad label orders flag rather than fail.
        auto verdict = call("stage_label",
                            registry_->render("stage_label",
                                              {{"dialogue", core::render_dialogue(d)}}),
                            0.0);
        json j;
        try {
            j = llm::extract_json_block(verdict.content);
        } catch (const std::exception& e) {
            throw FormatParseError(e.what());
        }
        if (!j.contains("labels") || !j.at("labels").is_array())
            throw FormatParseError("stage labeler returned no labels array");
        const auto& labels = j.at("labels");
        if (labels.size() < d.turns.size())
            throw FormatParseError("stage labeler returned too few labels");
        for (size_t i = 0; i < d.turns.size(); ++i) {
            auto s = core::stage_from_string(labels[i].get<std::string>());
            if (!s) throw FormatParseError("unknown stage label");
            d.turns[i].stage_label = *s;
        }
        for (size_t i = 1; i < d.turns.size(); ++i)
            if (static_cast<int>(d.turns[i].stage_label) <
                static_cast<int>(d.turns[i - 1].stage_label))
                d.flagged_nonmonotone = true;
        return d;
    });
}

}  // namespace catchforge::pds
