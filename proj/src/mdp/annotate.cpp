#include "catchforge/mdp/annotate.hpp"

#include <sstream>

#include "catchforge/core/render.hpp"
#include "catchforge/core/text.hpp"
#include "catchforge/llm/json_extract.hpp"

namespace catchforge::mdp {

namespace text = core::text;
using nlohmann::json;

namespace {

bool claims_none(const std::string& s) {
    auto t = text::to_lower(text::trim(s));
    return t.empty() || t == "none" || t == "n/a";
}

std::string memory_to_text(const core::MemorySummary& m) {
    json j{{"Personal Information", m.personal_info},
           {"Internal Resources", m.internal_resources},
           {"External Resources", m.external_resources},
           {"Counseling Goal", m.counseling_goal}};
    return j.dump(2);
}

}  // namespace

core::Stage AnnotationContext::current_stage() const {
    const auto& turns = dialogue->turns;
    if (turn_index <= static_cast<int>(turns.size()))
        return turns[static_cast<size_t>(turn_index - 1)].stage_label;
    return core::Stage::Ending;
}

core::Stage AnnotationContext::previous_stage() const {
    if (turn_index <= 1) return current_stage();
    const auto& turns = dialogue->turns;
    const int prev = std::min(turn_index - 1, static_cast<int>(turns.size()));
    return turns[static_cast<size_t>(prev - 1)].stage_label;
}

std::string AnnotationContext::client_utterance() const {
    const auto& turns = dialogue->turns;
    const int i = std::min(turn_index, static_cast<int>(turns.size()));
    return turns[static_cast<size_t>(i - 1)].client_utterance;
}

std::string AnnotationContext::counselor_reply() const {
    const auto& turns = dialogue->turns;
    if (turn_index <= static_cast<int>(turns.size()))
        return turns[static_cast<size_t>(turn_index - 1)].counselor_utterance;
    return dialogue->closing;
}

std::string AnnotationContext::history() const {
    const auto& turns = dialogue->turns;
    const int upto = std::min(turn_index, static_cast<int>(turns.size()));
    return core::render_turns(turns, upto);
}

bool AnnotationContext::is_last_goal_turn() const {
    if (current_stage() != core::Stage::Goal) return false;
    const auto& turns = dialogue->turns;
    if (turn_index >= static_cast<int>(turns.size())) return true;
    return turns[static_cast<size_t>(turn_index)].stage_label != core::Stage::Goal;
}

Annotator::Annotator(std::shared_ptr<llm::Gateway> gateway,
                     const prompts::PromptRegistry* registry, AnnotateConfig config,
                     AuditSink audit)
    : gateway_(std::move(gateway)),
      registry_(registry),
      config_(std::move(config)),
      audit_(std::move(audit)) {}

llm::ChatResponse Annotator::call(const std::string& tag, const std::string& prompt,
                                  double temperature) {
    llm::ChatRequest req;
    req.messages = {{"user", prompt}};
    req.temperature = temperature;
    req.model_id = config_.model_id;
    req.tag = tag;
    return gateway_->complete(req);
}

void Annotator::audit(const AttemptRecord& rec) const {
    if (audit_) audit_(rec);
}

core::ValidityVerdict Annotator::check_memory(const AnnotationContext& ctx,
                                              const core::MemorySummary& memory) const {
    if (!claims_none(memory.counseling_goal) && ctx.current_stage() == core::Stage::Goal &&
        !ctx.is_last_goal_turn())
        return core::ValidityVerdict::reject("goal-too-early");
    return core::ValidityVerdict::accept();
}

core::ValidityVerdict Annotator::check_plan(const AnnotationContext& ctx,
                                            const core::GlobalPlan& plan) const {
    if (plan.previous_stage != ctx.previous_stage())
        return core::ValidityVerdict::reject("previous-stage-mismatch");
    auto v = core::validate_transition(plan.previous_stage, plan.next_step,
                                       plan.expected_stage);
    if (!v) return core::ValidityVerdict::reject("illegal-transition");
    if (plan.expected_stage != ctx.current_stage())
        return core::ValidityVerdict::reject("stage-label-mismatch");
    return core::ValidityVerdict::accept();
}

core::ValidityVerdict Annotator::check_strategy(const AnnotationContext& ctx,
                                                const core::StrategyDecision& strategy) const {
    if (!text::equal_normalized(strategy.response, ctx.counselor_reply()))
        return core::ValidityVerdict::reject("response-mismatch");
    if (!strategy.response.empty()) {
        const auto a = text::normalize_for_comparison(strategy.analysis);
        const auto r = text::normalize_for_comparison(strategy.response);
        if (!r.empty() && a.find(r) != std::string::npos)
            return core::ValidityVerdict::reject("analysis-contains-response");
    }
    return core::ValidityVerdict::accept();
}

core::ValidityVerdict Annotator::semantic_verdict(const AnnotationContext& ctx,
                                                  const std::string& kind,
                                                  const std::string& artifact) {
    if (!config_.semantic_check) return core::ValidityVerdict::accept();
    auto prompt = registry_->render(
        "semantic_check", {{"artifact kind", kind},
                           {"artifact", artifact},
                           {"dialogue history", ctx.history()},
                           {"stage label", core::to_string(ctx.current_stage())}});
    auto reply = call("semantic_check", prompt, 0.0);
    try {
        json j = llm::extract_json_block(reply.content);
        if (j.at("check_result").is_boolean() && j.at("check_result").get<bool>())
            return core::ValidityVerdict::accept();
        return core::ValidityVerdict::reject("semantic:" + j.value("feedback", kind));
    } catch (const json::exception&) {
        return core::ValidityVerdict::reject("semantic:unparseable-verdict");
    } catch (const llm::GatewayError&) {
        return core::ValidityVerdict::reject("semantic:unparseable-verdict");
    }
}

namespace {

/// Shared regeneration loop: render -> parse -> deterministic check ->
/// semantic check, escalating temperature and appending the rejection rule.
template <typename T>
T run_agent(const llm::RetryPolicy& policy, const AnnotationContext& ctx,
            const std::string& agent, const std::string& base_prompt,
            const std::function<llm::ChatResponse(const std::string&, double)>& call,
            const std::function<std::optional<T>(const std::string&)>& parse,
            const std::function<core::ValidityVerdict(const T&)>& deterministic,
            const std::function<core::ValidityVerdict(const T&)>& semantic,
            const AuditSink& audit, int* attempts_out) {
    std::string last_rule;
    for (int attempt = 1; attempt <= policy.max_attempts; ++attempt) {
        const double temp = llm::escalate(policy, attempt);
        std::string prompt = base_prompt;
        if (!last_rule.empty())
            prompt += "\n\n[Verification] A previous attempt was rejected: " + last_rule +
                      ". Regenerate and fix this issue.";
        auto reply = call(prompt, temp);
        AttemptRecord rec{ctx.turn_index, agent, attempt, temp, false, ""};
        auto parsed = parse(reply.content);
        if (!parsed) {
            rec.rule = last_rule = "parse-error";
            if (audit) audit(rec);
            continue;
        }
        auto verdict = deterministic(*parsed);
        if (verdict) verdict = semantic(*parsed);
        if (verdict) {
            rec.accepted = true;
            if (audit) audit(rec);
            if (attempts_out) *attempts_out = attempt;
            return *parsed;
        }
        rec.rule = last_rule = verdict.rule;
        if (audit) audit(rec);
    }
    throw AnnotationExhausted(agent, ctx.turn_index);
}

}  // namespace

core::MemorySummary Annotator::capture_memory(const AnnotationContext& ctx, int* attempts) {
    auto base = registry_->render("memory_agent", {{"dialogue history", ctx.history()}});
    return run_agent<core::MemorySummary>(
        config_.policy, ctx, "memory", base,
        [&](const std::string& p, double t) { return call("memory_agent", p, t); },
        [](const std::string& content) -> std::optional<core::MemorySummary> {
            try {
                json j = llm::extract_json_block(content);
                core::MemorySummary m;
                m.personal_info = j.value("Personal Information", "None");
                m.internal_resources = j.value("Internal Resources", "None");
                m.external_resources = j.value("External Resources", "None");
                m.counseling_goal = j.value("Counseling Goal", "None");
                return m;
            } catch (const std::exception&) {
                return std::nullopt;
            }
        },
        [&](const core::MemorySummary& m) { return check_memory(ctx, m); },
        [&](const core::MemorySummary& m) {
            return semantic_verdict(ctx, "memory", memory_to_text(m));
        },
        audit_, attempts);
}

core::GlobalPlan Annotator::plan_globally(const AnnotationContext& ctx, int* attempts) {
    auto base = registry_->render("plan_agent", {{"dialogue history", ctx.history()},
                                                 {"counselor thinking", ctx.prior_fused}});
    return run_agent<core::GlobalPlan>(
        config_.policy, ctx, "plan", base,
        [&](const std::string& p, double t) { return call("plan_agent", p, t); },
        [](const std::string& content) -> std::optional<core::GlobalPlan> {
            try {
                json j = llm::extract_json_block(content);
                core::GlobalPlan p;
                p.analysis = j.value("analysis", "");
                auto prev = core::stage_from_string(j.at("previous_stage").get<std::string>());
                auto step = core::next_step_from_string(j.at("next_step").get<std::string>());
                auto exp = core::stage_from_string(j.at("expected_stage").get<std::string>());
                if (!prev || !step || !exp || p.analysis.empty()) return std::nullopt;
                p.previous_stage = *prev;
                p.next_step = *step;
                p.expected_stage = *exp;
                return p;
            } catch (const std::exception&) {
                return std::nullopt;
            }
        },
        [&](const core::GlobalPlan& p) { return check_plan(ctx, p); },
        [&](const core::GlobalPlan& p) { return semantic_verdict(ctx, "plan", p.analysis); },
        audit_, attempts);
}

core::StrategyDecision Annotator::reason_strategy(const AnnotationContext& ctx,
                                                  const core::GlobalPlan& plan,
                                                  int* attempts) {
    auto base = registry_->render(
        "strategy_agent", {{"counselor thinking", plan.analysis},
                           {"client response", ctx.client_utterance()},
                           {"expected stage", core::to_string(plan.expected_stage)},
                           {"counselor response", ctx.counselor_reply()}});
    return run_agent<core::StrategyDecision>(
        config_.policy, ctx, "strategy", base,
        [&](const std::string& p, double t) { return call("strategy_agent", p, t); },
        [](const std::string& content) -> std::optional<core::StrategyDecision> {
            try {
                json j = llm::extract_json_block(content);
                core::StrategyDecision s;
                s.analysis = j.at("analysis").get<std::string>();
                s.response = j.at("response").get<std::string>();
                if (s.analysis.empty()) return std::nullopt;
                return s;
            } catch (const std::exception&) {
                return std::nullopt;
            }
        },
        [&](const core::StrategyDecision& s) { return check_strategy(ctx, s); },
        [&](const core::StrategyDecision& s) {
            return semantic_verdict(ctx, "strategy", s.analysis);
        },
        audit_, attempts);
}

std::string Annotator::fuse(const AnnotationContext& ctx, const core::MemorySummary& memory,
                            const core::GlobalPlan& plan,
                            const core::StrategyDecision& strategy, int* attempts) {
    std::ostringstream thinking;
    thinking << "Memory:\n" << memory_to_text(memory) << "\n\nPlanning:\n" << plan.analysis
             << "\n\nStrategy:\n" << strategy.analysis;
    auto base = registry_->render("fusion_agent", {{"counselor thinking", thinking.str()}});
    return run_agent<std::string>(
        config_.policy, ctx, "fusion", base,
        [&](const std::string& p, double t) { return call("fusion_agent", p, t); },
        [](const std::string& content) -> std::optional<std::string> {
            auto t = text::trim(content);
            if (t.empty()) return std::nullopt;
            return t;
        },
        [&](const std::string& fused) {
            const auto f = text::normalize_for_comparison(fused);
            const auto r = text::normalize_for_comparison(ctx.counselor_reply());
            if (!r.empty() && f.find(r) != std::string::npos)
                return core::ValidityVerdict::reject("analysis-contains-response");
            return core::ValidityVerdict::accept();
        },
        [&](const std::string& fused) { return semantic_verdict(ctx, "fused", fused); },
        audit_, attempts);
}

core::MdpAnnotation Annotator::annotate_turn(const AnnotationContext& ctx) {
    core::MdpAnnotation a;
    a.turn_index = ctx.turn_index;
    a.memory = capture_memory(ctx, &a.attempts["memory"]);
    a.plan = plan_globally(ctx, &a.attempts["plan"]);
    a.strategy = reason_strategy(ctx, a.plan, &a.attempts["strategy"]);
    a.fused_cot = fuse(ctx, a.memory, a.plan, a.strategy, &a.attempts["fusion"]);
    return a;
}

std::vector<core::MdpAnnotation> Annotator::annotate_dialogue(
    const core::StagedDialogue& dialogue) {
    auto violations = core::validate_dialogue(dialogue);
    if (!violations.empty())
        throw llm::PreconditionViolation("dialogue invalid: " + violations.front().rule);

    std::vector<core::MdpAnnotation> out;
    std::string prior = "None";
    const int n = static_cast<int>(dialogue.turns.size());
    auto annotate_at = [&](int index) {
        AnnotationContext ctx{&dialogue, index, prior};
        out.push_back(annotate_turn(ctx));
        prior = out.back().fused_cot;
    };
    for (int i = 1; i <= n; ++i) {
        if (dialogue.turns[static_cast<size_t>(i - 1)].counselor_utterance.empty())
            continue;  // client-only turn: the closing answers it
        annotate_at(i);
    }
    if (!dialogue.closing.empty()) annotate_at(n + 1);
    return out;
}

}  // namespace catchforge::mdp
