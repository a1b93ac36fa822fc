#include "catchforge/filter/filter.hpp"

#include <sstream>

#include "catchforge/core/render.hpp"
#include "catchforge/core/text.hpp"
#include "catchforge/core/validate.hpp"
#include "catchforge/llm/json_extract.hpp"

namespace catchforge::filter {

namespace text = core::text;
using nlohmann::json;

const std::vector<std::string>& default_jargon_lexicon() {
    static const std::vector<std::string> lexicon = {
        "resources",       "behavioral rehearsal",   "solution rehearsal",
        "solution-focused", "case conceptualization",
    };
    return lexicon;
}

std::vector<std::string> detect_jargon(const std::string& utterance,
                                       const std::vector<std::string>& lexicon) {
    std::vector<std::string> hits;
    for (const auto& term : lexicon)
        if (text::contains_term(utterance, term)) hits.push_back(term);
    return hits;
}

QualityFilter::QualityFilter(std::shared_ptr<llm::Gateway> gateway,
                             const prompts::PromptRegistry* registry, FilterConfig config)
    : gateway_(std::move(gateway)), registry_(registry), config_(std::move(config)) {
    if (config_.voters < 1 || config_.voters % 2 == 0)
        throw llm::PreconditionViolation("voter count must be odd and positive");
    if (config_.jargon_lexicon.empty()) config_.jargon_lexicon = default_jargon_lexicon();
}

llm::ChatResponse QualityFilter::call(const std::string& tag, const std::string& prompt,
                                      double temperature) {
    llm::ChatRequest req;
    req.messages = {{"user", prompt}};
    req.temperature = temperature;
    req.model_id = config_.model_id;
    req.tag = tag;
    return gateway_->complete(req);
}

std::optional<bool> QualityFilter::cast_vote(const core::StagedDialogue& dialogue, int voter) {
    auto prompt = registry_->render("structure_check",
                                    {{"goal info", dialogue.goal.text},
                                     {"dialogue", core::render_dialogue(dialogue)}});
    const std::string tag = "structure_check#" + std::to_string(voter);
    // Judges run at temperature 0; an unparseable reply gets one re-ask,
    // then the voter abstains.
    for (int ask = 0; ask < 2; ++ask) {
        auto reply = call(tag, prompt, 0.0);
        try {
            json j = llm::extract_json_block(reply.content);
            const auto& v = j.at("check_result");
            if (v.is_boolean()) return v.get<bool>();
            if (v.is_string()) {
                auto s = text::to_lower(text::trim(v.get<std::string>()));
                if (s == "true") return true;
                if (s == "false") return false;
            }
        } catch (const std::exception&) {
            // fall through to the re-ask
        }
    }
    return std::nullopt;
}

std::string QualityFilter::rewrite(const std::string& utterance,
                                   const std::vector<std::string>& hits) {
    std::ostringstream terms;
    for (size_t i = 0; i < hits.size(); ++i) terms << (i ? ", " : "") << hits[i];
    auto prompt = registry_->render("jargon_check", {{"counselor response", utterance},
                                                     {"term examples", terms.str()}});
    for (int a = 1; a <= config_.policy.max_attempts; ++a) {
        auto reply = call("jargon_check", prompt, llm::escalate(config_.policy, a));
        std::string candidate;
        try {
            json j = llm::extract_json_block(reply.content);
            candidate = text::trim(j.value("rewrite", ""));
        } catch (const std::exception&) {
            continue;
        }
        if (!candidate.empty() && detect_jargon(candidate, config_.jargon_lexicon).empty())
            return candidate;
    }
    throw RewriteExhausted("jargon persists after " +
                           std::to_string(config_.policy.max_attempts) + " rewrite attempts");
}

FilterReport QualityFilter::filter(core::StagedDialogue& dialogue) {
    FilterReport report;
    report.dialogue_id = dialogue.case_id;

    for (const auto& v : core::validate_dialogue(dialogue))
        report.structural_violations.push_back(v.rule);
    if (!report.structural_violations.empty()) {
        report.outcome = Outcome::Discarded;
        report.discard_reason = "structural:" + report.structural_violations.front();
        return report;
    }

    int pass = 0, fail = 0;
    for (int voter = 1; voter <= config_.voters; ++voter) {
        auto vote = cast_vote(dialogue, voter);
        report.judge_votes.push_back(vote);
        if (vote.has_value()) (*vote ? pass : fail)++;
    }
    if (pass + fail == 0) {
        report.outcome = Outcome::Discarded;
        report.discard_reason = "no-quorum";
        return report;
    }
    if (fail >= pass) {  // majority of cast votes must pass
        report.outcome = Outcome::Discarded;
        report.discard_reason = "judge-majority";
        return report;
    }

    auto scrub = [&](std::string& utterance, int turn_index) {
        auto hits = detect_jargon(utterance, config_.jargon_lexicon);
        if (hits.empty()) return;
        report.jargon_hits[turn_index] = hits;
        utterance = rewrite(utterance, hits);
        ++report.rewrites_applied;
    };
    try {
        for (auto& t : dialogue.turns) scrub(t.counselor_utterance, t.index);
        if (!dialogue.closing.empty())
            scrub(dialogue.closing, static_cast<int>(dialogue.turns.size()) + 1);
    } catch (const RewriteExhausted& e) {
        report.outcome = Outcome::Discarded;
        report.discard_reason = std::string("rewrite-exhausted: ") + e.what();
        return report;
    }

    report.outcome = Outcome::Retained;
    return report;
}

}  // namespace catchforge::filter
