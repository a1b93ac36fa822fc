#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "catchforge/core/types.hpp"
#include "catchforge/llm/gateway.hpp"
#include "catchforge/prompts/registry.hpp"

namespace catchforge::filter {

class FilterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a jargon rewrite still contains lexicon terms after the
/// escalation budget is spent.
class RewriteExhausted : public FilterError {
public:
    using FilterError::FilterError;
};

struct FilterConfig {
    int voters = 3;  // must be odd
    std::vector<std::string> jargon_lexicon;  // empty -> default lexicon
    llm::RetryPolicy policy;
    std::string model_id = "default";
};

enum class Outcome { Retained, Discarded };

/// One vote per judge: true = pass, false = fail, nullopt = abstained
/// (unparseable reply after one re-ask).
struct FilterReport {
    std::string dialogue_id;
    std::vector<std::string> structural_violations;
    std::vector<std::optional<bool>> judge_votes;
    std::map<int, std::vector<std::string>> jargon_hits;  // turn index -> terms
    int rewrites_applied = 0;
    Outcome outcome = Outcome::Discarded;
    std::string discard_reason;  // empty when retained

    bool retained() const { return outcome == Outcome::Retained; }
};

/// Counseling-jargon terms that must never surface in counselor speech.
const std::vector<std::string>& default_jargon_lexicon();

/// Lexicon terms present in `utterance` (word-boundary, case-insensitive),
/// in lexicon order, each at most once.
std::vector<std::string> detect_jargon(const std::string& utterance,
                                       const std::vector<std::string>& lexicon);

/// Majority-vote structural judging plus jargon detection and rewrite.
/// Rewrites are applied in place; a dialogue that survives filtering is
/// guaranteed jargon-free, so a second pass is a no-op.
class QualityFilter {
public:
    QualityFilter(std::shared_ptr<llm::Gateway> gateway,
                  const prompts::PromptRegistry* registry, FilterConfig config);

    FilterReport filter(core::StagedDialogue& dialogue);

    const FilterConfig& config() const { return config_; }

private:
    std::optional<bool> cast_vote(const core::StagedDialogue& dialogue, int voter);
    /// Returns a jargon-free replacement for `utterance`.
    std::string rewrite(const std::string& utterance, const std::vector<std::string>& hits);
    llm::ChatResponse call(const std::string& tag, const std::string& prompt,
                           double temperature);

    std::shared_ptr<llm::Gateway> gateway_;
    const prompts::PromptRegistry* registry_;
    FilterConfig config_;
};

}  // namespace catchforge::filter
