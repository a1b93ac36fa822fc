#include "catchforge/eval/session.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "catchforge/core/text.hpp"
#include "catchforge/prompts/registry.hpp"

namespace catchforge::eval {

namespace text = core::text;

std::string to_string(Attitude a) {
    switch (a) {
        case Attitude::Open: return "open";
        case Attitude::Neutral: return "neutral";
        case Attitude::Resistant: return "resistant";
    }
    return "neutral";
}

std::optional<Attitude> attitude_from_string(const std::string& s) {
    auto t = text::to_lower(text::trim(s));
    if (t == "open") return Attitude::Open;
    if (t == "neutral") return Attitude::Neutral;
    if (t == "resistant") return Attitude::Resistant;
    return std::nullopt;
}

std::string IntakeForm::rendered() const {
    std::ostringstream out;
    out << "Client profile: " << persona << "\n"
        << "Negative automatic thoughts: " << negative_thoughts;
    return out.str();
}

std::string SessionTranscript::render() const {
    std::ostringstream out;
    for (size_t i = 0; i < turns.size(); ++i) {
        out << "Turn " << (i + 1) << ":\n";
        out << "Client: " << turns[i].client << "\n";
        if (!turns[i].counselor.empty()) out << "Counselor: " << turns[i].counselor << "\n";
    }
    return out.str();
}

SessionRunner::SessionRunner(std::shared_ptr<llm::Gateway> counselor,
                             std::shared_ptr<llm::Gateway> client,
                             const prompts::PromptRegistry* registry, SessionConfig config)
    : counselor_(std::move(counselor)),
      client_(std::move(client)),
      registry_(registry),
      config_(std::move(config)) {
    if (config_.max_turns < 1) throw llm::PreconditionViolation("max_turns must be >= 1");
}

std::string SessionRunner::client_turn(const IntakeForm& form,
                                       const SessionTranscript& so_far) {
    auto prompt = registry_->render("client_sim", {{"intake form", form.rendered()},
                                                   {"attitude", to_string(form.attitude)},
                                                   {"history", so_far.render()}});
    llm::ChatRequest req;
    req.messages = {{"user", prompt}};
    req.temperature = config_.client_temperature;
    req.model_id = config_.client_model;
    req.tag = "client_sim";
    return text::trim(client_->complete(req).content);
}

std::string SessionRunner::counselor_turn(const SessionTranscript& so_far) {
    const std::string tmpl =
        config_.reasoning_counselor ? "counselor_reasoning" : "counselor_plain";
    llm::ChatRequest req;
    req.messages.push_back(
        {"system", registry_->render(tmpl, {{"SST KB", prompts::sst_knowledge().text}})});
    for (const auto& t : so_far.turns) {
        req.messages.push_back({"user", t.client});
        if (!t.counselor.empty()) req.messages.push_back({"assistant", t.counselor});
    }
    req.temperature = config_.counselor_temperature;
    req.model_id = config_.counselor_model;
    req.tag = "counselor";
    std::string reply = text::trim(counselor_->complete(req).content);
    // Reasoning counselors prefix the visible reply with a think block.
    if (auto close = reply.find("</think>"); close != std::string::npos)
        reply = text::trim(reply.substr(close + 8));
    return reply;
}

SessionTranscript SessionRunner::run(const IntakeForm& form) {
    SessionTranscript t;
    t.form_id = form.form_id;
    t.model_id = config_.counselor_model;
    t.attitude = form.attitude;
    t.ended_by = SessionEnd::TurnCap;

    int client_empty_streak = 0, counselor_empty_streak = 0;
    for (int turn = 1; turn <= config_.max_turns; ++turn) {
        std::string client = client_turn(form, t);
        bool wants_end = false;
        if (auto pos = client.find(kEndToken); pos != std::string::npos) {
            wants_end = turn >= config_.min_end_turn;
            client.erase(pos, std::string(kEndToken).size());
            client = text::trim(client);
        }
        t.turns.push_back({client, ""});
        client_empty_streak = client.empty() ? client_empty_streak + 1 : 0;
        if (client_empty_streak >= 2) {
            t.degenerate = true;
            break;
        }
        if (wants_end) {
            t.ended_by = SessionEnd::ClientEndToken;
            break;
        }
        std::string counselor = counselor_turn(t);
        t.turns.back().counselor = counselor;
        counselor_empty_streak = counselor.empty() ? counselor_empty_streak + 1 : 0;
        if (counselor_empty_streak >= 2) {
            t.degenerate = true;
            break;
        }
    }
    return t;
}

const std::vector<std::string>& metric_ids() {
    static const std::vector<std::string> ids = {"sf",           "ra",
                                                 "go",           "understanding",
                                                 "interpersonal", "collaboration"};
    return ids;
}

namespace {

const std::map<std::string, std::string>& metric_questions() {
    static const std::map<std::string, std::string> q = {
        {"sf", "How faithfully does the counselor follow the solution-oriented process "
               "across the session?"},
        {"ra", "How thoroughly does the counselor surface the client's own strengths and "
               "supports?"},
        {"go", "How well does the session arrive at a clear, well-formed goal?"},
        {"understanding", "How accurately does the counselor understand what the client "
                          "expresses?"},
        {"interpersonal", "How warm, respectful, and attuned is the counselor's manner?"},
        {"collaboration", "How actively do counselor and client build the work together?"},
    };
    return q;
}

}  // namespace

SessionJudge::SessionJudge(std::shared_ptr<llm::Gateway> judge,
                           const prompts::PromptRegistry* registry, std::string judge_model)
    : gateway_(std::move(judge)), registry_(registry), model_(std::move(judge_model)) {}

std::optional<double> SessionJudge::parse_score_reply(const std::string& reply) {
    auto t = text::trim(reply);
    size_t i = 0;
    while (i < t.size() && (std::isdigit(static_cast<unsigned char>(t[i])) || t[i] == '-' ||
                            t[i] == '+' || t[i] == '.'))
        ++i;
    if (i == 0) return std::nullopt;
    try {
        size_t used = 0;
        double v = std::stod(t.substr(0, i), &used);
        if (used == 0) return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

SessionScore SessionJudge::score(const SessionTranscript& transcript) {
    SessionScore s;
    s.form_id = transcript.form_id;
    s.model_id = transcript.model_id;
    s.attitude = transcript.attitude;

    const std::string conversation = transcript.render();
    for (const auto& metric : metric_ids()) {
        auto prompt = registry_->render(
            "judge", {{"conversation", conversation},
                      {"question", metric_questions().at(metric)},
                      {"criteria", registry_->render(metric + "_rubric", {})}});
        std::optional<MetricScore> result;
        // Judges run at temperature 0; one re-ask, then the metric is missing.
        for (int ask = 0; ask < 2 && !result; ++ask) {
            llm::ChatRequest req;
            req.messages = {{"user", prompt}};
            req.temperature = 0.0;
            req.model_id = model_;
            req.tag = "judge:" + metric;
            auto raw = parse_score_reply(gateway_->complete(req).content);
            if (raw) {
                MetricScore ms;
                ms.value = std::clamp(*raw, 0.0, 6.0);
                ms.clamped = (*raw < 0.0 || *raw > 6.0);
                result = ms;
            }
        }
        s.metrics[metric] = result;
    }
    return s;
}

namespace {

std::map<std::string, GroupStats> aggregate_by(
    const std::vector<SessionScore>& scores,
    const std::function<std::string(const SessionScore&)>& key) {
    if (scores.empty()) throw EmptyGroup("no sessions to aggregate");
    std::map<std::string, std::vector<const SessionScore*>> groups;
    for (const auto& s : scores) groups[key(s)].push_back(&s);

    std::map<std::string, GroupStats> out;
    for (const auto& [name, members] : groups) {
        GroupStats g;
        g.sessions = members.size();
        for (const auto& metric : metric_ids()) {
            double sum = 0.0;
            size_t n = 0;
            for (const auto* s : members) {
                auto it = s->metrics.find(metric);
                if (it != s->metrics.end() && it->second) {
                    sum += it->second->value;
                    ++n;
                }
            }
            if (n > 0) g.metric_means[metric] = sum / static_cast<double>(n);
        }
        if (g.metric_means.empty())
            throw EmptyGroup("group '" + name + "' has no usable scores");
        out[name] = g;
    }
    return out;
}

}  // namespace

std::map<std::string, GroupStats> aggregate_by_attitude(
    const std::vector<SessionScore>& scores) {
    return aggregate_by(scores, [](const SessionScore& s) { return to_string(s.attitude); });
}

std::map<std::string, GroupStats> aggregate_by_model(const std::vector<SessionScore>& scores) {
    return aggregate_by(scores, [](const SessionScore& s) { return s.model_id; });
}

using nlohmann::json;

void to_json(json& j, const IntakeForm& v) {
    j = json{{"form_id", v.form_id},
             {"persona", v.persona},
             {"negative_thoughts", v.negative_thoughts},
             {"attitude", to_string(v.attitude)}};
}

void from_json(const json& j, IntakeForm& v) {
    j.at("form_id").get_to(v.form_id);
    j.at("persona").get_to(v.persona);
    j.at("negative_thoughts").get_to(v.negative_thoughts);
    auto a = attitude_from_string(j.at("attitude").get<std::string>());
    if (!a) throw json::other_error::create(501, "unknown attitude", &j);
    v.attitude = *a;
}

void to_json(json& j, const SessionTranscript& v) {
    json turns = json::array();
    for (const auto& t : v.turns)
        turns.push_back(json{{"client", t.client}, {"counselor", t.counselor}});
    j = json{{"form_id", v.form_id},
             {"model_id", v.model_id},
             {"attitude", to_string(v.attitude)},
             {"turns", turns},
             {"ended_by", v.ended_by == SessionEnd::ClientEndToken ? "end_token" : "turn_cap"},
             {"degenerate", v.degenerate}};
}

void from_json(const json& j, SessionTranscript& v) {
    j.at("form_id").get_to(v.form_id);
    j.at("model_id").get_to(v.model_id);
    auto a = attitude_from_string(j.at("attitude").get<std::string>());
    if (!a) throw json::other_error::create(501, "unknown attitude", &j);
    v.attitude = *a;
    v.turns.clear();
    for (const auto& tj : j.at("turns"))
        v.turns.push_back({tj.at("client").get<std::string>(),
                           tj.value("counselor", "")});
    v.ended_by = j.at("ended_by").get<std::string>() == "end_token"
                     ? SessionEnd::ClientEndToken
                     : SessionEnd::TurnCap;
    v.degenerate = j.value("degenerate", false);
}

void to_json(json& j, const SessionScore& v) {
    json metrics = json::object();
    for (const auto& [id, ms] : v.metrics) {
        if (ms)
            metrics[id] = json{{"value", ms->value}, {"clamped", ms->clamped}};
        else
            metrics[id] = nullptr;
    }
    j = json{{"form_id", v.form_id},
             {"model_id", v.model_id},
             {"attitude", to_string(v.attitude)},
             {"metrics", metrics}};
}

void from_json(const json& j, SessionScore& v) {
    j.at("form_id").get_to(v.form_id);
    j.at("model_id").get_to(v.model_id);
    auto a = attitude_from_string(j.at("attitude").get<std::string>());
    if (!a) throw json::other_error::create(501, "unknown attitude", &j);
    v.attitude = *a;
    v.metrics.clear();
    for (const auto& [id, mj] : j.at("metrics").items()) {
        if (mj.is_null()) {
            v.metrics[id] = std::nullopt;
        } else {
            MetricScore ms;
            ms.value = mj.at("value").get<double>();
            ms.clamped = mj.value("clamped", false);
            v.metrics[id] = ms;
        }
    }
}

}  // namespace catchforge::eval
