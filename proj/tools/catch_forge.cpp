// Command-line front end for the dialogue synthesis, annotation, and
// evaluation pipeline. Every subcommand works offline against a JSONL mock
// scenario (--mock) or online against an OpenAI-compatible endpoint
// (--endpoint, key via environment variable).

#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "json.hpp"

#include "catchforge/core/render.hpp"
#include "catchforge/data/dataset.hpp"
#include "catchforge/data/pipeline.hpp"
#include "catchforge/eval/session.hpp"
#include "catchforge/eval/stats.hpp"
#include "catchforge/filter/filter.hpp"
#include "catchforge/llm/http.hpp"
#include "catchforge/llm/mock.hpp"
#include "catchforge/mdp/annotate.hpp"
#include "catchforge/pds/synth.hpp"
#include "catchforge/prompts/registry.hpp"

namespace cf = catchforge;
using nlohmann::json;

namespace {

struct BackendOpts {
    std::string mock_path;
    std::string endpoint;
    std::string api_key_env = "CATCH_FORGE_API_KEY";

    void attach(CLI::App* cmd, const std::string& prefix = "") {
        cmd->add_option("--" + prefix + "mock", mock_path,
                        "JSONL mock scenario file (offline mode)");
        cmd->add_option("--" + prefix + "endpoint", endpoint,
                        "base URL of an OpenAI-compatible endpoint");
        cmd->add_option("--" + prefix + "api-key-env", api_key_env,
                        "environment variable holding the API key");
    }

    std::shared_ptr<cf::llm::Gateway> gateway() const {
        std::shared_ptr<cf::llm::ChatBackend> backend;
        if (!mock_path.empty()) {
            backend = std::make_shared<cf::llm::MockBackend>(
                cf::llm::MockBackend::from_file(mock_path));
        } else if (!endpoint.empty()) {
            cf::llm::EndpointConfig cfg;
            cfg.base_url = endpoint;
            cfg.api_key_env = api_key_env;
            backend = std::make_shared<cf::llm::HttpBackend>(cfg);
        } else {
            throw CLI::ValidationError("backend", "pass --mock or --endpoint");
        }
        return std::make_shared<cf::llm::Gateway>(backend);
    }
};

cf::prompts::PromptRegistry load_registry(const std::string& prompts_dir) {
    auto reg = cf::prompts::PromptRegistry::builtin();
    if (!prompts_dir.empty()) reg.override_from_directory(prompts_dir);
    return reg;
}

template <typename T>
std::vector<T> read_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::vector<T> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(json::parse(line).get<T>());
    }
    return out;
}

template <typename T>
void write_jsonl(const std::string& path, const std::vector<T>& items) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open: " + path);
    for (const auto& item : items) out << json(item).dump() << "\n";
}

json default_config_json() {
    cf::data::PipelineConfig cfg;
    cf::eval::SessionConfig sess;
    json j = json::parse(cfg.fingerprint());
    j["session"] = {{"min_end_turn", sess.min_end_turn},
                    {"max_turns", sess.max_turns},
                    {"counselor_temperature", sess.counselor_temperature},
                    {"client_temperature", sess.client_temperature}};
    j["sft_format"] = cf::data::kSftFormatVersion;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"counseling dialogue synthesis, annotation, and evaluation"};
    app.require_subcommand(1);

    std::string prompts_dir;
    app.add_option("--prompts", prompts_dir, "directory of prompt template overrides")
        ->envname("CATCH_FORGE_PROMPTS");

    // ---- synth ----
    auto* synth_cmd = app.add_subcommand("synth", "synthesize staged dialogues from cases");
    BackendOpts synth_backend;
    synth_backend.attach(synth_cmd);
    std::string synth_cases, synth_out = "dialogues.jsonl";
    bool synth_onetime = false;
    cf::pds::SynthConfig synth_cfg;
    synth_cmd->add_option("--cases", synth_cases, "consultation cases JSONL")->required();
    synth_cmd->add_option("--out", synth_out, "output dialogues JSONL");
    synth_cmd->add_option("--goal-turns", synth_cfg.goal_turns, "goal stage turn count");
    synth_cmd->add_option("--working-turns", synth_cfg.working_turns,
                          "working stage turn count");
    synth_cmd->add_option("--negatives", synth_cfg.negative_count,
                          "non-positive resources per chain (0-4)")
        ->check(CLI::Range(0, 4));
    synth_cmd->add_option("--model", synth_cfg.model_id, "model id sent to the backend");
    synth_cmd->add_flag("--onetime", synth_onetime,
                        "single-call baseline instead of stage-wise synthesis");

    // ---- filter ----
    auto* filter_cmd = app.add_subcommand("filter", "quality-filter dialogues");
    BackendOpts filter_backend;
    filter_backend.attach(filter_cmd);
    std::string filter_in, filter_out = "retained.jsonl", filter_reports = "";
    cf::filter::FilterConfig filter_cfg;
    filter_cmd->add_option("--in", filter_in, "dialogues JSONL")->required();
    filter_cmd->add_option("--out", filter_out, "retained dialogues JSONL");
    filter_cmd->add_option("--reports", filter_reports, "per-dialogue report JSONL");
    filter_cmd->add_option("--voters", filter_cfg.voters, "judge vote count (odd)");

    // ---- annotate ----
    auto* ann_cmd = app.add_subcommand("annotate", "attach per-turn reasoning annotations");
    BackendOpts ann_backend;
    ann_backend.attach(ann_cmd);
    std::string ann_in, ann_out = "annotated.jsonl", ann_audit = "";
    cf::mdp::AnnotateConfig ann_cfg;
    ann_cmd->add_option("--in", ann_in, "dialogues JSONL")->required();
    ann_cmd->add_option("--out", ann_out, "annotated dialogues JSONL");
    ann_cmd->add_option("--audit", ann_audit, "agent attempt audit JSONL");

    // ---- export ----
    auto* exp_cmd = app.add_subcommand("export", "export SFT samples or blinded A/B pairs");
    std::string exp_in, exp_out = "sft.jsonl";
    std::string exp_ab_other, exp_ab_key = "ab_key.jsonl";
    unsigned exp_seed = 17;
    exp_cmd->add_option("--in", exp_in, "annotated dialogues JSONL")->required();
    exp_cmd->add_option("--out", exp_out, "output JSONL");
    exp_cmd->add_option("--ab-against", exp_ab_other,
                        "second dialogue set: emit blinded A/B pairs instead of SFT");
    exp_cmd->add_option("--ab-key", exp_ab_key, "unblinding key output path");
    exp_cmd->add_option("--seed", exp_seed, "seed for blinded side assignment");

    // ---- simulate ----
    auto* sim_cmd = app.add_subcommand("simulate", "run counselor/client sessions");
    BackendOpts sim_counselor, sim_client;
    sim_counselor.attach(sim_cmd);
    sim_client.attach(sim_cmd, "client-");
    std::string sim_forms, sim_out = "transcripts.jsonl";
    cf::eval::SessionConfig sim_cfg;
    sim_cmd->add_option("--forms", sim_forms, "intake forms JSONL")->required();
    sim_cmd->add_option("--out", sim_out, "transcripts JSONL");
    sim_cmd->add_option("--max-turns", sim_cfg.max_turns, "hard turn cap");
    sim_cmd->add_option("--min-end-turn", sim_cfg.min_end_turn,
                        "earliest turn the client may end the session");
    sim_cmd->add_option("--model", sim_cfg.counselor_model, "counselor model id");
    bool sim_plain = false;
    sim_cmd->add_flag("--plain", sim_plain, "counselor without reasoning markers");

    // ---- judge ----
    auto* judge_cmd = app.add_subcommand("judge", "score transcripts against the rubrics");
    BackendOpts judge_backend;
    judge_backend.attach(judge_cmd);
    std::string judge_in, judge_out = "scores.jsonl";
    std::string judge_group = "attitude";
    judge_cmd->add_option("--in", judge_in, "transcripts JSONL")->required();
    judge_cmd->add_option("--out", judge_out, "scores JSONL");
    judge_cmd->add_option("--group-by", judge_group, "aggregate key: attitude|model|none")
        ->check(CLI::IsMember({"attitude", "model", "none"}));

    // ---- stats ----
    auto* stats_cmd = app.add_subcommand("stats", "correlate two numeric JSONL fields");
    std::string stats_in, stats_x = "x", stats_y = "y", stats_method = "all";
    bool stats_exact = false;
    stats_cmd->add_option("--in", stats_in, "JSONL with numeric fields")->required();
    stats_cmd->add_option("--x", stats_x, "field name for the first variable");
    stats_cmd->add_option("--y", stats_y, "field name for the second variable");
    stats_cmd->add_option("--method", stats_method, "pearson|spearman|kendall|all")
        ->check(CLI::IsMember({"pearson", "spearman", "kendall", "all"}));
    stats_cmd->add_flag("--exact", stats_exact,
                        "exact permutation p-values (n <= 10 only)");

    // ---- run ----
    auto* run_cmd = app.add_subcommand("run", "full synth->filter->annotate->export run");
    BackendOpts run_backend;
    run_backend.attach(run_cmd);
    std::string run_cases;
    cf::data::PipelineConfig run_cfg;
    run_cmd->add_option("--cases", run_cases, "consultation cases JSONL")->required();
    run_cmd->add_option("--out-dir", run_cfg.out_dir, "parent directory for run artifacts");
    run_cmd->add_option("--goal-turns", run_cfg.synth.goal_turns, "goal stage turn count");
    run_cmd->add_option("--working-turns", run_cfg.synth.working_turns,
                        "working stage turn count");
    run_cmd->add_option("--negatives", run_cfg.synth.negative_count,
                        "non-positive resources per chain (0-4)")
        ->check(CLI::Range(0, 4));

    // ---- config ----
    app.add_subcommand("config", "print the effective default configuration");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("config")) {
            std::cout << default_config_json().dump(2) << "\n";
            return 0;
        }

        auto registry = load_registry(prompts_dir);

        if (app.got_subcommand(synth_cmd)) {
            auto cases = cf::data::read_cases_file(synth_cases);
            cf::pds::Synthesizer synth(synth_backend.gateway(), &registry, synth_cfg);
            std::vector<cf::core::StagedDialogue> dialogues;
            size_t failed = 0;
            for (const auto& c : cases) {
                try {
                    dialogues.push_back(synth_onetime ? synth.synthesize_onetime(c)
                                                      : synth.synthesize_dialogue(c));
                } catch (const std::exception& e) {
                    ++failed;
                    std::cerr << "synth failed for " << c.case_id << ": " << e.what()
                              << "\n";
                }
            }
            cf::data::write_dialogues_file(synth_out, dialogues);
            std::cout << "synthesized " << dialogues.size() << "/" << cases.size()
                      << " dialogues -> " << synth_out << "\n";
            return failed == 0 ? 0 : 1;
        }

        if (app.got_subcommand(filter_cmd)) {
            auto dialogues = cf::data::read_dialogues_file(filter_in);
            cf::filter::QualityFilter qf(filter_backend.gateway(), &registry, filter_cfg);
            std::vector<cf::core::StagedDialogue> retained;
            std::ofstream reports;
            if (!filter_reports.empty()) reports.open(filter_reports);
            for (auto& d : dialogues) {
                auto report = qf.filter(d);
                if (reports.is_open())
                    reports << json{{"dialogue_id", report.dialogue_id},
                                    {"retained", report.retained()},
                                    {"rewrites_applied", report.rewrites_applied},
                                    {"discard_reason", report.discard_reason}}
                                   .dump()
                            << "\n";
                if (report.retained()) retained.push_back(d);
            }
            cf::data::write_dialogues_file(filter_out, retained);
            std::cout << "retained " << retained.size() << "/" << dialogues.size()
                      << " dialogues -> " << filter_out << "\n";
            return 0;
        }

        if (app.got_subcommand(ann_cmd)) {
            auto dialogues = cf::data::read_dialogues_file(ann_in);
            std::ofstream audit;
            if (!ann_audit.empty()) audit.open(ann_audit);
            cf::mdp::Annotator annotator(
                ann_backend.gateway(), &registry, ann_cfg,
                [&](const cf::mdp::AttemptRecord& rec) {
                    if (audit.is_open())
                        audit << json{{"turn", rec.turn_index},
                                      {"agent", rec.agent},
                                      {"attempt", rec.attempt},
                                      {"temperature", rec.temperature},
                                      {"accepted", rec.accepted},
                                      {"rule", rec.rule}}
                                     .dump()
                              << "\n";
                });
            std::vector<cf::data::AnnotatedDialogue> annotated;
            size_t failed = 0;
            for (const auto& d : dialogues) {
                try {
                    annotated.push_back({d, annotator.annotate_dialogue(d)});
                } catch (const std::exception& e) {
                    ++failed;
                    std::cerr << "annotation failed for " << d.case_id << ": " << e.what()
                              << "\n";
                }
            }
            cf::data::write_annotated_file(ann_out, annotated);
            std::cout << "annotated " << annotated.size() << "/" << dialogues.size()
                      << " dialogues -> " << ann_out << "\n";
            return failed == 0 ? 0 : 1;
        }

        if (app.got_subcommand(exp_cmd)) {
            auto annotated = cf::data::read_annotated_file(exp_in);
            if (!exp_ab_other.empty()) {
                auto other = cf::data::read_annotated_file(exp_ab_other);
                std::vector<cf::core::StagedDialogue> xs, ys;
                for (const auto& a : annotated) xs.push_back(a.dialogue);
                for (const auto& b : other) ys.push_back(b.dialogue);
                std::vector<cf::data::AbKeyEntry> key;
                auto pairs = cf::data::export_ab_pairs(xs, ys, exp_seed, &key);
                cf::data::write_ab_pairs_file(exp_out, pairs);
                cf::data::write_ab_key_file(exp_ab_key, key);
                std::cout << "exported " << pairs.size() << " blinded pairs -> " << exp_out
                          << " (key: " << exp_ab_key << ")\n";
                return 0;
            }
            std::vector<cf::core::SftSample> samples;
            for (const auto& item : annotated) {
                auto s = cf::data::export_sft(item.dialogue, item.annotations);
                samples.insert(samples.end(), s.begin(), s.end());
            }
            cf::data::write_sft_file(exp_out, samples);
            std::cout << "exported " << samples.size() << " samples -> " << exp_out << "\n";
            return 0;
        }

        if (app.got_subcommand(sim_cmd)) {
            auto forms = read_jsonl<cf::eval::IntakeForm>(sim_forms);
            sim_cfg.reasoning_counselor = !sim_plain;
            cf::eval::SessionRunner runner(sim_counselor.gateway(), sim_client.gateway(),
                                           &registry, sim_cfg);
            std::vector<cf::eval::SessionTranscript> transcripts;
            for (const auto& f : forms) transcripts.push_back(runner.run(f));
            write_jsonl(sim_out, transcripts);
            size_t degenerate = 0;
            for (const auto& t : transcripts) degenerate += t.degenerate ? 1 : 0;
            std::cout << "ran " << transcripts.size() << " sessions (" << degenerate
                      << " degenerate) -> " << sim_out << "\n";
            return 0;
        }

        if (app.got_subcommand(judge_cmd)) {
            auto transcripts = read_jsonl<cf::eval::SessionTranscript>(judge_in);
            cf::eval::SessionJudge judge(judge_backend.gateway(), &registry);
            std::vector<cf::eval::SessionScore> scores;
            for (const auto& t : transcripts) scores.push_back(judge.score(t));
            write_jsonl(judge_out, scores);
            if (judge_group != "none") {
                auto groups = judge_group == "attitude"
                                  ? cf::eval::aggregate_by_attitude(scores)
                                  : cf::eval::aggregate_by_model(scores);
                json out = json::object();
                for (const auto& [name, g] : groups) {
                    out[name] = {{"sessions", g.sessions}, {"means", g.metric_means}};
                }
                std::cout << out.dump(2) << "\n";
            }
            std::cout << "scored " << scores.size() << " transcripts -> " << judge_out
                      << "\n";
            return 0;
        }

        if (app.got_subcommand(stats_cmd)) {
            std::ifstream in(stats_in);
            if (!in) throw std::runtime_error("cannot open: " + stats_in);
            std::vector<double> xs, ys;
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                auto j = json::parse(line);
                xs.push_back(j.at(stats_x).get<double>());
                ys.push_back(j.at(stats_y).get<double>());
            }
            json out = json::object();
            auto emit = [&](const std::string& name, cf::eval::CorrelationResult r,
                            cf::eval::CorrelationMethod m) {
                json e{{"statistic", r.statistic}, {"p_value", r.p_value}};
                if (stats_exact) e["p_exact"] = cf::eval::permutation_p_value(xs, ys, m);
                out[name] = e;
            };
            if (stats_method == "pearson" || stats_method == "all")
                emit("pearson", cf::eval::pearson(xs, ys),
                     cf::eval::CorrelationMethod::Pearson);
            if (stats_method == "spearman" || stats_method == "all")
                emit("spearman", cf::eval::spearman(xs, ys),
                     cf::eval::CorrelationMethod::Spearman);
            if (stats_method == "kendall" || stats_method == "all")
                emit("kendall", cf::eval::kendall_tau_b(xs, ys),
                     cf::eval::CorrelationMethod::KendallTauB);
            out["n"] = xs.size();
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (app.got_subcommand(run_cmd)) {
            auto cases = cf::data::read_cases_file(run_cases);
            auto manifest =
                cf::data::run_pipeline(cases, run_backend.gateway(), &registry, run_cfg);
            std::cout << manifest.to_json_string() << "\n";
            return manifest.errors == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
