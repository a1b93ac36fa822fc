#include "catchforge/data/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace catchforge::data {

using nlohmann::json;
namespace fs = std::filesystem;

std::string PipelineConfig::fingerprint() const {
    json j{{"synth",
            {{"goal_turns", synth.goal_turns},
             {"working_turns", synth.working_turns},
             {"negative_count", synth.negative_count},
             {"model_id", synth.model_id},
             {"leak_word_threshold", synth.leak_word_threshold},
             {"max_attempts", synth.policy.max_attempts},
             {"base_temperature", synth.policy.base_temperature},
             {"temperature_increment", synth.policy.temperature_increment},
             {"temperature_cap", synth.policy.temperature_cap}}},
           {"filter",
            {{"voters", filter.voters},
             {"jargon_lexicon", filter.jargon_lexicon},
             {"model_id", filter.model_id}}},
           {"annotate",
            {{"model_id", annotate.model_id},
             {"semantic_check", annotate.semantic_check},
             {"max_attempts", annotate.policy.max_attempts}}}};
    return j.dump();
}

std::string content_hash(const std::string& payload) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

std::string Manifest::to_json_string() const {
    json phases_j = json::object();
    for (const auto& [name, c] : phases)
        phases_j[name] = {{"in", c.in}, {"ok", c.ok}, {"failed", c.failed}};
    json j{{"run_id", run_id},
           {"config_hash", config_hash},
           {"phases", phases_j},
           {"errors", errors}};
    return j.dump(2);
}

Manifest run_pipeline(const std::vector<core::ConsultationCase>& cases,
                      std::shared_ptr<llm::Gateway> gateway,
                      const prompts::PromptRegistry* registry,
                      const PipelineConfig& config) {
    Manifest m;
    m.config_hash = content_hash(config.fingerprint());
    {
        std::string inputs;
        for (const auto& c : cases) inputs += c.case_id + "\n";
        m.run_id = "run-" + content_hash(config.fingerprint() + inputs).substr(0, 12);
    }
    const fs::path run_dir = fs::path(config.out_dir) / m.run_id;
    fs::create_directories(run_dir);

    std::ofstream audit_out(run_dir / "audit.jsonl");

    // synth
    pds::Synthesizer synth(gateway, registry, config.synth);
    std::vector<core::StagedDialogue> dialogues;
    auto& synth_counts = m.phases["synth"];
    synth_counts.in = cases.size();
    for (const auto& c : cases) {
        try {
            dialogues.push_back(synth.synthesize_dialogue(c));
            ++synth_counts.ok;
        } catch (const std::exception& e) {
            ++synth_counts.failed;
            ++m.errors;
            audit_out << json{{"phase", "synth"}, {"case_id", c.case_id},
                              {"error", e.what()}}
                             .dump()
                      << "\n";
        }
    }
    write_dialogues_file((run_dir / "dialogues.jsonl").string(), dialogues);

    // filter
    filter::QualityFilter qf(gateway, registry, config.filter);
    std::vector<core::StagedDialogue> retained;
    auto& filter_counts = m.phases["filter"];
    filter_counts.in = dialogues.size();
    {
        std::ofstream reports_out(run_dir / "filter_reports.jsonl");
        for (auto& d : dialogues) {
            auto report = qf.filter(d);
            json rj{{"dialogue_id", report.dialogue_id},
                    {"retained", report.retained()},
                    {"rewrites_applied", report.rewrites_applied},
                    {"discard_reason", report.discard_reason}};
            reports_out << rj.dump() << "\n";
            if (report.retained()) {
                retained.push_back(d);
                ++filter_counts.ok;
            } else {
                ++filter_counts.failed;
            }
        }
    }
    write_dialogues_file((run_dir / "retained.jsonl").string(), retained);

    // annotate
    mdp::Annotator annotator(gateway, registry, config.annotate,
                             [&](const mdp::AttemptRecord& rec) {
                                 audit_out << json{{"phase", "annotate"},
                                                   {"turn", rec.turn_index},
                                                   {"agent", rec.agent},
                                                   {"attempt", rec.attempt},
                                                   {"temperature", rec.temperature},
                                                   {"accepted", rec.accepted},
                                                   {"rule", rec.rule}}
                                                  .dump()
                                           << "\n";
                             });
    std::vector<AnnotatedDialogue> annotated;
    auto& ann_counts = m.phases["annotate"];
    ann_counts.in = retained.size();
    for (const auto& d : retained) {
        try {
            annotated.push_back({d, annotator.annotate_dialogue(d)});
            ++ann_counts.ok;
        } catch (const std::exception& e) {
            ++ann_counts.failed;
            ++m.errors;
            audit_out << json{{"phase", "annotate"}, {"case_id", d.case_id},
                              {"error", e.what()}}
                             .dump()
                      << "\n";
        }
    }
    write_annotated_file((run_dir / "annotated.jsonl").string(), annotated);

    // export
    std::vector<core::SftSample> samples;
    auto& export_counts = m.phases["export"];
    export_counts.in = annotated.size();
    for (const auto& item : annotated) {
        try {
            auto s = export_sft(item.dialogue, item.annotations);
            samples.insert(samples.end(), s.begin(), s.end());
            ++export_counts.ok;
        } catch (const std::exception& e) {
            ++export_counts.failed;
            ++m.errors;
            audit_out << json{{"phase", "export"}, {"case_id", item.dialogue.case_id},
                              {"error", e.what()}}
                             .dump()
                      << "\n";
        }
    }
    write_sft_file((run_dir / "sft.jsonl").string(), samples);

    std::ofstream(run_dir / "manifest.json") << m.to_json_string() << "\n";
    return m;
}

}  // namespace catchforge::data
