#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "catchforge/core/types.hpp"
#include "catchforge/data/dataset.hpp"
#include "catchforge/filter/filter.hpp"
#include "catchforge/llm/gateway.hpp"
#include "catchforge/mdp/annotate.hpp"
#include "catchforge/pds/synth.hpp"
#include "catchforge/prompts/registry.hpp"

namespace catchforge::data {

struct PipelineConfig {
    pds::SynthConfig synth;
    filter::FilterConfig filter;
    mdp::AnnotateConfig annotate;
    std::string out_dir = "runs";

    /// Stable serialization used for the config hash.
    std::string fingerprint() const;
};

struct PhaseCounts {
    size_t in = 0;
    size_t ok = 0;
    size_t failed = 0;
};

struct Manifest {
    std::string run_id;       // "run-" + config/input content hash prefix
    std::string config_hash;  // full hex hash of the fingerprint
    std::map<std::string, PhaseCounts> phases;  // synth, filter, annotate, export
    size_t errors = 0;

    std::string to_json_string() const;
};

/// 64-bit FNV-1a, hex-encoded; used for config hashes and run directories.
std::string content_hash(const std::string& payload);

/// End-to-end synth -> filter -> annotate -> export run. Artifacts land in a
/// content-addressed directory under `config.out_dir`:
///   dialogues.jsonl, retained.jsonl, filter_reports.jsonl,
///   annotated.jsonl, sft.jsonl, audit.jsonl, manifest.json
/// Per-item failures are counted, not fatal.
Manifest run_pipeline(const std::vector<core::ConsultationCase>& cases,
                      std::shared_ptr<llm::Gateway> gateway,
                      const prompts::PromptRegistry* registry, const PipelineConfig& config);

}  // namespace catchforge::data
