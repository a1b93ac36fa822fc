#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "catchforge/core/types.hpp"

namespace catchforge::data {

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A JSONL record failed validation; carries the 1-based line number.
class SchemaError : public DataError {
public:
    SchemaError(std::string what, size_t line_no)
        : DataError("line " + std::to_string(line_no) + ": " + std::move(what)),
          line(line_no) {}
    size_t line = 0;
};

class DuplicateId : public DataError {
public:
    using DataError::DataError;
};

/// A counselor reply has no matching annotation at SFT export time.
class MissingAnnotation : public DataError {
public:
    MissingAnnotation(int turn)
        : DataError("no annotation for turn " + std::to_string(turn)), turn_index(turn) {}
    int turn_index = 0;
};

/// Two dialogue sets paired for A/B comparison disagree on case ids.
class CaseMismatch : public DataError {
public:
    using DataError::DataError;
};

// --- consultation cases -----------------------------------------------------

std::vector<core::ConsultationCase> read_cases(std::istream& in);
std::vector<core::ConsultationCase> read_cases_file(const std::string& path);

// --- dialogues and annotations ----------------------------------------------

void write_dialogues(std::ostream& out, const std::vector<core::StagedDialogue>& dialogues);
std::vector<core::StagedDialogue> read_dialogues(std::istream& in);
void write_dialogues_file(const std::string& path,
                          const std::vector<core::StagedDialogue>& dialogues);
std::vector<core::StagedDialogue> read_dialogues_file(const std::string& path);

struct AnnotatedDialogue {
    core::StagedDialogue dialogue;
    std::vector<core::MdpAnnotation> annotations;
};

void write_annotated(std::ostream& out, const std::vector<AnnotatedDialogue>& items);
std::vector<AnnotatedDialogue> read_annotated(std::istream& in);
void write_annotated_file(const std::string& path,
                          const std::vector<AnnotatedDialogue>& items);
std::vector<AnnotatedDialogue> read_annotated_file(const std::string& path);

// --- SFT export ---------------------------------------------------------------

/// Version tag stamped on exported SFT records.
inline constexpr const char* kSftFormatVersion = "h1";

/// One training sample per annotated counselor reply: the system prompt is
/// the knowledge text, the history runs up to the client utterance being
/// answered, and the target wraps the fused reasoning in <think> markers
/// followed by the reply.
std::vector<core::SftSample> export_sft(const core::StagedDialogue& dialogue,
                                        const std::vector<core::MdpAnnotation>& annotations);

void write_sft(std::ostream& out, const std::vector<core::SftSample>& samples);
std::vector<core::SftSample> read_sft(std::istream& in);
void write_sft_file(const std::string& path, const std::vector<core::SftSample>& samples);
std::vector<core::SftSample> read_sft_file(const std::string& path);

// --- blinded A/B pairs ---------------------------------------------------------

/// Comparison dimension codes: goal/working/ending stage quality, case
/// coherence, dialogue fluency, and treatment fidelity.
const std::vector<std::string>& ab_dimensions();

struct AbPair {
    std::string case_id;
    std::string side_a;  // rendered dialogue shown as "A"
    std::string side_b;
    std::vector<std::string> dimensions;
};

struct AbKeyEntry {
    std::string case_id;
    char a_source = 'x';  // which input set landed on side A: 'x' or 'y'
};

/// Pairs dialogues from two systems case-by-case, assigning sides with a
/// seeded coin flip so raters stay blind; the unblinding key is returned
/// separately. Both sets must cover the same case ids in the same order.
std::vector<AbPair> export_ab_pairs(const std::vector<core::StagedDialogue>& xs,
                                    const std::vector<core::StagedDialogue>& ys,
                                    unsigned seed, std::vector<AbKeyEntry>* key);

void write_ab_pairs_file(const std::string& path, const std::vector<AbPair>& pairs);
void write_ab_key_file(const std::string& path, const std::vector<AbKeyEntry>& key);

}  // namespace catchforge::data
