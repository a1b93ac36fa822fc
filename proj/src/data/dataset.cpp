#include "catchforge/data/dataset.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "catchforge/core/render.hpp"
#include "catchforge/core/text.hpp"
#include "catchforge/prompts/registry.hpp"

#include "json.hpp"

namespace catchforge::data {

using nlohmann::json;

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open for reading: " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path);
    return out;
}

/// Apply `fn` to every non-blank JSONL line, reporting 1-based line numbers.
template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (core::text::trim(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw SchemaError(std::string("invalid JSON: ") + e.what(), line_no);
        }
        fn(j, line_no);
    }
}

}  // namespace

std::vector<core::ConsultationCase> read_cases(std::istream& in) {
    std::vector<core::ConsultationCase> cases;
    std::set<std::string> seen;
    for_each_record(in, [&](const json& j, size_t line_no) {
        core::ConsultationCase c;
        try {
            c = j.get<core::ConsultationCase>();
        } catch (const json::exception& e) {
            throw SchemaError(e.what(), line_no);
        }
        if (c.case_id.empty()) throw SchemaError("empty case_id", line_no);
        if (core::text::trim(c.self_report).empty())
            throw SchemaError("empty self_report", line_no);
        if (!seen.insert(c.case_id).second)
            throw DuplicateId("duplicate case_id: " + c.case_id);
        cases.push_back(std::move(c));
    });
    return cases;
}

std::vector<core::ConsultationCase> read_cases_file(const std::string& path) {
    auto in = open_in(path);
    return read_cases(in);
}

void write_dialogues(std::ostream& out, const std::vector<core::StagedDialogue>& dialogues) {
    for (const auto& d : dialogues) out << json(d).dump() << "\n";
}

std::vector<core::StagedDialogue> read_dialogues(std::istream& in) {
    std::vector<core::StagedDialogue> out;
    for_each_record(in, [&](const json& j, size_t line_no) {
        try {
            out.push_back(j.get<core::StagedDialogue>());
        } catch (const json::exception& e) {
            throw SchemaError(e.what(), line_no);
        }
    });
    return out;
}

void write_dialogues_file(const std::string& path,
                          const std::vector<core::StagedDialogue>& dialogues) {
    auto out = open_out(path);
    write_dialogues(out, dialogues);
}

std::vector<core::StagedDialogue> read_dialogues_file(const std::string& path) {
    auto in = open_in(path);
    return read_dialogues(in);
}

void write_annotated(std::ostream& out, const std::vector<AnnotatedDialogue>& items) {
    for (const auto& item : items) {
        json j{{"dialogue", item.dialogue}, {"annotations", item.annotations}};
        out << j.dump() << "\n";
    }
}

std::vector<AnnotatedDialogue> read_annotated(std::istream& in) {
    std::vector<AnnotatedDialogue> out;
    for_each_record(in, [&](const json& j, size_t line_no) {
        try {
            AnnotatedDialogue item;
            j.at("dialogue").get_to(item.dialogue);
            j.at("annotations").get_to(item.annotations);
            out.push_back(std::move(item));
        } catch (const json::exception& e) {
            throw SchemaError(e.what(), line_no);
        }
    });
    return out;
}

void write_annotated_file(const std::string& path,
                          const std::vector<AnnotatedDialogue>& items) {
    auto out = open_out(path);
    write_annotated(out, items);
}

std::vector<AnnotatedDialogue> read_annotated_file(const std::string& path) {
    auto in = open_in(path);
    return read_annotated(in);
}

std::vector<core::SftSample> export_sft(const core::StagedDialogue& dialogue,
                                        const std::vector<core::MdpAnnotation>& annotations) {
    std::map<int, const core::MdpAnnotation*> by_turn;
    for (const auto& a : annotations) by_turn[a.turn_index] = &a;

    const std::string system = prompts::sst_knowledge().text;
    const int n = static_cast<int>(dialogue.turns.size());
    std::vector<core::SftSample> samples;

    auto emit = [&](int turn_index, const std::string& reply) {
        auto it = by_turn.find(turn_index);
        if (it == by_turn.end()) throw MissingAnnotation(turn_index);
        core::SftSample s;
        s.system = system;
        s.history = core::render_turns(dialogue.turns, std::min(turn_index, n));
        s.target = "<think>\n" + it->second->fused_cot + "\n</think>\n" + reply;
        samples.push_back(std::move(s));
    };
    for (int i = 1; i <= n; ++i) {
        const auto& t = dialogue.turns[static_cast<size_t>(i - 1)];
        if (t.counselor_utterance.empty()) continue;  // answered by the closing
        emit(i, t.counselor_utterance);
    }
    if (!dialogue.closing.empty()) emit(n + 1, dialogue.closing);
    return samples;
}

void write_sft(std::ostream& out, const std::vector<core::SftSample>& samples) {
    for (const auto& s : samples) {
        json j(s);
        j["format"] = kSftFormatVersion;
        out << j.dump() << "\n";
    }
}

std::vector<core::SftSample> read_sft(std::istream& in) {
    std::vector<core::SftSample> out;
    for_each_record(in, [&](const json& j, size_t line_no) {
        const std::string fmt = j.value("format", "");
        if (fmt != kSftFormatVersion)
            throw SchemaError("unsupported sample format '" + fmt + "'", line_no);
        try {
            out.push_back(j.get<core::SftSample>());
        } catch (const json::exception& e) {
            throw SchemaError(e.what(), line_no);
        }
    });
    return out;
}

void write_sft_file(const std::string& path, const std::vector<core::SftSample>& samples) {
    auto out = open_out(path);
    write_sft(out, samples);
}

std::vector<core::SftSample> read_sft_file(const std::string& path) {
    auto in = open_in(path);
    return read_sft(in);
}

const std::vector<std::string>& ab_dimensions() {
    static const std::vector<std::string> dims = {"GIS", "WS", "ES", "CCG", "DF", "TR"};
    return dims;
}

std::vector<AbPair> export_ab_pairs(const std::vector<core::StagedDialogue>& xs,
                                    const std::vector<core::StagedDialogue>& ys,
                                    unsigned seed, std::vector<AbKeyEntry>* key) {
    if (xs.size() != ys.size())
        throw CaseMismatch("dialogue sets differ in size: " + std::to_string(xs.size()) +
                           " vs " + std::to_string(ys.size()));
    std::mt19937 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<AbPair> pairs;
    if (key) key->clear();
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i].case_id != ys[i].case_id)
            throw CaseMismatch("case id mismatch at index " + std::to_string(i) + ": " +
                               xs[i].case_id + " vs " + ys[i].case_id);
        const bool x_is_a = coin(rng);
        AbPair p;
        p.case_id = xs[i].case_id;
        p.side_a = core::render_dialogue(x_is_a ? xs[i] : ys[i]);
        p.side_b = core::render_dialogue(x_is_a ? ys[i] : xs[i]);
        p.dimensions = ab_dimensions();
        pairs.push_back(std::move(p));
        if (key) key->push_back({xs[i].case_id, x_is_a ? 'x' : 'y'});
    }
    return pairs;
}

void write_ab_pairs_file(const std::string& path, const std::vector<AbPair>& pairs) {
    auto out = open_out(path);
    for (const auto& p : pairs) {
        json j{{"case_id", p.case_id},
               {"side_a", p.side_a},
               {"side_b", p.side_b},
               {"dimensions", p.dimensions}};
        out << j.dump() << "\n";
    }
}

void write_ab_key_file(const std::string& path, const std::vector<AbKeyEntry>& key) {
    auto out = open_out(path);
    for (const auto& k : key) {
        json j{{"case_id", k.case_id}, {"side_a_source", std::string(1, k.a_source)}};
        out << j.dump() << "\n";
    }
}

}  // namespace catchforge::data
