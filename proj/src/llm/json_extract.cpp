#include "catchforge/llm/json_extract.hpp"

#include <optional>
#include <vector>

namespace catchforge::llm {

namespace {

std::optional<nlohmann::json> try_parse_object(const std::string& s) {
    auto j = nlohmann::json::parse(s, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    return j;
}

// Contents of every ```fenced``` block, fence info string skipped.
std::vector<std::string> fenced_blocks(const std::string& content) {
    std::vector<std::string> out;
    size_t pos = 0;
    while ((pos = content.find("```", pos)) != std::string::npos) {
        size_t body_start = content.find('\n', pos + 3);
        if (body_start == std::string::npos) break;
        ++body_start;
        size_t end = content.find("```", body_start);
        if (end == std::string::npos) break;
        out.push_back(content.substr(body_start, end - body_start));
        pos = end + 3;
    }
    return out;
}

// End index (exclusive) of the brace-balanced span starting at `start`,
// honoring string literals and escapes.
std::optional<size_t> balanced_end(const std::string& s, size_t start) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (size_t i = start; i < s.size(); ++i) {
        char c = s[i];
        if (in_string) {
            if (escaped)
                escaped = false;
            else if (c == '\\')
                escaped = true;
            else if (c == '"')
                in_string = false;
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == '{') {
            ++depth;
        } else if (c == '}') {
            --depth;
            if (depth == 0) return i + 1;
            if (depth < 0) return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace

nlohmann::json extract_json_block(const std::string& content) {
    for (const auto& block : fenced_blocks(content)) {
        if (auto j = try_parse_object(block)) return *j;
        // A fenced block may still wrap the object in prose; fall through to
        // the brace scan below which also covers fenced content.
    }

    size_t first_brace = std::string::npos;
    for (size_t pos = content.find('{'); pos != std::string::npos;
         pos = content.find('{', pos + 1)) {
        if (first_brace == std::string::npos) first_brace = pos;
        if (auto end = balanced_end(content, pos)) {
            if (auto j = try_parse_object(content.substr(pos, *end - pos))) return *j;
        }
    }

    if (first_brace == std::string::npos) throw NoJsonFound("no JSON object in reply");
    throw MalformedJson("braces present but no parseable JSON object", first_brace);
}

}  // namespace catchforge::llm
