#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace catchforge::llm {

class NoJsonFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedJson : public std::runtime_error {
public:
    MalformedJson(const std::string& what, size_t offset)
        : std::runtime_error(what), offset_(offset) {}
    size_t offset() const { return offset_; }

private:
    size_t offset_;
};

/// Pulls the first syntactically valid top-level JSON object out of a model
/// reply. Fenced ``` blocks are tried first, then brace-balanced substrings.
nlohmann::json extract_json_block(const std::string& content);

}  // namespace catchforge::llm
