#include "catchforge/core/text.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace catchforge::core::text {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string to_lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

namespace {

// UTF-8 sequences folded to ASCII: curly quotes, full-width punctuation.
const std::map<std::string, std::string>& fold_table() {
    static const std::map<std::string, std::string> t = {
        {"“", "\""}, {"”", "\""}, {"‘", "'"}, {"’", "'"},
        {"，", ","},  {"。", "."},  {"！", "!"}, {"？", "?"},
        {"：", ":"},  {"；", ";"},  {"（", "("}, {"）", ")"},
        {"、", ","},  {"＂", "\""}, {"＇", "'"},
    };
    return t;
}

std::string fold_punctuation(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        bool replaced = false;
        for (const auto& [from, to] : fold_table()) {
            if (s.compare(i, from.size(), from) == 0) {
                out += to;
                i += from.size();
                replaced = true;
                break;
            }
        }
        if (!replaced) out += s[i++];
    }
    return out;
}

}  // namespace

std::string normalize_for_comparison(const std::string& s) {
    std::string folded = fold_punctuation(s);
    std::string out;
    out.reserve(folded.size());
    bool in_ws = false;
    for (unsigned char c : folded) {
        if (std::isspace(c)) {
            in_ws = true;
            continue;
        }
        if (in_ws && !out.empty()) out += ' ';
        in_ws = false;
        out += static_cast<char>(c);
    }
    return out;
}

bool equal_normalized(const std::string& a, const std::string& b) {
    return normalize_for_comparison(a) == normalize_for_comparison(b);
}

std::vector<std::string> word_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char c : s) {
        if (std::isalnum(c)) {
            cur += static_cast<char>(std::tolower(c));
        } else if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool shares_consecutive_words(const std::string& a, const std::string& b, size_t threshold) {
    if (threshold == 0) return true;
    auto wa = word_tokens(a);
    auto wb = word_tokens(b);
    if (wa.size() < threshold || wb.size() < threshold) return false;
    // O(n*m) longest-common-run scan; inputs are short utterances.
    for (size_t i = 0; i + threshold <= wa.size(); ++i) {
        for (size_t j = 0; j + threshold <= wb.size(); ++j) {
            size_t k = 0;
            while (i + k < wa.size() && j + k < wb.size() && wa[i + k] == wb[j + k]) ++k;
            if (k >= threshold) return true;
        }
    }
    return false;
}

bool contains_term(const std::string& haystack, const std::string& term) {
    auto hw = word_tokens(haystack);
    auto tw = word_tokens(term);
    if (tw.empty() || hw.size() < tw.size()) return false;
    for (size_t i = 0; i + tw.size() <= hw.size(); ++i) {
        bool all = true;
        for (size_t j = 0; j < tw.size(); ++j) {
            if (hw[i + j] != tw[j]) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

size_t count_sentences(const std::string& s) {
    const std::string folded = fold_punctuation(s);
    size_t n = 0;
    bool content = false;
    for (char c : folded) {
        if (c == '.' || c == '!' || c == '?') {
            if (content) ++n;
            content = false;
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            content = true;
        }
    }
    if (content) ++n;
    return n;
}

}  // namespace catchforge::core::text
