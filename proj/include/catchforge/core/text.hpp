#pragma once

#include <string>
#include <vector>

namespace catchforge::core::text {

std::string trim(const std::string& s);
std::string to_lower(const std::string& s);

/// Collapse internal whitespace runs to one space, trim ends, fold unicode
/// quotes and full-width punctuation to their ASCII forms. Used for the
/// response-equality check in strategy verification.
std::string normalize_for_comparison(const std::string& s);

bool equal_normalized(const std::string& a, const std::string& b);

/// Lowercased word tokens (runs of alphanumerics).
std::vector<std::string> word_tokens(const std::string& s);

/// True when `a` and `b` share a run of at least `threshold` consecutive
/// word tokens. Background-leak guard.
bool shares_consecutive_words(const std::string& a, const std::string& b, size_t threshold);

/// Word-boundary, case-insensitive containment of a multi-word term.
bool contains_term(const std::string& haystack, const std::string& term);

size_t count_sentences(const std::string& s);

}  // namespace catchforge::core::text
