#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace topiclda {

using StopwordSet = std::unordered_set<std::string>;

struct TokenizerConfig {
    std::size_t min_len = 3;
    StopwordSet stopwords; // applied after lowercasing
};

// Lowercase, split on any non-alphanumeric byte, drop terms shorter than
// min_len and terms in the stopword set. Order is preserved; degenerate
// input yields an empty sequence. ASCII-only: bytes outside [A-Za-z0-9]
// are separators.
std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerConfig& config);

// Stopword file: UTF-8 text, one token per line, '#' starts a comment line.
// Tokens are lowercased. Throws IoError if the file cannot be read.
StopwordSet load_stopwords(const std::string& path);

// Built-in copy of data/stopwords_en.txt, for callers that pass no file.
const StopwordSet& default_stopwords();

} // namespace topiclda
