#include "topiclda/text/tokenizer.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "topiclda/error.hpp"

namespace topiclda {

namespace {

inline bool is_token_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9');
}

inline char to_lower_ascii(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                  : static_cast<char>(c);
}

#include "topiclda/text/default_stopwords.inc"

StopwordSet parse_stopwords(std::istream& in) {
    StopwordSet set;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        // trim surrounding whitespace and lowercase
        std::size_t b = line.find_first_not_of(" \t");
        std::size_t e = line.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        std::string term = line.substr(b, e - b + 1);
        for (char& c : term) c = to_lower_ascii(static_cast<unsigned char>(c));
        set.insert(std::move(term));
    }
    return set;
}

} // namespace

std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerConfig& config) {
    std::vector<std::string> out;
    std::string current;
    auto flush = [&] {
        if (current.size() >= config.min_len && !config.stopwords.contains(current)) {
            out.push_back(current);
        }
        current.clear();
    };
    for (unsigned char c : text) {
        if (is_token_char(c)) {
            current.push_back(to_lower_ascii(c));
        } else if (!current.empty()) {
            flush();
        }
    }
    if (!current.empty()) flush();
    return out;
}

StopwordSet load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stopword file: " + path);
    return parse_stopwords(in);
}

const StopwordSet& default_stopwords() {
    static const StopwordSet set = [] {
        std::istringstream in(kDefaultStopwordsText);
        return parse_stopwords(in);
    }();
    return set;
}

} // namespace topiclda
