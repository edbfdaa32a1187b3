#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "topiclda/text/tokenizer.hpp"
#include "topiclda/text/vocabulary.hpp"

namespace topiclda {

// One bibliographic record as ingested. Records without a year carry 0.
struct RawRecord {
    std::string id;
    std::string title;
    std::string abstract_text;
    int year = 0;
    std::string venue;
};

// Encoded document: in-vocabulary term ids of tokenize(title + " " + abstract),
// duplicates allowed, order preserved.
struct Document {
    std::string id;
    std::vector<std::int32_t> tokens;
    int year = 0;
};

struct Corpus {
    std::vector<Document> documents;
    Vocabulary vocabulary;

    std::size_t total_tokens() const {
        std::size_t n = 0;
        for (const auto& d : documents) n += d.tokens.size();
        return n;
    }
};

// Records whose encoded token sequence came out empty; they are excluded
// from the corpus and listed here.
struct EncodeReport {
    std::vector<std::string> excluded_ids;
};

// Terms appearing in at least min_df distinct records (after tokenization);
// ids by descending document frequency, ties lexicographically ascending.
// Throws EmptyVocabulary if nothing survives, InvalidConfig if min_df < 1.
Vocabulary build_vocabulary(std::span<const RawRecord> records,
                            const TokenizerConfig& config, int min_df);

Corpus encode_corpus(std::span<const RawRecord> records,
                     const Vocabulary& vocabulary,
                     const TokenizerConfig& config,
                     EncodeReport* report = nullptr);

// JSON-lines reader: one object per line with keys id, title, abstract,
// year, venue. Missing abstract -> empty, missing year -> 0. Throws IoError
// on unreadable files or malformed lines.
std::vector<RawRecord> read_records_jsonl(const std::string& path);

} // namespace topiclda
