#include "topiclda/text/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <unordered_set>

#include <json.hpp>

#include "topiclda/error.hpp"

namespace topiclda {

namespace {

std::string record_text(const RawRecord& r) {
    return r.title + " " + r.abstract_text;
}

} // namespace

Vocabulary build_vocabulary(std::span<const RawRecord> records,
                            const TokenizerConfig& config, int min_df) {
    if (min_df < 1) throw InvalidConfig("min_df must be >= 1");

    // document frequency per term (ordered map: ties resolve lexicographically)
    std::map<std::string, int> df;
    std::vector<std::string> seen;
    for (const auto& rec : records) {
        auto terms = tokenize(record_text(rec), config);
        seen.clear();
        for (auto& t : terms) seen.push_back(std::move(t));
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        for (const auto& t : seen) ++df[t];
    }

    std::vector<std::pair<std::string, int>> surviving;
    for (const auto& [term, count] : df) {
        if (count >= min_df) surviving.emplace_back(term, count);
    }
    if (surviving.empty()) {
        throw EmptyVocabulary("no term meets min_df=" + std::to_string(min_df));
    }
    // descending df; the map above already ordered ties lexicographically
    std::stable_sort(surviving.begin(), surviving.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    std::vector<std::string> terms;
    terms.reserve(surviving.size());
    for (auto& [term, _] : surviving) terms.push_back(std::move(term));
    return Vocabulary(std::move(terms));
}

Corpus encode_corpus(std::span<const RawRecord> records,
                     const Vocabulary& vocabulary,
                     const TokenizerConfig& config, EncodeReport* report) {
    Corpus corpus;
    corpus.vocabulary = vocabulary;
    for (const auto& rec : records) {
        Document doc;
        doc.id = rec.id;
        doc.year = rec.year;
        for (const auto& term : tokenize(record_text(rec), config)) {
            std::int32_t id = vocabulary.id_of(term);
            if (id >= 0) doc.tokens.push_back(id);
        }
        if (doc.tokens.empty()) {
            if (report) report->excluded_ids.push_back(rec.id);
            continue;
        }
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

std::vector<RawRecord> read_records_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open records file: " + path);

    std::vector<RawRecord> records;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw IoError(path + ":" + std::to_string(line_no) +
                          ": invalid JSON: " + e.what());
        }
        if (!obj.is_object() || !obj.contains("id")) {
            throw IoError(path + ":" + std::to_string(line_no) +
                          ": expected an object with an \"id\" key");
        }
        RawRecord rec;
        rec.id = obj.at("id").get<std::string>();
        if (!ids.insert(rec.id).second) {
            throw IoError(path + ":" + std::to_string(line_no) +
                          ": duplicate record id \"" + rec.id + "\"");
        }
        rec.title = obj.value("title", std::string());
        rec.abstract_text = obj.value("abstract", std::string());
        rec.year = obj.value("year", 0);
        rec.venue = obj.value("venue", std::string());
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace topiclda
