#include "topiclda/analysis/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include <json.hpp>

#include "topiclda/error.hpp"
#include "topiclda/rec/followee.hpp"

namespace topiclda {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json config_json(const ExperimentConfig& c) {
    json j;
    j["input"] = c.input_path;
    if (c.venue_filter) {
        j["venues"] = std::vector<std::string>(c.venue_filter->begin(),
                                               c.venue_filter->end());
    } else {
        j["venues"] = nullptr;
    }
    j["year_min"] = c.year_min;
    j["year_max"] = c.year_max;
    j["min_df"] = c.min_df;
    j["min_len"] = c.tokenizer.min_len;
    j["stopword_count"] = c.tokenizer.stopwords.size();
    j["topics"] = c.lda.topics;
    j["alpha"] = c.lda.alpha;
    j["beta"] = c.lda.beta;
    j["iterations"] = c.lda.iterations;
    j["burn_in"] = c.lda.burn_in;
    j["sample_lag"] = c.lda.sample_lag;
    j["average_samples"] = c.lda.average_samples;
    j["seed"] = c.lda.seed;
    j["top_n_words"] = c.top_n_words;
    j["tags_per_doc"] = c.tags_per_doc;
    return j;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    return out;
}

} // namespace

void ExperimentConfig::validate() const {
    if (input_path.empty()) throw InvalidConfig("input path is required");
    if (output_dir.empty()) throw InvalidConfig("output directory is required");
    if (year_min > year_max) throw InvalidConfig("year range is inverted");
    if (top_n_words < 1) throw InvalidConfig("top_n_words must be >= 1");
    if (tags_per_doc < 1) throw InvalidConfig("tags_per_doc must be >= 1");
    if (min_df < 1) throw InvalidConfig("min_df must be >= 1");
    lda.validate();
}

std::vector<TopicTrend> topic_trends(const Matrix& theta,
                                     std::span<const Document> docs,
                                     int year_min, int year_max,
                                     std::size_t* excluded) {
    if (theta.rows() != docs.size()) {
        throw DimensionMismatch("theta rows != document count");
    }
    const auto k = theta.cols();
    std::map<int, std::pair<std::vector<double>, std::size_t>> by_year;
    std::size_t skipped = 0;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        const int year = docs[d].year;
        if (year == 0 || year < year_min || year > year_max) {
            ++skipped;
            continue;
        }
        auto& [acc, count] = by_year[year];
        if (acc.empty()) acc.assign(k, 0.0);
        for (std::size_t t = 0; t < k; ++t) acc[t] += theta.at(d, t);
        ++count;
    }
    if (excluded) *excluded = skipped;
    if (by_year.empty()) {
        throw NoDocumentsInRange("no documents in year range " +
                                 std::to_string(year_min) + ":" +
                                 std::to_string(year_max));
    }
    std::vector<TopicTrend> trends(k);
    for (std::size_t t = 0; t < k; ++t) {
        trends[t].topic = static_cast<int>(t);
        for (const auto& [year, entry] : by_year) {
            trends[t].per_year_mass.emplace_back(
                year, entry.first[t] / static_cast<double>(entry.second));
        }
    }
    return trends;
}

std::vector<std::string> generate_tags(const TopicModel& model,
                                       std::span<const double> doc_theta,
                                       std::size_t n) {
    if (n < 1) throw InvalidConfig("tag count must be >= 1");
    if (doc_theta.size() != model.phi.rows()) {
        throw DimensionMismatch("doc_theta length != K");
    }
    const std::size_t per_topic = std::min(n, model.phi.cols());
    std::vector<std::string> tags;
    for (int topic : derive_topic_order(doc_theta, 3)) {
        for (auto& [term, prob] : top_words(model, static_cast<std::size_t>(topic),
                                            per_topic)) {
            if (std::find(tags.begin(), tags.end(), term) == tags.end()) {
                tags.push_back(term);
            }
        }
    }
    if (tags.size() > n) tags.resize(n);
    return tags;
}

void write_topic_table(const TopicModel& model, int top_n_words,
                       const std::string& path) {
    auto out = open_out(path);
    out << "topic_id\trank\tterm\tprob\n";
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(top_n_words),
                                         model.phi.cols());
    for (std::size_t topic = 0; topic < model.phi.rows(); ++topic) {
        auto words = top_words(model, topic, n);
        for (std::size_t rank = 0; rank < words.size(); ++rank) {
            out << topic << "\t" << (rank + 1) << "\t" << words[rank].first
                << "\t" << format_double(words[rank].second) << "\n";
        }
    }
}

void write_trend_table(const std::vector<TopicTrend>& trends,
                       const std::string& path) {
    auto out = open_out(path);
    out << "year,topic,mass\n";
    if (trends.empty()) return;
    // rows ordered (year, topic) ascending
    for (std::size_t yi = 0; yi < trends.front().per_year_mass.size(); ++yi) {
        for (const auto& trend : trends) {
            const auto& [year, mass] = trend.per_year_mass[yi];
            out << year << "," << trend.topic << "," << format_double(mass)
                << "\n";
        }
    }
}

void write_tag_table(const TopicModel& model,
                     std::span<const std::string> doc_ids, int tags_per_doc,
                     const std::string& path) {
    if (doc_ids.size() != model.theta.rows()) {
        throw DimensionMismatch("doc id count != theta rows");
    }
    auto out = open_out(path);
    for (std::size_t d = 0; d < doc_ids.size(); ++d) {
        auto tags = generate_tags(model, model.theta.row(d),
                                  static_cast<std::size_t>(tags_per_doc));
        json j;
        j["doc_id"] = doc_ids[d];
        j["tags"] = tags;
        out << j.dump() << "\n";
    }
}

ExperimentArtifacts run_experiment(const ExperimentConfig& config) {
    config.validate();

    RunManifest manifest;
    auto records = read_records_jsonl(config.input_path);
    manifest.records_read = records.size();

    std::vector<RawRecord> kept;
    for (auto& rec : records) {
        if (config.venue_filter && !config.venue_filter->contains(rec.venue)) {
            ++manifest.filtered_by_venue;
            continue;
        }
        if (rec.year < config.year_min || rec.year > config.year_max) {
            ++manifest.filtered_by_year;
            continue;
        }
        kept.push_back(std::move(rec));
    }
    if (kept.empty()) {
        throw NoDocuments("no records survive the venue/year filters");
    }

    auto vocabulary = build_vocabulary(kept, config.tokenizer, config.min_df);
    EncodeReport report;
    auto corpus = encode_corpus(kept, vocabulary, config.tokenizer, &report);
    manifest.excluded_empty_ids = report.excluded_ids;
    if (corpus.documents.empty()) {
        throw NoDocuments("every record encoded to an empty document");
    }
    manifest.documents = corpus.documents.size();
    manifest.tokens = corpus.total_tokens();
    manifest.vocabulary = vocabulary.size();

    SamplerState state(corpus, config.lda);
    state.run();
    manifest.final_log_likelihood = state.log_likelihood();

    auto model = make_model(state);

    std::filesystem::create_directories(config.output_dir);
    ExperimentArtifacts artifacts;
    auto in_dir = [&](const char* name) {
        return (std::filesystem::path(config.output_dir) / name).string();
    };
    artifacts.model_path = in_dir("model.json");
    artifacts.topics_path = in_dir("topics.tsv");
    artifacts.trends_path = in_dir("trends.csv");
    artifacts.tags_path = in_dir("tags.jsonl");
    artifacts.manifest_path = in_dir("manifest.json");

    save_model(state, artifacts.model_path);
    write_topic_table(model, config.top_n_words, artifacts.topics_path);

    try {
        auto trends = topic_trends(model.theta, corpus.documents,
                                   config.year_min, config.year_max,
                                   &manifest.docs_without_year);
        write_trend_table(trends, artifacts.trends_path);
    } catch (const NoDocumentsInRange&) {
        manifest.docs_without_year = corpus.documents.size();
        write_trend_table({}, artifacts.trends_path);
    }

    std::vector<std::string> doc_ids;
    doc_ids.reserve(corpus.documents.size());
    for (const auto& doc : corpus.documents) doc_ids.push_back(doc.id);
    write_tag_table(model, doc_ids, config.tags_per_doc, artifacts.tags_path);

    const auto cfg_json = config_json(config);
    manifest.config_hash = hex64(fnv1a(cfg_json.dump()));

    json m;
    m["format"] = 1;
    m["config"] = cfg_json;
    m["config_hash"] = manifest.config_hash;
    m["corpus"] = json{{"records_read", manifest.records_read},
                       {"filtered_by_venue", manifest.filtered_by_venue},
                       {"filtered_by_year", manifest.filtered_by_year},
                       {"excluded_empty", manifest.excluded_empty_ids},
                       {"documents", manifest.documents},
                       {"tokens", manifest.tokens},
                       {"vocabulary", manifest.vocabulary},
                       {"docs_without_year", manifest.docs_without_year}};
    // rounded so the value does not depend on the platform's lgamma ulps
    m["final_log_likelihood"] =
        std::round(manifest.final_log_likelihood * 1e6) / 1e6;
    auto out = open_out(artifacts.manifest_path);
    out << m.dump(2) << "\n";

    artifacts.manifest = manifest;
    return artifacts;
}

} // namespace topiclda
