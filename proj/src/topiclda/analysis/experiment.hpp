#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "topiclda/lda/model.hpp"
#include "topiclda/lda/serialize.hpp"
#include "topiclda/matrix.hpp"
#include "topiclda/text/corpus.hpp"

namespace topiclda {

// End-to-end experiment: ingest bibliographic records, train LDA, emit the
// topic table, per-year trends and per-document tags, plus the model file
// and a run manifest. Deterministic given the config (seed included):
// rerunning with an identical config writes byte-identical artifacts.
struct ExperimentConfig {
    std::string input_path;
    std::optional<std::set<std::string>> venue_filter;
    int year_min = 0;
    int year_max = 9999;
    TokenizerConfig tokenizer;
    int min_df = 2;
    LdaConfig lda;
    int top_n_words = 20;
    int tags_per_doc = 10;
    std::string output_dir;

    void validate() const;
};

struct RunManifest {
    std::string config_hash;
    std::size_t records_read = 0;
    std::size_t filtered_by_venue = 0;
    std::size_t filtered_by_year = 0;
    std::vector<std::string> excluded_empty_ids;
    std::size_t documents = 0;
    std::size_t tokens = 0;
    std::size_t vocabulary = 0;
    std::size_t docs_without_year = 0; // excluded from trends
    double final_log_likelihood = 0.0;
};

struct ExperimentArtifacts {
    std::string model_path;
    std::string topics_path;
    std::string trends_path;
    std::string tags_path;
    std::string manifest_path;
    RunManifest manifest;
};

ExperimentArtifacts run_experiment(const ExperimentConfig& config);

// Mean theta mass per (year, topic) over the documents of that year.
// Documents with year == 0 or outside [year_min, year_max] are skipped and
// counted into *excluded when given. For any kept year, the masses over all
// topics sum to 1 within 1e-6. Throws NoDocumentsInRange when nothing is in
// range.
struct TopicTrend {
    int topic = 0;
    std::vector<std::pair<int, double>> per_year_mass; // ascending year
};
std::vector<TopicTrend> topic_trends(const Matrix& theta,
                                     std::span<const Document> docs,
                                     int year_min, int year_max,
                                     std::size_t* excluded = nullptr);

// Tags for one document: the top terms of its dominant topics. Topics are
// the top-3 of doc_theta in mass order; each contributes its top_words;
// duplicates keep the first occurrence; the list is truncated to n.
std::vector<std::string> generate_tags(const TopicModel& model,
                                       std::span<const double> doc_theta,
                                       std::size_t n);

// Table writers shared by run_experiment and the re-emission subcommands.
void write_topic_table(const TopicModel& model, int top_n_words,
                       const std::string& path);
void write_trend_table(const std::vector<TopicTrend>& trends,
                       const std::string& path);
void write_tag_table(const TopicModel& model, std::span<const std::string> doc_ids,
                     int tags_per_doc, const std::string& path);

} // namespace topiclda
