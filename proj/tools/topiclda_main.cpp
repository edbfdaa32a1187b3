// topiclda: topic-model analysis of bibliographic corpora plus the
// topic-model-driven recommendation scorers.
//
// Subcommands: ingest, train, topics, trends, tags, recommend, oracle.
// Exit codes: 0 success, 2 config error, 3 data error, 4 numeric divergence.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "topiclda/analysis/experiment.hpp"
#include "topiclda/error.hpp"
#include "topiclda/kernels/kernels.hpp"
#include "topiclda/lda/oracle.hpp"
#include "topiclda/lda/serialize.hpp"
#include "topiclda/rec/rec_io.hpp"
#include "topiclda/rec/tlpmf.hpp"

using namespace topiclda;
using nlohmann::json;

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// "--out -" (default) writes to stdout
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw IoError("cannot write file: " + path);
            use_file_ = true;
        }
    }
    std::ostream& stream() { return use_file_ ? file_ : std::cout; }

private:
    std::ofstream file_;
    bool use_file_ = false;
};

struct CorpusOptions {
    std::string input;
    std::string stopword_path;
    bool no_stopwords = false;
    std::size_t min_len = 3;
    int min_df = 2;
    std::vector<std::string> venues;
    std::string years; // "min:max"
};

void add_corpus_options(CLI::App* cmd, CorpusOptions& opt) {
    cmd->add_option("--input", opt.input, "records JSON-lines file")->required();
    cmd->add_option("--stopwords", opt.stopword_path,
                    "stopword file (default: $TOPICLDA_STOPWORDS or built-in list)");
    cmd->add_flag("--no-stopwords", opt.no_stopwords, "disable stopword removal");
    cmd->add_option("--min-len", opt.min_len, "minimum term length");
    cmd->add_option("--min-df", opt.min_df,
                    "minimum document frequency for vocabulary terms");
    cmd->add_option("--venues", opt.venues, "venue filter, comma separated")
        ->delimiter(',');
    cmd->add_option("--years", opt.years, "year range as MIN:MAX");
}

TokenizerConfig tokenizer_from(const CorpusOptions& opt) {
    TokenizerConfig cfg;
    cfg.min_len = opt.min_len;
    if (opt.no_stopwords) {
        cfg.stopwords.clear();
    } else if (!opt.stopword_path.empty()) {
        cfg.stopwords = load_stopwords(opt.stopword_path);
    } else if (const char* env = std::getenv("TOPICLDA_STOPWORDS")) {
        cfg.stopwords = load_stopwords(env);
    } else {
        cfg.stopwords = default_stopwords();
    }
    return cfg;
}

std::pair<int, int> parse_years(const std::string& range) {
    if (range.empty()) return {0, 9999};
    auto colon = range.find(':');
    try {
        if (colon == std::string::npos) {
            int y = std::stoi(range);
            return {y, y};
        }
        return {std::stoi(range.substr(0, colon)),
                std::stoi(range.substr(colon + 1))};
    } catch (const std::exception&) {
        throw InvalidConfig("cannot parse year range \"" + range +
                            "\"; expected MIN:MAX");
    }
}

std::vector<int> parse_topic_list(const std::vector<std::string>& items) {
    std::vector<int> topics;
    for (const auto& s : items) {
        try {
            topics.push_back(std::stoi(s));
        } catch (const std::exception&) {
            throw InvalidConfig("bad topic index \"" + s + "\"");
        }
    }
    return topics;
}

// ---------------------------------------------------------------- ingest --
struct IngestArgs {
    CorpusOptions corpus;
    std::string out;
};

void run_ingest(const IngestArgs& args) {
    auto records = read_records_jsonl(args.corpus.input);
    auto [year_min, year_max] = parse_years(args.corpus.years);
    std::optional<std::set<std::string>> venue_filter;
    if (!args.corpus.venues.empty()) {
        venue_filter.emplace(args.corpus.venues.begin(), args.corpus.venues.end());
    }
    std::vector<RawRecord> kept;
    for (auto& rec : records) {
        if (venue_filter && !venue_filter->contains(rec.venue)) continue;
        if (rec.year < year_min || rec.year > year_max) continue;
        kept.push_back(std::move(rec));
    }
    if (kept.empty()) throw NoDocuments("no records survive the filters");

    auto tokenizer = tokenizer_from(args.corpus);
    auto vocabulary = build_vocabulary(kept, tokenizer, args.corpus.min_df);
    EncodeReport report;
    auto corpus = encode_corpus(kept, vocabulary, tokenizer, &report);
    if (corpus.documents.empty()) {
        throw NoDocuments("every record encoded to an empty document");
    }

    json j;
    j["format"] = 1;
    j["vocabulary"] = vocabulary.terms();
    json docs = json::array();
    for (const auto& doc : corpus.documents) {
        docs.push_back(json{{"id", doc.id}, {"year", doc.year},
                            {"tokens", doc.tokens}});
    }
    j["documents"] = std::move(docs);

    OutputTarget out(args.out);
    out.stream() << j.dump() << "\n";

    std::cerr << "ingested " << corpus.documents.size() << " documents, "
              << corpus.total_tokens() << " tokens, vocabulary "
              << vocabulary.size() << "\n";
    for (const auto& id : report.excluded_ids) {
        std::cerr << "excluded (no surviving tokens): " << id << "\n";
    }
}

// ----------------------------------------------------------------- train --
struct TrainArgs {
    CorpusOptions corpus;
    std::string out_dir;
    LdaConfig lda;
    int top_words = 20;
    int tags_per_doc = 10;
};

void run_train(const TrainArgs& args) {
    ExperimentConfig cfg;
    cfg.input_path = args.corpus.input;
    if (!args.corpus.venues.empty()) {
        cfg.venue_filter.emplace(args.corpus.venues.begin(),
                                 args.corpus.venues.end());
    }
    std::tie(cfg.year_min, cfg.year_max) = parse_years(args.corpus.years);
    cfg.tokenizer = tokenizer_from(args.corpus);
    cfg.min_df = args.corpus.min_df;
    cfg.lda = args.lda;
    cfg.top_n_words = args.top_words;
    cfg.tags_per_doc = args.tags_per_doc;
    cfg.output_dir = args.out_dir;

    auto artifacts = run_experiment(cfg);
    std::cerr << "kernels: " << kernels::level_name(kernels::active_level())
              << "\n";
    std::cout << "model:    " << artifacts.model_path << "\n"
              << "topics:   " << artifacts.topics_path << "\n"
              << "trends:   " << artifacts.trends_path << "\n"
              << "tags:     " << artifacts.tags_path << "\n"
              << "manifest: " << artifacts.manifest_path << "\n";
}

// -------------------------------------------------- topics / trends / tags --
void run_topics(const std::string& model_path, int top_n,
                const std::string& out_path) {
    auto model = load_model(model_path).to_model();
    if (top_n < 1) throw InvalidConfig("top-words must be >= 1");
    OutputTarget out(out_path);
    out.stream() << "topic_id\trank\tterm\tprob\n";
    auto n = std::min<std::size_t>(static_cast<std::size_t>(top_n),
                                   model.phi.cols());
    for (std::size_t topic = 0; topic < model.phi.rows(); ++topic) {
        auto words = top_words(model, topic, n);
        for (std::size_t rank = 0; rank < words.size(); ++rank) {
            out.stream() << topic << "\t" << (rank + 1) << "\t"
                         << words[rank].first << "\t"
                         << format_double(words[rank].second) << "\n";
        }
    }
}

void run_trends(const std::string& model_path, const std::string& years,
                const std::string& out_path) {
    auto snap = load_model(model_path);
    auto [year_min, year_max] = parse_years(years);
    std::vector<Document> docs(snap.num_docs());
    for (std::size_t d = 0; d < snap.num_docs(); ++d) {
        docs[d].id = snap.doc_ids[d];
        docs[d].year = snap.doc_years[d];
    }
    auto trends = topic_trends(snap.estimate_theta(), docs, year_min, year_max);
    OutputTarget out(out_path);
    out.stream() << "year,topic,mass\n";
    for (std::size_t yi = 0; yi < trends.front().per_year_mass.size(); ++yi) {
        for (const auto& trend : trends) {
            const auto& [year, mass] = trend.per_year_mass[yi];
            out.stream() << year << "," << trend.topic << ","
                         << format_double(mass) << "\n";
        }
    }
}

void run_tags(const std::string& model_path, int tags_per_doc,
              const std::string& out_path) {
    auto snap = load_model(model_path);
    if (tags_per_doc < 1) throw InvalidConfig("tags-per-doc must be >= 1");
    auto model = snap.to_model();
    OutputTarget out(out_path);
    for (std::size_t d = 0; d < snap.num_docs(); ++d) {
        auto tags = generate_tags(model, model.theta.row(d),
                                  static_cast<std::size_t>(tags_per_doc));
        json j;
        j["doc_id"] = snap.doc_ids[d];
        j["tags"] = tags;
        out.stream() << j.dump() << "\n";
    }
}

// ---------------------------------------------------------------- oracle --
void run_oracle(const std::string& input, int topics, double alpha, double beta,
                const std::string& out_path) {
    auto records = read_records_jsonl(input);
    // raw tokenization: every whitespace-separated term survives
    TokenizerConfig raw;
    raw.min_len = 1;
    auto vocabulary = build_vocabulary(records, raw, 1);
    auto corpus = encode_corpus(records, vocabulary, raw);

    LdaConfig cfg;
    cfg.topics = topics;
    cfg.alpha = alpha;
    cfg.beta = beta;
    cfg.iterations = 2; // irrelevant to the oracle, must merely validate
    cfg.burn_in = 1;
    auto post = exact_posterior(corpus, cfg);

    OutputTarget out(out_path);
    out.stream() << "configuration\tprobability\tlog_joint\n";
    for (std::size_t idx = 0; idx < post.prob.size(); ++idx) {
        std::size_t rest = idx;
        std::ostringstream cfg_str;
        for (std::size_t t = 0; t < post.num_tokens; ++t) {
            if (t) cfg_str << ",";
            cfg_str << rest % post.num_topics;
            rest /= post.num_topics;
        }
        out.stream() << cfg_str.str() << "\t" << format_double(post.prob[idx])
                     << "\t" << format_double(post.log_joint[idx]) << "\n";
    }
}

// ------------------------------------------------------------- recommend --
void run_rec_followees(const std::string& profiles_path,
                       const std::vector<std::string>& paper_topics,
                       const std::string& out_path) {
    auto profiles = read_followee_profiles_jsonl(profiles_path);
    auto topic_list = parse_topic_list(paper_topics);
    std::set<int> topics_p(topic_list.begin(), topic_list.end());
    auto ranked = rank_followees(topics_p, profiles);
    OutputTarget out(out_path);
    out.stream() << "followee_id\tscore\n";
    for (const auto& [id, score] : ranked) {
        out.stream() << id << "\t" << format_double(score) << "\n";
    }
}

struct TransferArgs {
    std::string ratings, user_topics, graph, out_dir, predict_user;
    TransferFitConfig fit;
};

Matrix read_dense_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open matrix file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw IoError(path + ": ragged matrix rows");
        }
        rows.push_back(std::move(row));
    }
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

void run_rec_transfer(const TransferArgs& args) {
    auto ratings = read_ratings_csv(args.ratings);
    auto users = read_user_topics_jsonl(args.user_topics);

    // ratings reference users by id order; both files must agree
    if (ratings.user_ids != users.user_ids) {
        throw DimensionMismatch(
            "user ids in ratings and user-topics files do not match");
    }
    Matrix graph;
    if (!args.graph.empty()) graph = read_dense_csv(args.graph);

    auto result = fit_preference_transfer(users.vectors, ratings.observations,
                                          graph, args.fit);

    std::filesystem::create_directories(args.out_dir);
    auto path = [&](const char* name) {
        return (std::filesystem::path(args.out_dir) / name).string();
    };
    {
        std::ofstream trace(path("trace.csv"), std::ios::binary);
        trace << "evaluation,objective\n";
        for (std::size_t i = 0; i < result.objective_trace.size(); ++i) {
            trace << i << "," << format_double(result.objective_trace[i]) << "\n";
        }
    }
    {
        json j;
        j["converged"] = result.converged;
        j["eta"] = result.params.eta;
        j["factors"] = result.params.num_factors();
        auto dump_matrix = [](const Matrix& m) {
            json rows = json::array();
            for (std::size_t r = 0; r < m.rows(); ++r) {
                rows.push_back(std::vector<double>(m.row(r).begin(),
                                                   m.row(r).end()));
            }
            return rows;
        };
        j["w1"] = dump_matrix(result.params.w1);
        j["w2"] = dump_matrix(result.params.w2);
        j["v"] = dump_matrix(result.params.v);
        j["item_ids"] = ratings.item_ids;
        std::ofstream params(path("params.json"), std::ios::binary);
        params << j.dump(2) << "\n";
    }
    std::cout << "objective: "
              << format_double(result.objective_trace.back()) << " after "
              << (result.objective_trace.size() - 1) << " steps"
              << (result.converged ? " (converged)" : "") << "\n";

    if (!args.predict_user.empty()) {
        auto it = std::find(users.user_ids.begin(), users.user_ids.end(),
                            args.predict_user);
        if (it == users.user_ids.end()) {
            throw IndexOutOfRange("unknown user: " + args.predict_user);
        }
        auto scores = predict_preferences(
            result.params, users.vectors,
            static_cast<std::size_t>(it - users.user_ids.begin()));
        for (std::size_t j = 0; j < scores.size(); ++j) {
            std::cout << ratings.item_ids[j] << "\t" << format_double(scores[j])
                      << "\n";
        }
    }
}

struct ColdstartArgs {
    std::string model, liked, disliked, apps, out;
    FoldInConfig foldin;
    CorpusOptions tokenizer_opts; // only stopword/min-len flags are used
};

void run_rec_coldstart(const ColdstartArgs& args) {
    auto snap = load_model(args.model);
    auto model = snap.to_model();
    auto tokenizer = tokenizer_from(args.tokenizer_opts);

    auto encode_side = [&](const std::string& path) -> std::vector<Document> {
        if (path.empty()) return {};
        auto records = read_records_jsonl(path);
        auto corpus = encode_corpus(records, model.vocabulary, tokenizer);
        return corpus.documents;
    };
    auto liked = encode_side(args.liked);
    auto disliked = encode_side(args.disliked);
    auto joints = user_topic_joints(model, liked, disliked, args.foldin);

    auto apps = read_app_followers_jsonl(args.apps);
    OutputTarget out(args.out);
    out.stream() << "app_id\tscore\tskipped_topics\n";
    for (const auto& app : apps) {
        auto scored = coldstart_app_score(joints, app);
        out.stream() << app.app_id << "\t" << format_double(scored.score) << "\t";
        for (std::size_t i = 0; i < scored.skipped.size(); ++i) {
            if (i) out.stream() << ",";
            out.stream() << scored.skipped[i];
        }
        out.stream() << "\n";
    }
}

struct LocationArgs {
    std::string usage, out;
    std::vector<std::string> region, candidates, similarity;
    double r_th = 0.0;
};

void run_rec_location(const LocationArgs& args) {
    auto usage = read_usage_csv(args.usage);
    OutputTarget out(args.out);
    if (!args.similarity.empty()) {
        if (args.similarity.size() != 2) {
            throw InvalidConfig("--similarity takes exactly two blocks");
        }
        out.stream() << format_double(pearson_block_similarity(
                            usage, args.similarity[0], args.similarity[1]))
                     << "\n";
        return;
    }
    if (args.region.empty()) throw EmptyRegion("a region is required");
    out.stream() << "block_id\tcoefficient\tmember\n";
    for (const auto& candidate : args.candidates) {
        double r = block_coefficient(usage, args.region, candidate);
        out.stream() << candidate << "\t" << format_double(r) << "\t"
                     << (region_membership(r, args.r_th) ? "true" : "false")
                     << "\n";
    }
}

void run_rec_tlpmf(const std::string& ratings_path,
                   const std::string& factors_path,
                   const std::string& out_path) {
    auto ratings = read_ratings_csv(ratings_path);
    std::ifstream in(factors_path);
    if (!in) throw IoError("cannot open factors file: " + factors_path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("invalid factors JSON: " + std::string(e.what()));
    }
    auto to_matrix = [&](const json& rows) {
        Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            auto row = rows[r].get<std::vector<double>>();
            if (row.size() != m.cols()) {
                throw IoError(factors_path + ": ragged matrix");
            }
            for (std::size_t c = 0; c < row.size(); ++c) m.at(r, c) = row[c];
        }
        return m;
    };
    TlpmfModel model;
    try {
        model.users = to_matrix(j.at("users"));
        model.items = to_matrix(j.at("items"));
        model.tl = to_matrix(j.at("tl"));
        model.sigma2 = j.at("sigma2").get<double>();
    } catch (const json::exception& e) {
        throw IoError("malformed factors file: " + std::string(e.what()));
    }
    double ll = tlpmf_log_likelihood(model, ratings.observations);
    OutputTarget out(out_path);
    out.stream() << format_double(ll) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LDA topic modeling over bibliographic records, with "
                 "topic-model-driven recommendation scorers"};
    app.require_subcommand(1);

    // ingest
    IngestArgs ingest;
    auto* ingest_cmd = app.add_subcommand("ingest",
                                          "tokenize and encode records");
    add_corpus_options(ingest_cmd, ingest.corpus);
    ingest_cmd->add_option("--out", ingest.out, "output path or -")
        ->default_val("-");

    // train
    TrainArgs train;
    auto* train_cmd = app.add_subcommand(
        "train", "run the full experiment: train LDA, emit all artifacts");
    add_corpus_options(train_cmd, train.corpus);
    train_cmd->add_option("--out", train.out_dir, "output directory")->required();
    train_cmd->add_option("--topics", train.lda.topics, "topic count K");
    train_cmd->add_option("--alpha", train.lda.alpha, "doc-topic prior");
    train_cmd->add_option("--beta", train.lda.beta, "topic-word prior");
    train_cmd->add_option("--iters", train.lda.iterations, "Gibbs sweeps");
    train_cmd->add_option("--burn-in", train.lda.burn_in, "burn-in sweeps");
    train_cmd->add_option("--sample-lag", train.lda.sample_lag,
                          "sweeps between averaged samples");
    train_cmd->add_flag("--average-samples", train.lda.average_samples,
                        "average post-burn-in samples for the estimates");
    train_cmd->add_option("--seed", train.lda.seed, "PRNG seed");
    train_cmd->add_option("--top-words", train.top_words,
                          "words per topic in the topic table");
    train_cmd->add_option("--tags-per-doc", train.tags_per_doc,
                          "tags per document");

    // topics / trends / tags
    std::string model_path, years_spec;
    std::string out_path = "-";
    int top_words = 20, tags_per_doc = 10;
    auto* topics_cmd = app.add_subcommand("topics", "emit the topic table");
    topics_cmd->add_option("--model", model_path, "model file")->required();
    topics_cmd->add_option("--top-words", top_words, "words per topic");
    topics_cmd->add_option("--out", out_path, "output path or -")->default_val("-");

    auto* trends_cmd = app.add_subcommand("trends", "emit per-year topic trends");
    trends_cmd->add_option("--model", model_path, "model file")->required();
    trends_cmd->add_option("--years", years_spec, "year range as MIN:MAX");
    trends_cmd->add_option("--out", out_path, "output path or -")->default_val("-");

    auto* tags_cmd = app.add_subcommand("tags", "emit per-document tags");
    tags_cmd->add_option("--model", model_path, "model file")->required();
    tags_cmd->add_option("--tags-per-doc", tags_per_doc, "tags per document");
    tags_cmd->add_option("--out", out_path, "output path or -")->default_val("-");

    // oracle
    std::string oracle_input;
    int oracle_topics = 2;
    double oracle_alpha = 1.0, oracle_beta = 1.0;
    auto* oracle_cmd = app.add_subcommand(
        "oracle", "exact assignment posterior for tiny instances");
    oracle_cmd->add_option("--input", oracle_input, "records JSON-lines file")
        ->required();
    oracle_cmd->add_option("--topics", oracle_topics, "topic count K");
    oracle_cmd->add_option("--alpha", oracle_alpha, "doc-topic prior");
    oracle_cmd->add_option("--beta", oracle_beta, "topic-word prior");
    oracle_cmd->add_option("--out", out_path, "output path or -")->default_val("-");

    // recommend
    auto* rec = app.add_subcommand("recommend", "recommendation scorers");
    rec->require_subcommand(1);

    std::string profiles_path;
    std::vector<std::string> paper_topics;
    auto* fol_cmd = rec->add_subcommand("followees", "rank followees");
    fol_cmd->add_option("--profiles", profiles_path, "followee profiles JSONL")
        ->required();
    fol_cmd->add_option("--paper-topics", paper_topics,
                        "paper topic set, comma separated")
        ->required()
        ->delimiter(',');
    fol_cmd->add_option("--out", out_path, "output path or -")->default_val("-");

    TransferArgs transfer;
    auto* tr_cmd = rec->add_subcommand("transfer",
                                       "fit cross-network preference transfer");
    tr_cmd->add_option("--ratings", transfer.ratings, "ratings CSV")->required();
    tr_cmd->add_option("--user-topics", transfer.user_topics,
                       "user topic vectors JSONL")->required();
    tr_cmd->add_option("--graph", transfer.graph, "item graph matrix CSV");
    tr_cmd->add_option("--out", transfer.out_dir, "output directory")->required();
    tr_cmd->add_option("--factors", transfer.fit.factors, "latent factors");
    tr_cmd->add_option("--eta", transfer.fit.eta, "tweet/social trade-off");
    tr_cmd->add_option("--gamma", transfer.fit.gamma, "learning rate");
    tr_cmd->add_option("--lambda", transfer.fit.lambda, "Frobenius weight");
    tr_cmd->add_option("--theta-reg", transfer.fit.theta_reg,
                       "graph regularizer weight");
    tr_cmd->add_option("--max-iters", transfer.fit.max_iterations,
                       "maximum descent steps");
    tr_cmd->add_option("--seed", transfer.fit.seed, "PRNG seed");
    tr_cmd->add_option("--predict-user", transfer.predict_user,
                       "print item scores for this user id");

    ColdstartArgs coldstart;
    auto* cs_cmd = rec->add_subcommand("coldstart", "cold-start app scoring");
    cs_cmd->add_option("--model", coldstart.model, "trained model file")
        ->required();
    cs_cmd->add_option("--liked", coldstart.liked, "liked records JSONL");
    cs_cmd->add_option("--disliked", coldstart.disliked, "disliked records JSONL");
    cs_cmd->add_option("--apps", coldstart.apps, "app follower JSONL")->required();
    cs_cmd->add_option("--passes", coldstart.foldin.passes, "fold-in passes");
    cs_cmd->add_option("--foldin-burn", coldstart.foldin.burn_in,
                       "fold-in passes discarded");
    cs_cmd->add_option("--seed", coldstart.foldin.seed, "fold-in seed");
    cs_cmd->add_option("--stopwords", coldstart.tokenizer_opts.stopword_path,
                       "stopword file used at training time");
    cs_cmd->add_flag("--no-stopwords", coldstart.tokenizer_opts.no_stopwords,
                     "disable stopword removal");
    cs_cmd->add_option("--min-len", coldstart.tokenizer_opts.min_len,
                       "minimum term length");
    cs_cmd->add_option("--out", coldstart.out, "output path or -")
        ->default_val("-");

    LocationArgs location;
    auto* loc_cmd = rec->add_subcommand("location", "location block scoring");
    loc_cmd->add_option("--usage", location.usage, "usage CSV")->required();
    loc_cmd->add_option("--region", location.region,
                        "region blocks, comma separated")->delimiter(',');
    loc_cmd->add_option("--candidates", location.candidates,
                        "candidate blocks, comma separated")->delimiter(',');
    loc_cmd->add_option("--r-th", location.r_th, "membership threshold");
    loc_cmd->add_option("--similarity", location.similarity,
                        "print Pearson similarity of two blocks")->delimiter(',');
    loc_cmd->add_option("--out", location.out, "output path or -")
        ->default_val("-");

    std::string tlpmf_ratings, tlpmf_factors;
    auto* tl_cmd = rec->add_subcommand("tlpmf",
                                       "rating log-likelihood under TL-PMF");
    tl_cmd->add_option("--ratings", tlpmf_ratings, "ratings CSV")->required();
    tl_cmd->add_option("--factors", tlpmf_factors, "factors JSON")->required();
    tl_cmd->add_option("--out", out_path, "output path or -")->default_val("-");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*ingest_cmd) run_ingest(ingest);
        else if (*train_cmd) run_train(train);
        else if (*topics_cmd) run_topics(model_path, top_words, out_path);
        else if (*trends_cmd) run_trends(model_path, years_spec, out_path);
        else if (*tags_cmd) run_tags(model_path, tags_per_doc, out_path);
        else if (*oracle_cmd) {
            run_oracle(oracle_input, oracle_topics, oracle_alpha, oracle_beta,
                       out_path);
        } else if (*fol_cmd) {
            run_rec_followees(profiles_path, paper_topics, out_path);
        } else if (*tr_cmd) run_rec_transfer(transfer);
        else if (*cs_cmd) run_rec_coldstart(coldstart);
        else if (*loc_cmd) run_rec_location(location);
        else if (*tl_cmd) run_rec_tlpmf(tlpmf_ratings, tlpmf_factors, out_path);
    } catch (const InvalidConfig& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Divergence& e) {
        std::cerr << "numeric divergence: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
