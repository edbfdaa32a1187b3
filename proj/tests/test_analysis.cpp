#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "helpers.hpp"
#include "topiclda/analysis/experiment.hpp"
#include "topiclda/error.hpp"

using namespace topiclda;
using testutil::TempDir;
using testutil::slurp;
using testutil::write_file;

namespace {

std::string records_jsonl() {
    return R"({"id":"p1","title":"semantic web ontology","abstract":"linked data reasoning with description logics","year":2013,"venue":"ISWC"}
{"id":"p2","title":"social network mining","abstract":"user behavior and community detection in social graphs","year":2014,"venue":"WWW"}
{"id":"p3","title":"query answering systems","abstract":"efficient query processing over knowledge bases","year":2013,"venue":"ISWC"}
{"id":"p4","title":"recommendation with factorization","abstract":"matrix factorization and collaborative filtering models","year":2014,"venue":"WWW"}
{"id":"p5","title":"topic models text","abstract":"latent topic analysis over document collections","year":2015,"venue":"WWW"}
{"id":"p6","title":"the of and","abstract":"","year":2015,"venue":"WWW"}
)";
}

ExperimentConfig base_config(const std::string& input,
                             const std::string& out_dir) {
    ExperimentConfig cfg;
    cfg.input_path = input;
    cfg.output_dir = out_dir;
    cfg.tokenizer.stopwords = default_stopwords();
    cfg.min_df = 1;
    cfg.lda.topics = 3;
    cfg.lda.alpha = 0.1;
    cfg.lda.beta = 0.1;
    cfg.lda.iterations = 30;
    cfg.lda.burn_in = 10;
    cfg.lda.seed = 7;
    cfg.top_n_words = 4;
    cfg.tags_per_doc = 5;
    return cfg;
}

} // namespace

TEST_CASE("topic_trends: all documents in one year equal the mean theta row") {
    Matrix theta(3, 2);
    theta.at(0, 0) = 0.8;
    theta.at(0, 1) = 0.2;
    theta.at(1, 0) = 0.4;
    theta.at(1, 1) = 0.6;
    theta.at(2, 0) = 0.1;
    theta.at(2, 1) = 0.9;
    std::vector<Document> docs(3);
    for (auto& d : docs) d.year = 2015;

    auto trends = topic_trends(theta, docs, 2010, 2020);
    REQUIRE(trends.size() == 2);
    REQUIRE(trends[0].per_year_mass.size() == 1);
    CHECK(trends[0].per_year_mass[0].first == 2015);
    CHECK(trends[0].per_year_mass[0].second ==
          doctest::Approx((0.8 + 0.4 + 0.1) / 3.0).epsilon(1e-12));
    CHECK(trends[1].per_year_mass[0].second ==
          doctest::Approx((0.2 + 0.6 + 0.9) / 3.0).epsilon(1e-12));
}

TEST_CASE("topic_trends: K=1 trends are identically one") {
    Matrix theta(4, 1, 1.0);
    std::vector<Document> docs(4);
    docs[0].year = 2013;
    docs[1].year = 2013;
    docs[2].year = 2014;
    docs[3].year = 2015;
    auto trends = topic_trends(theta, docs, 2013, 2015);
    REQUIRE(trends.size() == 1);
    for (auto& [year, mass] : trends[0].per_year_mass) CHECK(mass == 1.0);
}

TEST_CASE("topic_trends: two-year two-topic hand corpus") {
    Matrix theta(4, 2);
    theta.at(0, 0) = 0.9;
    theta.at(0, 1) = 0.1; // 2013
    theta.at(1, 0) = 0.7;
    theta.at(1, 1) = 0.3; // 2013
    theta.at(2, 0) = 0.2;
    theta.at(2, 1) = 0.8; // 2014
    theta.at(3, 0) = 0.4;
    theta.at(3, 1) = 0.6; // 2014
    std::vector<Document> docs(4);
    docs[0].year = 2013;
    docs[1].year = 2013;
    docs[2].year = 2014;
    docs[3].year = 2014;
    auto trends = topic_trends(theta, docs, 2013, 2014);
    CHECK(trends[0].per_year_mass[0].second == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(trends[0].per_year_mass[1].second == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(trends[1].per_year_mass[0].second == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(trends[1].per_year_mass[1].second == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("topic_trends: per-year masses sum to one and year-0 is excluded") {
    Rng rng(171);
    auto corpus = testutil::random_corpus(rng, 12, 8, 10);
    corpus.documents[3].year = 0;
    corpus.documents[7].year = 0;
    LdaConfig cfg;
    cfg.topics = 4;
    cfg.iterations = 10;
    cfg.burn_in = 2;
    cfg.seed = 9;
    cfg.alpha = 0.1;
    cfg.beta = 0.1;
    SamplerState state(corpus, cfg);
    state.run();
    auto theta = state.estimate_theta();

    std::size_t excluded = 0;
    auto trends = topic_trends(theta, corpus.documents, 2013, 2017, &excluded);
    CHECK(excluded == 2);
    REQUIRE(!trends.empty());
    for (std::size_t yi = 0; yi < trends[0].per_year_mass.size(); ++yi) {
        double sum = 0.0;
        for (const auto& t : trends) sum += t.per_year_mass[yi].second;
        CHECK(std::abs(sum - 1.0) < 1e-6);
    }

    CHECK_THROWS_AS((void)topic_trends(theta, corpus.documents, 1980, 1990),
                    NoDocumentsInRange);
}

TEST_CASE("generate_tags: K=1 yields the topic's top words") {
    TopicModel model;
    model.vocabulary = Vocabulary({"aaa", "bbb", "ccc"});
    model.phi = Matrix(1, 3);
    model.phi.at(0, 0) = 0.5;
    model.phi.at(0, 1) = 0.3;
    model.phi.at(0, 2) = 0.2;
    std::vector<double> theta{1.0};
    CHECK(generate_tags(model, theta, 3) ==
          std::vector<std::string>{"aaa", "bbb", "ccc"});
    CHECK(generate_tags(model, theta, 1) == std::vector<std::string>{"aaa"});
}

TEST_CASE("generate_tags: disjoint supports interleave dominant-topic first") {
    TopicModel model;
    model.vocabulary = Vocabulary({"aaa", "bbb", "ccc", "ddd"});
    model.phi = Matrix(2, 4);
    model.phi.at(0, 0) = 0.7;
    model.phi.at(0, 1) = 0.3; // topic 0: aaa, bbb
    model.phi.at(1, 2) = 0.6;
    model.phi.at(1, 3) = 0.4; // topic 1: ccc, ddd
    std::vector<double> theta{0.3, 0.7}; // topic 1 dominates
    auto tags = generate_tags(model, theta, 4);
    CHECK(tags == std::vector<std::string>{"ccc", "ddd", "aaa", "bbb"});
}

TEST_CASE("run_experiment writes the full artifact set") {
    TempDir dir("experiment");
    auto input = dir.file("records.jsonl");
    write_file(input, records_jsonl());
    auto cfg = base_config(input, dir.file("out"));
    auto artifacts = run_experiment(cfg);

    CHECK(artifacts.manifest.records_read == 6);
    CHECK(artifacts.manifest.documents == 5); // p6 is stopwords only
    CHECK(artifacts.manifest.excluded_empty_ids ==
          std::vector<std::string>{"p6"});
    CHECK(artifacts.manifest.vocabulary > 0);

    auto topics = slurp(artifacts.topics_path);
    CHECK(topics.find("topic_id\trank\tterm\tprob\n") == 0);
    // 3 topics x 4 words + header
    std::size_t lines = std::count(topics.begin(), topics.end(), '\n');
    CHECK(lines == 1 + 3 * 4);

    auto trends = slurp(artifacts.trends_path);
    CHECK(trends.find("year,topic,mass\n") == 0);

    auto tags = slurp(artifacts.tags_path);
    CHECK(std::count(tags.begin(), tags.end(), '\n') == 5);

    auto manifest = nlohmann::json::parse(slurp(artifacts.manifest_path));
    CHECK(manifest["format"] == 1);
    CHECK(manifest["corpus"]["documents"] == 5);
    CHECK(manifest["config_hash"].is_string());
    CHECK(manifest["final_log_likelihood"].is_number());

    // the saved model reloads and reproduces the estimates
    auto snap = load_model(artifacts.model_path);
    CHECK(snap.num_docs() == 5);
}

TEST_CASE("run_experiment: single-document corpus with K=1 ranks by frequency") {
    TempDir dir("single");
    auto input = dir.file("one.jsonl");
    write_file(input,
               "{\"id\":\"only\",\"title\":\"alpha alpha beta\","
               "\"abstract\":\"alpha gamma gamma\",\"year\":2013,\"venue\":\"X\"}\n");
    auto cfg = base_config(input, dir.file("out"));
    cfg.lda.topics = 1;
    cfg.top_n_words = 3;
    auto artifacts = run_experiment(cfg);
    auto lines = slurp(artifacts.topics_path);
    std::istringstream in(lines);
    std::string header, l1, l2, l3;
    std::getline(in, header);
    std::getline(in, l1);
    std::getline(in, l2);
    std::getline(in, l3);
    CHECK(l1.find("\t1\talpha\t") != std::string::npos); // 3 occurrences
    CHECK(l2.find("\t2\tgamma\t") != std::string::npos); // 2
    CHECK(l3.find("\t3\tbeta\t") != std::string::npos);  // 1
}

TEST_CASE("run_experiment: rerun with identical config is byte-identical") {
    TempDir dir("determinism");
    auto input = dir.file("records.jsonl");
    write_file(input, records_jsonl());
    auto cfg = base_config(input, dir.file("out"));

    auto first = run_experiment(cfg);
    std::map<std::string, std::string> saved;
    for (const auto& path :
         {first.model_path, first.topics_path, first.trends_path,
          first.tags_path, first.manifest_path}) {
        saved[path] = slurp(path);
    }
    auto second = run_experiment(cfg);
    for (const auto& [path, content] : saved) {
        CHECK(slurp(path) == content);
    }
}

TEST_CASE("run_experiment: venue and year filters, empty results") {
    TempDir dir("filters");
    auto input = dir.file("records.jsonl");
    write_file(input, records_jsonl());

    auto cfg = base_config(input, dir.file("out"));
    cfg.venue_filter = std::set<std::string>{"ISWC"};
    auto artifacts = run_experiment(cfg);
    CHECK(artifacts.manifest.filtered_by_venue == 4);
    CHECK(artifacts.manifest.documents == 2);

    cfg.venue_filter = std::set<std::string>{"NOPE"};
    CHECK_THROWS_AS((void)run_experiment(cfg), NoDocuments);

    cfg = base_config(input, dir.file("out2"));
    cfg.year_min = 2014;
    cfg.year_max = 2014;
    artifacts = run_experiment(cfg);
    CHECK(artifacts.manifest.filtered_by_year == 4);

    cfg.input_path = dir.file("missing.jsonl");
    CHECK_THROWS_AS((void)run_experiment(cfg), IoError);
}

TEST_CASE("experiment config validation") {
    ExperimentConfig cfg;
    cfg.input_path = "x";
    cfg.output_dir = "y";
    CHECK_NOTHROW(cfg.validate());
    cfg.year_min = 2017;
    cfg.year_max = 2013;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg.year_min = 0;
    cfg.year_max = 9999;
    cfg.top_n_words = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
}
