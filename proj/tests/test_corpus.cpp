#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "topiclda/error.hpp"
#include "topiclda/text/corpus.hpp"

using namespace topiclda;
using testutil::TempDir;
using testutil::write_file;

namespace {

RawRecord record(std::string id, std::string title, std::string abstract = "",
                 int year = 0, std::string venue = "") {
    return RawRecord{std::move(id), std::move(title), std::move(abstract), year,
                     std::move(venue)};
}

std::string joined(const std::vector<std::string>& terms) {
    std::string s;
    for (const auto& t : terms) {
        if (!s.empty()) s += " ";
        s += t;
    }
    return s;
}

} // namespace

TEST_CASE("tokenize: empty input yields empty sequence") {
    CHECK(tokenize("", TokenizerConfig{}).empty());
}

TEST_CASE("tokenize: lowercase, split, stopwords, min length") {
    TokenizerConfig cfg;
    cfg.stopwords = default_stopwords();
    CHECK(tokenize("Semantic Web, the RDF graph", cfg) ==
          std::vector<std::string>{"semantic", "web", "rdf", "graph"});
}

TEST_CASE("tokenize: all terms below min length") {
    TokenizerConfig cfg; // min_len defaults to 3
    CHECK(tokenize("A B C", cfg).empty());
}

TEST_CASE("tokenize: digits are token characters") {
    TokenizerConfig cfg;
    CHECK(tokenize("word2vec in 2013!", cfg) ==
          std::vector<std::string>{"word2vec", "2013"});
}

TEST_CASE("tokenize is idempotent on its own output") {
    TokenizerConfig cfg;
    cfg.stopwords = default_stopwords();
    Rng rng(5);
    const std::string alphabet = "abc XYZ,.123-_(); the\t";
    for (int trial = 0; trial < 100; ++trial) {
        std::string text;
        auto len = rng.next_index(120);
        for (std::size_t i = 0; i < len; ++i) {
            text += alphabet[rng.next_index(alphabet.size())];
        }
        auto once = tokenize(text, cfg);
        auto twice = tokenize(joined(once), cfg);
        CHECK(once == twice);
    }
}

TEST_CASE("build_vocabulary: document frequency threshold") {
    TokenizerConfig cfg;
    std::vector<RawRecord> two = {record("a", "topic model"),
                                  record("b", "topic inference")};
    auto vocab = build_vocabulary(two, cfg, 2);
    CHECK(vocab.id_of("topic") >= 0);
    CHECK(vocab.id_of("model") == -1);

    std::vector<RawRecord> one = {record("a", "topic model")};
    auto sparse = build_vocabulary(one, cfg, 1);
    CHECK(sparse.id_of("topic") >= 0);
    CHECK_THROWS_AS((void)build_vocabulary(one, cfg, 2), EmptyVocabulary);
}

TEST_CASE("build_vocabulary: ids by descending df, ties lexicographic") {
    TokenizerConfig cfg;
    std::vector<RawRecord> records = {record("a", "alpha beta"),
                                      record("b", "alpha")};
    auto vocab = build_vocabulary(records, cfg, 1);
    CHECK(vocab.id_of("alpha") == 0); // df 2
    CHECK(vocab.id_of("beta") == 1);  // df 1

    // tie case: equal df resolves lexicographically
    std::vector<RawRecord> tie = {record("a", "zebra apple"),
                                  record("b", "zebra apple")};
    auto tied = build_vocabulary(tie, cfg, 1);
    CHECK(tied.id_of("apple") == 0);
    CHECK(tied.id_of("zebra") == 1);
}

TEST_CASE("build_vocabulary: duplicate terms in one record count once") {
    TokenizerConfig cfg;
    std::vector<RawRecord> records = {record("a", "web web web")};
    CHECK_THROWS_AS((void)build_vocabulary(records, cfg, 2), EmptyVocabulary);
}

TEST_CASE("build_vocabulary rejects min_df < 1") {
    TokenizerConfig cfg;
    std::vector<RawRecord> records = {record("a", "alpha")};
    CHECK_THROWS_AS((void)build_vocabulary(records, cfg, 0), InvalidConfig);
}

TEST_CASE("encode_corpus: lookup, duplicates, exclusions") {
    TokenizerConfig cfg;
    Vocabulary vocab({"semantic", "web"});

    std::vector<RawRecord> records = {record("p1", "semantic web"),
                                      record("p2", "web web"),
                                      record("p3", "unrelated words")};
    EncodeReport report;
    auto corpus = encode_corpus(records, vocab, cfg, &report);

    REQUIRE(corpus.documents.size() == 2);
    CHECK(corpus.documents[0].tokens ==
          std::vector<std::int32_t>{vocab.id_of("semantic"), vocab.id_of("web")});
    CHECK(corpus.documents[1].tokens ==
          std::vector<std::int32_t>{vocab.id_of("web"), vocab.id_of("web")});
    CHECK(report.excluded_ids == std::vector<std::string>{"p3"});
    CHECK(corpus.total_tokens() == 4);
}

TEST_CASE("encode then decode reproduces the in-vocabulary term sequence") {
    TokenizerConfig cfg;
    cfg.stopwords = default_stopwords();
    Rng rng(23);
    std::vector<std::string> pool = {"semantic", "web",   "graph", "topic",
                                     "model",    "query", "the",   "of",
                                     "x1",       "ab"};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<RawRecord> records;
        for (int r = 0; r < 4; ++r) {
            std::string title;
            auto len = 1 + rng.next_index(12);
            for (std::size_t i = 0; i < len; ++i) {
                title += pool[rng.next_index(pool.size())] + " ";
            }
            records.push_back(record("r" + std::to_string(r), title));
        }
        Vocabulary vocab;
        try {
            vocab = build_vocabulary(records, cfg, 1);
        } catch (const EmptyVocabulary&) {
            continue;
        }
        auto corpus = encode_corpus(records, vocab, cfg);
        std::size_t doc_idx = 0;
        for (const auto& rec : records) {
            std::vector<std::string> expected;
            for (const auto& term : tokenize(rec.title + " ", cfg)) {
                if (vocab.id_of(term) >= 0) expected.push_back(term);
            }
            if (expected.empty()) continue;
            const auto& doc = corpus.documents[doc_idx++];
            std::vector<std::string> decoded;
            for (auto id : doc.tokens) decoded.push_back(vocab.term(id));
            CHECK(decoded == expected);
        }
        CHECK(doc_idx == corpus.documents.size());
    }
}

TEST_CASE("vocabulary construction is deterministic") {
    TokenizerConfig cfg;
    std::vector<RawRecord> records = {
        record("a", "graph topic model semantic"),
        record("b", "semantic graph query"),
        record("c", "model graph web")};
    auto v1 = build_vocabulary(records, cfg, 1);
    auto v2 = build_vocabulary(records, cfg, 1);
    CHECK(v1 == v2);
}

TEST_CASE("vocabulary term/id round trip and bounds") {
    Vocabulary vocab({"alpha", "beta"});
    CHECK(vocab.term(0) == "alpha");
    CHECK(vocab.id_of("beta") == 1);
    CHECK(vocab.id_of("gamma") == -1);
    CHECK_THROWS_AS((void)vocab.term(2), IndexOutOfRange);
}

TEST_CASE("records jsonl: defaults for missing fields, errors for bad input") {
    TempDir dir("corpus");
    auto path = dir.file("records.jsonl");
    write_file(path,
               "{\"id\":\"a\",\"title\":\"T\",\"abstract\":\"A\",\"year\":2015,"
               "\"venue\":\"WWW\"}\n"
               "{\"id\":\"b\",\"title\":\"U\"}\n"
               "\n");
    auto records = read_records_jsonl(path);
    REQUIRE(records.size() == 2);
    CHECK(records[0].year == 2015);
    CHECK(records[1].abstract_text.empty());
    CHECK(records[1].year == 0);
    CHECK(records[1].venue.empty());

    write_file(path, "{\"title\":\"no id\"}\n");
    CHECK_THROWS_AS((void)read_records_jsonl(path), IoError);

    write_file(path, "not json\n");
    CHECK_THROWS_AS((void)read_records_jsonl(path), IoError);

    write_file(path, "{\"id\":\"a\"}\n{\"id\":\"a\"}\n");
    CHECK_THROWS_AS((void)read_records_jsonl(path), IoError);

    CHECK_THROWS_AS((void)read_records_jsonl(dir.file("missing.jsonl")), IoError);
}

TEST_CASE("stopword file: comments, blank lines, lowercasing") {
    TempDir dir("stopwords");
    auto path = dir.file("stop.txt");
    write_file(path, "# comment\nThe\n\n  and  \nof\n");
    auto set = load_stopwords(path);
    CHECK(set.size() == 3);
    CHECK(set.contains("the"));
    CHECK(set.contains("and"));
    CHECK(set.contains("of"));

    CHECK_THROWS_AS((void)load_stopwords(dir.file("missing.txt")), IoError);
}

TEST_CASE("default stopword list contains the basics") {
    const auto& set = default_stopwords();
    CHECK(set.contains("the"));
    CHECK(set.contains("with"));
    CHECK_FALSE(set.contains("semantic"));
}
