#include "topiclda/lda/serialize.hpp"

#include <fstream>
#include <numeric>

#include <json.hpp>

#include "topiclda/error.hpp"

namespace topiclda {

using nlohmann::json;

Matrix ModelSnapshot::estimate_theta() const {
    const auto K = num_topics();
    Matrix theta(num_docs(), K);
    for (std::size_t d = 0; d < num_docs(); ++d) {
        const double denom = static_cast<double>(doc_lengths[d]) +
                             static_cast<double>(K) * config.alpha;
        for (std::size_t k = 0; k < K; ++k) {
            theta.at(d, k) =
                (static_cast<double>(n_dk[d * K + k]) + config.alpha) / denom;
        }
    }
    return theta;
}

Matrix ModelSnapshot::estimate_phi() const {
    const auto K = num_topics();
    const auto V = vocab_size();
    const double vbeta = static_cast<double>(V) * config.beta;
    Matrix phi(K, V);
    for (std::size_t k = 0; k < K; ++k) {
        const double denom = static_cast<double>(n_k[k]) + vbeta;
        for (std::size_t w = 0; w < V; ++w) {
            phi.at(k, w) =
                (static_cast<double>(n_kw[k * V + w]) + config.beta) / denom;
        }
    }
    return phi;
}

TopicModel ModelSnapshot::to_model() const {
    TopicModel model;
    model.theta = estimate_theta();
    model.phi = estimate_phi();
    model.vocabulary = vocabulary;
    model.alpha = config.alpha;
    return model;
}

void ModelSnapshot::check_invariants() const {
    const auto K = num_topics();
    const auto V = vocab_size();
    if (doc_years.size() != num_docs() || doc_lengths.size() != num_docs() ||
        n_dk.size() != num_docs() * K || n_kw.size() != K * V ||
        n_k.size() != K) {
        throw CorruptCounts("count matrix dimensions are inconsistent");
    }
    for (auto c : n_dk)
        if (c < 0) throw CorruptCounts("negative doc-topic count");
    for (auto c : n_kw)
        if (c < 0) throw CorruptCounts("negative topic-word count");
    for (auto c : n_k)
        if (c < 0) throw CorruptCounts("negative topic total");

    std::int64_t token_total = 0;
    for (std::size_t d = 0; d < num_docs(); ++d) {
        std::int64_t row = 0;
        for (std::size_t k = 0; k < K; ++k) row += n_dk[d * K + k];
        if (row != doc_lengths[d]) {
            throw CorruptCounts("doc-topic row sum != document length at doc " +
                                std::to_string(d));
        }
        token_total += row;
    }
    std::int64_t topic_total = 0;
    for (std::size_t k = 0; k < K; ++k) {
        std::int64_t row = 0;
        for (std::size_t w = 0; w < V; ++w) row += n_kw[k * V + w];
        if (row != n_k[k]) {
            throw CorruptCounts("topic-word row sum != topic total at topic " +
                                std::to_string(k));
        }
        topic_total += n_k[k];
    }
    if (token_total != topic_total) {
        throw CorruptCounts("token total != topic total");
    }
}

ModelSnapshot snapshot_of(const SamplerState& state) {
    ModelSnapshot snap;
    snap.config = state.config();
    snap.vocabulary = state.vocabulary();
    const auto K = state.num_topics();
    const auto V = state.vocab_size();
    const auto M = state.num_docs();
    snap.doc_ids.reserve(M);
    for (const auto& doc : state.documents()) {
        snap.doc_ids.push_back(doc.id);
        snap.doc_years.push_back(doc.year);
        snap.doc_lengths.push_back(static_cast<std::int64_t>(doc.tokens.size()));
    }
    snap.n_dk.resize(M * K);
    for (std::size_t d = 0; d < M; ++d) {
        auto row = state.doc_topic_counts(d);
        std::copy(row.begin(), row.end(), snap.n_dk.begin() + d * K);
    }
    // transpose from the sampler's word-major layout
    snap.n_kw.resize(K * V);
    for (std::size_t w = 0; w < V; ++w) {
        auto row = state.word_topic_counts(w);
        for (std::size_t k = 0; k < K; ++k) snap.n_kw[k * V + w] = row[k];
    }
    auto totals = state.topic_totals();
    snap.n_k.assign(totals.begin(), totals.end());
    return snap;
}

namespace {

json config_to_json(const LdaConfig& c) {
    return json{{"topics", c.topics},
                {"alpha", c.alpha},
                {"beta", c.beta},
                {"iterations", c.iterations},
                {"burn_in", c.burn_in},
                {"sample_lag", c.sample_lag},
                {"average_samples", c.average_samples},
                {"seed", c.seed}};
}

LdaConfig config_from_json(const json& j) {
    LdaConfig c;
    c.topics = j.at("topics").get<int>();
    c.alpha = j.at("alpha").get<double>();
    c.beta = j.at("beta").get<double>();
    c.iterations = j.at("iterations").get<int>();
    c.burn_in = j.at("burn_in").get<int>();
    c.sample_lag = j.at("sample_lag").get<int>();
    c.average_samples = j.at("average_samples").get<bool>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

} // namespace

void save_model(const ModelSnapshot& snap, const std::string& path) {
    const auto K = snap.num_topics();
    const auto V = snap.vocab_size();
    json j;
    j["format"] = 1;
    j["config"] = config_to_json(snap.config);
    j["vocabulary"] = snap.vocabulary.terms();
    json docs = json::array();
    for (std::size_t d = 0; d < snap.num_docs(); ++d) {
        docs.push_back(json{{"id", snap.doc_ids[d]},
                            {"year", snap.doc_years[d]},
                            {"len", snap.doc_lengths[d]}});
    }
    j["docs"] = std::move(docs);
    json n_dk = json::array();
    for (std::size_t d = 0; d < snap.num_docs(); ++d) {
        n_dk.push_back(std::vector<std::int32_t>(snap.n_dk.begin() + d * K,
                                                 snap.n_dk.begin() + (d + 1) * K));
    }
    j["n_dk"] = std::move(n_dk);
    json n_kw = json::array();
    for (std::size_t k = 0; k < K; ++k) {
        n_kw.push_back(std::vector<std::int32_t>(snap.n_kw.begin() + k * V,
                                                 snap.n_kw.begin() + (k + 1) * V));
    }
    j["n_kw"] = std::move(n_kw);
    j["n_k"] = snap.n_k;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write model file: " + path);
    out << j.dump() << "\n";
    if (!out) throw IoError("failed writing model file: " + path);
}

void save_model(const SamplerState& state, const std::string& path) {
    save_model(snapshot_of(state), path);
}

ModelSnapshot load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("invalid model JSON in " + path + ": " + e.what());
    }
    if (!j.contains("format") || !j["format"].is_number_integer()) {
        throw FormatVersionMismatch("model file has no format version: " + path);
    }
    if (j["format"].get<int>() != 1) {
        throw FormatVersionMismatch("unsupported model format " +
                                    std::to_string(j["format"].get<int>()));
    }

    ModelSnapshot snap;
    try {
        snap.config = config_from_json(j.at("config"));
        snap.vocabulary = Vocabulary(j.at("vocabulary").get<std::vector<std::string>>());
        for (const auto& doc : j.at("docs")) {
            snap.doc_ids.push_back(doc.at("id").get<std::string>());
            snap.doc_years.push_back(doc.at("year").get<int>());
            snap.doc_lengths.push_back(doc.at("len").get<std::int64_t>());
        }
        for (const auto& row : j.at("n_dk")) {
            auto vals = row.get<std::vector<std::int32_t>>();
            snap.n_dk.insert(snap.n_dk.end(), vals.begin(), vals.end());
        }
        for (const auto& row : j.at("n_kw")) {
            auto vals = row.get<std::vector<std::int32_t>>();
            snap.n_kw.insert(snap.n_kw.end(), vals.begin(), vals.end());
        }
        snap.n_k = j.at("n_k").get<std::vector<std::int32_t>>();
    } catch (const json::exception& e) {
        throw IoError("malformed model file " + path + ": " + e.what());
    }
    snap.config.validate();
    snap.check_invariants();
    return snap;
}

} // namespace topiclda
