#include "topiclda/lda/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "topiclda/error.hpp"

namespace topiclda {

namespace {
constexpr std::size_t kMaxConfigurations = std::size_t{1} << 18;
}

std::size_t ExactPosterior::index_of(std::span<const std::int32_t> flat_z) const {
    if (flat_z.size() != num_tokens) {
        throw DimensionMismatch("configuration length != token count");
    }
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (std::size_t t = 0; t < num_tokens; ++t) {
        auto z = flat_z[t];
        if (z < 0 || static_cast<std::size_t>(z) >= num_topics) {
            throw IndexOutOfRange("topic out of range in configuration");
        }
        idx += static_cast<std::size_t>(z) * stride;
        stride *= num_topics;
    }
    return idx;
}

ExactPosterior exact_posterior(const Corpus& corpus, const LdaConfig& config) {
    config.validate();
    const auto K = static_cast<std::size_t>(config.topics);
    const std::size_t M = corpus.documents.size();
    const std::size_t V = corpus.vocabulary.size();
    if (M == 0) throw InvalidConfig("corpus has no documents");

    std::vector<std::int32_t> words; // flattened (doc, token)
    std::vector<std::size_t> doc_of;
    for (std::size_t d = 0; d < M; ++d) {
        for (auto w : corpus.documents[d].tokens) {
            if (w < 0 || static_cast<std::size_t>(w) >= V) {
                throw IndexOutOfRange("token id out of vocabulary");
            }
            words.push_back(w);
            doc_of.push_back(d);
        }
    }
    const std::size_t T = words.size();

    std::size_t total = 1;
    for (std::size_t t = 0; t < T; ++t) {
        if (total > kMaxConfigurations / K) {
            throw InstanceTooLarge("K^T exceeds 2^18");
        }
        total *= K;
    }

    // lgamma lookup tables over the integer count range [0, T]
    const double a = config.alpha;
    const double b = config.beta;
    const double ka = static_cast<double>(K) * a;
    const double vb = static_cast<double>(V) * b;
    std::vector<double> lga(T + 1), lgb(T + 1), lgka(T + 1), lgvb(T + 1);
    for (std::size_t c = 0; c <= T; ++c) {
        lga[c] = std::lgamma(static_cast<double>(c) + a);
        lgb[c] = std::lgamma(static_cast<double>(c) + b);
        lgka[c] = std::lgamma(static_cast<double>(c) + ka);
        lgvb[c] = std::lgamma(static_cast<double>(c) + vb);
    }

    ExactPosterior post;
    post.num_tokens = T;
    post.num_topics = K;
    post.log_joint.resize(total);

    std::vector<std::int32_t> z(T, 0);
    std::vector<std::int32_t> n_dk(M * K), n_kw(K * V), n_k(K);
    for (std::size_t idx = 0; idx < total; ++idx) {
        // decode mixed-radix index
        std::size_t rest = idx;
        for (std::size_t t = 0; t < T; ++t) {
            z[t] = static_cast<std::int32_t>(rest % K);
            rest /= K;
        }
        std::fill(n_dk.begin(), n_dk.end(), 0);
        std::fill(n_kw.begin(), n_kw.end(), 0);
        std::fill(n_k.begin(), n_k.end(), 0);
        for (std::size_t t = 0; t < T; ++t) {
            ++n_dk[doc_of[t] * K + static_cast<std::size_t>(z[t])];
            ++n_kw[static_cast<std::size_t>(z[t]) * V +
                   static_cast<std::size_t>(words[t])];
            ++n_k[static_cast<std::size_t>(z[t])];
        }

        double lp = 0.0;
        for (std::size_t d = 0; d < M; ++d) {
            lp += lgka[0] - lgka[corpus.documents[d].tokens.size()];
            for (std::size_t k = 0; k < K; ++k) {
                lp += lga[n_dk[d * K + k]] - lga[0];
            }
        }
        for (std::size_t k = 0; k < K; ++k) {
            lp += lgvb[0] - lgvb[n_k[k]];
            for (std::size_t w = 0; w < V; ++w) {
                lp += lgb[n_kw[k * V + w]] - lgb[0];
            }
        }
        post.log_joint[idx] = lp;
    }

    // normalize via logsumexp
    double max_lp = *std::max_element(post.log_joint.begin(), post.log_joint.end());
    double sum = 0.0;
    for (double lp : post.log_joint) sum += std::exp(lp - max_lp);
    const double log_norm = max_lp + std::log(sum);
    post.prob.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        post.prob[i] = std::exp(post.log_joint[i] - log_norm);
    }
    return post;
}

} // namespace topiclda
