#include "topiclda/lda/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "topiclda/kernels/kernels.hpp"

namespace topiclda {

SamplerState::SamplerState(const Corpus& corpus, LdaConfig config)
    : config_(config),
      docs_(corpus.documents),
      vocab_(corpus.vocabulary),
      vocab_size_(corpus.vocabulary.size()),
      rng_(config.seed) {
    config_.validate();
    if (docs_.empty()) throw InvalidConfig("corpus has no documents");

    const auto K = num_topics();
    vbeta_ = static_cast<double>(vocab_size_) * config_.beta;

    for (const auto& doc : docs_) {
        if (doc.tokens.empty()) {
            throw InvalidConfig("document " + doc.id + " has no tokens");
        }
        for (auto w : doc.tokens) {
            if (w < 0 || static_cast<std::size_t>(w) >= vocab_size_) {
                throw IndexOutOfRange("token id out of vocabulary in document " +
                                      doc.id);
            }
        }
        total_tokens_ += doc.tokens.size();
    }

    n_dk_.assign(docs_.size() * K, 0);
    n_wk_.assign(vocab_size_ * K, 0);
    n_k_.assign(K, 0);
    z_.resize(docs_.size());
    weight_buf_.resize(K);
    cum_buf_.resize(K);

    for (std::size_t d = 0; d < docs_.size(); ++d) {
        z_[d].resize(docs_[d].tokens.size());
        for (std::size_t n = 0; n < docs_[d].tokens.size(); ++n) {
            auto k = static_cast<std::int32_t>(rng_.next_index(K));
            z_[d][n] = k;
            increment(d, docs_[d].tokens[n], k);
        }
    }
}

void SamplerState::decrement(std::size_t d, std::int32_t w, std::int32_t k) {
    --n_dk_[d * num_topics() + k];
    --n_wk_[static_cast<std::size_t>(w) * num_topics() + k];
    --n_k_[k];
}

void SamplerState::increment(std::size_t d, std::int32_t w, std::int32_t k) {
    ++n_dk_[d * num_topics() + k];
    ++n_wk_[static_cast<std::size_t>(w) * num_topics() + k];
    ++n_k_[k];
}

std::int32_t SamplerState::sample_topic(std::size_t d, std::int32_t w) {
    const auto K = num_topics();
    kernels::topic_weights(n_dk_.data() + d * K,
                           n_wk_.data() + static_cast<std::size_t>(w) * K,
                           n_k_.data(), config_.alpha, config_.beta, vbeta_,
                           weight_buf_.data(), K);
    double c = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        c += weight_buf_[k];
        cum_buf_[k] = c;
    }
    double u = rng_.next_double() * c;
    auto it = std::upper_bound(cum_buf_.begin(), cum_buf_.end(), u);
    if (it == cum_buf_.end()) --it; // u == total after rounding
    return static_cast<std::int32_t>(it - cum_buf_.begin());
}

void SamplerState::sweep() {
    for (std::size_t d = 0; d < docs_.size(); ++d) {
        const auto& tokens = docs_[d].tokens;
        for (std::size_t n = 0; n < tokens.size(); ++n) {
            const std::int32_t w = tokens[n];
            decrement(d, w, z_[d][n]);
            const std::int32_t k = sample_topic(d, w);
            increment(d, w, k);
            z_[d][n] = k;
        }
    }
    ++completed_sweeps_;
}

void SamplerState::run() {
    for (int it = 0; it < config_.iterations; ++it) {
        sweep();
        if (config_.average_samples && completed_sweeps_ > config_.burn_in &&
            (completed_sweeps_ - config_.burn_in) % config_.sample_lag == 0) {
            collect_sample();
        }
    }
}

void SamplerState::run(int sweeps) {
    for (int it = 0; it < sweeps; ++it) sweep();
}

void SamplerState::collect_sample() {
    const auto K = num_topics();
    if (theta_acc_.empty()) {
        theta_acc_.assign(docs_.size() * K, 0.0);
        phi_acc_.assign(K * vocab_size_, 0.0);
    }
    for (std::size_t d = 0; d < docs_.size(); ++d) {
        const double denom = static_cast<double>(docs_[d].tokens.size()) +
                             static_cast<double>(K) * config_.alpha;
        for (std::size_t k = 0; k < K; ++k) {
            theta_acc_[d * K + k] +=
                (static_cast<double>(n_dk_[d * K + k]) + config_.alpha) / denom;
        }
    }
    for (std::size_t k = 0; k < K; ++k) {
        const double denom = static_cast<double>(n_k_[k]) + vbeta_;
        for (std::size_t w = 0; w < vocab_size_; ++w) {
            phi_acc_[k * vocab_size_ + w] +=
                (static_cast<double>(n_wk_[w * K + k]) + config_.beta) / denom;
        }
    }
    ++samples_collected_;
}

std::vector<double> SamplerState::conditional(std::size_t d, std::size_t n) const {
    const auto K = num_topics();
    if (d >= docs_.size() || n >= docs_[d].tokens.size()) {
        throw IndexOutOfRange("no token (" + std::to_string(d) + ", " +
                              std::to_string(n) + ")");
    }
    const std::int32_t w = docs_[d].tokens[n];
    const std::int32_t old_k = z_[d][n];

    // copies of the relevant count rows with the probed token removed
    std::vector<std::int32_t> dk(n_dk_.begin() + d * K, n_dk_.begin() + (d + 1) * K);
    std::vector<std::int32_t> wk(n_wk_.begin() + static_cast<std::size_t>(w) * K,
                                 n_wk_.begin() + (static_cast<std::size_t>(w) + 1) * K);
    std::vector<std::int32_t> nk(n_k_.begin(), n_k_.end());
    --dk[old_k];
    --wk[old_k];
    --nk[old_k];

    std::vector<double> p(K);
    kernels::topic_weights(dk.data(), wk.data(), nk.data(), config_.alpha,
                           config_.beta, vbeta_, p.data(), K);
    double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& v : p) v /= total;
    return p;
}

Matrix SamplerState::estimate_theta() const {
    const auto K = num_topics();
    Matrix theta(docs_.size(), K);
    if (samples_collected_ > 0) {
        for (std::size_t d = 0; d < docs_.size(); ++d) {
            for (std::size_t k = 0; k < K; ++k) {
                theta.at(d, k) = theta_acc_[d * K + k] / samples_collected_;
            }
        }
        return theta;
    }
    for (std::size_t d = 0; d < docs_.size(); ++d) {
        const double denom = static_cast<double>(docs_[d].tokens.size()) +
                             static_cast<double>(K) * config_.alpha;
        for (std::size_t k = 0; k < K; ++k) {
            theta.at(d, k) =
                (static_cast<double>(n_dk_[d * K + k]) + config_.alpha) / denom;
        }
    }
    return theta;
}

Matrix SamplerState::estimate_phi() const {
    const auto K = num_topics();
    Matrix phi(K, vocab_size_);
    if (samples_collected_ > 0) {
        for (std::size_t k = 0; k < K; ++k) {
            for (std::size_t w = 0; w < vocab_size_; ++w) {
                phi.at(k, w) = phi_acc_[k * vocab_size_ + w] / samples_collected_;
            }
        }
        return phi;
    }
    for (std::size_t k = 0; k < K; ++k) {
        const double denom = static_cast<double>(n_k_[k]) + vbeta_;
        for (std::size_t w = 0; w < vocab_size_; ++w) {
            phi.at(k, w) =
                (static_cast<double>(n_wk_[w * K + k]) + config_.beta) / denom;
        }
    }
    return phi;
}

// log p(w, z) = sum_d [ lgamma(K a) - lgamma(N_d + K a)
//                       + sum_k lgamma(n_dk + a) - K lgamma(a) ]
//             + sum_k [ lgamma(V b) - lgamma(n_k + V b)
//                       + sum_w lgamma(n_kw + b) - V lgamma(b) ]
//
// Inner sums run over count-value histograms and the per-topic terms are
// sorted before the outer sum, which makes the result independent of topic
// labels and of token order, exactly.
double SamplerState::log_likelihood() const {
    const auto K = num_topics();
    const double a = config_.alpha;
    const double b = config_.beta;
    const double ka = static_cast<double>(K) * a;
    const double lg_a = std::lgamma(a);
    const double lg_b = std::lgamma(b);

    double doc_part = 0.0;
    std::vector<std::int64_t> hist;
    for (std::size_t d = 0; d < docs_.size(); ++d) {
        const auto n_d = docs_[d].tokens.size();
        hist.assign(n_d + 1, 0);
        for (std::size_t k = 0; k < K; ++k) ++hist[n_dk_[d * K + k]];
        double inner = 0.0;
        for (std::size_t c = 0; c <= n_d; ++c) {
            if (hist[c] > 0) {
                inner += static_cast<double>(hist[c]) *
                         (std::lgamma(static_cast<double>(c) + a) - lg_a);
            }
        }
        doc_part += std::lgamma(ka) -
                    std::lgamma(static_cast<double>(n_d) + ka) + inner;
    }

    std::vector<double> topic_terms(K);
    std::vector<std::int64_t> whist;
    for (std::size_t k = 0; k < K; ++k) {
        whist.assign(static_cast<std::size_t>(n_k_[k]) + 1, 0);
        for (std::size_t w = 0; w < vocab_size_; ++w) ++whist[n_wk_[w * K + k]];
        double inner = 0.0;
        for (std::size_t c = 0; c < whist.size(); ++c) {
            if (whist[c] > 0) {
                inner += static_cast<double>(whist[c]) *
                         (std::lgamma(static_cast<double>(c) + b) - lg_b);
            }
        }
        topic_terms[k] = std::lgamma(vbeta_) -
                         std::lgamma(static_cast<double>(n_k_[k]) + vbeta_) + inner;
    }
    std::sort(topic_terms.begin(), topic_terms.end());
    double topic_part = 0.0;
    for (double t : topic_terms) topic_part += t;

    return doc_part + topic_part;
}

std::vector<std::int32_t> SamplerState::flat_z() const {
    std::vector<std::int32_t> flat;
    flat.reserve(total_tokens_);
    for (const auto& zd : z_) flat.insert(flat.end(), zd.begin(), zd.end());
    return flat;
}

void SamplerState::relabel_topics(std::span<const std::int32_t> perm) {
    const auto K = num_topics();
    if (perm.size() != K) throw InvalidConfig("permutation length != K");
    std::vector<bool> seen(K, false);
    for (auto p : perm) {
        if (p < 0 || static_cast<std::size_t>(p) >= K || seen[p]) {
            throw InvalidConfig("not a permutation of [0, K)");
        }
        seen[p] = true;
    }
    for (auto& zd : z_) {
        for (auto& zk : zd) zk = perm[zk];
    }
    auto permute_rows = [&](std::vector<std::int32_t>& counts, std::size_t rows) {
        std::vector<std::int32_t> old(counts);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t k = 0; k < K; ++k) {
                counts[r * K + static_cast<std::size_t>(perm[k])] = old[r * K + k];
            }
        }
    };
    permute_rows(n_dk_, docs_.size());
    permute_rows(n_wk_, vocab_size_);
    std::vector<std::int32_t> old_nk(n_k_);
    for (std::size_t k = 0; k < K; ++k) {
        n_k_[static_cast<std::size_t>(perm[k])] = old_nk[k];
    }
}

void SamplerState::check_invariants() const {
    const auto K = num_topics();
    std::int64_t token_total = 0;
    for (std::size_t d = 0; d < docs_.size(); ++d) {
        std::int64_t row = 0;
        for (std::size_t k = 0; k < K; ++k) row += n_dk_[d * K + k];
        if (row != static_cast<std::int64_t>(docs_[d].tokens.size())) {
            throw CorruptCounts("doc-topic row sum mismatch at doc " +
                                std::to_string(d));
        }
        token_total += row;
        for (auto k : z_[d]) {
            if (k < 0 || static_cast<std::size_t>(k) >= K) {
                throw CorruptCounts("z out of range at doc " + std::to_string(d));
            }
        }
    }
    std::int64_t topic_total = 0;
    for (std::size_t k = 0; k < K; ++k) {
        std::int64_t col = 0;
        for (std::size_t w = 0; w < vocab_size_; ++w) col += n_wk_[w * K + k];
        if (col != n_k_[k]) {
            throw CorruptCounts("topic-word column sum mismatch at topic " +
                                std::to_string(k));
        }
        topic_total += n_k_[k];
    }
    if (token_total != topic_total) {
        throw CorruptCounts("token total != topic total");
    }
}

} // namespace topiclda
