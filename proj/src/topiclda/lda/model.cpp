#include "topiclda/lda/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "topiclda/kernels/kernels.hpp"
#include "topiclda/rng.hpp"

namespace topiclda {

TopicModel make_model(const SamplerState& state) {
    TopicModel model;
    model.theta = state.estimate_theta();
    model.phi = state.estimate_phi();
    model.vocabulary = state.vocabulary();
    model.alpha = state.config().alpha;
    return model;
}

std::vector<std::pair<std::string, double>> top_words(const TopicModel& model,
                                                      std::size_t topic,
                                                      std::size_t n) {
    const std::size_t V = model.phi.cols();
    if (topic >= model.phi.rows()) {
        throw IndexOutOfRange("topic " + std::to_string(topic) + " >= K=" +
                              std::to_string(model.phi.rows()));
    }
    if (n > V) {
        throw IndexOutOfRange("top_words n=" + std::to_string(n) + " > V=" +
                              std::to_string(V));
    }
    std::vector<std::size_t> order(V);
    std::iota(order.begin(), order.end(), 0);
    auto row = model.phi.row(topic);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (row[a] != row[b]) return row[a] > row[b];
        return model.vocabulary.term(a) < model.vocabulary.term(b);
    });
    std::vector<std::pair<std::string, double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(model.vocabulary.term(order[i]), row[order[i]]);
    }
    return out;
}

FoldIn::FoldIn(const TopicModel& model)
    : k_(model.phi.rows()), v_(model.phi.cols()), alpha_(model.alpha),
      phi_t_(model.phi.cols(), model.phi.rows()) {
    for (std::size_t k = 0; k < k_; ++k) {
        for (std::size_t w = 0; w < v_; ++w) {
            phi_t_.at(w, k) = model.phi.at(k, w);
        }
    }
}

std::vector<double> FoldIn::infer(std::span<const std::int32_t> tokens,
                                  const FoldInConfig& config) const {
    if (tokens.empty()) throw EmptyDocument("fold-in of an empty document");
    if (config.passes < 1 || config.burn_in < 0 || config.burn_in >= config.passes) {
        throw InvalidConfig("fold-in needs 0 <= burn_in < passes");
    }
    for (auto w : tokens) {
        if (w < 0 || static_cast<std::size_t>(w) >= v_) {
            throw IndexOutOfRange("fold-in token outside model vocabulary");
        }
    }

    Rng rng(config.seed);
    std::vector<std::int32_t> z(tokens.size());
    std::vector<std::int32_t> counts(k_, 0);
    for (std::size_t n = 0; n < tokens.size(); ++n) {
        z[n] = static_cast<std::int32_t>(rng.next_index(k_));
        ++counts[z[n]];
    }

    std::vector<double> weights(k_), cum(k_);
    std::vector<double> acc(k_, 0.0);
    const double denom = static_cast<double>(tokens.size()) +
                         static_cast<double>(k_) * alpha_;
    int kept = 0;
    for (int pass = 0; pass < config.passes; ++pass) {
        for (std::size_t n = 0; n < tokens.size(); ++n) {
            --counts[z[n]];
            kernels::topic_weights_fixed_phi(counts.data(),
                                             phi_t_.row(tokens[n]).data(),
                                             alpha_, weights.data(), k_);
            double c = 0.0;
            for (std::size_t k = 0; k < k_; ++k) {
                c += weights[k];
                cum[k] = c;
            }
            double u = rng.next_double() * c;
            auto it = std::upper_bound(cum.begin(), cum.end(), u);
            if (it == cum.end()) --it;
            z[n] = static_cast<std::int32_t>(it - cum.begin());
            ++counts[z[n]];
        }
        if (pass >= config.burn_in) {
            for (std::size_t k = 0; k < k_; ++k) {
                acc[k] += (static_cast<double>(counts[k]) + alpha_) / denom;
            }
            ++kept;
        }
    }
    for (auto& v : acc) v /= kept;
    return acc;
}

std::vector<double> fold_in(const TopicModel& model,
                            std::span<const std::int32_t> tokens,
                            const FoldInConfig& config) {
    return FoldIn(model).infer(tokens, config);
}

double perplexity(const TopicModel& model, std::span<const Document> heldout,
                  const FoldInConfig& config) {
    FoldIn folder(model);
    double log_pred = 0.0;
    std::size_t tokens = 0;
    for (const auto& doc : heldout) {
        if (doc.tokens.empty()) continue;
        auto theta = folder.infer(doc.tokens, config);
        for (auto w : doc.tokens) {
            double p = 0.0;
            for (std::size_t k = 0; k < folder.num_topics(); ++k) {
                p += theta[k] * model.phi.at(k, static_cast<std::size_t>(w));
            }
            log_pred += std::log(p);
        }
        tokens += doc.tokens.size();
    }
    if (tokens == 0) throw EmptyDocument("perplexity over zero tokens");
    return std::exp(-log_pred / static_cast<double>(tokens));
}

} // namespace topiclda
