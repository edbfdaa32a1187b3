#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "topiclda/lda/config.hpp"
#include "topiclda/lda/sampler.hpp"
#include "topiclda/matrix.hpp"
#include "topiclda/text/corpus.hpp"

namespace topiclda {

// Point estimates of the doc-topic and topic-word distributions. Rows of
// theta and phi are stochastic and strictly positive (Dirichlet smoothing).
struct TopicModel {
    Matrix theta; // M x K
    Matrix phi;   // K x V
    Vocabulary vocabulary;
    double alpha = 0.01; // document prior, needed for fold-in
};

TopicModel make_model(const SamplerState& state);

// Top n terms of a topic, sorted by descending probability, ties broken
// lexicographically ascending. Requires topic < K and n <= V.
std::vector<std::pair<std::string, double>> top_words(const TopicModel& model,
                                                      std::size_t topic,
                                                      std::size_t n);

struct FoldInConfig {
    int passes = 20;   // Gibbs passes over the document
    int burn_in = 10;  // initial passes discarded before averaging
    std::uint64_t seed = 0;
};

// Infers topic distributions for unseen documents with phi held fixed.
// Holds a word-major copy of phi so per-document calls stay cheap.
class FoldIn {
public:
    explicit FoldIn(const TopicModel& model);

    // Mean of the per-pass estimates (n_k + alpha) / (N + K alpha) over the
    // passes after burn_in. Deterministic given the seed. Throws
    // EmptyDocument for an empty token sequence, IndexOutOfRange for tokens
    // outside the model vocabulary.
    std::vector<double> infer(std::span<const std::int32_t> tokens,
                              const FoldInConfig& config) const;

    std::size_t num_topics() const { return k_; }

private:
    std::size_t k_ = 0;
    std::size_t v_ = 0;
    double alpha_ = 0.0;
    Matrix phi_t_; // V x K
};

std::vector<double> fold_in(const TopicModel& model,
                            std::span<const std::int32_t> tokens,
                            const FoldInConfig& config);

// exp(- predictive log-likelihood / token count) over held-out documents;
// per-token predictive probability is sum_k theta_d[k] phi[k][w] with
// theta_d from fold-in. Lower is better.
double perplexity(const TopicModel& model,
                  std::span<const Document> heldout,
                  const FoldInConfig& config);

} // namespace topiclda
