#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "topiclda/lda/config.hpp"
#include "topiclda/text/corpus.hpp"

namespace topiclda {

// Exact posterior over topic assignments for tiny instances, by enumerating
// every configuration and evaluating the collapsed joint p(w, z) in
// Dirichlet-multinomial closed form. Testing oracle for the Gibbs sampler.
//
// Configurations are flattened in (document, token) order and indexed in
// mixed radix: index = sum_t z_t * K^t.
struct ExactPosterior {
    std::size_t num_tokens = 0;
    std::size_t num_topics = 0;
    std::vector<double> log_joint; // unnormalized log p(w, z), K^T entries
    std::vector<double> prob;      // normalized, sums to 1 within 1e-10

    std::size_t index_of(std::span<const std::int32_t> flat_z) const;
};

// Refuses instances with K^T > 2^18 (InstanceTooLarge).
ExactPosterior exact_posterior(const Corpus& corpus, const LdaConfig& config);

} // namespace topiclda
