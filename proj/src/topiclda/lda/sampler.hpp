#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "topiclda/lda/config.hpp"
#include "topiclda/matrix.hpp"
#include "topiclda/rng.hpp"
#include "topiclda/text/corpus.hpp"

namespace topiclda {

// Collapsed Gibbs sampler state for LDA.
//
// Notation (M docs, K topics, V words):
//   z[d][n]   topic assigned to token n of document d
//   n_dk      M x K   doc-topic counts
//   n_kw      K x V   topic-word counts (stored word-major internally)
//   n_k       K       topic totals
//
// The per-token conditional is the standard collapsed form with the current
// token removed from the counts:
//   p(z = k | z-, w)  propto  (n_dk- + alpha) (n_kw- + beta) / (n_k- + V beta)
//
// Sweep order is fixed as (document, token). One full sweep resamples every
// token exactly once, decrementing counts before and incrementing after, so
// the four count identities hold exactly at all times:
//   sum_k n_dk[d][k] == N_d,  sum_w n_kw[k][w] == n_k[k],
//   sum_d N_d == sum_k n_k[k],  z in [0, K).
//
// (corpus, config, seed) fully determines the chain bit for bit: the PRNG is
// pinned (see rng.hpp), each token consumes exactly one draw, and the weight
// computation uses only correctly rounded IEEE ops regardless of the active
// kernel variant.
class SamplerState {
public:
    // Assigns every token a topic drawn uniformly from [0, K) with the
    // seeded PRNG. Throws InvalidConfig for bad config or an empty corpus.
    SamplerState(const Corpus& corpus, LdaConfig config);

    // One full Gibbs sweep.
    void sweep();

    // Runs config.iterations sweeps, collecting averaged samples after
    // burn_in when config.average_samples is set.
    void run();
    void run(int sweeps); // ad-hoc number of sweeps, no sample collection

    // Normalized conditional for token n of document d, computed from the
    // current counts with that token removed. Sums to 1 within 1e-12.
    std::vector<double> conditional(std::size_t d, std::size_t n) const;

    // Point estimates: theta[d][k] = (n_dk + alpha) / (N_d + K alpha),
    // phi[k][w] = (n_kw + beta) / (n_k + V beta). When sample averaging is
    // enabled and samples have been collected, the mean of the per-sample
    // estimates is returned instead.
    Matrix estimate_theta() const;
    Matrix estimate_phi() const;

    // Collapsed log p(w, z) from the count matrices (Dirichlet-multinomial
    // closed form). Accumulation order is independent of topic labels, so
    // relabeling topics leaves the value bit-identical.
    double log_likelihood() const;

    // -- accessors ----------------------------------------------------------
    const LdaConfig& config() const { return config_; }
    std::size_t num_docs() const { return docs_.size(); }
    std::size_t num_topics() const { return static_cast<std::size_t>(config_.topics); }
    std::size_t vocab_size() const { return vocab_size_; }
    std::size_t total_tokens() const { return total_tokens_; }
    int completed_sweeps() const { return completed_sweeps_; }

    std::span<const std::int32_t> z(std::size_t d) const { return z_[d]; }
    std::vector<std::int32_t> flat_z() const; // (doc, token) order

    std::span<const std::int32_t> doc_topic_counts(std::size_t d) const {
        return {n_dk_.data() + d * num_topics(), num_topics()};
    }
    // word-major row: counts of word w across topics
    std::span<const std::int32_t> word_topic_counts(std::size_t w) const {
        return {n_wk_.data() + w * num_topics(), num_topics()};
    }
    std::span<const std::int32_t> topic_totals() const { return n_k_; }

    const std::vector<Document>& documents() const { return docs_; }
    const Vocabulary& vocabulary() const { return vocab_; }
    const Rng& rng() const { return rng_; }
    int samples_collected() const { return samples_collected_; }

    // Applies a topic relabeling perm (old index -> new index) to z and the
    // count matrices. A pure symmetry of the model: log_likelihood is
    // bit-identical before and after.
    void relabel_topics(std::span<const std::int32_t> perm);

    // Verifies the four count identities; throws CorruptCounts on violation.
    void check_invariants() const;

private:
    void decrement(std::size_t d, std::int32_t w, std::int32_t k);
    void increment(std::size_t d, std::int32_t w, std::int32_t k);
    std::int32_t sample_topic(std::size_t d, std::int32_t w);
    void collect_sample();

    LdaConfig config_;
    std::vector<Document> docs_;
    Vocabulary vocab_;
    std::size_t vocab_size_ = 0;
    std::size_t total_tokens_ = 0;
    double vbeta_ = 0.0;

    std::vector<std::vector<std::int32_t>> z_;
    std::vector<std::int32_t> n_dk_; // M x K
    std::vector<std::int32_t> n_wk_; // V x K (word-major for contiguous kernels)
    std::vector<std::int32_t> n_k_;  // K

    Rng rng_;
    int completed_sweeps_ = 0;

    int samples_collected_ = 0;
    std::vector<double> theta_acc_; // M x K sums of per-sample estimates
    std::vector<double> phi_acc_;   // K x V

    // scratch buffers for the sweep hot loop
    std::vector<double> weight_buf_;
    std::vector<double> cum_buf_;
};

} // namespace topiclda
