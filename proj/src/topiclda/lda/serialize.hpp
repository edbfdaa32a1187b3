#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topiclda/lda/config.hpp"
#include "topiclda/lda/model.hpp"
#include "topiclda/lda/sampler.hpp"

namespace topiclda {

// On-disk model: a single JSON document with version field "format": 1,
// the config, the vocabulary, per-document metadata, and the integer count
// matrices n_dk (M x K), n_kw (K x V), n_k (K). Counts rather than floats,
// so save -> load -> estimate reproduces the estimates exactly and
// save -> load -> save is byte-identical.
struct ModelSnapshot {
    LdaConfig config;
    Vocabulary vocabulary;
    std::vector<std::string> doc_ids;
    std::vector<int> doc_years;
    std::vector<std::int64_t> doc_lengths;
    std::vector<std::int32_t> n_dk; // M x K row-major
    std::vector<std::int32_t> n_kw; // K x V row-major
    std::vector<std::int32_t> n_k;  // K

    std::size_t num_docs() const { return doc_ids.size(); }
    std::size_t num_topics() const { return static_cast<std::size_t>(config.topics); }
    std::size_t vocab_size() const { return vocabulary.size(); }

    Matrix estimate_theta() const;
    Matrix estimate_phi() const;
    TopicModel to_model() const;

    // The count identities, checked exactly; throws CorruptCounts.
    void check_invariants() const;
};

ModelSnapshot snapshot_of(const SamplerState& state);

void save_model(const SamplerState& state, const std::string& path);
void save_model(const ModelSnapshot& snapshot, const std::string& path);

// Validates the format version and all count invariants.
// Throws FormatVersionMismatch / CorruptCounts / IoError.
ModelSnapshot load_model(const std::string& path);

} // namespace topiclda
