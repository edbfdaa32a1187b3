#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace topiclda {

// Bijection term <-> id over [0, V). IDs are assigned by descending
// document frequency with ties broken lexicographically, so two runs over
// identical input produce identical mappings.
class Vocabulary {
public:
    Vocabulary() = default;
    explicit Vocabulary(std::vector<std::string> terms_in_id_order);

    std::size_t size() const { return id_to_term_.size(); }

    // -1 if absent
    std::int32_t id_of(const std::string& term) const {
        auto it = term_to_id_.find(term);
        return it == term_to_id_.end() ? -1 : it->second;
    }

    const std::string& term(std::size_t id) const;

    const std::vector<std::string>& terms() const { return id_to_term_; }

    bool operator==(const Vocabulary& other) const {
        return id_to_term_ == other.id_to_term_;
    }

private:
    std::unordered_map<std::string, std::int32_t> term_to_id_;
    std::vector<std::string> id_to_term_;
};

} // namespace topiclda
