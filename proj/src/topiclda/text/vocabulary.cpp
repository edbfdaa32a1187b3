#include "topiclda/text/vocabulary.hpp"

#include "topiclda/error.hpp"

namespace topiclda {

Vocabulary::Vocabulary(std::vector<std::string> terms_in_id_order)
    : id_to_term_(std::move(terms_in_id_order)) {
    term_to_id_.reserve(id_to_term_.size());
    for (std::size_t i = 0; i < id_to_term_.size(); ++i) {
        auto [it, inserted] =
            term_to_id_.emplace(id_to_term_[i], static_cast<std::int32_t>(i));
        if (!inserted) {
            throw InvalidConfig("duplicate vocabulary term: " + id_to_term_[i]);
        }
    }
}

const std::string& Vocabulary::term(std::size_t id) const {
    if (id >= id_to_term_.size()) {
        throw IndexOutOfRange("term id " + std::to_string(id) +
                              " >= vocabulary size " +
                              std::to_string(id_to_term_.size()));
    }
    return id_to_term_[id];
}

} // namespace topiclda
