#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace topiclda {

// Topic profile of one followee: per-topic tweet counts n(t, T_f), the
// tweet count |T_f|, and the topic set Topics_f.
struct FolloweeProfile {
    std::string followee_id;
    std::map<int, std::int64_t> tweet_topic_counts; // n(t, T_f)
    std::int64_t tweet_count = 0;                   // |T_f|, >= 1
    std::set<int> topic_set;                        // Topics_f
};

// The top-m topics of a distribution by mass, ties broken by lower index.
// Returns min(m, K) indices.
std::set<int> derive_topic_set(std::span<const double> theta_row, int m);

// Ordered variant (descending mass, ties by lower index); used where the
// selection order matters, e.g. tag generation.
std::vector<int> derive_topic_order(std::span<const double> theta_row, int m);

// Topic set of a document collection: union of top-m per document.
std::set<int> topic_set_of_docs(std::span<const std::vector<double>> thetas,
                                int m = 3);

// Dominant (argmax) topic of a distribution, ties by lower index.
int dominant_topic(std::span<const double> theta_row);

// Profile from per-tweet topic distributions: n(t, T_f) counts tweets whose
// dominant topic is t; Topics_f is the union of top-m per tweet.
FolloweeProfile build_profile(std::string followee_id,
                              std::span<const std::vector<double>> tweet_thetas,
                              int m = 3);

// Followee ranking:
//   score = ( sum_{t in Topics_p} n(t, T_f) / |T_f| ) * |Topics_p ∩ Topics_f|
// Descending score, ties broken by followee_id ascending. Topics with no
// count contribute 0. Throws EmptyTopicsP when topics_p is empty.
std::vector<std::pair<std::string, double>> rank_followees(
    const std::set<int>& topics_p, std::span<const FolloweeProfile> followees);

} // namespace topiclda
