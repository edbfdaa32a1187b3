#include "topiclda/rec/followee.hpp"

#include <algorithm>
#include <numeric>

#include "topiclda/error.hpp"

namespace topiclda {

std::vector<int> derive_topic_order(std::span<const double> theta_row, int m) {
    if (m < 1) throw InvalidConfig("topic set size m must be >= 1");
    std::vector<int> order(theta_row.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return theta_row[a] > theta_row[b]; // stable: ties keep lower index first
    });
    auto take = std::min<std::size_t>(static_cast<std::size_t>(m), order.size());
    order.resize(take);
    return order;
}

std::set<int> derive_topic_set(std::span<const double> theta_row, int m) {
    auto order = derive_topic_order(theta_row, m);
    return {order.begin(), order.end()};
}

int dominant_topic(std::span<const double> theta_row) {
    if (theta_row.empty()) throw InvalidConfig("empty topic distribution");
    std::size_t best = 0;
    for (std::size_t k = 1; k < theta_row.size(); ++k) {
        if (theta_row[k] > theta_row[best]) best = k;
    }
    return static_cast<int>(best);
}

std::set<int> topic_set_of_docs(std::span<const std::vector<double>> thetas,
                                int m) {
    std::set<int> topics;
    for (const auto& theta : thetas) {
        auto per_doc = derive_topic_set(theta, m);
        topics.insert(per_doc.begin(), per_doc.end());
    }
    return topics;
}

FolloweeProfile build_profile(std::string followee_id,
                              std::span<const std::vector<double>> tweet_thetas,
                              int m) {
    if (tweet_thetas.empty()) {
        throw InvalidConfig("followee " + followee_id + " has no tweets");
    }
    FolloweeProfile profile;
    profile.followee_id = std::move(followee_id);
    profile.tweet_count = static_cast<std::int64_t>(tweet_thetas.size());
    for (const auto& theta : tweet_thetas) {
        ++profile.tweet_topic_counts[dominant_topic(theta)];
    }
    profile.topic_set = topic_set_of_docs(tweet_thetas, m);
    return profile;
}

std::vector<std::pair<std::string, double>> rank_followees(
    const std::set<int>& topics_p, std::span<const FolloweeProfile> followees) {
    if (topics_p.empty()) throw EmptyTopicsP("Topics_p is empty");

    std::vector<std::pair<std::string, double>> ranked;
    ranked.reserve(followees.size());
    for (const auto& f : followees) {
        if (f.tweet_count < 1) {
            throw InvalidConfig("followee " + f.followee_id + " has tweet_count < 1");
        }
        double rate_sum = 0.0;
        std::size_t overlap = 0;
        for (int t : topics_p) {
            auto it = f.tweet_topic_counts.find(t);
            if (it != f.tweet_topic_counts.end()) {
                rate_sum += static_cast<double>(it->second) /
                            static_cast<double>(f.tweet_count);
            }
            if (f.topic_set.contains(t)) ++overlap;
        }
        ranked.emplace_back(f.followee_id,
                            rate_sum * static_cast<double>(overlap));
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return ranked;
}

} // namespace topiclda
