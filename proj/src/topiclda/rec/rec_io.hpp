#pragma once

#include <string>
#include <vector>

#include "topiclda/matrix.hpp"
#include "topiclda/rec/coldstart.hpp"
#include "topiclda/rec/followee.hpp"
#include "topiclda/rec/location.hpp"
#include "topiclda/rec/transfer.hpp"

namespace topiclda {

// Ratings CSV, header required: user_id,item_id,rating
// User and item ids are mapped to indices by lexicographic order, so the
// index assignment is deterministic for a given file.
struct RatingsTable {
    std::vector<std::string> user_ids; // sorted
    std::vector<std::string> item_ids; // sorted
    RatingObservations observations;
};
RatingsTable read_ratings_csv(const std::string& path);

// App-follower JSON-lines: {"app_id": ..., "followers": {"<topic>": prob}}
// Follower keys are topic indices in decimal.
std::vector<AppFollowerDistribution> read_app_followers_jsonl(
    const std::string& path);

// Usage CSV, header required: user_id,app_id,block_id (binary launches)
UsageMatrix read_usage_csv(const std::string& path);

// Followee profiles JSON-lines:
// {"followee_id": ..., "tweet_count": N, "topic_counts": {"<topic>": count}}
std::vector<FolloweeProfile> read_followee_profiles_jsonl(
    const std::string& path);

// User topic vectors JSON-lines:
// {"user_id": ..., "tweet_topics": [...], "social_topics": [...]}
// Users are ordered lexicographically by id; both matrices share that order.
struct UserTopicTable {
    std::vector<std::string> user_ids; // sorted
    UserTopicVectors vectors;
};
UserTopicTable read_user_topics_jsonl(const std::string& path);

} // namespace topiclda
