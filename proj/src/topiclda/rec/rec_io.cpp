#include "topiclda/rec/rec_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "topiclda/error.hpp"

namespace topiclda {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    return in;
}

void expect_header(const std::string& got, const std::string& want,
                   const std::string& path) {
    std::string trimmed = got;
    if (!trimmed.empty() && trimmed.back() == '\r') trimmed.pop_back();
    if (trimmed != want) {
        throw IoError(path + ": expected header \"" + want + "\", got \"" +
                      trimmed + "\"");
    }
}

json parse_jsonl_line(const std::string& line, const std::string& path,
                      std::size_t line_no) {
    try {
        return json::parse(line);
    } catch (const json::exception& e) {
        throw IoError(path + ":" + std::to_string(line_no) +
                      ": invalid JSON: " + e.what());
    }
}

} // namespace

RatingsTable read_ratings_csv(const std::string& path) {
    auto in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": empty ratings file");
    expect_header(line, "user_id,item_id,rating", path);

    struct Raw {
        std::string user, item;
        double rating;
    };
    std::vector<Raw> raw;
    std::map<std::string, int> users, items;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw IoError(path + ":" + std::to_string(line_no) +
                          ": expected 3 fields");
        }
        double rating;
        try {
            rating = std::stod(fields[2]);
        } catch (const std::exception&) {
            throw IoError(path + ":" + std::to_string(line_no) +
                          ": bad rating \"" + fields[2] + "\"");
        }
        users.emplace(fields[0], 0);
        items.emplace(fields[1], 0);
        raw.push_back({fields[0], fields[1], rating});
    }

    RatingsTable table;
    int next = 0;
    for (auto& [id, idx] : users) {
        idx = next++;
        table.user_ids.push_back(id);
    }
    next = 0;
    for (auto& [id, idx] : items) {
        idx = next++;
        table.item_ids.push_back(id);
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& r : raw) {
        int u = users[r.user], i = items[r.item];
        if (!seen.emplace(u, i).second) {
            throw IoError(path + ": duplicate rating for (" + r.user + ", " +
                          r.item + ")");
        }
        table.observations.entries.push_back({u, i, r.rating});
    }
    return table;
}

std::vector<AppFollowerDistribution> read_app_followers_jsonl(
    const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<AppFollowerDistribution> apps;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto obj = parse_jsonl_line(line, path, line_no);
        AppFollowerDistribution app;
        try {
            app.app_id = obj.at("app_id").get<std::string>();
            for (const auto& [key, value] : obj.at("followers").items()) {
                app.follower_probs[std::stoi(key)] = value.get<double>();
            }
        } catch (const std::exception& e) {
            throw IoError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        double sum = 0.0;
        for (const auto& [t, p] : app.follower_probs) {
            if (p < 0.0) {
                throw IoError(path + ":" + std::to_string(line_no) +
                              ": negative follower probability");
            }
            sum += p;
        }
        if (!app.follower_probs.empty() && std::abs(sum - 1.0) > 1e-6) {
            throw IoError(path + ":" + std::to_string(line_no) +
                          ": follower probabilities of " + app.app_id +
                          " sum to " + std::to_string(sum) + ", expected 1");
        }
        apps.push_back(std::move(app));
    }
    return apps;
}

UsageMatrix read_usage_csv(const std::string& path) {
    auto in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": empty usage file");
    expect_header(line, "user_id,app_id,block_id", path);

    UsageMatrix usage;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw IoError(path + ":" + std::to_string(line_no) +
                          ": expected 3 fields");
        }
        usage.add_launch(fields[0], fields[1], fields[2]);
    }
    return usage;
}

std::vector<FolloweeProfile> read_followee_profiles_jsonl(
    const std::string& path) {
    auto in = open_or_throw(path);
    std::vector<FolloweeProfile> profiles;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto obj = parse_jsonl_line(line, path, line_no);
        FolloweeProfile profile;
        try {
            profile.followee_id = obj.at("followee_id").get<std::string>();
            profile.tweet_count = obj.at("tweet_count").get<std::int64_t>();
            for (const auto& [key, value] : obj.at("topic_counts").items()) {
                int topic = std::stoi(key);
                profile.tweet_topic_counts[topic] = value.get<std::int64_t>();
                profile.topic_set.insert(topic);
            }
            if (obj.contains("topic_set")) {
                profile.topic_set.clear();
                for (const auto& t : obj.at("topic_set")) {
                    profile.topic_set.insert(t.get<int>());
                }
            }
        } catch (const std::exception& e) {
            throw IoError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        profiles.push_back(std::move(profile));
    }
    return profiles;
}

UserTopicTable read_user_topics_jsonl(const std::string& path) {
    auto in = open_or_throw(path);
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto obj = parse_jsonl_line(line, path, line_no);
        try {
            auto id = obj.at("user_id").get<std::string>();
            auto tweet = obj.at("tweet_topics").get<std::vector<double>>();
            auto social = obj.at("social_topics").get<std::vector<double>>();
            if (tweet.size() != social.size()) {
                throw IoError(path + ":" + std::to_string(line_no) +
                              ": tweet/social topic lengths differ");
            }
            if (!rows.emplace(id, std::make_pair(std::move(tweet),
                                                 std::move(social))).second) {
                throw IoError(path + ":" + std::to_string(line_no) +
                              ": duplicate user " + id);
            }
        } catch (const json::exception& e) {
            throw IoError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (rows.empty()) throw IoError(path + ": no user topic rows");

    const auto k = rows.begin()->second.first.size();
    UserTopicTable table;
    table.vectors.tweet_topics = Matrix(rows.size(), k);
    table.vectors.social_topics = Matrix(rows.size(), k);
    std::size_t r = 0;
    for (const auto& [id, vecs] : rows) {
        if (vecs.first.size() != k) {
            throw IoError(path + ": inconsistent topic dimension for user " + id);
        }
        table.user_ids.push_back(id);
        for (std::size_t c = 0; c < k; ++c) {
            table.vectors.tweet_topics.at(r, c) = vecs.first[c];
            table.vectors.social_topics.at(r, c) = vecs.second[c];
        }
        ++r;
    }
    return table;
}

} // namespace topiclda
