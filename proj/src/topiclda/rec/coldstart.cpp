#include "topiclda/rec/coldstart.hpp"

#include "topiclda/error.hpp"

namespace topiclda {

double follower_conditional(double p_plus_t, double p_minus_t) {
    if (p_plus_t < 0.0 || p_minus_t < 0.0) {
        throw InvalidConfig("joint probabilities must be >= 0");
    }
    if (p_plus_t == 0.0 && p_minus_t == 0.0) {
        throw UndefinedConditional("topic never observed for this user");
    }
    // extended precision keeps the denominator sum unrounded, so ratios that
    // are exact in the reals (e.g. 0.3 / (0.3 + 0.1)) come out exact
    const long double denom =
        static_cast<long double>(p_plus_t) + static_cast<long double>(p_minus_t);
    return static_cast<double>(static_cast<long double>(p_plus_t) / denom);
}

ColdstartScore coldstart_app_score(const UserTopicJoints& user,
                                   const AppFollowerDistribution& app) {
    if (app.follower_probs.empty()) {
        throw EmptyFollowerSet("app " + app.app_id + " has no follower set");
    }
    ColdstartScore out;
    for (const auto& [t, p_t_a] : app.follower_probs) {
        if (t < 0 || static_cast<std::size_t>(t) >= user.p_plus.size()) {
            throw IndexOutOfRange("app follower topic out of range");
        }
        const double plus = user.p_plus[static_cast<std::size_t>(t)];
        const double minus = user.p_minus[static_cast<std::size_t>(t)];
        if (plus == 0.0 && minus == 0.0) {
            out.skipped.push_back(t);
            continue;
        }
        out.score += follower_conditional(plus, minus) * p_t_a;
    }
    return out;
}

UserTopicJoints user_topic_joints(const TopicModel& model,
                                  std::span<const Document> liked,
                                  std::span<const Document> disliked,
                                  const FoldInConfig& config) {
    std::vector<std::int32_t> plus_tokens, minus_tokens;
    for (const auto& d : liked) {
        plus_tokens.insert(plus_tokens.end(), d.tokens.begin(), d.tokens.end());
    }
    for (const auto& d : disliked) {
        minus_tokens.insert(minus_tokens.end(), d.tokens.begin(), d.tokens.end());
    }
    const double n_plus = static_cast<double>(liked.size());
    const double n_minus = static_cast<double>(disliked.size());
    if ((liked.empty() || plus_tokens.empty()) &&
        (disliked.empty() || minus_tokens.empty())) {
        throw EmptyDocument("no liked or disliked content to fold in");
    }

    const auto k = model.phi.rows();
    UserTopicJoints joints;
    joints.p_plus.assign(k, 0.0);
    joints.p_minus.assign(k, 0.0);
    FoldIn folder(model);
    if (!plus_tokens.empty()) {
        auto theta = folder.infer(plus_tokens, config);
        const double w = n_plus / (n_plus + n_minus);
        for (std::size_t t = 0; t < k; ++t) joints.p_plus[t] = theta[t] * w;
    }
    if (!minus_tokens.empty()) {
        auto theta = folder.infer(minus_tokens, config);
        const double w = n_minus / (n_plus + n_minus);
        for (std::size_t t = 0; t < k; ++t) joints.p_minus[t] = theta[t] * w;
    }
    return joints;
}

} // namespace topiclda
