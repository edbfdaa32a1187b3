#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "topiclda/lda/model.hpp"

namespace topiclda {

// Cold-start app scoring from per-topic like/dislike joints.
//
//   p(+|t,u) = p(+,t|u) / ( p(+,t|u) + p(-,t|u) )
//   p(+|a,u) = sum_{t in T(a)} p(+|t,u) * p(t|a)
//
// Topics whose joints are both zero have no defined conditional; such terms
// are skipped and reported.

// Per-topic joints p(+,t|u) and p(-,t|u) for one user.
struct UserTopicJoints {
    std::vector<double> p_plus;
    std::vector<double> p_minus;
};

// Follower/topic distribution of one app: p(t|a) over T(a), sums to 1.
struct AppFollowerDistribution {
    std::string app_id;
    std::map<int, double> follower_probs;
};

// Throws UndefinedConditional when both joints are zero.
double follower_conditional(double p_plus_t, double p_minus_t);

struct ColdstartScore {
    double score = 0.0;
    std::vector<int> skipped; // topics with undefined conditionals
};

// Throws EmptyFollowerSet when the app has no follower distribution.
ColdstartScore coldstart_app_score(const UserTopicJoints& user,
                                   const AppFollowerDistribution& app);

// Joints from two fold-in runs against a trained model: the liked and
// disliked corpora are each concatenated into one pseudo-document and
// folded in, then weighted by the document-count fractions
//   p(+,t|u) = theta_plus[t]  * n_plus  / (n_plus + n_minus)
//   p(-,t|u) = theta_minus[t] * n_minus / (n_plus + n_minus)
// An empty side contributes all-zero joints. Throws EmptyDocument when both
// sides are empty.
UserTopicJoints user_topic_joints(const TopicModel& model,
                                  std::span<const Document> liked,
                                  std::span<const Document> disliked,
                                  const FoldInConfig& config);

} // namespace topiclda
