#pragma once

#include <cstdint>
#include <vector>

#include "topiclda/matrix.hpp"

namespace topiclda {

// Cross-network preference transfer.
//
// Per-user topic rows u_t (tweets) and u_f (social), transfer matrices
// W1, W2 (K_t x F), item factors V (J x F), graph matrix L (J x J). The
// objective over observed (i, j) pairs:
//
//   sum_{(i,j)}  ( r_ij - p_i . v_j )^2
//     + theta_reg * sum_j F(v_j)
//     + lambda * ( |W1|_F^2 + |W2|_F^2 + sum_j |v_j|^2 )
//
//   p_i    = eta * u_t_i W1 + (1 - eta) * u_f_i W2
//   F(v_j) = 2 * v_j . (V^T L_j) - L_jj * |v_j|^2      (L_j = column j)
//
// All three parameter blocks descend on their analytic gradients with a
// shared learning rate gamma. Note the v_j update uses d/dv_j; statements
// of this scheme sometimes print the W2 gradient in the v_j update line,
// which is dimensionally inconsistent and is read as d/dv_j here.
struct TransferParams {
    Matrix w1; // K_t x F
    Matrix w2; // K_t x F
    Matrix v;  // J x F
    Matrix graph; // L: J x J
    double eta = 0.5;
    double theta_reg = 0.01;
    double lambda = 0.01;
    double gamma = 0.01;

    std::size_t num_topics() const { return w1.rows(); }
    std::size_t num_factors() const { return w1.cols(); }
    std::size_t num_items() const { return v.rows(); }

    void validate() const;
};

struct UserTopicVectors {
    Matrix tweet_topics;  // |U| x K_t, row-stochastic
    Matrix social_topics; // |U| x K_t, row-stochastic

    std::size_t num_users() const { return tweet_topics.rows(); }
};

struct RatingObservations {
    struct Entry {
        int user;
        int item;
        double rating;
    };
    std::vector<Entry> entries; // at most one per (user, item)
};

double transfer_objective(const TransferParams& params,
                          const UserTopicVectors& users,
                          const RatingObservations& obs);

struct TransferGradient {
    Matrix w1, w2, v;
};
TransferGradient transfer_gradients(const TransferParams& params,
                                    const UserTopicVectors& users,
                                    const RatingObservations& obs);

// One simultaneous descent step: all gradients evaluated at the pre-step
// parameters, then W1, W2, V updated together.
void transfer_gradient_step(TransferParams& params,
                            const UserTopicVectors& users,
                            const RatingObservations& obs);

struct TransferFitConfig {
    std::size_t factors = 8;
    double eta = 0.5;
    double gamma = 0.01;
    double lambda = 0.01;
    double theta_reg = 0.01;
    int max_iterations = 500;
    double rel_tol = 1e-6;
    double init_scale = 0.01;
    std::uint64_t seed = 0;
};

struct TransferFitResult {
    TransferParams params;
    std::vector<double> objective_trace; // objective after every evaluation
    bool converged = false;
};

// Gradient descent until the relative objective decrease drops below
// rel_tol or max_iterations steps were taken. Throws Divergence when the
// objective becomes non-finite (learning rate too large). The graph matrix
// is caller-supplied; pass a J x J zero matrix to disable the F term.
TransferFitResult fit_preference_transfer(const UserTopicVectors& users,
                                          const RatingObservations& obs,
                                          const Matrix& graph,
                                          const TransferFitConfig& config);

// Preference scores of one user over all J items: p_i V^T.
std::vector<double> predict_preferences(const TransferParams& params,
                                        const UserTopicVectors& users,
                                        std::size_t user);

// k-NN cosine-similarity graph Laplacian over item topic vectors (J x K
// rows); a convenience builder for L.
Matrix knn_cosine_graph(const Matrix& item_topics, std::size_t k);

} // namespace topiclda
