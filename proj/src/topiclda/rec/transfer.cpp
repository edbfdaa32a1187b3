#include "topiclda/rec/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "topiclda/error.hpp"
#include "topiclda/kernels/kernels.hpp"
#include "topiclda/rng.hpp"

namespace topiclda {

void TransferParams::validate() const {
    if (!w1.same_shape(w2)) throw DimensionMismatch("W1 and W2 shapes differ");
    if (v.cols() != w1.cols()) {
        throw DimensionMismatch("item factors and transfer matrices disagree on F");
    }
    if (graph.rows() != v.rows() || graph.cols() != v.rows()) {
        throw DimensionMismatch("graph matrix must be J x J");
    }
    if (eta < 0.0 || eta > 1.0) throw InvalidConfig("eta must be in [0, 1]");
    if (!(gamma > 0.0)) throw InvalidConfig("gamma must be > 0");
    if (lambda < 0.0) throw InvalidConfig("lambda must be >= 0");
    if (theta_reg < 0.0) throw InvalidConfig("theta_reg must be >= 0");
}

namespace {

void check_inputs(const TransferParams& params, const UserTopicVectors& users,
                  const RatingObservations& obs) {
    params.validate();
    if (!users.tweet_topics.same_shape(users.social_topics)) {
        throw DimensionMismatch("tweet and social topic matrices differ in shape");
    }
    if (users.tweet_topics.cols() != params.num_topics()) {
        throw DimensionMismatch("user topic dimension != W rows");
    }
    for (const auto& e : obs.entries) {
        if (e.user < 0 || static_cast<std::size_t>(e.user) >= users.num_users() ||
            e.item < 0 || static_cast<std::size_t>(e.item) >= params.num_items()) {
            throw DimensionMismatch("rating observation indexes out of range");
        }
    }
}

// p_i = eta * u_t_i W1 + (1 - eta) * u_f_i W2
std::vector<double> blended_projection(const TransferParams& params,
                                       const UserTopicVectors& users,
                                       std::size_t user) {
    const auto kt = params.num_topics();
    const auto f = params.num_factors();
    std::vector<double> p(f, 0.0);
    auto ut = users.tweet_topics.row(user);
    auto uf = users.social_topics.row(user);
    for (std::size_t t = 0; t < kt; ++t) {
        const double ct = params.eta * ut[t];
        const double cf = (1.0 - params.eta) * uf[t];
        if (ct != 0.0) kernels::axpy(ct, params.w1.row(t).data(), p.data(), f);
        if (cf != 0.0) kernels::axpy(cf, params.w2.row(t).data(), p.data(), f);
    }
    return p;
}

// q_j = V^T L_j  (column j of L against the item factor rows)
std::vector<double> graph_projection(const TransferParams& params,
                                     std::size_t j) {
    const auto jn = params.num_items();
    const auto f = params.num_factors();
    std::vector<double> q(f, 0.0);
    for (std::size_t i = 0; i < jn; ++i) {
        const double lij = params.graph.at(i, j);
        if (lij != 0.0) kernels::axpy(lij, params.v.row(i).data(), q.data(), f);
    }
    return q;
}

} // namespace

double transfer_objective(const TransferParams& params,
                          const UserTopicVectors& users,
                          const RatingObservations& obs) {
    check_inputs(params, users, obs);
    const auto f = params.num_factors();

    double loss = 0.0;
    for (const auto& e : obs.entries) {
        auto p = blended_projection(params, users, static_cast<std::size_t>(e.user));
        double pred = kernels::dot(p.data(),
                                   params.v.row(static_cast<std::size_t>(e.item)).data(), f);
        double err = e.rating - pred;
        loss += err * err;
    }

    if (params.theta_reg != 0.0) {
        double reg = 0.0;
        for (std::size_t j = 0; j < params.num_items(); ++j) {
            auto q = graph_projection(params, j);
            auto vj = params.v.row(j);
            reg += 2.0 * kernels::dot(vj.data(), q.data(), f) -
                   params.graph.at(j, j) * kernels::sum_squares(vj.data(), f);
        }
        loss += params.theta_reg * reg;
    }

    if (params.lambda != 0.0) {
        double frob = kernels::sum_squares(params.w1.data(), params.w1.rows() * f) +
                      kernels::sum_squares(params.w2.data(), params.w2.rows() * f) +
                      kernels::sum_squares(params.v.data(), params.v.rows() * f);
        loss += params.lambda * frob;
    }
    return loss;
}

TransferGradient transfer_gradients(const TransferParams& params,
                                    const UserTopicVectors& users,
                                    const RatingObservations& obs) {
    check_inputs(params, users, obs);
    const auto kt = params.num_topics();
    const auto f = params.num_factors();
    const auto jn = params.num_items();

    TransferGradient g;
    g.w1 = Matrix(kt, f);
    g.w2 = Matrix(kt, f);
    g.v = Matrix(jn, f);

    // squared-loss part
    for (const auto& e : obs.entries) {
        const auto i = static_cast<std::size_t>(e.user);
        const auto j = static_cast<std::size_t>(e.item);
        auto p = blended_projection(params, users, i);
        auto vj = params.v.row(j);
        const double err = e.rating - kernels::dot(p.data(), vj.data(), f);
        const double c = -2.0 * err;

        // d/dW1 = c * eta * u_t_i^T v_j ; d/dW2 = c * (1-eta) * u_f_i^T v_j
        auto ut = users.tweet_topics.row(i);
        auto uf = users.social_topics.row(i);
        for (std::size_t t = 0; t < kt; ++t) {
            const double a1 = c * params.eta * ut[t];
            const double a2 = c * (1.0 - params.eta) * uf[t];
            if (a1 != 0.0) kernels::axpy(a1, vj.data(), g.w1.row(t).data(), f);
            if (a2 != 0.0) kernels::axpy(a2, vj.data(), g.w2.row(t).data(), f);
        }
        // d/dv_j = c * p_i
        kernels::axpy(c, p.data(), g.v.row(j).data(), f);
    }

    // graph regularizer: d/dv_m = theta * 2 ( sum_j (L_mj + L_jm) v_j - L_mm v_m )
    if (params.theta_reg != 0.0) {
        for (std::size_t m = 0; m < jn; ++m) {
            std::vector<double> grad_m(f, 0.0);
            for (std::size_t j = 0; j < jn; ++j) {
                const double c = params.graph.at(m, j) + params.graph.at(j, m);
                if (c != 0.0) kernels::axpy(c, params.v.row(j).data(), grad_m.data(), f);
            }
            kernels::axpy(-params.graph.at(m, m), params.v.row(m).data(),
                          grad_m.data(), f);
            kernels::axpy(2.0 * params.theta_reg, grad_m.data(),
                          g.v.row(m).data(), f);
        }
    }

    // Frobenius terms
    if (params.lambda != 0.0) {
        const double c = 2.0 * params.lambda;
        kernels::axpy(c, params.w1.data(), g.w1.data(), kt * f);
        kernels::axpy(c, params.w2.data(), g.w2.data(), kt * f);
        kernels::axpy(c, params.v.data(), g.v.data(), jn * f);
    }
    return g;
}

void transfer_gradient_step(TransferParams& params,
                            const UserTopicVectors& users,
                            const RatingObservations& obs) {
    auto g = transfer_gradients(params, users, obs);
    const double step = -params.gamma;
    kernels::axpy(step, g.w1.data(), params.w1.data(),
                  params.w1.rows() * params.w1.cols());
    kernels::axpy(step, g.w2.data(), params.w2.data(),
                  params.w2.rows() * params.w2.cols());
    kernels::axpy(step, g.v.data(), params.v.data(),
                  params.v.rows() * params.v.cols());
}

TransferFitResult fit_preference_transfer(const UserTopicVectors& users,
                                          const RatingObservations& obs,
                                          const Matrix& graph,
                                          const TransferFitConfig& config) {
    if (obs.entries.empty()) {
        throw InvalidConfig("preference transfer needs at least one observation");
    }
    {
        std::set<std::pair<int, int>> seen;
        for (const auto& e : obs.entries) {
            if (!seen.emplace(e.user, e.item).second) {
                throw InvalidConfig("duplicate rating observation");
            }
        }
    }
    std::size_t items = graph.rows();
    for (const auto& e : obs.entries) {
        items = std::max(items, static_cast<std::size_t>(e.item) + 1);
    }

    TransferFitResult res;
    res.params.eta = config.eta;
    res.params.gamma = config.gamma;
    res.params.lambda = config.lambda;
    res.params.theta_reg = config.theta_reg;
    res.params.graph = graph.empty() ? Matrix(items, items) : graph;
    res.params.w1 = Matrix(users.tweet_topics.cols(), config.factors);
    res.params.w2 = Matrix(users.tweet_topics.cols(), config.factors);
    res.params.v = Matrix(items, config.factors);

    Rng rng(config.seed);
    auto fill = [&](Matrix& m) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                m.at(r, c) = (2.0 * rng.next_double() - 1.0) * config.init_scale;
            }
        }
    };
    fill(res.params.w1);
    fill(res.params.w2);
    fill(res.params.v);

    double obj = transfer_objective(res.params, users, obs);
    res.objective_trace.push_back(obj);
    if (!std::isfinite(obj)) throw Divergence("objective is not finite");

    for (int it = 0; it < config.max_iterations; ++it) {
        auto g = transfer_gradients(res.params, users, obs);
        double gmax = 0.0;
        auto scan = [&](const Matrix& m) {
            for (std::size_t i = 0; i < m.rows() * m.cols(); ++i) {
                gmax = std::max(gmax, std::abs(m.data()[i]));
            }
        };
        scan(g.w1);
        scan(g.w2);
        scan(g.v);
        if (gmax == 0.0) { // already at a stationary point, take no step
            res.converged = true;
            break;
        }

        const double step = -res.params.gamma;
        kernels::axpy(step, g.w1.data(), res.params.w1.data(),
                      g.w1.rows() * g.w1.cols());
        kernels::axpy(step, g.w2.data(), res.params.w2.data(),
                      g.w2.rows() * g.w2.cols());
        kernels::axpy(step, g.v.data(), res.params.v.data(),
                      g.v.rows() * g.v.cols());

        double next = transfer_objective(res.params, users, obs);
        res.objective_trace.push_back(next);
        if (!std::isfinite(next)) {
            throw Divergence("objective diverged; reduce the learning rate");
        }
        if (std::abs(obj - next) < config.rel_tol * std::max(std::abs(obj), 1e-12)) {
            res.converged = true;
            obj = next;
            break;
        }
        obj = next;
    }
    return res;
}

std::vector<double> predict_preferences(const TransferParams& params,
                                        const UserTopicVectors& users,
                                        std::size_t user) {
    if (user >= users.num_users()) {
        throw IndexOutOfRange("user index " + std::to_string(user) +
                              " >= " + std::to_string(users.num_users()));
    }
    RatingObservations none;
    check_inputs(params, users, none);
    const auto f = params.num_factors();
    auto p = blended_projection(params, users, user);
    std::vector<double> scores(params.num_items());
    for (std::size_t j = 0; j < params.num_items(); ++j) {
        scores[j] = kernels::dot(p.data(), params.v.row(j).data(), f);
    }
    return scores;
}

Matrix knn_cosine_graph(const Matrix& item_topics, std::size_t k) {
    const auto j = item_topics.rows();
    const auto f = item_topics.cols();
    Matrix sim(j, j);
    std::vector<double> norms(j);
    for (std::size_t i = 0; i < j; ++i) {
        norms[i] = std::sqrt(kernels::sum_squares(item_topics.row(i).data(), f));
    }
    for (std::size_t a = 0; a < j; ++a) {
        for (std::size_t b = a + 1; b < j; ++b) {
            double denom = norms[a] * norms[b];
            double s = denom > 0.0
                           ? kernels::dot(item_topics.row(a).data(),
                                          item_topics.row(b).data(), f) / denom
                           : 0.0;
            sim.at(a, b) = s;
            sim.at(b, a) = s;
        }
    }
    // keep the k strongest neighbours per row, symmetrized
    Matrix adj(j, j);
    for (std::size_t a = 0; a < j; ++a) {
        std::vector<std::size_t> order;
        for (std::size_t b = 0; b < j; ++b) {
            if (b != a) order.push_back(b);
        }
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            if (sim.at(a, x) != sim.at(a, y)) return sim.at(a, x) > sim.at(a, y);
            return x < y;
        });
        for (std::size_t i = 0; i < std::min(k, order.size()); ++i) {
            auto b = order[i];
            adj.at(a, b) = sim.at(a, b);
            adj.at(b, a) = sim.at(a, b);
        }
    }
    // Laplacian L = D - A
    Matrix lap(j, j);
    for (std::size_t a = 0; a < j; ++a) {
        double degree = 0.0;
        for (std::size_t b = 0; b < j; ++b) degree += adj.at(a, b);
        for (std::size_t b = 0; b < j; ++b) lap.at(a, b) = -adj.at(a, b);
        lap.at(a, a) = degree;
    }
    return lap;
}

} // namespace topiclda
