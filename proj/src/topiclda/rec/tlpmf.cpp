#include "topiclda/rec/tlpmf.hpp"

#include <cmath>
#include <numbers>

#include "topiclda/error.hpp"
#include "topiclda/kernels/kernels.hpp"

namespace topiclda {

void TlpmfModel::validate() const {
    if (users.cols() != items.cols()) {
        throw DimensionMismatch("user and item factor dimensions differ");
    }
    if (tl.rows() != users.rows() || tl.cols() != items.rows()) {
        throw DimensionMismatch("TL must be (num users) x (num items)");
    }
    if (!(sigma2 > 0.0)) throw InvalidConfig("sigma2 must be > 0");
    for (std::size_t i = 0; i < tl.rows(); ++i) {
        for (std::size_t j = 0; j < tl.cols(); ++j) {
            double w = tl.at(i, j);
            if (w < 0.0 || w > 1.0) {
                throw InvalidConfig("TL entries must lie in [0, 1]");
            }
        }
    }
}

double tlpmf_log_likelihood(const TlpmfModel& model,
                            const RatingObservations& obs) {
    model.validate();
    const auto f = model.users.cols();
    const double log_norm =
        -0.5 * std::log(2.0 * std::numbers::pi * model.sigma2);
    const double inv_2s2 = 1.0 / (2.0 * model.sigma2);

    double ll = 0.0;
    for (const auto& e : obs.entries) {
        if (e.user < 0 || static_cast<std::size_t>(e.user) >= model.users.rows() ||
            e.item < 0 || static_cast<std::size_t>(e.item) >= model.items.rows()) {
            throw DimensionMismatch("rating observation indexes out of range");
        }
        const auto i = static_cast<std::size_t>(e.user);
        const auto j = static_cast<std::size_t>(e.item);
        const double pred =
            model.tl.at(i, j) * kernels::dot(model.users.row(i).data(),
                                             model.items.row(j).data(), f);
        const double resid = e.rating - pred;
        ll += log_norm - resid * resid * inv_2s2;
    }
    return ll;
}

} // namespace topiclda
