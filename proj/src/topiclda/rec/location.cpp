#include "topiclda/rec/location.hpp"

#include <cmath>

#include "topiclda/error.hpp"
#include "topiclda/kernels/kernels.hpp"

namespace topiclda {

std::size_t UsageMatrix::app_index(const std::string& app) {
    auto it = app_lookup_.find(app);
    if (it != app_lookup_.end()) return it->second;
    app_ids_.push_back(app);
    for (auto& per_block : launches_) per_block.emplace_back();
    return app_lookup_.emplace(app, app_ids_.size() - 1).first->second;
}

std::size_t UsageMatrix::block_index(const std::string& block) {
    auto it = block_lookup_.find(block);
    if (it != block_lookup_.end()) return it->second;
    block_ids_.push_back(block);
    launches_.emplace_back(app_ids_.size());
    return block_lookup_.emplace(block, block_ids_.size() - 1).first->second;
}

void UsageMatrix::add_launch(const std::string& user, const std::string& app,
                             const std::string& block) {
    auto b = block_index(block);
    auto a = app_index(app);
    launches_[b][a][user] = true;
}

bool UsageMatrix::has_block(const std::string& block) const {
    return block_lookup_.contains(block);
}

std::int64_t UsageMatrix::influence(const std::string& app,
                                    const std::string& block) const {
    auto ai = app_lookup_.find(app);
    auto bi = block_lookup_.find(block);
    if (ai == app_lookup_.end() || bi == block_lookup_.end()) return 0;
    return static_cast<std::int64_t>(launches_[bi->second][ai->second].size());
}

std::vector<double> UsageMatrix::influence_vector(const std::string& block) const {
    auto bi = block_lookup_.find(block);
    if (bi == block_lookup_.end()) {
        throw IndexOutOfRange("unknown location block: " + block);
    }
    std::vector<double> v(app_ids_.size(), 0.0);
    for (std::size_t a = 0; a < app_ids_.size(); ++a) {
        v[a] = static_cast<double>(launches_[bi->second][a].size());
    }
    return v;
}

double UsageMatrix::mean_influence(const std::string& block) const {
    auto v = influence_vector(block);
    if (v.empty()) return 0.0;
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

double pearson_block_similarity(const UsageMatrix& usage,
                                const std::string& block_x,
                                const std::string& block_y) {
    auto x = usage.influence_vector(block_x);
    auto y = usage.influence_vector(block_y);
    const auto n = x.size();
    if (n == 0) throw ZeroVariance("no apps recorded");

    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    auto m = kernels::centered_moments(x.data(), y.data(), mean_x, mean_y, n);
    if (m.sxx == 0.0 || m.syy == 0.0) {
        throw ZeroVariance("block with constant app influence: " +
                           (m.sxx == 0.0 ? block_x : block_y));
    }
    // single sqrt of the product keeps self-similarity at exactly 1
    return m.sxy / std::sqrt(m.sxx * m.syy);
}

double block_coefficient(const UsageMatrix& usage,
                         std::span<const std::string> region,
                         std::span<const double> region_coefficients,
                         const std::string& candidate) {
    if (region.empty()) throw EmptyRegion("region has no location blocks");
    if (region_coefficients.size() != region.size()) {
        throw DimensionMismatch("one coefficient per region block required");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < region.size(); ++i) {
        sum += pearson_block_similarity(usage, region[i], candidate) *
               region_coefficients[i];
    }
    return sum / static_cast<double>(region.size());
}

double block_coefficient(const UsageMatrix& usage,
                         std::span<const std::string> region,
                         const std::string& candidate) {
    if (region.empty()) throw EmptyRegion("region has no location blocks");
    std::vector<double> coeffs;
    coeffs.reserve(region.size());
    for (const auto& block : region) {
        coeffs.push_back(usage.mean_influence(block));
    }
    return block_coefficient(usage, region, coeffs, candidate);
}

} // namespace topiclda
