#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace topiclda {

// Per-block app usage. A launch indicator c(user, app, block) is 0/1; the
// influence of app a at block l is I_{a,l} = sum_u c(u, a, l). Pearson
// similarity between blocks runs over the per-app influence vectors, and a
// candidate block joins region L when its collaborative filter coefficient
//   r_lz = (1 / s_L) * sum_{lx in L} sim(lx, lz) * r_lx
// strictly exceeds the threshold r_th. The initial per-block coefficient
// r_lx is the block's average app influence.
class UsageMatrix {
public:
    // Registers a launch; repeats of the same (user, app, block) are
    // idempotent (binary indicator).
    void add_launch(const std::string& user, const std::string& app,
                    const std::string& block);

    std::size_t num_apps() const { return app_ids_.size(); }
    std::size_t num_blocks() const { return block_ids_.size(); }
    const std::vector<std::string>& apps() const { return app_ids_; }
    const std::vector<std::string>& blocks() const { return block_ids_; }
    bool has_block(const std::string& block) const;

    // I_{a,l}
    std::int64_t influence(const std::string& app, const std::string& block) const;

    // per-app influence vector of a block, over apps() order
    std::vector<double> influence_vector(const std::string& block) const;

    // average app influence at a block (the initial filter coefficient)
    double mean_influence(const std::string& block) const;

private:
    std::size_t app_index(const std::string& app);
    std::size_t block_index(const std::string& block);

    std::vector<std::string> app_ids_;
    std::vector<std::string> block_ids_;
    std::unordered_map<std::string, std::size_t> app_lookup_;
    std::unordered_map<std::string, std::size_t> block_lookup_;
    // block -> app -> set of users (binary launches)
    std::vector<std::vector<std::unordered_map<std::string, bool>>> launches_;
};

// Pearson correlation of the two blocks' per-app influence vectors.
// Symmetric, in [-1, 1]; identical vectors give exactly 1. Throws
// ZeroVariance when either block has constant influence.
double pearson_block_similarity(const UsageMatrix& usage,
                                const std::string& block_x,
                                const std::string& block_y);

// r_lz with the default per-block coefficients (mean influence).
double block_coefficient(const UsageMatrix& usage,
                         std::span<const std::string> region,
                         const std::string& candidate);

// r_lz with caller-supplied per-block coefficients r_lx (same order as
// region). Throws EmptyRegion when the region is empty.
double block_coefficient(const UsageMatrix& usage,
                         std::span<const std::string> region,
                         std::span<const double> region_coefficients,
                         const std::string& candidate);

// Strict inequality, per the membership rule.
inline bool region_membership(double r_lz, double r_th) { return r_lz > r_th; }

} // namespace topiclda
