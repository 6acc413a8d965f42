#ifndef CRM_BELIEF_HPP
#define CRM_BELIEF_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "crm/grid.hpp"

namespace crm {

struct BeliefStats {
    double mean = 0.0;
    double stddev = 0.0;
};

/// Weighted-particle pdf over occupancy, support points in (0,1).
struct VoxelBelief {
    std::vector<double> support;
    std::vector<double> weights;
};

/// K midpoint support points (j - 1/2) / K, j = 1..K.
std::vector<double> midpoint_support(int k);

/// Uniform weights over the midpoint support; mean is 0.5. Throws for k < 2.
VoxelBelief uniform_belief(int k);

BeliefStats stats(const VoxelBelief& b);

/// Multiplies weights by the affine likelihood (alpha * m + beta) and
/// renormalizes. Requires alpha * m_j + beta >= -1e-12 on every support
/// point (tiny negatives clamp to zero). Returns false and leaves the
/// belief untouched when the posterior mass vanishes.
bool apply_linear_update(VoxelBelief& b, double alpha, double beta);

/// Per-voxel occupancy marginals over a grid. All voxels share one support;
/// means are cached and kept in step with the weights.
class MapBelief {
public:
    /// Uniform prior on K midpoint support points. Throws for k < 2.
    static MapBelief uniform_prior(const GridSpec& grid, int k);

    /// Two-point support {eps, 1 - eps} for binary-world semantics,
    /// weights (1 - p, p) with occupancy probability p per voxel (0.5 here).
    static MapBelief bernoulli_prior(const GridSpec& grid, double eps = 1e-6);

    const GridSpec& grid() const { return grid_; }
    int support_size() const { return static_cast<int>(support_.size()); }
    std::span<const double> support() const { return support_; }

    std::span<const double> weights(VoxelId id) const;
    void set_weights(VoxelId id, std::span<const double> w);

    double mean(VoxelId id) const { return mean_[static_cast<std::size_t>(id.value)]; }
    double stddev(VoxelId id) const;

    bool apply_linear_update(VoxelId id, double alpha, double beta);

    bool updated(VoxelId id) const { return updated_[static_cast<std::size_t>(id.value)] != 0; }
    void mark_updated(VoxelId id) { updated_[static_cast<std::size_t>(id.value)] = 1; }
    std::int64_t updated_count() const;

    bool operator==(const MapBelief& o) const = default;

    // flat storage accessors for kernels and serialization
    std::span<const double> all_weights() const { return weights_; }
    std::span<const double> all_means() const { return mean_; }
    std::span<const std::uint8_t> all_updated() const { return updated_; }

private:
    MapBelief() = default;

    GridSpec grid_{};
    std::vector<double> support_;
    std::vector<double> weights_;  // voxel-major, voxel_count * K
    std::vector<double> mean_;
    std::vector<std::uint8_t> updated_;

    friend class MapBeliefAccess;
};

/// Mutable flat views for the update kernels.
class MapBeliefAccess {
public:
    explicit MapBeliefAccess(MapBelief& map) : map_(map) {}
    std::span<double> weights() { return map_.weights_; }
    std::span<double> means() { return map_.mean_; }
    std::span<std::uint8_t> updated() { return map_.updated_; }

private:
    MapBelief& map_;
};

namespace detail {

double mean_of(std::span<const double> support, std::span<const double> weights);

/// Shared core of the affine update; returns false on vanished mass.
/// On success the weights are normalized and *mean_out holds the new mean.
bool linear_update_inplace(std::span<const double> support, std::span<double> weights,
                           double alpha, double beta, double* mean_out);

}  // namespace detail

}  // namespace crm

#endif
