#include "crm/belief.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crm {

namespace detail {

double mean_of(std::span<const double> support, std::span<const double> weights) {
    double m = 0.0;
    for (std::size_t j = 0; j < support.size(); ++j) m += weights[j] * support[j];
    return m;
}

bool linear_update_inplace(std::span<const double> support, std::span<double> weights,
                           double alpha, double beta, double* mean_out) {
    const std::size_t k = support.size();
    double mass = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        double f = alpha * support[j] + beta;
        if (f < 0.0) {
            if (f < -1e-12) throw std::invalid_argument("linear update: negative likelihood on support");
            f = 0.0;
        }
        weights[j] *= f;
        mass += weights[j];
    }
    if (!(mass >= 1e-300)) return false;
    const double inv = 1.0 / mass;
    double mean = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        weights[j] *= inv;
        mean += weights[j] * support[j];
    }
    if (mean_out) *mean_out = mean;
    return true;
}

}  // namespace detail

std::vector<double> midpoint_support(int k) {
    if (k < 2) throw std::invalid_argument("support size must be >= 2");
    std::vector<double> s(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) s[static_cast<std::size_t>(j)] = (j + 0.5) / k;
    return s;
}

VoxelBelief uniform_belief(int k) {
    VoxelBelief b;
    b.support = midpoint_support(k);
    b.weights.assign(static_cast<std::size_t>(k), 1.0 / k);
    return b;
}

BeliefStats stats(const VoxelBelief& b) {
    double m = 0.0;
    double m2 = 0.0;
    for (std::size_t j = 0; j < b.support.size(); ++j) {
        m += b.weights[j] * b.support[j];
        m2 += b.weights[j] * b.support[j] * b.support[j];
    }
    return {m, std::sqrt(std::max(0.0, m2 - m * m))};
}

bool apply_linear_update(VoxelBelief& b, double alpha, double beta) {
    std::vector<double> w = b.weights;
    if (!detail::linear_update_inplace(b.support, w, alpha, beta, nullptr)) return false;
    b.weights = std::move(w);
    return true;
}

MapBelief MapBelief::uniform_prior(const GridSpec& grid, int k) {
    validate(grid);
    MapBelief map;
    map.grid_ = grid;
    map.support_ = midpoint_support(k);
    const std::size_t n = static_cast<std::size_t>(voxel_count(grid));
    map.weights_.assign(n * static_cast<std::size_t>(k), 1.0 / k);
    map.mean_.assign(n, 0.5);
    map.updated_.assign(n, 0);
    return map;
}

MapBelief MapBelief::bernoulli_prior(const GridSpec& grid, double eps) {
    validate(grid);
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("bernoulli prior: eps must be in (0, 0.5)");
    MapBelief map;
    map.grid_ = grid;
    map.support_ = {eps, 1.0 - eps};
    const std::size_t n = static_cast<std::size_t>(voxel_count(grid));
    map.weights_.assign(n * 2, 0.5);
    map.mean_.assign(n, 0.5);
    map.updated_.assign(n, 0);
    return map;
}

std::span<const double> MapBelief::weights(VoxelId id) const {
    const std::size_t k = support_.size();
    return {weights_.data() + static_cast<std::size_t>(id.value) * k, k};
}

void MapBelief::set_weights(VoxelId id, std::span<const double> w) {
    const std::size_t k = support_.size();
    if (w.size() != k) throw std::invalid_argument("set_weights: support size mismatch");
    double sum = 0.0;
    for (double v : w) {
        if (v < 0.0) throw std::invalid_argument("set_weights: negative weight");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("set_weights: weights must sum to 1");
    std::copy(w.begin(), w.end(), weights_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(id.value) * k));
    mean_[static_cast<std::size_t>(id.value)] = detail::mean_of(support_, w);
}

double MapBelief::stddev(VoxelId id) const {
    const auto w = weights(id);
    const double m = mean_[static_cast<std::size_t>(id.value)];
    double m2 = 0.0;
    for (std::size_t j = 0; j < support_.size(); ++j) m2 += w[j] * support_[j] * support_[j];
    return std::sqrt(std::max(0.0, m2 - m * m));
}

bool MapBelief::apply_linear_update(VoxelId id, double alpha, double beta) {
    const std::size_t k = support_.size();
    std::span<double> w{weights_.data() + static_cast<std::size_t>(id.value) * k, k};
    return detail::linear_update_inplace(support_, w, alpha, beta,
                                         &mean_[static_cast<std::size_t>(id.value)]);
}

std::int64_t MapBelief::updated_count() const {
    std::int64_t n = 0;
    for (auto u : updated_) n += u;
    return n;
}

}  // namespace crm
