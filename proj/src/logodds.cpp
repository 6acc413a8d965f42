#include "crm/logodds.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace crm {

namespace {

constexpr std::size_t kParallelGrain = 4096;

double logit(double p) { return std::log(p / (1.0 - p)); }

double ism_increment(const IsmParams& params, double d, const Measurement& z, double max_range) {
    return logit(ism_lookup(params, d, z, max_range)) - logit(params.prior);
}

}  // namespace

void validate(const IsmParams& params) {
    if (!(params.q_low > 0.0 && params.q_low <= 0.5))
        throw std::invalid_argument("IsmParams: q_low must be in (0, 0.5]");
    if (!(params.q_high >= 0.5 && params.q_high < 1.0))
        throw std::invalid_argument("IsmParams: q_high must be in [0.5, 1)");
    if (params.r_ramp < 0.0 || params.r_top < 0.0)
        throw std::invalid_argument("IsmParams: ramp widths must be non-negative");
    if (!(params.prior > 0.0 && params.prior < 1.0))
        throw std::invalid_argument("IsmParams: prior must be in (0, 1)");
}

double ism_lookup(const IsmParams& params, double d, const Measurement& z, double max_range) {
    if (d < 0.0) throw std::invalid_argument("ism_lookup: distance must be non-negative");
    if (!z.is_return()) return d <= max_range ? params.q_low : params.prior;
    const double r = *z.range;
    if (d < r - params.r_ramp) return params.q_low;
    if (d <= r) {
        if (params.r_ramp == 0.0) return params.q_high;
        const double u = (d - (r - params.r_ramp)) / params.r_ramp;
        return params.q_low + u * (params.q_high - params.q_low);
    }
    if (d <= r + params.r_top) return params.q_high;
    return params.prior;
}

LogOddsMap::LogOddsMap(const GridSpec& grid, double l_max) : grid_(grid), l_max_(l_max) {
    validate(grid);
    if (!(l_max > 0.0)) throw std::invalid_argument("LogOddsMap: l_max must be positive");
    const std::size_t n = static_cast<std::size_t>(voxel_count(grid));
    logodds_.assign(n, 0.0);
    updated_.assign(n, 0);
}

double LogOddsMap::occupancy(VoxelId id) const {
    return 1.0 / (1.0 + std::exp(-logodds(id)));
}

void LogOddsMap::add(VoxelId id, double increment) {
    double& l = logodds_[static_cast<std::size_t>(id.value)];
    l = std::clamp(l + increment, -l_max_, l_max_);
    updated_[static_cast<std::size_t>(id.value)] = 1;
}

BeliefStats logodds_stats(double logodds) {
    const double p = 1.0 / (1.0 + std::exp(-logodds));
    return {p, std::sqrt(p * (1.0 - p))};
}

void logodds_update(LogOddsMap& map, const RangingModel& model, const IsmParams& params,
                    const Ray& ray, const Measurement& z) {
    const RayTrace trace = trace_ray(map.grid(), ray);
    LogOddsAccess access(map);
    const auto logodds = access.logodds();
    const auto updated = access.updated();
    const double l_max = map.l_max();
    const std::int64_t count = static_cast<std::int64_t>(trace.size());
#pragma omp parallel for schedule(static) if (trace.size() >= kParallelGrain)
    for (std::int64_t i = 0; i < count; ++i) {
        const TracedVoxel& tv = trace[static_cast<std::size_t>(i)];
        const std::size_t v = static_cast<std::size_t>(tv.id.value);
        const double inc = ism_increment(params, tv.center_distance, z, model.max_range);
        logodds[v] = std::clamp(logodds[v] + inc, -l_max, l_max);
        updated[v] = 1;
    }
}

void logodds_update_scan(LogOddsMap& map, const RangingModel& model, const IsmParams& params,
                         const Pose& pose, std::span<const ScanRay> rays, ScanDiagnostics& diag) {
    const auto start = std::chrono::steady_clock::now();
    for (const ScanRay& sr : rays) {
        logodds_update(map, model, params, scan_ray_to_ray(pose, sr.bearing, model.max_range), sr.z);
        ++diag.rays_applied;
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    diag.per_scan_seconds.push_back(dt);
    diag.total_update_seconds += dt;
}

namespace serial {

void logodds_update(LogOddsMap& map, const RangingModel& model, const IsmParams& params,
                    const Ray& ray, const Measurement& z) {
    for (const TracedVoxel& tv : trace_ray(map.grid(), ray))
        map.add(tv.id, ism_increment(params, tv.center_distance, z, model.max_range));
}

void logodds_update_scan(LogOddsMap& map, const RangingModel& model, const IsmParams& params,
                         const Pose& pose, std::span<const ScanRay> rays, ScanDiagnostics& diag) {
    const auto start = std::chrono::steady_clock::now();
    for (const ScanRay& sr : rays) {
        logodds_update(map, model, params, scan_ray_to_ray(pose, sr.bearing, model.max_range), sr.z);
        ++diag.rays_applied;
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    diag.per_scan_seconds.push_back(dt);
    diag.total_update_seconds += dt;
}

}  // namespace serial

}  // namespace crm
