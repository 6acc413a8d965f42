#ifndef CRM_LOGODDS_HPP
#define CRM_LOGODDS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "crm/crm_filter.hpp"
#include "crm/grid.hpp"
#include "crm/sensor_model.hpp"

namespace crm {

/// Piecewise inverse sensor model: q_low before the return, a linear ramp
/// of width r_ramp up to the return, q_high for r_top past it, prior after.
struct IsmParams {
    double q_low = 0.45;
    double q_high = 0.55;
    double r_ramp = 0.1;  // meters
    double r_top = 0.1;   // meters
    double prior = 0.5;
};

void validate(const IsmParams& params);

/// Occupancy probability the ISM assigns to a voxel at distance d along a
/// ray with measurement z. No-returns report q_low out to max_range.
double ism_lookup(const IsmParams& params, double d, const Measurement& z, double max_range);

/// Occupancy log-odds per voxel, clamped to |l| <= l_max.
class LogOddsMap {
public:
    LogOddsMap(const GridSpec& grid, double l_max = 20.0);

    const GridSpec& grid() const { return grid_; }
    double l_max() const { return l_max_; }

    double logodds(VoxelId id) const { return logodds_[static_cast<std::size_t>(id.value)]; }
    double occupancy(VoxelId id) const;

    void add(VoxelId id, double increment);

    bool updated(VoxelId id) const { return updated_[static_cast<std::size_t>(id.value)] != 0; }

    bool operator==(const LogOddsMap& o) const = default;

    std::span<const double> all_logodds() const { return logodds_; }
    std::span<const std::uint8_t> all_updated() const { return updated_; }

private:
    GridSpec grid_{};
    double l_max_ = 20.0;
    std::vector<double> logodds_;
    std::vector<std::uint8_t> updated_;

    friend class LogOddsAccess;
};

class LogOddsAccess {
public:
    explicit LogOddsAccess(LogOddsMap& map) : map_(map) {}
    std::span<double> logodds() { return map_.logodds_; }
    std::span<std::uint8_t> updated() { return map_.updated_; }

private:
    LogOddsMap& map_;
};

/// mean = sigmoid(l), pseudo-std = sqrt(p (1 - p)).
BeliefStats logodds_stats(double logodds);

/// Adds logit(ism) - logit(prior) to every voxel the ray crosses.
void logodds_update(LogOddsMap& map, const RangingModel& model, const IsmParams& params,
                    const Ray& ray, const Measurement& z);

void logodds_update_scan(LogOddsMap& map, const RangingModel& model, const IsmParams& params,
                         const Pose& pose, std::span<const ScanRay> rays, ScanDiagnostics& diag);

namespace serial {

void logodds_update(LogOddsMap& map, const RangingModel& model, const IsmParams& params,
                    const Ray& ray, const Measurement& z);

void logodds_update_scan(LogOddsMap& map, const RangingModel& model, const IsmParams& params,
                         const Pose& pose, std::span<const ScanRay> rays, ScanDiagnostics& diag);

}  // namespace serial

}  // namespace crm

#endif
