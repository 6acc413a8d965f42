#ifndef CRM_CRM_FILTER_HPP
#define CRM_CRM_FILTER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "crm/belief.hpp"
#include "crm/grid.hpp"
#include "crm/sensor_model.hpp"

namespace crm {

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
};

struct ScanRay {
    double bearing = 0.0;  // world-frame direction, radians
    Measurement z;
};

struct Scan {
    Pose pose;
    std::vector<ScanRay> rays;
};

struct ScanDiagnostics {
    std::int64_t rays_applied = 0;
    std::int64_t rays_skipped = 0;
    double total_update_seconds = 0.0;
    std::vector<double> per_scan_seconds;
};

/// Coefficients of the affine likelihood (alpha * m + beta) one measurement
/// induces on one on-ray voxel. Satisfies alpha * mean + beta = 1 and
/// alpha * m + beta >= 0 on [0, 1].
struct AlphaBeta {
    double alpha = 0.0;
    double beta = 1.0;
};

/// Coefficients for the voxel at local index i_local given the cause
/// posterior over the augmented cone. mean_i must lie strictly inside
/// (0, 1); throws std::domain_error otherwise.
AlphaBeta alpha_beta(std::span<const double> scm, std::size_t i_local, double mean_i);

/// One measurement ray: cause posterior, then the affine belief update on
/// every traced voxel. Returns false when the ray is skipped (empty trace
/// or zero-likelihood measurement); the map is untouched in that case.
bool update_ray(MapBelief& map, const RangingModel& model, const Ray& ray, const Measurement& z);

/// Applies the scan's rays sequentially in order and records diagnostics.
void update_scan(MapBelief& map, const RangingModel& model, const Pose& pose,
                 std::span<const ScanRay> rays, ScanDiagnostics& diag);

Ray scan_ray_to_ray(const Pose& pose, double bearing, double max_range);

/// Serial reference implementations, kept for testing the parallel kernels.
namespace serial {

bool update_ray(MapBelief& map, const RangingModel& model, const Ray& ray, const Measurement& z);

void update_scan(MapBelief& map, const RangingModel& model, const Pose& pose,
                 std::span<const ScanRay> rays, ScanDiagnostics& diag);

}  // namespace serial

}  // namespace crm

#endif
