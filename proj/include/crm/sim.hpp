#ifndef CRM_SIM_HPP
#define CRM_SIM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "crm/crm_filter.hpp"
#include "crm/grid.hpp"
#include "crm/sensor_model.hpp"

namespace crm {

struct GroundTruthMap {
    GridSpec grid;
    std::vector<double> occupancy;  // in [0, 1], row-major

    double at(VoxelId id) const { return occupancy[static_cast<std::size_t>(id.value)]; }
    bool occupied(VoxelId id) const { return at(id) >= 0.5; }
};

void validate(const GroundTruthMap& map);

struct SensorRig {
    int ray_count = 60;
    double fov_deg = 360.0;
    double max_range = 1.0;    // meters
    double noise_std = 0.05;   // meters
    std::uint64_t seed = 1;
};

struct Trajectory {
    std::vector<Pose> poses;
};

/// Deterministic random stream; normal draws use the Box-Muller transform
/// so the byte stream is fixed across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }
    double uniform();  // [0, 1)
    double normal();   // standard normal, two uniforms per draw

    /// Stable per-stream seed derivation (splitmix64 mix).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

private:
    std::mt19937_64 gen_;
};

/// Range to the center of the nearest occupied voxel along the ray;
/// no-return when nothing blocks within max_range.
Measurement true_range(const GroundTruthMap& map, const Ray& ray);

/// Bearings spread over the field of view around pose.theta.
std::vector<double> rig_bearings(const SensorRig& rig, const Pose& pose);

/// One noisy scan. Negative noisy ranges are redrawn, the upper end clamps
/// to max_range; no-returns pass through unperturbed.
Scan simulate_scan(const GroundTruthMap& map, const SensorRig& rig, const Pose& pose, Rng& rng);

/// Scan stream over a trajectory, one derived noise stream per pose.
std::vector<Scan> simulate_trajectory(const GroundTruthMap& map, const SensorRig& rig,
                                      const Trajectory& trajectory);

/// Built-in 40 x 40 environment: four rooms joined by narrow doorways,
/// a few free-standing pillars, 0.05 m voxels over a 2 m x 2 m footprint.
GroundTruthMap corridor_map();

/// 23 poses snaking through all four rooms of corridor_map().
Trajectory corridor_trajectory();

}  // namespace crm

#endif
