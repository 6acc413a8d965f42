#include "crm/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crm {

void validate(const GroundTruthMap& map) {
    validate(map.grid);
    if (static_cast<std::int64_t>(map.occupancy.size()) != voxel_count(map.grid))
        throw std::invalid_argument("GroundTruthMap: occupancy size mismatch");
    for (double v : map.occupancy)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("GroundTruthMap: occupancy outside [0, 1]");
}

double Rng::uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

Measurement true_range(const GroundTruthMap& map, const Ray& ray) {
    for (const TracedVoxel& tv : trace_ray(map.grid, ray)) {
        if (map.occupied(tv.id)) {
            const double r = std::clamp(tv.center_distance, 1e-12, ray.max_range);
            return Measurement::from_range(r);
        }
    }
    return Measurement::no_return();
}

std::vector<double> rig_bearings(const SensorRig& rig, const Pose& pose) {
    if (rig.ray_count < 1) throw std::invalid_argument("SensorRig: ray_count must be >= 1");
    const double fov = rig.fov_deg * std::numbers::pi / 180.0;
    std::vector<double> bearings(static_cast<std::size_t>(rig.ray_count));
    if (rig.fov_deg >= 360.0 - 1e-9) {
        const double step = 2.0 * std::numbers::pi / rig.ray_count;
        for (int i = 0; i < rig.ray_count; ++i) bearings[static_cast<std::size_t>(i)] = pose.theta + i * step;
    } else if (rig.ray_count == 1) {
        bearings[0] = pose.theta;
    } else {
        const double step = fov / (rig.ray_count - 1);
        for (int i = 0; i < rig.ray_count; ++i)
            bearings[static_cast<std::size_t>(i)] = pose.theta - 0.5 * fov + i * step;
    }
    return bearings;
}

Scan simulate_scan(const GroundTruthMap& map, const SensorRig& rig, const Pose& pose, Rng& rng) {
    if (!(rig.noise_std >= 0.0)) throw std::invalid_argument("SensorRig: noise_std must be >= 0");
    Scan scan;
    scan.pose = pose;
    scan.rays.reserve(static_cast<std::size_t>(rig.ray_count));
    for (double bearing : rig_bearings(rig, pose)) {
        const Ray ray = scan_ray_to_ray(pose, bearing, rig.max_range);
        Measurement z = true_range(map, ray);
        if (z.is_return() && rig.noise_std > 0.0) {
            double r = *z.range + rig.noise_std * rng.normal();
            while (r <= 0.0) r = *z.range + rig.noise_std * rng.normal();
            z = Measurement::from_range(std::min(r, rig.max_range));
        }
        scan.rays.push_back({bearing, z});
    }
    return scan;
}

std::vector<Scan> simulate_trajectory(const GroundTruthMap& map, const SensorRig& rig,
                                      const Trajectory& trajectory) {
    std::vector<Scan> scans;
    scans.reserve(trajectory.poses.size());
    for (std::size_t p = 0; p < trajectory.poses.size(); ++p) {
        Rng rng(Rng::derive(rig.seed, p));
        scans.push_back(simulate_scan(map, rig, trajectory.poses[p], rng));
    }
    return scans;
}

namespace {

struct CellBox {
    int x0, x1, y0, y1;  // inclusive cell ranges

    bool contains(int x, int y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

}  // namespace

GroundTruthMap corridor_map() {
    GroundTruthMap map;
    map.grid = GridSpec{2, {0.0, 0.0, 0.0}, 0.05, {40, 40, 1}};
    map.occupancy.assign(1600, 0.0);

    // doorway gaps in the three interior walls
    const CellBox door_a_low{12, 12, 7, 10};
    const CellBox door_a_high{12, 12, 29, 32};
    const CellBox door_b_low{27, 27, 9, 12};
    const CellBox door_b_high{27, 27, 27, 30};
    const CellBox door_c{17, 20, 20, 20};

    const CellBox pillars[] = {
        {2, 3, 16, 17},    // left room
        {22, 23, 25, 26},  // upper middle room
        {22, 23, 6, 7},    // lower middle room
        {29, 30, 20, 21},  // right room
    };

    auto occupied = [&](int x, int y) {
        if (x == 0 || x == 39 || y == 0 || y == 39) return true;
        if (x == 12 && !door_a_low.contains(x, y) && !door_a_high.contains(x, y)) return true;
        if (x == 27 && !door_b_low.contains(x, y) && !door_b_high.contains(x, y)) return true;
        if (y == 20 && x >= 13 && x <= 26 && !door_c.contains(x, y)) return true;
        for (const CellBox& p : pillars)
            if (p.contains(x, y)) return true;
        return false;
    };

    for (int y = 0; y < 40; ++y)
        for (int x = 0; x < 40; ++x)
            if (occupied(x, y)) map.occupancy[static_cast<std::size_t>(x + 40 * y)] = 1.0;
    return map;
}

Trajectory corridor_trajectory() {
    const std::vector<Vec3> polyline = {
        {0.30, 0.30, 0.0},  // lower left room
        {0.30, 1.55, 0.0},  // up the left room
        {0.95, 1.55, 0.0},  // east through the upper doorway
        {0.95, 0.55, 0.0},  // south through the middle gap
        {1.65, 0.55, 0.0},  // east through the lower doorway
        {1.65, 1.70, 0.0},  // up the right room
    };

    std::vector<double> seg_len;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
        seg_len.push_back((polyline[i + 1] - polyline[i]).norm());
        total += seg_len.back();
    }

    constexpr int kWaypoints = 23;
    Trajectory traj;
    traj.poses.reserve(kWaypoints);
    for (int w = 0; w < kWaypoints; ++w) {
        double s = total * w / (kWaypoints - 1);
        std::size_t seg = 0;
        while (seg + 1 < seg_len.size() && s > seg_len[seg]) {
            s -= seg_len[seg];
            ++seg;
        }
        const Vec3 a = polyline[seg];
        const Vec3 b = polyline[seg + 1];
        const double u = std::min(s / seg_len[seg], 1.0);
        const Vec3 p = a + (b - a) * u;
        traj.poses.push_back({p.x, p.y, std::atan2(b.y - a.y, b.x - a.x)});
    }
    return traj;
}

}  // namespace crm
