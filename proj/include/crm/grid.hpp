#ifndef CRM_GRID_HPP
#define CRM_GRID_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace crm {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
};

struct Cell {
    int x = 0;
    int y = 0;
    int z = 0;

    bool operator==(const Cell& o) const = default;
};

/// Global voxel index in [0, voxel_count).
struct VoxelId {
    std::int64_t value = -1;

    bool operator==(const VoxelId& o) const = default;
    auto operator<=>(const VoxelId& o) const = default;
};

/// Axis-aligned voxel lattice. Cells are half-open boxes
/// [origin + k*s, origin + (k+1)*s) per axis; a point on a shared face
/// belongs to the cell with the larger lattice index.
struct GridSpec {
    int dim = 2;            // 2 or 3
    Vec3 origin{};          // world coordinates of the lattice corner, meters
    double voxel_size = 1.0;
    Cell extent{1, 1, 1};   // voxel counts per axis; extent.z == 1 when dim == 2

    bool operator==(const GridSpec& o) const = default;
};

struct Ray {
    Vec3 origin{};      // sensor position, world meters
    Vec3 direction{};   // unit norm; z component must be 0 on 2-d grids
    double max_range = 1.0;
};

struct TracedVoxel {
    VoxelId id;
    double entry_distance = 0.0;    // ray parameter at which the cell is entered
    double center_distance = 0.0;   // euclidean distance from ray origin to cell center
};

/// Voxels crossed by a ray segment, ordered near to far.
using RayTrace = std::vector<TracedVoxel>;

/// Throws std::invalid_argument on a malformed spec.
void validate(const GridSpec& grid);

std::int64_t voxel_count(const GridSpec& grid);

bool contains(const GridSpec& grid, const Cell& cell);

VoxelId id_of(const GridSpec& grid, const Cell& cell);
Cell cell_of(const GridSpec& grid, VoxelId id);

Vec3 voxel_center(const GridSpec& grid, VoxelId id);

/// Floor quantization to the lattice; nullopt for points beyond the extent.
std::optional<VoxelId> world_to_voxel(const GridSpec& grid, const Vec3& point);

/// Walks the lattice with an incremental (Amanatides-Woo style) traversal.
/// Returns every cell the segment [0, max_range] crosses with positive
/// length, ordered by entry distance. Empty if the segment misses the grid.
RayTrace trace_ray(const GridSpec& grid, const Ray& ray);

}  // namespace crm

#endif
