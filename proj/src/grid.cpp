#include "crm/grid.hpp"

#include <limits>
#include <stdexcept>

namespace crm {

namespace {

constexpr double kUnitNormTol = 1e-9;

int axis_count(const GridSpec& grid) { return grid.dim; }

double axis(const Vec3& v, int a) { return a == 0 ? v.x : (a == 1 ? v.y : v.z); }

int axis(const Cell& c, int a) { return a == 0 ? c.x : (a == 1 ? c.y : c.z); }

int& axis_ref(Cell& c, int a) { return a == 0 ? c.x : (a == 1 ? c.y : c.z); }

}  // namespace

void validate(const GridSpec& grid) {
    if (grid.dim != 2 && grid.dim != 3)
        throw std::invalid_argument("GridSpec: dim must be 2 or 3");
    if (!(grid.voxel_size > 0.0))
        throw std::invalid_argument("GridSpec: voxel_size must be positive");
    if (grid.extent.x < 1 || grid.extent.y < 1 || grid.extent.z < 1)
        throw std::invalid_argument("GridSpec: extents must be >= 1");
    if (grid.dim == 2 && grid.extent.z != 1)
        throw std::invalid_argument("GridSpec: 2-d grid must have extent.z == 1");
}

std::int64_t voxel_count(const GridSpec& grid) {
    return static_cast<std::int64_t>(grid.extent.x) * grid.extent.y * grid.extent.z;
}

bool contains(const GridSpec& grid, const Cell& cell) {
    return cell.x >= 0 && cell.x < grid.extent.x && cell.y >= 0 && cell.y < grid.extent.y &&
           cell.z >= 0 && cell.z < grid.extent.z;
}

VoxelId id_of(const GridSpec& grid, const Cell& cell) {
    if (!contains(grid, cell)) throw std::out_of_range("id_of: cell outside grid");
    return VoxelId{cell.x +
                   static_cast<std::int64_t>(grid.extent.x) * (cell.y + static_cast<std::int64_t>(grid.extent.y) * cell.z)};
}

Cell cell_of(const GridSpec& grid, VoxelId id) {
    if (id.value < 0 || id.value >= voxel_count(grid))
        throw std::out_of_range("cell_of: voxel id outside grid");
    const std::int64_t nx = grid.extent.x;
    const std::int64_t ny = grid.extent.y;
    Cell c;
    c.x = static_cast<int>(id.value % nx);
    c.y = static_cast<int>((id.value / nx) % ny);
    c.z = static_cast<int>(id.value / (nx * ny));
    return c;
}

Vec3 voxel_center(const GridSpec& grid, VoxelId id) {
    const Cell c = cell_of(grid, id);
    const double s = grid.voxel_size;
    Vec3 p{grid.origin.x + (c.x + 0.5) * s, grid.origin.y + (c.y + 0.5) * s, 0.0};
    if (grid.dim == 3) p.z = grid.origin.z + (c.z + 0.5) * s;
    return p;
}

std::optional<VoxelId> world_to_voxel(const GridSpec& grid, const Vec3& point) {
    Cell c;
    for (int a = 0; a < axis_count(grid); ++a) {
        const double r = (axis(point, a) - axis(grid.origin, a)) / grid.voxel_size;
        const double f = std::floor(r);
        if (f < 0.0 || f >= static_cast<double>(axis(grid.extent, a))) return std::nullopt;
        axis_ref(c, a) = static_cast<int>(f);
    }
    return id_of(grid, c);
}

RayTrace trace_ray(const GridSpec& grid, const Ray& ray) {
    validate(grid);
    const int na = axis_count(grid);

    double norm2 = ray.direction.x * ray.direction.x + ray.direction.y * ray.direction.y;
    if (na == 3) norm2 += ray.direction.z * ray.direction.z;
    if (std::abs(std::sqrt(norm2) - 1.0) > kUnitNormTol)
        throw std::invalid_argument("trace_ray: direction must have unit norm");
    if (na == 2 && ray.direction.z != 0.0)
        throw std::invalid_argument("trace_ray: 2-d ray must have direction.z == 0");
    if (!(ray.max_range > 0.0)) throw std::invalid_argument("trace_ray: max_range must be positive");

    // Clip the segment [0, max_range] against the grid box (slab test).
    double t_enter = 0.0;
    double t_exit = ray.max_range;
    for (int a = 0; a < na; ++a) {
        const double o = axis(ray.origin, a) - axis(grid.origin, a);
        const double d = axis(ray.direction, a);
        const double hi = axis(grid.extent, a) * grid.voxel_size;
        if (d == 0.0) {
            if (o < 0.0 || o >= hi) return {};
        } else {
            double t0 = (0.0 - o) / d;
            double t1 = (hi - o) / d;
            if (t0 > t1) std::swap(t0, t1);
            t_enter = std::max(t_enter, t0);
            t_exit = std::min(t_exit, t1);
        }
    }
    if (!(t_enter < t_exit)) return {};

    // Starting cell. On an exact face the half-open convention picks the
    // larger index unless the ray moves toward smaller indices there.
    Cell cell;
    Cell step{0, 0, 0};
    std::array<double, 3> t_next_cross{};  // ray parameter of the next face crossing per axis
    std::array<double, 3> t_per_cell{};    // parameter advance per full cell per axis
    for (int a = 0; a < na; ++a) {
        const double o = axis(ray.origin, a) - axis(grid.origin, a);
        const double d = axis(ray.direction, a);
        const double r = (o + d * t_enter) / grid.voxel_size;
        double f = std::floor(r);
        if (r == f && d < 0.0) f -= 1.0;
        f = std::max(0.0, std::min(f, static_cast<double>(axis(grid.extent, a) - 1)));
        axis_ref(cell, a) = static_cast<int>(f);

        if (d > 0.0) {
            axis_ref(step, a) = 1;
            t_next_cross[a] = ((axis(cell, a) + 1) * grid.voxel_size - o) / d;
            t_per_cell[a] = grid.voxel_size / d;
        } else if (d < 0.0) {
            axis_ref(step, a) = -1;
            t_next_cross[a] = (axis(cell, a) * grid.voxel_size - o) / d;
            t_per_cell[a] = -grid.voxel_size / d;
        } else {
            t_next_cross[a] = std::numeric_limits<double>::infinity();
            t_per_cell[a] = std::numeric_limits<double>::infinity();
        }
    }

    RayTrace trace;
    double t_curr = t_enter;
    while (true) {
        const VoxelId id = id_of(grid, cell);
        const Vec3 center = voxel_center(grid, id);
        trace.push_back({id, t_curr, (center - ray.origin).norm()});

        double t_min = t_next_cross[0];
        for (int a = 1; a < na; ++a) t_min = std::min(t_min, t_next_cross[a]);
        if (!(t_min < t_exit)) break;

        // Step every axis whose crossing ties the minimum; an exact tie is a
        // lattice corner and the half-open convention skips the touching cells.
        bool outside = false;
        for (int a = 0; a < na; ++a) {
            if (t_next_cross[a] == t_min) {
                axis_ref(cell, a) += axis(step, a);
                t_next_cross[a] += t_per_cell[a];
                if (axis(cell, a) < 0 || axis(cell, a) >= axis(grid.extent, a)) outside = true;
            }
        }
        if (outside) break;
        t_curr = t_min;
    }
    return trace;
}

}  // namespace crm
