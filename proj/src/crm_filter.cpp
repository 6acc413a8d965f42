#include "crm/crm_filter.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace crm {

namespace {

// Below this many weight multiplies a ray is updated on one thread.
constexpr std::size_t kParallelGrain = 4096;

struct RayTerms {
    std::vector<double> scm;
    std::vector<double> before;  // cause mass strictly before each voxel
    std::vector<double> after;   // cause mass strictly after, including direct light
};

/// SCM plus its prefix/suffix sums; one cumulative pass each, so the whole
/// ray costs O(|trace|) before the weight update.
bool ray_terms(const MapBelief& map, const RangingModel& model, const AugmentedCone& cone,
               const Measurement& z, RayTerms& out) {
    const std::size_t n = cone.trace.size();
    out.scm.resize(n + 1);
    std::vector<double>& scm = out.scm;

    double reach = 1.0;
    for (std::size_t l = 0; l < n; ++l) {
        const double m = map.mean(cone.trace[l].id);
        scm[l] = m * reach;
        reach *= 1.0 - m;
    }
    scm[n] = reach;

    std::vector<double> lik(n + 1);
    detail::cause_likelihoods(model, cone.trace, z, lik);
    double total = 0.0;
    for (std::size_t c = 0; c <= n; ++c) {
        scm[c] *= lik[c];
        total += scm[c];
    }
    if (!(total > 0.0)) return false;
    const double inv = 1.0 / total;
    for (double& v : scm) v *= inv;

    out.before.resize(n);
    out.after.resize(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.before[i] = acc;
        acc += scm[i];
    }
    acc = scm[n];
    for (std::size_t i = n; i-- > 0;) {
        out.after[i] = acc;
        acc += scm[i];
    }
    return true;
}

AlphaBeta alpha_beta_from_sums(double scm_i, double before, double after, double mean_i) {
    if (!(mean_i > 0.0 && mean_i < 1.0))
        throw std::domain_error("alpha_beta: voxel mean must lie strictly inside (0, 1)");
    const double inv_free = 1.0 / (1.0 - mean_i);
    return {scm_i / mean_i - after * inv_free, before + after * inv_free};
}

}  // namespace

AlphaBeta alpha_beta(std::span<const double> scm, std::size_t i_local, double mean_i) {
    if (i_local + 1 >= scm.size()) throw std::out_of_range("alpha_beta: voxel index");
    double before = 0.0;
    for (std::size_t c = 0; c < i_local; ++c) before += scm[c];
    // summed far to near, matching the cumulative pass in the ray kernel
    double after = 0.0;
    for (std::size_t c = scm.size(); c-- > i_local + 1;) after += scm[c];
    return alpha_beta_from_sums(scm[i_local], before, after, mean_i);
}

bool update_ray(MapBelief& map, const RangingModel& model, const Ray& ray, const Measurement& z) {
    const AugmentedCone cone{trace_ray(map.grid(), ray)};
    if (cone.trace.empty()) return false;

    RayTerms t;
    if (!ray_terms(map, model, cone, z, t)) return false;

    const std::size_t n = cone.trace.size();
    const std::size_t k = static_cast<std::size_t>(map.support_size());
    const auto support = map.support();
    MapBeliefAccess access(map);
    const auto weights = access.weights();
    const auto means = access.means();
    const auto updated = access.updated();

    const std::int64_t count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (n * k >= kParallelGrain)
    for (std::int64_t ii = 0; ii < count; ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const std::size_t v = static_cast<std::size_t>(cone.trace[i].id.value);
        const AlphaBeta ab = alpha_beta_from_sums(t.scm[i], t.before[i], t.after[i], means[v]);
        detail::linear_update_inplace(support, weights.subspan(v * k, k), ab.alpha, ab.beta,
                                      &means[v]);
        updated[v] = 1;
    }
    return true;
}

void update_scan(MapBelief& map, const RangingModel& model, const Pose& pose,
                 std::span<const ScanRay> rays, ScanDiagnostics& diag) {
    const auto start = std::chrono::steady_clock::now();
    for (const ScanRay& sr : rays) {
        const Ray ray = scan_ray_to_ray(pose, sr.bearing, model.max_range);
        if (update_ray(map, model, ray, sr.z))
            ++diag.rays_applied;
        else
            ++diag.rays_skipped;
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    diag.per_scan_seconds.push_back(dt);
    diag.total_update_seconds += dt;
}

Ray scan_ray_to_ray(const Pose& pose, double bearing, double max_range) {
    return Ray{{pose.x, pose.y, 0.0}, {std::cos(bearing), std::sin(bearing), 0.0}, max_range};
}

namespace serial {

bool update_ray(MapBelief& map, const RangingModel& model, const Ray& ray, const Measurement& z) {
    const AugmentedCone cone{trace_ray(map.grid(), ray)};
    if (cone.trace.empty()) return false;

    const auto scm = sensor_cause_model(model, cone, map, z);
    if (!scm) return false;

    for (std::size_t i = 0; i < cone.trace.size(); ++i) {
        const VoxelId id = cone.trace[i].id;
        const AlphaBeta ab = alpha_beta(*scm, i, map.mean(id));
        map.apply_linear_update(id, ab.alpha, ab.beta);
        map.mark_updated(id);
    }
    return true;
}

void update_scan(MapBelief& map, const RangingModel& model, const Pose& pose,
                 std::span<const ScanRay> rays, ScanDiagnostics& diag) {
    const auto start = std::chrono::steady_clock::now();
    for (const ScanRay& sr : rays) {
        const Ray ray = scan_ray_to_ray(pose, sr.bearing, model.max_range);
        if (update_ray(map, model, ray, sr.z))
            ++diag.rays_applied;
        else
            ++diag.rays_skipped;
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    diag.per_scan_seconds.push_back(dt);
    diag.total_update_seconds += dt;
}

}  // namespace serial

}  // namespace crm
