#include "crm/sensor_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crm {

namespace detail {

double gaussian_pdf(double x, double mu, double sigma) {
    const double u = (x - mu) / sigma;
    return std::exp(-0.5 * u * u) / (sigma * std::numbers::sqrt2 * std::sqrt(std::numbers::pi));
}

void cause_likelihoods(const RangingModel& model, std::span<const TracedVoxel> trace,
                       const Measurement& z, std::span<double> out) {
    const std::size_t n = trace.size();
    if (z.is_return()) {
        const double r = *z.range;
        const double zq = model.space == MeasurementSpace::range
                              ? r
                              : model.focal_length * model.baseline / r;
        for (std::size_t c = 0; c < n; ++c) {
            const double d = trace[c].center_distance;
            const double mu = model.space == MeasurementSpace::range
                                  ? d
                                  : model.focal_length * model.baseline / d;
            out[c] = gaussian_pdf(zq, mu, model.noise_std);
        }
        out[n] = model.p_spur / model.max_range;
    } else {
        for (std::size_t c = 0; c < n; ++c) out[c] = model.p_spur;
        out[n] = 1.0 - model.p_spur;
    }
}

}  // namespace detail

AugmentedCone make_cone(const GridSpec& grid, const Ray& ray) {
    return AugmentedCone{trace_ray(grid, ray)};
}

std::vector<double> cause_prior(std::span<const double> means) {
    std::vector<double> prior(means.size() + 1);
    double reach = 1.0;  // probability light passes all nearer voxels
    for (std::size_t l = 0; l < means.size(); ++l) {
        prior[l] = means[l] * reach;
        reach *= 1.0 - means[l];
    }
    prior[means.size()] = reach;
    return prior;
}

std::vector<double> cause_prior(const AugmentedCone& cone, const MapBelief& map) {
    std::vector<double> means(cone.trace.size());
    for (std::size_t l = 0; l < cone.trace.size(); ++l) means[l] = map.mean(cone.trace[l].id);
    return cause_prior(means);
}

double known_cause_likelihood(const RangingModel& model, const AugmentedCone& cone,
                              std::size_t cause, const Measurement& z) {
    if (cause >= cone.size()) throw std::out_of_range("known_cause_likelihood: cause index");
    if (cause == cone.light_index()) {
        return z.is_return() ? model.p_spur / model.max_range : 1.0 - model.p_spur;
    }
    if (!z.is_return()) return model.p_spur;
    const double r = *z.range;
    if (r < 0.0 || r > model.max_range) return 0.0;
    const double d = cone.trace[cause].center_distance;
    if (model.space == MeasurementSpace::range) return detail::gaussian_pdf(r, d, model.noise_std);
    const double fb = model.focal_length * model.baseline;
    return detail::gaussian_pdf(fb / r, fb / d, model.noise_std);
}

double known_cause_range_density(const RangingModel& model, const AugmentedCone& cone,
                                 std::size_t cause, double r) {
    const double p = known_cause_likelihood(model, cone, cause, Measurement::from_range(r));
    if (model.space == MeasurementSpace::range) return p;
    const double fb = model.focal_length * model.baseline;
    return p * fb / (r * r);  // |dz/dr| for z = fb / r
}

double map_likelihood(const RangingModel& model, const AugmentedCone& cone, const MapBelief& map,
                      const Measurement& z) {
    const auto prior = cause_prior(cone, map);
    std::vector<double> lik(cone.size());
    detail::cause_likelihoods(model, cone.trace, z, lik);
    double total = 0.0;
    for (std::size_t c = 0; c < cone.size(); ++c) total += lik[c] * prior[c];
    return total;
}

std::optional<std::vector<double>> sensor_cause_model(const RangingModel& model,
                                                      const AugmentedCone& cone,
                                                      const MapBelief& map, const Measurement& z) {
    auto scm = cause_prior(cone, map);
    std::vector<double> lik(cone.size());
    detail::cause_likelihoods(model, cone.trace, z, lik);
    double total = 0.0;
    for (std::size_t c = 0; c < cone.size(); ++c) {
        scm[c] *= lik[c];
        total += scm[c];
    }
    if (!(total > 0.0)) return std::nullopt;
    const double inv = 1.0 / total;
    for (double& v : scm) v *= inv;
    return scm;
}

}  // namespace crm
