#ifndef CRM_SENSOR_MODEL_HPP
#define CRM_SENSOR_MODEL_HPP

#include <optional>
#include <span>
#include <vector>

#include "crm/belief.hpp"
#include "crm/grid.hpp"

namespace crm {

/// A range return in meters, or an explicit no-return.
struct Measurement {
    std::optional<double> range;

    static Measurement from_range(double r) { return {r}; }
    static Measurement no_return() { return {std::nullopt}; }
    bool is_return() const { return range.has_value(); }
};

enum class MeasurementSpace { range, disparity };

/// Forward model of a single ranging pixel. In disparity space the
/// measured quantity relates to range as z = focal_length * baseline / r;
/// Gaussian noise of std noise_std lives in the tagged space.
struct RangingModel {
    double noise_std = 0.05;
    double max_range = 1.0;
    MeasurementSpace space = MeasurementSpace::range;
    double focal_length = 1.0;  // disparity space only
    double baseline = 1.0;      // disparity space only
    double p_spur = 0.01;       // chance a voxel cause yields no return,
                                // and total mass of spurious returns from direct light
};

/// Ordered voxel trace of a ray plus the abstract direct-light cause,
/// which sits at local index trace.size().
struct AugmentedCone {
    RayTrace trace;

    std::size_t size() const { return trace.size() + 1; }
    std::size_t light_index() const { return trace.size(); }
};

AugmentedCone make_cone(const GridSpec& grid, const Ray& ray);

/// Bounce-times-reach prior over causes given per-voxel expected
/// occupancies, ordered near to far; the last entry is direct light.
/// Sums to 1 by the telescoping product.
std::vector<double> cause_prior(std::span<const double> means);
std::vector<double> cause_prior(const AugmentedCone& cone, const MapBelief& map);

/// p(z | cause). Voxel causes put a Gaussian at the voxel's center distance
/// (its disparity image in disparity space) and p_spur on no-return; direct
/// light spreads p_spur uniformly over range and keeps 1 - p_spur on
/// no-return. Throws std::out_of_range for an invalid cause index.
double known_cause_likelihood(const RangingModel& model, const AugmentedCone& cone,
                              std::size_t cause, const Measurement& z);

/// The likelihood expressed as a density over range in meters, with the
/// change-of-variables Jacobian applied in disparity space.
double known_cause_range_density(const RangingModel& model, const AugmentedCone& cone,
                                 std::size_t cause, double r);

/// p(z | map belief): cause-marginalized forward model.
double map_likelihood(const RangingModel& model, const AugmentedCone& cone, const MapBelief& map,
                      const Measurement& z);

/// Posterior over causes given the measurement; nullopt when the
/// measurement has zero likelihood under the belief.
std::optional<std::vector<double>> sensor_cause_model(const RangingModel& model,
                                                      const AugmentedCone& cone,
                                                      const MapBelief& map, const Measurement& z);

namespace detail {

double gaussian_pdf(double x, double mu, double sigma);

/// Cause likelihoods against a plain mean vector; shared by the filter
/// and the map-level wrappers. means.size() + 1 causes.
void cause_likelihoods(const RangingModel& model, std::span<const TracedVoxel> trace,
                       const Measurement& z, std::span<double> out);

}  // namespace detail

}  // namespace crm

#endif
