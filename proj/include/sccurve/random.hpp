#ifndef SCCURVE_RANDOM_HPP
#define SCCURVE_RANDOM_HPP

#include <cstdint>
#include <random>

#include "sccurve/directions.hpp"

namespace sccurve {

using Rng = std::mt19937_64;

/// Random point: Euclidean/hyperbolic coordinates uniform in [-scale, scale],
/// uniform edge and offset on trees, uniform leg and radius on spiders, book
/// points with a in [-scale, scale], b in [0, scale] (spine with probability 1/8).
Point random_point(const Space& space, Rng& rng, double scale = 1.0);

/// Random direction at x (uniform on the unit sphere / circle, uniform over the
/// finite direction set, uniform sheet and angle on books).
Direction random_direction(const Space& space, const Point& x, Rng& rng);

/// Orthonormal frame (Minkowski metric) of the tangent plane of the hyperboloid at x.
std::pair<Eigen::Vector3d, Eigen::Vector3d> hyperbolic_frame(const Eigen::Vector3d& x);

/// Uniform double in [lo, hi).
double uniform(Rng& rng, double lo, double hi);

}  // namespace sccurve

#endif  // SCCURVE_RANDOM_HPP
