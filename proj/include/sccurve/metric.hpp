#ifndef SCCURVE_METRIC_HPP
#define SCCURVE_METRIC_HPP

#include <optional>
#include <span>
#include <vector>

#include "sccurve/space.hpp"

namespace sccurve {

/// Geodesic distance. Throws std::invalid_argument if a point is not in `space`.
double distance(const Space& space, const Point& p, const Point& q);

/// Equality up to the space tolerance, after canonicalization.
bool same_point(const Space& space, const Point& p, const Point& q);

/// Constant-speed point gamma_xy(s) on the unique minimal geodesic, s in [0,1].
Point geodesic_point(const Space& space, const Point& x, const Point& y, double s);

/// Maximal pairwise distance; 0 for a singleton.
double diameter(const Space& space, std::span<const Point> points);

/// Angle of the Euclidean triangle with side lengths a = |xy|, b = |xz| at the
/// vertex x, opposite side c = |yz|. Uses a half-angle form that stays accurate
/// for both very thin and nearly flat triangles.
double comparison_angle_from_sides(double a, double b, double c);

/// Euclidean comparison angle at x of the triple (x, y, z). Throws if y or z
/// coincides with x.
double comparison_angle(const Space& space, const Point& x, const Point& y, const Point& z);

struct UpperAngle {
  double angle;                     // extrapolated limit
  std::vector<double> comparisons;  // comparison angle at every shrink stage
};

/// Limit of comparison angles along gamma_xy(s_j), gamma_xz(s_j) for a
/// decreasing schedule s_j -> 0 (default 2^-1 .. 2^-24). The stage sequence must
/// be non-increasing up to `monotone_tol`; otherwise std::runtime_error.
UpperAngle upper_angle(const Space& space, const Point& x, const Point& y, const Point& z,
                       std::span<const double> schedule = {}, double monotone_tol = 1e-7);

/// (1-s) d^2(x,y) + s d^2(x,z) - (1-s) s d^2(y,z) - d^2(x, gamma_yz(s)).
/// Non-negative (up to rounding) in every CAT(0) space.
double cat0_inequality_residual(const Space& space, const Point& x, const Point& y,
                                const Point& z, double s);

struct SubembedResult {
  bool pass = false;
  double witness_diagonal = 0.0;  // embedded |y~ - w~|
  double achieved_other = 0.0;    // embedded |z~ - x~| at the witness
  int evaluations = 0;
};

struct SubembedConfig {
  int grid_cells = 10000;
  int refine_steps = 60;
  double tol = 1e-7;
};

/// Planar sub-embedding test for the quadrilateral w-x-y-z given its four side
/// lengths and two diagonals. Sweeps the embedded diagonal |y~-w~| upward from
/// d_wy, hinging the two comparison triangles on opposite sides, and asks
/// whether |z~-x~| can reach d_xz. Throws on triangle-inequality violations.
SubembedResult four_point_subembed(double d_wx, double d_xy, double d_yz, double d_zw, double d_wy,
                                   double d_xz, const SubembedConfig& cfg = {});

/// Convenience overload evaluating the six distances in `space`.
SubembedResult four_point_subembed(const Space& space, const Point& w, const Point& x,
                                   const Point& y, const Point& z, const SubembedConfig& cfg = {});

}  // namespace sccurve

#endif  // SCCURVE_METRIC_HPP
