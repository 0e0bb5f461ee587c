#ifndef SCCURVE_DIRECTIONS_HPP
#define SCCURVE_DIRECTIONS_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sccurve/space.hpp"

namespace sccurve {

struct Direction;

struct EuclidDir {
  Eigen::VectorXd v;  // unit vector
};
struct HyperDir {
  Eigen::Vector3d v;  // unit tangent vector at the base (Minkowski norm 1)
};
struct TreeDir {
  int edge;
  bool increasing;  // moving toward larger offsets on `edge`
};
struct SpiderDir {
  int leg;
  bool outward;
};
/// Planar unit vector (da, db) inside `sheet`. At spine points db >= 0; pure
/// spine directions (db == 0) are stored with sheet 0.
struct BookDir {
  int sheet;
  Eigen::Vector2d v;
};
/// Spherical-join direction: cos(alpha) weight on the left factor, sin(alpha)
/// on the right. A factor with zero weight carries no direction.
struct ProductDir {
  std::shared_ptr<const Direction> left;
  std::shared_ptr<const Direction> right;
  double alpha;
};

/// Element of the space of directions at `base`.
struct Direction {
  Point base;
  std::variant<EuclidDir, HyperDir, TreeDir, SpiderDir, BookDir, ProductDir> data;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&data);
  }
};

struct LogResult {
  Direction direction;
  double distance;
};

/// log_x(y) = (initial direction of gamma_xy, d(x,y)). Throws if y == x.
LogResult log_direction(const Space& space, const Point& x, const Point& y);

/// Alexandrov angle between two directions at the same base point.
double direction_angle(const Space& space, const Direction& d1, const Direction& d2);

/// Point reached by following `dir` for arclength t. The walk stops early where
/// the continuation is not unique (tree vertices, spider center or leg ends,
/// book spine); the second member is the arclength actually travelled.
std::pair<Point, double> shoot(const Space& space, const Direction& dir, double t);

/// All directions at x for spaces whose direction sets are finite (tree, spider).
std::vector<Direction> finite_directions(const Space& space, const Point& x);

/// Euclidean-cone distance sqrt(s^2 + t^2 - 2 s t cos(angle)).
double cone_distance(double angle, double s, double t);

/// Point of the tangent cone C_x X; radius 0 is the cone vertex o_x.
struct ConePoint {
  std::optional<Direction> direction;
  double radius = 0.0;
  bool is_origin() const { return radius == 0.0 || !direction.has_value(); }
};

double cone_point_distance(const Space& space, const ConePoint& a, const ConePoint& b);

/// Minimizer of w -> sum_i d_x^2(w, p_i) over the tangent cone at x.
ConePoint cone_barycenter_points(const Space& space, const Point& x, std::span<const ConePoint> pts);

/// Barycenter of unit cone points (gamma_i, 1).
ConePoint cone_barycenter(const Space& space, const Point& x, std::span<const Direction> dirs);

struct CoverResult {
  Direction center;
  double radius;     // max angle from center to any input direction
  int subset_size;   // size of the greedy pi/3-separated subset (1 for closed forms)
};

/// Center of a direction set of angular diameter <= pi/2: greedy maximal
/// pi/3-separated subset (input order), then the normalized vector sum
/// (Euclidean, hyperbolic) or the cone barycenter direction (other spaces).
/// The radius is at most arccos(1/(2 m)) with m the subset size.
CoverResult direction_cover_center(const Space& space, const Point& x,
                                   std::span<const Direction> dirs);

/// Smallest-radius center in the cases with a closed form: planar tangent
/// spaces (arc midpoint, radius <= pi/4), book spine points (spine-anchored
/// construction, radius <= pi/4), trees and spiders (radius 0). Falls back to
/// direction_cover_center elsewhere.
CoverResult improved_cover_center(const Space& space, const Point& x,
                                  std::span<const Direction> dirs);

struct RadiusConstants {
  int n = 0;
  double theta_n = 0.0;           // arccos(1 / (2 * 3^n))
  double theta_improved = 0.0;    // theta_1 = 0, theta_2 = pi/4, else theta_n
  double eps_n = 0.0;             // cos(theta_n) / 3 = 1 / (2 * 3^(n+1))
  long long m_bound = 0;          // total-boundedness count (3^n in R^n)
  double eps_bold = 0.0;          // 1 / (6 m), or the space-specific value
  double a_ratio = 0.0;
  double b_ratio = 0.0;
  double sigma = 0.0;
  double region_measure = 0.0;    // measure of the region used for b
  std::string note;
};

RadiusConstants radius_constants(int n);

/// Hausdorff measure (H^1 on trees and spiders, H^2 on books) of the closed
/// radius-neighborhood of `points` together with the geodesic segments
/// `segments` (pairs of endpoints). Trees and spiders are exact; books are
/// exact for points, and segments are covered by points spaced radius/64.
double hausdorff_measure_neighborhood(const Space& space, std::span<const Point> points,
                                      double radius, int dim,
                                      std::span<const std::pair<Point, Point>> segments = {});

/// Area of (union of disks of radius r) intersected with the half-plane y >= 0.
double union_disk_area_upper(std::span<const Eigen::Vector2d> centers, double r);

/// Closed radius-neighborhood of a core point set.
struct Region {
  std::vector<Point> core;
  double radius = 1.0;
};

/// Conditions on total boundedness, area ratio and volume ratio for the
/// implemented spaces. Trees/spiders: m = 1, a = 1/Lambda, b = sigma/H^1.
/// Books: a = 4 arcsin(1/(6 sqrt 2))/(k pi), b = 2 arcsin(1/(6 sqrt 2))/H^2,
/// eps = 1/(3 sqrt 2). Euclidean (n <= 3) and the hyperbolic plane use cap
/// ratios over a ball region (single core point).
RadiusConstants estimate_condition_constants(const Space& space, const Region& region, double sigma);

/// Area of the unit sphere S^{n-1}.
double sphere_area(int n);

/// Area of the geodesic cap of angular radius rho on S^{n-1}.
double sphere_cap_area(int n, double rho);

}  // namespace sccurve

#endif  // SCCURVE_DIRECTIONS_HPP
