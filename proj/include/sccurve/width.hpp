#ifndef SCCURVE_WIDTH_HPP
#define SCCURVE_WIDTH_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sccurve/curve.hpp"
#include "sccurve/directions.hpp"
#include "sccurve/random.hpp"
#include "sccurve/report.hpp"

namespace sccurve {

struct Extent {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// P_gamma(log_x(y)) = d(x,y) cos angle_x(gamma, gamma_xy), with x the base of
/// `dir`; 0 when y = x. In R^n this is <y - x, v>.
double project(const Space& space, const Direction& dir, const Point& y);

/// [min, max] of the projections of `points` (empty input gives [0, 0]).
Extent projection_extent(const Space& space, const Direction& dir, std::span<const Point> points);

/// Points standing in for the image xi([t_from, end)): samples from index
/// `from` on, refined by `levels` rounds of geodesic midpoints when the curve
/// is interpolated.
std::vector<Point> image_points(const Curve& curve, std::size_t from = 0, int levels = 3);

enum class WidthMethod { Auto, MonteCarlo, Quadrature };

struct WidthConfig {
  int n_dirs = 4096;
  std::uint64_t seed = 1;
  WidthMethod method = WidthMethod::Auto;  // Auto: quadrature in R^2, Monte Carlo elsewhere
  int quadrature_cells = 1 << 14;
};

struct WidthReport {
  double mean_width = 0.0;
  long long n_directions = 0;
  std::uint64_t seed = 0;
  double std_error = 0.0;
  std::string method;
};

/// Mean width of a finite point set. Euclidean spaces average |Pi_v| over unit
/// directions; other spaces average over (basepoint, direction) pairs with
/// basepoints drawn from `basepoints` (the points themselves when empty).
WidthReport mean_width(const Space& space, std::span<const Point> points, std::span<const Point> basepoints = {},
                       const WidthConfig& cfg = {});

/// Mean width of a convex body in R^dim given by its support function h(v).
WidthReport mean_width_support(int dim, const std::function<double(const Eigen::VectorXd&)>& support,
                               const WidthConfig& cfg = {});
WidthReport mean_width_ball(int dim, double r, const WidthConfig& cfg = {});
WidthReport mean_width_segment(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const WidthConfig& cfg = {});

/// (1/pi) * integral over [0, 2 pi) of the support function of a planar point
/// set, integrated cell by cell on a uniform angular grid. Cells where the
/// supporting point changes are split until it does not.
double planar_mean_width(std::span<const Eigen::Vector2d> points, int cells = 1 << 14);

/// |Pi_v(Xi(T))| - |Pi_v(Xi(tau))| + eps d(xi(tau), xi(T)) in R^n for a unit
/// vector v; tau < T are indices into `image` (points of the curve in time order).
double euclid_decrease_residual(std::span<const Point> image, std::size_t tau, std::size_t T,
                                const Eigen::VectorXd& v, double eps);

/// Same with projections taken at the base x of `gamma` and the eps/2 factor.
double cat0_decrease_residual(const Space& space, std::span<const Point> image, std::size_t tau, std::size_t T,
                              const Direction& gamma, double eps);

struct DecreaseScanConfig {
  int n_pairs = 10;        // random (tau, T) pairs
  int n_dirs = 10;         // perturbed directions (and basepoints) per pair
  double eps = 0.0;        // 0: the space's default
  double sigma = 1.0;      // basepoint distance bound (CAT(0) variant)
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int densify_levels = 3;
};

/// Random (tau, T) pairs with directions perturbed around the cover center of
/// the tail directions: chordal distance <= eps in R^n, and basepoints x near
/// xi(tau) opposite the center with gamma within 2 arcsin(eps/2) of the
/// direction back to xi(tau) elsewhere.
ViolationReport directional_decrease_scan(const Curve& curve, const DecreaseScanConfig& cfg = {});

/// Default eps for the decrease check: eps_n in R^n, 1/54 on the hyperbolic
/// plane, 1/6 on trees and spiders, 1/(3 sqrt 2) on books.
double default_decrease_eps(const Space& space);

/// Direction within angle `max_angle` of `dir` (random, at the same base).
Direction perturb_direction(const Space& space, const Direction& dir, double max_angle, Rng& rng);

/// Direction at angle pi from `dir` (random choice when there are several).
Direction opposite_direction(const Space& space, const Direction& dir, Rng& rng);

struct BoundReport {
  std::string bound;
  std::string space;
  double length = 0.0;
  double diam = 0.0;
  std::optional<double> width;
  std::optional<double> width_std_error;
  std::vector<std::pair<std::string, double>> constants;
  double bound_value = 0.0;
  double ratio = 0.0;  // length / bound_value
  bool claimed = true; // false when the hypotheses were not met
  bool pass = false;
  double tolerance = 1e-9;
  std::string note;
};

/// C_n = A(S^{n-1}) / (a_n eps_n).
double euclidean_constant(int n);

/// L <= C_n W(Xi(0)) in R^n (n <= max_dim).
BoundReport euclidean_length_bound(const Curve& curve, const WidthConfig& width = {}, double tol = 1e-9,
                                   int max_dim = 4);

/// L <= 6 Lambda H^1(Omega) diam on trees and spiders, Omega the closed 1-neighborhood of the image.
BoundReport tree_length_bound(const Curve& curve, double tol = 1e-9);

/// L <= 54 sqrt(2) pi k H^2(Omega) diam on books.
BoundReport book_length_bound(const Curve& curve, double tol = 1e-9);

/// L <= 2/(a b eps) diam with the given constants; not claimed unless the
/// sigma-neighborhood of the image lies in the region.
BoundReport generic_cat0_bound(const Curve& curve, const RadiusConstants& constants, const Region& region,
                               double tol = 1e-9);

/// Region and constants chosen from the curve: the closed sigma-neighborhood of
/// the image on trees, spiders and books; a ball about the first sample of
/// radius max distance + sigma in R^n (n <= 3) and the hyperbolic plane.
BoundReport generic_cat0_bound(const Curve& curve, double sigma = 1.0, double tol = 1e-9);

/// The specialized bound for the curve's space followed by the generic one.
std::vector<BoundReport> applicable_bounds(const Curve& curve, const WidthConfig& width = {}, double tol = 1e-9);

/// (a_n / A(S^{n-1})) eps_n L - W(Xi(0)) - 3 stderr: summed per-step decreases
/// never exceed the initial width. Violation positive means failure.
ViolationReport telescoping_check(const Curve& curve, const WidthConfig& width = {}, double tol = 1e-9);

}  // namespace sccurve

#endif  // SCCURVE_WIDTH_HPP
