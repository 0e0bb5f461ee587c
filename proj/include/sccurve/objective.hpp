#ifndef SCCURVE_OBJECTIVE_HPP
#define SCCURVE_OBJECTIVE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sccurve/space.hpp"

namespace sccurve {

enum class ConvexityClass { QuasiConvex, LambdaConvex, Convex };

struct ObjectiveParams {
  std::optional<Point> p;   // primary anchor (default: default_anchor(space))
  std::optional<Point> q;   // second anchor for max_half_sq
  double radius = 0.5;      // dist_to_ball
  double step = 0.5;        // staircase
  double value = 0.0;       // const
};

/// Real function on a space with a declared convexity class.
struct ObjectiveFn {
  std::string name;
  std::function<double(const Point&)> eval;
  ConvexityClass convexity = ConvexityClass::QuasiConvex;
  double lambda = 0.0;  // meaningful for LambdaConvex
  std::optional<double> lower_bound;
  /// Domain restriction [lo, hi] on the real line; nullopt = whole space.
  std::optional<std::pair<double, double>> interval;
  /// Kinks and minimizers worth trying as resolvent candidates.
  std::vector<Point> anchors;
  /// Closed-form resolvent candidates at (x, tau), if the objective has any.
  std::function<std::vector<Point>(const Space&, const Point&, double)> hints;

  double operator()(const Point& p) const { return eval(p); }
  bool in_domain(const Point& p) const;
  bool convex() const { return convexity == ConvexityClass::Convex ||
                               (convexity == ConvexityClass::LambdaConvex && lambda >= 0.0); }
};

std::string convexity_label(const ObjectiveFn& f);

/// Anchor used when an objective needs a point and none is given: e1 in R^n,
/// the lift of (1,0) on the hyperboloid, the tip of leg 0, vertex 0 of a tree,
/// (sheet 0, a=0, b=1) in a book.
Point default_anchor(const Space& space);

/// Builds a named objective:
///   const, half_sq_dist (lambda = 1), sq_dist (lambda = 2), dist, dist_to_ball,
///   max_half_sq, sqrt_dist, staircase          -- every space
///   neg_cube, neg_cube_unit, sin               -- the real line only
/// Throws std::invalid_argument for unknown names or unsupported spaces.
ObjectiveFn make_objective(const Space& space, const std::string& name, const ObjectiveParams& params = {});

/// Names valid on `space` that carry a correct convexity declaration.
std::vector<std::string> objective_names(const Space& space);

/// Every catalog objective on `space` with default parameters.
std::vector<ObjectiveFn> builtin_objectives(const Space& space);

}  // namespace sccurve

#endif  // SCCURVE_OBJECTIVE_HPP
