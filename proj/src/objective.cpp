#include "sccurve/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sccurve/metric.hpp"

namespace sccurve {

namespace {

bool is_real_line(const Space& space) {
  const auto* es = space.as<EuclideanSpace>();
  return es && es->dim == 1;
}

double coord1(const Point& p) { return p.as<EuclidCoord>()->x[0]; }

// Candidate distances u from the anchor p along the geodesic p -> x for
// f = phi(d(., p)); the minimizer of phi(u) + (D - u)^2 / (2 tau) lies there.
using RadialSolver = std::function<std::vector<double>(double D, double tau)>;

std::function<std::vector<Point>(const Space&, const Point&, double)> radial_hints(Point p, RadialSolver solve) {
  return [p = std::move(p), solve = std::move(solve)](const Space& space, const Point& x, double tau) {
    std::vector<Point> out;
    const double D = distance(space, p, x);
    if (D <= 0.0) {
      out.push_back(x);
      return out;
    }
    for (double u : solve(D, tau)) {
      u = std::clamp(u, 0.0, D);
      out.push_back(geodesic_point(space, p, x, u / D));
    }
    return out;
  };
}

}  // namespace

bool ObjectiveFn::in_domain(const Point& p) const {
  if (!interval) return true;
  const auto* c = p.as<EuclidCoord>();
  if (!c || c->x.size() != 1) return false;
  return c->x[0] >= interval->first && c->x[0] <= interval->second;
}

std::string convexity_label(const ObjectiveFn& f) {
  switch (f.convexity) {
    case ConvexityClass::QuasiConvex:
      return "quasi_convex";
    case ConvexityClass::Convex:
      return "convex";
    case ConvexityClass::LambdaConvex:
      break;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "lambda_convex(%g)", f.lambda);
  return buf;
}

Point default_anchor(const Space& space) {
  return std::visit(
      [&](const auto& s) -> Point {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EuclideanSpace>) {
          Eigen::VectorXd e = Eigen::VectorXd::Zero(s.dim);
          e[0] = 1.0;
          return Point::euclid(e);
        } else if constexpr (std::is_same_v<T, HyperbolicPlane>) {
          return Point::hyper_lift(1.0, 0.0);
        } else if constexpr (std::is_same_v<T, TreeSpace>) {
          return tree_vertex_point(*s.graph, 0);
        } else if constexpr (std::is_same_v<T, SpiderSpace>) {
          return Point::spider(0, s.legs[0]);
        } else if constexpr (std::is_same_v<T, BookSpace>) {
          return Point::book(0, 0.0, 1.0);
        } else {
          return Point::product(default_anchor(*s.left), default_anchor(*s.right));
        }
      },
      space.kind());
}

ObjectiveFn make_objective(const Space& space, const std::string& name, const ObjectiveParams& params) {
  ObjectiveFn f;
  f.name = name;
  const Space sp = space;
  const Point p = canonical(space, params.p.value_or(default_anchor(space)));

  if (name == "const") {
    const double c = params.value;
    f.eval = [c](const Point&) { return c; };
    f.convexity = ConvexityClass::Convex;
    f.lower_bound = c;
    f.hints = [](const Space&, const Point& x, double) { return std::vector<Point>{x}; };
    return f;
  }
  if (name == "half_sq_dist" || name == "sq_dist") {
    const double scale = name == "half_sq_dist" ? 0.5 : 1.0;
    f.eval = [sp, p, scale](const Point& z) {
      const double d = distance(sp, z, p);
      return scale * d * d;
    };
    f.convexity = ConvexityClass::LambdaConvex;
    f.lambda = 2.0 * scale;
    f.lower_bound = 0.0;
    f.anchors = {p};
    // phi(u) = scale u^2: stationary at u = D / (1 + 2 scale tau).
    f.hints = radial_hints(p, [scale](double D, double tau) {
      return std::vector<double>{D / (1.0 + 2.0 * scale * tau)};
    });
    return f;
  }
  if (name == "dist") {
    f.eval = [sp, p](const Point& z) { return distance(sp, z, p); };
    f.convexity = ConvexityClass::Convex;
    f.lower_bound = 0.0;
    f.anchors = {p};
    f.hints = radial_hints(p, [](double D, double tau) { return std::vector<double>{std::max(D - tau, 0.0)}; });
    return f;
  }
  if (name == "dist_to_ball") {
    const double r = params.radius;
    if (!(r >= 0.0)) throw std::invalid_argument("dist_to_ball needs radius >= 0");
    f.eval = [sp, p, r](const Point& z) { return std::max(distance(sp, z, p) - r, 0.0); };
    f.convexity = ConvexityClass::Convex;
    f.lower_bound = 0.0;
    f.anchors = {p};
    f.hints = radial_hints(p, [r](double D, double tau) {
      return std::vector<double>{D <= r ? D : std::max(D - tau, r)};
    });
    return f;
  }
  if (name == "max_half_sq") {
    Point q = canonical(space, params.q.value_or(default_point(space)));
    if (!params.q && same_point(space, p, q)) {
      if (const auto* ts = space.as<TreeSpace>()) q = tree_vertex_point(*ts->graph, ts->graph->num_vertices() - 1);
    }
    f.eval = [sp, p, q](const Point& z) {
      const double a = distance(sp, z, p);
      const double b = distance(sp, z, q);
      return 0.5 * std::max(a * a, b * b);
    };
    f.convexity = ConvexityClass::Convex;
    f.lower_bound = 0.0;
    f.anchors = {p, q, geodesic_point(space, p, q, 0.5)};
    return f;
  }
  if (name == "sqrt_dist") {
    f.eval = [sp, p](const Point& z) { return std::sqrt(distance(sp, z, p)); };
    f.convexity = ConvexityClass::QuasiConvex;
    f.lower_bound = 0.0;
    f.anchors = {p};
    // g(u) = sqrt(u) + (D-u)^2/(2 tau); g' = 1/(2 sqrt u) - (D-u)/tau is convex
    // in u with its minimum at (tau/4)^(2/3); the local minimum of g is the
    // root of g' to the right of that point.
    f.hints = radial_hints(p, [](double D, double tau) {
      std::vector<double> out{0.0, D};
      auto dg = [&](double u) { return 0.5 / std::sqrt(u) - (D - u) / tau; };
      double lo = std::min(std::pow(tau / 4.0, 2.0 / 3.0), D);
      double hi = D;
      if (lo > 0.0 && dg(lo) < 0.0) {
        for (int i = 0; i < 200; ++i) {
          const double mid = 0.5 * (lo + hi);
          (dg(mid) < 0.0 ? lo : hi) = mid;
        }
        out.push_back(0.5 * (lo + hi));
      }
      return out;
    });
    return f;
  }
  if (name == "staircase") {
    const double h = params.step;
    if (!(h > 0.0)) throw std::invalid_argument("staircase needs step > 0");
    f.eval = [sp, p, h](const Point& z) { return h * std::ceil(distance(sp, z, p) / h); };
    f.convexity = ConvexityClass::QuasiConvex;
    f.lower_bound = 0.0;
    f.anchors = {p};
    // Constant on each shell ((j-1)h, jh]: the best point of a shell is the one
    // closest to x, at u = min(jh, D). Stay a hair inside the closed shell.
    f.hints = radial_hints(p, [h](double D, double) {
      std::vector<double> out{0.0, D};
      for (int j = 1; (j - 1) * h < D && j < 100000; ++j) out.push_back(std::min(j * h * (1.0 - 1e-12), D));
      return out;
    });
    return f;
  }
  if (name == "neg_cube" || name == "neg_cube_unit" || name == "sin") {
    if (!is_real_line(space)) throw std::invalid_argument(name + " is defined on the real line only");
    f.convexity = ConvexityClass::QuasiConvex;
    if (name == "sin") {
      f.eval = [](const Point& z) { return std::sin(coord1(z)); };
      f.interval = std::make_pair(0.0, 2.0 * 3.14159265358979323846);
      f.lower_bound = -1.0;
    } else {
      f.eval = [](const Point& z) {
        const double v = coord1(z);
        return -v * v * v;
      };
      if (name == "neg_cube_unit") {
        f.interval = std::make_pair(0.0, 1.0);
        f.lower_bound = -1.0;
      }
    }
    return f;
  }
  throw std::invalid_argument("unknown objective '" + name + "'");
}

std::vector<std::string> objective_names(const Space& space) {
  std::vector<std::string> names = {"const", "half_sq_dist", "sq_dist", "dist", "dist_to_ball",
                                    "max_half_sq", "sqrt_dist", "staircase"};
  if (is_real_line(space)) {
    names.push_back("neg_cube");
    names.push_back("neg_cube_unit");
  }
  return names;
}

std::vector<ObjectiveFn> builtin_objectives(const Space& space) {
  std::vector<ObjectiveFn> out;
  for (const auto& n : objective_names(space)) out.push_back(make_objective(space, n));
  return out;
}

}  // namespace sccurve
