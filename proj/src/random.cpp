#include "sccurve/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sccurve {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> hyperbolic_frame(const Eigen::Vector3d& x) {
  auto project = [&](const Eigen::Vector3d& v) -> Eigen::Vector3d { return v + minkowski(v, x) * x; };
  auto norm = [](const Eigen::Vector3d& v) { return std::sqrt(std::max(0.0, minkowski(v, v))); };
  Eigen::Vector3d e1 = project(Eigen::Vector3d(0, 1, 0));
  e1 /= norm(e1);
  Eigen::Vector3d e2 = project(Eigen::Vector3d(0, 0, 1));
  e2 -= minkowski(e2, e1) * e1;
  e2 /= norm(e2);
  return {e1, e2};
}

Point random_point(const Space& space, Rng& rng, double scale) {
  return std::visit(
      [&](const auto& s) -> Point {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EuclideanSpace>) {
          Eigen::VectorXd x(s.dim);
          for (int i = 0; i < s.dim; ++i) x[i] = uniform(rng, -scale, scale);
          return Point::euclid(x);
        } else if constexpr (std::is_same_v<T, HyperbolicPlane>) {
          const double a = uniform(rng, -scale, scale);
          const double b = uniform(rng, -scale, scale);
          return Point::hyper_lift(a, b);
        } else if constexpr (std::is_same_v<T, TreeSpace>) {
          const int e = std::uniform_int_distribution<int>(0, s.graph->num_edges() - 1)(rng);
          return canonical(space, Point::tree(e, uniform(rng, 0.0, s.graph->edge(e).length)));
        } else if constexpr (std::is_same_v<T, SpiderSpace>) {
          const int l = std::uniform_int_distribution<int>(0, s.k() - 1)(rng);
          return canonical(space, Point::spider(l, uniform(rng, 0.0, s.legs[l])));
        } else if constexpr (std::is_same_v<T, BookSpace>) {
          const int sh = std::uniform_int_distribution<int>(0, s.sheets - 1)(rng);
          const double a = uniform(rng, -scale, scale);
          const bool spine = std::uniform_int_distribution<int>(0, 7)(rng) == 0;
          const double b = spine ? 0.0 : uniform(rng, 0.0, scale);
          return canonical(space, Point::book(sh, a, b));
        } else {
          return Point::product(random_point(*s.left, rng, scale), random_point(*s.right, rng, scale));
        }
      },
      space.kind());
}

Direction random_direction(const Space& space, const Point& x_in, Rng& rng) {
  const Point x = canonical(space, x_in);
  constexpr double kPi = std::numbers::pi;
  return std::visit(
      [&](const auto& s) -> Direction {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EuclideanSpace>) {
          std::normal_distribution<double> n01;
          Eigen::VectorXd v(s.dim);
          do {
            for (int i = 0; i < s.dim; ++i) v[i] = n01(rng);
          } while (v.norm() < 1e-12);
          return Direction{x, EuclidDir{v.normalized()}};
        } else if constexpr (std::is_same_v<T, HyperbolicPlane>) {
          const auto [e1, e2] = hyperbolic_frame(x.as<HyperCoord>()->x);
          const double phi = uniform(rng, 0.0, 2.0 * kPi);
          return Direction{x, HyperDir{std::cos(phi) * e1 + std::sin(phi) * e2}};
        } else if constexpr (std::is_same_v<T, TreeSpace> || std::is_same_v<T, SpiderSpace>) {
          auto dirs = finite_directions(space, x);
          const int i = std::uniform_int_distribution<int>(0, static_cast<int>(dirs.size()) - 1)(rng);
          return dirs[i];
        } else if constexpr (std::is_same_v<T, BookSpace>) {
          const auto& c = *x.as<BookCoord>();
          if (c.b > 0.0) {
            const double phi = uniform(rng, 0.0, 2.0 * kPi);
            return Direction{x, BookDir{c.sheet, Eigen::Vector2d(std::cos(phi), std::sin(phi))}};
          }
          const int sh = std::uniform_int_distribution<int>(0, s.sheets - 1)(rng);
          double phi = uniform(rng, 0.0, kPi);
          if (phi == 0.0) phi = kPi / 2;
          return Direction{x, BookDir{sh, Eigen::Vector2d(std::cos(phi), std::sin(phi))}};
        } else {
          const auto& parts = x.as<ProductCoord>()->parts;
          ProductDir pd;
          pd.left = std::make_shared<const Direction>(random_direction(*s.left, parts[0], rng));
          pd.right = std::make_shared<const Direction>(random_direction(*s.right, parts[1], rng));
          pd.alpha = uniform(rng, 0.0, kPi / 2);
          return Direction{x, pd};
        }
      },
      space.kind());
}

}  // namespace sccurve
