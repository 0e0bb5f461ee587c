#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sccurve/generators.hpp"
#include "sccurve/metric.hpp"
#include "sccurve/random.hpp"

using namespace sccurve;
using doctest::Approx;
constexpr double kPi = std::numbers::pi;

namespace {

double hyper_dist(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  return std::acosh(std::max(1.0, x[0] * y[0] - x[1] * y[1] - x[2] * y[2]));
}

}  // namespace

TEST_CASE("euclidean distance and geodesics") {
  const Space s = Space::euclidean(3);
  const Point p = Point::euclid({1, 2, 3}), q = Point::euclid({4, 6, 3});
  CHECK(distance(s, p, q) == Approx(5.0));
  const Point m = geodesic_point(s, p, q, 0.25);
  CHECK(distance(s, p, m) == Approx(1.25));
  CHECK(distance(s, m, q) == Approx(3.75));
  CHECK_THROWS_AS(distance(s, p, Point::euclid({1, 2})), std::invalid_argument);
}

TEST_CASE("hyperbolic distance matches the hyperboloid formula") {
  const Space s = Space::hyperbolic();
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Point a = random_point(s, rng, 2.0), b = random_point(s, rng, 2.0);
    const double d = hyper_dist(a.as<HyperCoord>()->x, b.as<HyperCoord>()->x);
    CHECK(distance(s, a, b) == Approx(d).epsilon(1e-10));
    // Point at fraction t along the geodesic: sinh((1-t)d)/sinh d a + sinh(t d)/sinh d b.
    const double t = uniform(rng, 0.0, 1.0);
    if (d > 1e-6) {
      const Eigen::Vector3d g = (std::sinh((1 - t) * d) * a.as<HyperCoord>()->x + std::sinh(t * d) * b.as<HyperCoord>()->x) /
                                std::sinh(d);
      CHECK(distance(s, geodesic_point(s, a, b, t), Point::hyper(g)) < 1e-7);
    }
  }
}

TEST_CASE("spider and book distances") {
  const Space sp = Space::spider(4);
  CHECK(distance(sp, Point::spider(0, 0.3), Point::spider(0, 0.9)) == Approx(0.6));
  CHECK(distance(sp, Point::spider(1, 0.3), Point::spider(2, 0.9)) == Approx(1.2));
  CHECK(distance(sp, Point::spider(1, 0.0), Point::spider(3, 0.0)) == 0.0);
  CHECK_THROWS(distance(sp, Point::spider(4, 0.1), Point::spider(0, 0.1)));
  CHECK_THROWS(distance(sp, Point::spider(0, 1.5), Point::spider(0, 0.1)));

  const Space bk = Space::book(3);
  CHECK(distance(bk, Point::book(0, 0, 1), Point::book(0, 3, 5)) == Approx(5.0));
  // Different sheets unfold into one plane across the spine.
  CHECK(distance(bk, Point::book(0, 0, 1), Point::book(2, 3, 3)) == Approx(5.0));
  const Point mid = geodesic_point(bk, Point::book(0, 0, 1), Point::book(1, 0, 1), 0.5);
  CHECK(distance(bk, mid, Point::book(2, 0, 0)) < 1e-12);
}

TEST_CASE("tree distances agree with Floyd-Warshall") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const TreeGraph g = random_tree(rng, 15, 4);
    const Space s = Space::tree(g);
    for (int i = 0; i < 50; ++i) {
      const Point a = random_point(s, rng), b = random_point(s, rng);
      CHECK(distance(s, a, b) == Approx(oracle::tree_point_distance(g, a, b)).epsilon(1e-12));
      const Point m = geodesic_point(s, a, b, 0.3);
      CHECK(oracle::tree_point_distance(g, a, m) == Approx(0.3 * distance(s, a, b)).epsilon(1e-9));
    }
  }
}

TEST_CASE("comparison angle follows the law of cosines") {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const double a = uniform(rng, 0.01, 3), b = uniform(rng, 0.01, 3);
    const double c = uniform(rng, std::abs(a - b), a + b);
    const double expected = std::acos(std::clamp((a * a + b * b - c * c) / (2 * a * b), -1.0, 1.0));
    CHECK(comparison_angle_from_sides(a, b, c) == Approx(expected).epsilon(1e-7));
  }
  CHECK(comparison_angle_from_sides(1, 1, 2) == Approx(kPi));
  CHECK(comparison_angle_from_sides(1, 1, 0) == Approx(0.0));
}

TEST_CASE("upper angle in the plane equals the Euclidean angle") {
  const Space s = Space::euclidean(2);
  const UpperAngle u = upper_angle(s, Point::euclid({0, 0}), Point::euclid({1, 0}), Point::euclid({1, 1}));
  CHECK(u.angle == Approx(kPi / 4));
}

TEST_CASE("CAT(0) inequality: equality in R^n, non-negative in CAT(0) spaces") {
  Rng rng(9);
  const Space e = Space::euclidean(2);
  for (int i = 0; i < 100; ++i) {
    const double r = cat0_inequality_residual(e, random_point(e, rng), random_point(e, rng), random_point(e, rng),
                                              uniform(rng, 0, 1));
    CHECK(std::abs(r) < 1e-12);
  }
  for (const Space& s : {Space::hyperbolic(), Space::spider(3), Space::book(4)})
    for (int i = 0; i < 500; ++i)
      CHECK(cat0_inequality_residual(s, random_point(s, rng), random_point(s, rng), random_point(s, rng),
                                     uniform(rng, 0, 1)) >= -1e-9);
}

TEST_CASE("hyperbolic residual is strictly positive for a fat triangle") {
  const Space s = Space::hyperbolic();
  const double r = cat0_inequality_residual(s, Point::hyper_lift(0, 0), Point::hyper_lift(2, 0), Point::hyper_lift(0, 2), 0.5);
  CHECK(r > 0.1);
}

TEST_CASE("four point sub-embedding") {
  const double h = kPi / 2;
  CHECK_FALSE(four_point_subembed(h, h, h, h, kPi, kPi).pass);
  // Unit square: diagonals sqrt 2.
  CHECK(four_point_subembed(1, 1, 1, 1, std::sqrt(2.0), std::sqrt(2.0)).pass);
  // Tripod tips: all pairwise distances 2 (a tree).
  CHECK(four_point_subembed(2, 2, 2, 2, 2, 2).pass);
  CHECK_THROWS(four_point_subembed(1, 1, 1, 1, 5, 1));
}

TEST_CASE("CAT(0) residual on three spider tips") {
  // (1-s)|xy|^2 + s|xz|^2 - (1-s)s|yz|^2 - |x m|^2 with m the center: 2 + 2 - 1 - 1.
  const Space s = Space::spider(3);
  CHECK(cat0_inequality_residual(s, Point::spider(0, 1), Point::spider(1, 1), Point::spider(2, 1), 0.5) == Approx(2.0));
}
