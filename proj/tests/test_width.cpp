#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sccurve/generators.hpp"
#include "sccurve/metric.hpp"
#include "sccurve/width.hpp"

using namespace sccurve;
using doctest::Approx;
constexpr double kPi = std::numbers::pi;

TEST_CASE("planar mean width equals hull perimeter over pi") {
  Rng rng(21);
  std::vector<Eigen::Vector2d> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  CHECK(planar_mean_width(square) == Approx(4 / kPi).epsilon(1e-12));
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<Eigen::Vector2d> pts;
    const int n = 1 + rep % 17;
    for (int i = 0; i < n; ++i) pts.emplace_back(uniform(rng, -2, 2), uniform(rng, -1, 3));
    CHECK(planar_mean_width(pts) == Approx(oracle::hull_perimeter(pts) / kPi).epsilon(1e-10));
  }
}

TEST_CASE("mean width of balls and segments") {
  for (int dim : {2, 3, 4}) {
    const WidthReport w = mean_width_ball(dim, 1.5);
    CHECK(w.mean_width == Approx(3.0).epsilon(1e-12));
  }
  WidthConfig mc;
  mc.method = WidthMethod::MonteCarlo;
  mc.n_dirs = 40000;
  Eigen::VectorXd a = Eigen::VectorXd::Zero(3), b(3);
  b << 0, 2, 0;
  // Segment of length L in R^3: mean width L/2.
  const WidthReport w3 = mean_width_segment(a, b, mc);
  CHECK(std::abs(w3.mean_width - 1.0) <= 4 * w3.std_error);
  // Same segment in the plane through quadrature: 2L/pi.
  Eigen::VectorXd a2 = Eigen::VectorXd::Zero(2), b2(2);
  b2 << 1.2, 1.6;
  CHECK(mean_width_segment(a2, b2).mean_width == Approx(4 / kPi).epsilon(1e-6));
}

TEST_CASE("mean width of a point set, Monte Carlo versus quadrature") {
  const Space s = Space::euclidean(2);
  Rng rng(5);
  std::vector<Point> pts;
  for (int i = 0; i < 10; ++i) pts.push_back(random_point(s, rng));
  const WidthReport q = mean_width(s, pts);
  WidthConfig mc;
  mc.method = WidthMethod::MonteCarlo;
  mc.n_dirs = 50000;
  const WidthReport m = mean_width(s, pts, {}, mc);
  CHECK(q.method != m.method);
  CHECK(std::abs(q.mean_width - m.mean_width) <= 4 * m.std_error);
}

TEST_CASE("projection in R^n is the inner product") {
  const Space s = Space::euclidean(3);
  const Point x = Point::euclid({1, 1, 1});
  Eigen::VectorXd v(3);
  v << 0, 0.6, 0.8;
  const Direction d{x, EuclidDir{v}};
  CHECK(project(s, d, Point::euclid({2, 3, -1})) == Approx(0.6 * 2 + 0.8 * -2));
  const Extent e = projection_extent(s, d, std::vector<Point>{Point::euclid({1, 1, 1}), Point::euclid({1, 2, 2})});
  CHECK(e.length() == Approx(1.4));
}

TEST_CASE("Euclidean constant") {
  const double eps = 1.0 / 54, a = 4 * std::asin(eps / 2);
  CHECK(euclidean_constant(2) == Approx(2 * kPi / (a * eps)).epsilon(1e-12));
  const double eps3 = 1.0 / 162, a3 = 2 * kPi * (1 - std::cos(2 * std::asin(eps3 / 2)));
  CHECK(euclidean_constant(3) == Approx(4 * kPi / (a3 * eps3)).epsilon(1e-10));
}

TEST_CASE("spider jump curve audit ratio") {
  const BoundReport b = tree_length_bound(spider_jump_curve(5));
  CHECK(b.length == 8.0);
  CHECK(b.bound_value == Approx(300.0));
  CHECK(b.ratio == Approx(8.0 / 300.0));
  CHECK(b.pass);
  CHECK_THROWS(tree_length_bound(book_spine_jump_curve(3)));
}

TEST_CASE("book bound on the spine jump curve") {
  const Curve c = book_spine_jump_curve(4);
  const BoundReport b = book_length_bound(c);
  CHECK(b.pass);
  // Points at distance 1 from the spine on 4 sheets, pairwise 2 apart.
  CHECK(b.diam == Approx(2.0));
  CHECK(b.length == Approx(6.0));
  const double H2 = hausdorff_measure_neighborhood(c.space(), c.points(), 1.0, 2);
  CHECK(b.bound_value == Approx(54 * std::sqrt(2.0) * kPi * 4 * H2 * 2.0));
}

TEST_CASE("Euclidean bound on random curves and the telescoping sum") {
  for (int seed = 0; seed < 20; ++seed) {
    const Curve c = random_self_contracted(Space::euclidean(2), 25, seed);
    const BoundReport b = euclidean_length_bound(c);
    CHECK(b.pass);
    CHECK(b.ratio <= 1.0);
    CHECK(telescoping_check(c).pass);
  }
  const Curve c3 = random_self_contracted(Space::euclidean(3), 15, 4);
  CHECK(euclidean_length_bound(c3).pass);
}

TEST_CASE("generic bound and bound selection") {
  const Curve c = random_self_contracted(Space::spider(4), 15, 2);
  const BoundReport g = generic_cat0_bound(c);
  CHECK(g.claimed);
  CHECK(g.pass);
  const auto all = applicable_bounds(c);
  REQUIRE(all.size() == 2);
  CHECK(all[0].bound == "tree");
  CHECK(all[1].bound == "generic");
  CHECK(applicable_bounds(random_self_contracted(Space::euclidean(4), 8, 1)).size() == 1);
}

TEST_CASE("directional decrease on random curves") {
  for (const Space& s : {Space::euclidean(2), Space::hyperbolic(), Space::spider(5), Space::book(3)})
    for (int seed = 0; seed < 5; ++seed) {
      DecreaseScanConfig cfg;
      cfg.seed = seed;
      const ViolationReport r = directional_decrease_scan(random_self_contracted(s, 15, seed), cfg);
      CHECK_MESSAGE(r.pass, s.label() << " seed " << seed << " residual " << r.max_violation);
    }
}

TEST_CASE("decrease residual on a straight approach") {
  std::vector<Point> image;
  for (int i = 0; i < 5; ++i) image.push_back(Point::euclid({4.0 - i, 0.0}));
  Eigen::VectorXd v(2);
  v << 1, 0;
  // Pi_v(Xi(T)) shrinks by exactly d(xi(tau), xi(T)); residual (eps - 1) d.
  CHECK(euclid_decrease_residual(image, 0, 2, v, 0.1) == Approx(-0.9 * 2));
}

TEST_CASE("default epsilon per space") {
  CHECK(default_decrease_eps(Space::euclidean(2)) == Approx(1.0 / 54));
  CHECK(default_decrease_eps(Space::hyperbolic()) == Approx(1.0 / 54));
  CHECK(default_decrease_eps(Space::spider(3)) == Approx(1.0 / 6));
  CHECK(default_decrease_eps(Space::book(3)) == Approx(1 / (3 * std::sqrt(2.0))));
}
