#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sccurve/metric.hpp"
#include "sccurve/proximal.hpp"
#include "sccurve/random.hpp"

using namespace sccurve;
using doctest::Approx;

TEST_CASE("resolvent of half squared distance in R^2") {
  const Space s = Space::euclidean(2);
  ObjectiveParams prm;
  prm.p = Point::euclid({1.0, -2.0});
  const ObjectiveFn f = make_objective(s, "half_sq_dist", prm);
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const Point x = random_point(s, rng, 3.0);
    const double tau = uniform(rng, 0.05, 2.0);
    const ResolventResult r = resolvent(f, s, x, tau);
    REQUIRE(r.status == ResolventStatus::Unique);
    const Eigen::VectorXd expected = (x.as<EuclidCoord>()->x + tau * prm.p->as<EuclidCoord>()->x) / (1 + tau);
    CHECK((r.minimizers[0].as<EuclidCoord>()->x - expected).norm() < 1e-7);
    const double D = (x.as<EuclidCoord>()->x - prm.p->as<EuclidCoord>()->x).squaredNorm();
    CHECK(moreau_yosida(f, s, x, tau) == Approx(D / (2 * (1 + tau))).epsilon(1e-8));
  }
}

TEST_CASE("resolvent of the distance function moves by tau") {
  const Space s = Space::euclidean(2);
  const ObjectiveFn f = make_objective(s, "dist", {.p = Point::euclid({0, 0}), .q = {}});
  const ResolventResult far = resolvent(f, s, Point::euclid({3, 4}), 1.0);
  CHECK((far.minimizers[0].as<EuclidCoord>()->x - Eigen::Vector2d(2.4, 3.2)).norm() < 1e-7);
  const ResolventResult near = resolvent(f, s, Point::euclid({0.3, 0.4}), 1.0);
  CHECK(near.minimizers[0].as<EuclidCoord>()->x.norm() < 1e-7);
}

TEST_CASE("resolvent crosses the spider center") {
  const Space s = Space::spider(3);
  const ObjectiveFn f = make_objective(s, "half_sq_dist", {.p = Point::spider(0, 1.0), .q = {}});
  // d = 1.5, step tau d / (1 + tau) = 0.75 from (leg 1, 0.5): lands at (leg 0, 0.25).
  const ResolventResult r = resolvent(f, s, Point::spider(1, 0.5), 1.0);
  REQUIRE(r.status == ResolventStatus::Unique);
  CHECK(distance(s, r.minimizers[0], Point::spider(0, 0.25)) < 1e-7);
}

TEST_CASE("resolvent on the hyperbolic plane lies on the geodesic to the anchor") {
  const Space s = Space::hyperbolic();
  const Point p = Point::hyper_lift(0.5, -0.3), x = Point::hyper_lift(-1.0, 1.2);
  const ObjectiveFn f = make_objective(s, "half_sq_dist", {.p = p, .q = {}});
  const double tau = 0.7;
  const ResolventResult r = resolvent(f, s, x, tau);
  const double D = distance(s, x, p);
  const double t = tau / (1 + tau);
  const Eigen::Vector3d a = x.as<HyperCoord>()->x, b = p.as<HyperCoord>()->x;
  const Eigen::Vector3d g = (std::sinh((1 - t) * D) * a + std::sinh(t * D) * b) / std::sinh(D);
  CHECK(distance(s, r.minimizers[0], Point::hyper(g)) < 1e-6);
}

TEST_CASE("ties and unboundedness of -z^3") {
  const Space line = Space::euclidean(1);
  const ResolventResult tie = resolvent(make_objective(line, "neg_cube_unit"), line, Point::euclid({0.0}), 0.5);
  CHECK(tie.status == ResolventStatus::MultipleTies);
  REQUIRE(tie.minimizers.size() == 2);
  // Nearest to x first.
  CHECK(tie.minimizers[0].as<EuclidCoord>()->x[0] == Approx(0.0));
  CHECK(tie.minimizers[1].as<EuclidCoord>()->x[0] == Approx(1.0));
  CHECK(tie.value == Approx(oracle::neg_cube_prox_value(1.0, 0.0, 0.5)));
  const ResolventResult unb = resolvent(make_objective(line, "neg_cube"), line, Point::euclid({0.0}), 0.5);
  CHECK(unb.status == ResolventStatus::Unbounded);
  CHECK(std::isinf(moreau_yosida(make_objective(line, "neg_cube"), line, Point::euclid({0.0}), 0.5)));
}

TEST_CASE("constant objective leaves the point in place") {
  const Space s = Space::book(3);
  const Point x = Point::book(1, 0.3, 0.4);
  const ResolventResult r = resolvent(make_objective(s, "const"), s, x, 1.0);
  CHECK(r.status == ResolventStatus::Unique);
  CHECK(distance(s, r.minimizers[0], x) < 1e-9);
}

TEST_CASE("discrete gradient curve follows the closed-form recursion") {
  const Space s = Space::euclidean(2);
  const Eigen::Vector2d p(0.5, 0.5);
  const ObjectiveFn f = make_objective(s, "half_sq_dist", {.p = Point::euclid(p), .q = {}});
  const std::vector<double> taus = {0.1, 0.3, 0.2, 0.7};
  const GradientCurveRun run = discrete_gradient_curve(f, s, Point::euclid({2.0, -1.0}), taus);
  REQUIRE(run.complete);
  Eigen::Vector2d x(2.0, -1.0);
  for (std::size_t k = 0; k < taus.size(); ++k) {
    x = (x + taus[k] * p) / (1 + taus[k]);
    CHECK((run.points[k + 1].as<EuclidCoord>()->x - x).norm() < 1e-7);
  }
  const Curve c = discrete_curve(s, run);
  CHECK(c.end_time() == Approx(1.3));
  CHECK(geodesic_interpolation(s, run).mode() == CurveMode::GeodesicInterpolated);
}

TEST_CASE("gradient run stops at an unbounded step") {
  const Space line = Space::euclidean(1);
  const GradientCurveRun run =
      discrete_gradient_curve(make_objective(line, "neg_cube"), line, Point::euclid({0.0}), {0.5, 0.5});
  CHECK_FALSE(run.complete);
  CHECK_FALSE(run.diagnostic.empty());
}

TEST_CASE("catalog objectives pass the quasi-convexity probe") {
  for (const Space& s : {Space::euclidean(2), Space::spider(3), Space::book(3), Space::hyperbolic()})
    for (const auto& f : builtin_objectives(s)) {
      const QuasiconvexityReport q = quasiconvexity_probe(f, s, 300, 7);
      CHECK_MESSAGE(q.qc.pass, f.name << " on " << s.label());
      CHECK_MESSAGE(q.lambda.pass, f.name << " on " << s.label());
    }
  const Space line = Space::euclidean(1);
  CHECK_FALSE(quasiconvexity_probe(make_objective(line, "sin"), line, 500, 3).qc.pass);
}

TEST_CASE("unknown objective names are rejected") {
  CHECK_THROWS_AS(make_objective(Space::euclidean(2), "nope"), std::invalid_argument);
  CHECK_THROWS_AS(make_objective(Space::euclidean(2), "neg_cube"), std::invalid_argument);
}
