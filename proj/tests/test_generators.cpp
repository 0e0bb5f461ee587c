#include <doctest.h>

#include "sccurve/generators.hpp"
#include "sccurve/io.hpp"
#include "sccurve/verify.hpp"

using namespace sccurve;

TEST_CASE("random curves are self-contracted in every space") {
  Rng rng(1);
  const std::vector<Space> spaces = {Space::euclidean(1), Space::euclidean(2), Space::euclidean(3), Space::hyperbolic(),
                                     Space::spider(5), Space::book(3), Space::tree(random_tree(rng, 20, 6))};
  for (const auto& s : spaces)
    for (GeneratorMode m : {GeneratorMode::Gradient, GeneratorMode::Rejection})
      for (int seed = 0; seed < 5; ++seed) {
        GeneratorConfig cfg;
        cfg.mode = m;
        const Curve c = random_self_contracted(s, 20, seed, cfg);
        CHECK(c.size() >= 1);
        SamplingConfig sc;
        sc.tol = 0.0;
        CHECK_MESSAGE(is_self_contracted(c, sc).pass, s.label() << " seed " << seed);
      }
}

TEST_CASE("generators are deterministic") {
  const Space s = Space::book(3);
  CHECK(dump(curve_to_json(random_self_contracted(s, 20, 42))) == dump(curve_to_json(random_self_contracted(s, 20, 42))));
  Rng a(9), b(9);
  const TreeGraph ta = random_tree(a), tb = random_tree(b);
  CHECK(ta.names() == tb.names());
  CHECK(ta.total_length() == tb.total_length());
}

TEST_CASE("random trees respect the degree cap") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const TreeGraph g = random_tree(rng, 40, 3);
    CHECK(g.max_degree() <= 3);
    CHECK(g.num_edges() == g.num_vertices() - 1);
    for (const auto& e : g.edges()) CHECK((e.length >= 0.2 && e.length <= 2.0));
  }
}

TEST_CASE("self-contracted prefix") {
  const Space s = Space::euclidean(1);
  const std::vector<Point> pts = {Point::euclid({0.0}), Point::euclid({2.0}), Point::euclid({3.0}), Point::euclid({1.0})};
  CHECK(self_contracted_prefix(s, pts) == 3);
}

TEST_CASE("witness growth is exact") {
  for (int k = 2; k <= 40; ++k) {
    const WitnessResult w = unrectifiable_witness(k);
    CHECK(w.growth == k - 1);
    CHECK(w.self_contracted.pass);
    CHECK(length_over_diameter(spider_jump_curve(k)) == k - 1);
  }
}
