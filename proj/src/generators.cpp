#include "sccurve/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sccurve/metric.hpp"
#include "sccurve/objective.hpp"
#include "sccurve/proximal.hpp"
#include "sccurve/verify.hpp"

namespace sccurve {

Curve spider_jump_curve(int k, double leg) {
  if (k < 2) throw std::invalid_argument("spider jump curve needs k >= 2");
  const Space space = Space::spider(k, leg);
  std::vector<Point> pts;
  for (int i = 0; i < k; ++i) pts.push_back(Point::spider(i, leg));
  return make_curve(space, std::move(pts));
}

Curve book_spine_jump_curve(int k) {
  if (k < 2) throw std::invalid_argument("book jump curve needs k >= 2");
  const Space space = Space::book(k);
  std::vector<Point> pts;
  for (int i = 0; i < k; ++i) pts.push_back(Point::book(i, 0.0, 1.0));
  return make_curve(space, std::move(pts));
}

Curve orthonormal_jump_curve(int k) {
  if (k < 2) throw std::invalid_argument("orthonormal jump curve needs k >= 2");
  const Space space = Space::euclidean(k);
  std::vector<Point> pts;
  for (int i = 0; i < k; ++i) pts.push_back(Point::euclid(Eigen::VectorXd::Unit(k, i)));
  return make_curve(space, std::move(pts));
}

WitnessResult unrectifiable_witness(int k) {
  WitnessResult w{orthonormal_jump_curve(k), 0.0, 0.0, 0.0, {}, {}};
  w.length = curve_length(w.curve);
  w.diam = curve_diameter(w.curve);
  w.growth = length_over_diameter(w.curve);
  w.self_contracted = is_self_contracted(w.curve);
  BoundReport& b = w.bound;
  b.bound = "euclidean_diam";
  b.space = w.curve.space().label();
  b.length = w.length;
  b.diam = w.diam;
  const double C = euclidean_constant(k);
  b.constants = {{"n", k}, {"C_n", C}};
  b.bound_value = C * w.diam;
  b.ratio = w.length / b.bound_value;
  b.pass = b.ratio <= 1.0 + b.tolerance;
  return w;
}

double length_over_diameter(const Curve& curve) {
  const double diam = curve_diameter(curve);
  if (diam == 0.0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) total += distance(curve.space(), curve[i - 1].p, curve[i].p) / diam;
  return total;
}

std::size_t self_contracted_prefix(const Space& space, const std::vector<Point>& points) {
  const std::size_t n = points.size();
  for (std::size_t m = 2; m < n; ++m) {
    double prev = distance(space, points[0], points[m]);
    for (std::size_t l = 1; l < m; ++l) {
      const double d = distance(space, points[l], points[m]);
      if (d > prev) return m;
      prev = std::min(prev, d);
    }
  }
  return n;
}

namespace {

// Accepts z after `pts` iff k -> d(p_k, z) is non-increasing, evaluated the
// way the self-contraction sweep evaluates it.
bool extends(const Space& space, const std::vector<Point>& pts, const Point& z) {
  double best = distance(space, pts[0], z);
  for (std::size_t l = 1; l < pts.size(); ++l) {
    const double d = distance(space, pts[l], z);
    if (d > best) return false;
    best = std::min(best, d);
  }
  return true;
}

std::vector<Point> gradient_points(const Space& space, int n_steps, Rng& rng, double scale) {
  std::vector<std::string> names;
  for (const auto& n : objective_names(space))
    if (n != "const" && n != "neg_cube" && n != "neg_cube_unit") names.push_back(n);
  const std::string name = names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)];
  ObjectiveParams params;
  params.p = random_point(space, rng, scale);
  params.q = random_point(space, rng, scale);
  params.radius = uniform(rng, 0.1, 0.8);
  params.step = uniform(rng, 0.2, 0.8);
  const ObjectiveFn f = make_objective(space, name, params);
  const Point x0 = random_point(space, rng, 2.0 * scale);
  std::vector<double> taus;
  for (int i = 1; i < n_steps; ++i) taus.push_back(uniform(rng, 0.05, 0.8));
  return discrete_gradient_curve(f, space, x0, taus).points;
}

std::vector<Point> rejection_points(const Space& space, int n_steps, Rng& rng, const GeneratorConfig& cfg) {
  std::vector<Point> pts{canonical(space, random_point(space, rng, cfg.scale))};
  while (static_cast<int>(pts.size()) < n_steps) {
    const double len0 = cfg.scale * uniform(rng, 0.1, 1.0);
    bool accepted = false;
    for (int attempt = 0; attempt < cfg.max_rejections && !accepted; ++attempt) {
      const Direction dir = random_direction(space, pts.back(), rng);
      const double len = len0 * std::pow(0.995, attempt) * uniform(rng, 0.05, 1.0);
      const Point z = canonical(space, shoot(space, dir, len).first);
      if (distance(space, pts.back(), z) <= 1e-6 * cfg.scale) continue;
      if (extends(space, pts, z)) {
        pts.push_back(z);
        accepted = true;
      }
    }
    if (!accepted) break;
  }
  return pts;
}

}  // namespace

Curve random_self_contracted(const Space& space, int n_steps, std::uint64_t seed, const GeneratorConfig& cfg) {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  if (space.as<ProductSpace>()) throw std::invalid_argument("no generator for product spaces");
  Rng rng(seed);
  GeneratorMode mode = cfg.mode;
  if (mode == GeneratorMode::Mixed)
    mode = uniform(rng, 0.0, 1.0) < cfg.gradient_share ? GeneratorMode::Gradient : GeneratorMode::Rejection;
  std::vector<Point> pts = mode == GeneratorMode::Gradient ? gradient_points(space, n_steps, rng, cfg.scale)
                                                           : rejection_points(space, n_steps, rng, cfg);
  pts.resize(self_contracted_prefix(space, pts), pts.front());
  return make_curve(space, std::move(pts));
}

TreeGraph random_tree(Rng& rng, int max_edges, int max_degree) {
  if (max_edges < 1 || max_degree < 2) throw std::invalid_argument("random tree needs max_edges >= 1, max_degree >= 2");
  const int edges = std::uniform_int_distribution<int>(1, max_edges)(rng);
  std::vector<std::string> names{"v0"};
  std::vector<TreeGraph::Edge> list;
  std::vector<int> degree{0};
  for (int i = 1; i <= edges; ++i) {
    std::vector<int> open;
    for (int v = 0; v < static_cast<int>(degree.size()); ++v)
      if (degree[v] < max_degree) open.push_back(v);
    const int parent = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
    names.push_back("v" + std::to_string(i));
    degree.push_back(1);
    ++degree[parent];
    list.push_back({parent, i, uniform(rng, 0.2, 2.0)});
  }
  return TreeGraph(std::move(names), std::move(list));
}

}  // namespace sccurve
