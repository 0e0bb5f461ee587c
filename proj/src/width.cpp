#include "sccurve/width.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sccurve/metric.hpp"
#include "sccurve/verify.hpp"

namespace sccurve {

namespace {

constexpr double kPi = std::numbers::pi;

const Eigen::VectorXd& ecoord(const Point& p) { return p.as<EuclidCoord>()->x; }

Eigen::VectorXd random_unit(int dim, Rng& rng) {
  std::normal_distribution<double> n01;
  Eigen::VectorXd v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = n01(rng);
  } while (v.norm() < 1e-12);
  return v.normalized();
}

WidthReport summarize(const std::vector<double>& values, std::uint64_t seed, std::string method) {
  WidthReport rep;
  rep.seed = seed;
  rep.method = std::move(method);
  rep.n_directions = static_cast<long long>(values.size());
  if (values.empty()) return rep;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / values.size();
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  rep.mean_width = mean;
  if (values.size() > 1) rep.std_error = std::sqrt(ss / (values.size() - 1) / values.size());
  return rep;
}

// Index of the point maximizing <p, (cos t, sin t)>.
std::size_t support_index(std::span<const Eigen::Vector2d> pts, double t) {
  const Eigen::Vector2d u(std::cos(t), std::sin(t));
  std::size_t best = 0;
  double bv = pts[0].dot(u);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double v = pts[i].dot(u);
    if (v > bv) {
      bv = v;
      best = i;
    }
  }
  return best;
}

// Integral of <p, (cos t, sin t)> over [a, b].
double support_integral(const Eigen::Vector2d& p, double a, double b) {
  return p[0] * (std::sin(b) - std::sin(a)) + p[1] * (std::cos(a) - std::cos(b));
}

double cell_integral(std::span<const Eigen::Vector2d> pts, double a, double b, std::size_t ia, std::size_t ib,
                     int depth) {
  if (ia == ib) return support_integral(pts[ia], a, b);
  const double m = 0.5 * (a + b);
  if (depth >= 60 || m <= a || m >= b) {
    const Eigen::Vector2d u(std::cos(m), std::sin(m));
    return (b - a) * std::max(pts[ia].dot(u), pts[ib].dot(u));
  }
  const std::size_t im = support_index(pts, m);
  return cell_integral(pts, a, m, ia, im, depth + 1) + cell_integral(pts, m, b, im, ib, depth + 1);
}

// Convex hull vertices (monotone chain); collinear points dropped.
std::vector<Eigen::Vector2d> hull(std::vector<Eigen::Vector2d> p) {
  std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) { return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]); });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Eigen::Vector2d> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

bool is_finite_direction_space(const Space& space) {
  return space.as<TreeSpace>() || space.as<SpiderSpace>();
}

}  // namespace

double project(const Space& space, const Direction& dir, const Point& y) {
  if (const auto* ed = dir.as<EuclidDir>()) return (ecoord(y) - ecoord(dir.base)).dot(ed->v);
  if (same_point(space, dir.base, y)) return 0.0;
  const auto lg = log_direction(space, dir.base, y);
  return lg.distance * std::cos(direction_angle(space, dir, lg.direction));
}

Extent projection_extent(const Space& space, const Direction& dir, std::span<const Point> points) {
  if (points.empty()) return {};
  Extent e{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& p : points) {
    const double v = project(space, dir, p);
    e.lo = std::min(e.lo, v);
    e.hi = std::max(e.hi, v);
  }
  return e;
}

std::vector<Point> image_points(const Curve& curve, std::size_t from, int levels) {
  std::vector<Point> out;
  if (from >= curve.size()) return out;
  if (curve.mode() == CurveMode::Discrete || levels <= 0) {
    for (std::size_t i = from; i < curve.size(); ++i) out.push_back(curve[i].p);
    return out;
  }
  const int per = 1 << levels;
  for (std::size_t i = from; i + 1 < curve.size(); ++i) {
    out.push_back(curve[i].p);
    for (int j = 1; j < per; ++j)
      out.push_back(geodesic_point(curve.space(), curve[i].p, curve[i + 1].p, static_cast<double>(j) / per));
  }
  out.push_back(curve.samples().back().p);
  return out;
}

double planar_mean_width(std::span<const Eigen::Vector2d> points_in, int cells) {
  if (points_in.empty()) return 0.0;
  if (cells < 1) throw std::invalid_argument("quadrature needs at least one cell");
  std::vector<Eigen::Vector2d> shifted(points_in.begin(), points_in.end());
  const Eigen::Vector2d origin = shifted.front();
  for (auto& p : shifted) p -= origin;
  const auto pts = hull(std::move(shifted));
  if (pts.size() == 1) return 0.0;
  const double h = 2.0 * kPi / cells;
  double total = 0.0;
  std::size_t prev = support_index(pts, 0.0);
  for (int c = 0; c < cells; ++c) {
    const double a = c * h;
    const double b = c + 1 == cells ? 2.0 * kPi : (c + 1) * h;
    const std::size_t next = support_index(pts, b);
    total += cell_integral(pts, a, b, prev, next, 0);
    prev = next;
  }
  return total / kPi;
}

WidthReport mean_width(const Space& space, std::span<const Point> points, std::span<const Point> basepoints,
                       const WidthConfig& cfg) {
  if (cfg.n_dirs < 1) throw std::invalid_argument("mean width needs n_dirs >= 1");
  if (const auto* es = space.as<EuclideanSpace>()) {
    const bool quad = cfg.method == WidthMethod::Quadrature ||
                      (cfg.method == WidthMethod::Auto && es->dim == 2);
    if (quad) {
      if (es->dim != 2) throw std::invalid_argument("angular quadrature is planar only");
      std::vector<Eigen::Vector2d> p2;
      for (const auto& p : points) p2.emplace_back(ecoord(p)[0], ecoord(p)[1]);
      WidthReport rep;
      rep.mean_width = planar_mean_width(p2, cfg.quadrature_cells);
      rep.n_directions = cfg.quadrature_cells;
      rep.seed = cfg.seed;
      rep.method = "quadrature";
      return rep;
    }
    Rng rng(cfg.seed);
    std::vector<double> values;
    values.reserve(cfg.n_dirs);
    for (int i = 0; i < cfg.n_dirs; ++i) {
      const Eigen::VectorXd v = random_unit(es->dim, rng);
      double lo = 0.0, hi = 0.0;
      for (std::size_t j = 0; j < points.size(); ++j) {
        const double s = ecoord(points[j]).dot(v);
        if (j == 0 || s < lo) lo = s;
        if (j == 0 || s > hi) hi = s;
      }
      values.push_back(hi - lo);
    }
    return summarize(values, cfg.seed, "monte_carlo");
  }
  std::span<const Point> bases = basepoints.empty() ? points : basepoints;
  if (bases.empty()) return summarize({}, cfg.seed, "monte_carlo_pairs");
  Rng rng(cfg.seed);
  std::uniform_int_distribution<std::size_t> pick(0, bases.size() - 1);
  std::vector<double> values;
  values.reserve(cfg.n_dirs);
  for (int i = 0; i < cfg.n_dirs; ++i) {
    const Point& x = bases[pick(rng)];
    const Direction dir = random_direction(space, x, rng);
    values.push_back(projection_extent(space, dir, points).length());
  }
  return summarize(values, cfg.seed, "monte_carlo_pairs");
}

WidthReport mean_width_support(int dim, const std::function<double(const Eigen::VectorXd&)>& support,
                               const WidthConfig& cfg) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  if (cfg.n_dirs < 1) throw std::invalid_argument("mean width needs n_dirs >= 1");
  if (cfg.method == WidthMethod::Quadrature || (cfg.method == WidthMethod::Auto && dim == 2)) {
    if (dim != 2) throw std::invalid_argument("angular quadrature is planar only");
    // Midpoint rule over [0, pi); the extent h(v) + h(-v) has period pi.
    const int n = cfg.quadrature_cells;
    double sum = 0.0;
    for (int c = 0; c < n; ++c) {
      const double t = (c + 0.5) * kPi / n;
      Eigen::VectorXd v(2);
      v << std::cos(t), std::sin(t);
      sum += support(v) + support(-v);
    }
    WidthReport rep;
    rep.mean_width = sum / n;
    rep.n_directions = n;
    rep.seed = cfg.seed;
    rep.method = "quadrature";
    return rep;
  }
  Rng rng(cfg.seed);
  std::vector<double> values;
  values.reserve(cfg.n_dirs);
  for (int i = 0; i < cfg.n_dirs; ++i) {
    const Eigen::VectorXd v = random_unit(dim, rng);
    values.push_back(support(v) + support(-v));
  }
  return summarize(values, cfg.seed, "monte_carlo");
}

WidthReport mean_width_ball(int dim, double r, const WidthConfig& cfg) {
  if (!(r >= 0.0)) throw std::invalid_argument("ball radius must be non-negative");
  return mean_width_support(dim, [r](const Eigen::VectorXd&) { return r; }, cfg);
}

WidthReport mean_width_segment(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const WidthConfig& cfg) {
  if (a.size() != b.size()) throw std::invalid_argument("segment endpoints differ in dimension");
  const Eigen::VectorXd d = b - a;
  return mean_width_support(static_cast<int>(a.size()),
                            [d](const Eigen::VectorXd& v) { return std::max(0.0, d.dot(v)); }, cfg);
}

double euclid_decrease_residual(std::span<const Point> image, std::size_t tau, std::size_t T,
                                const Eigen::VectorXd& v, double eps) {
  if (!(tau < T) || T >= image.size()) throw std::invalid_argument("decrease check needs tau < T in range");
  const Eigen::VectorXd& base = ecoord(image[tau]);
  double lo_tau = 0.0, hi_tau = 0.0, lo_T = 0.0, hi_T = 0.0;
  for (std::size_t i = tau; i < image.size(); ++i) {
    const double s = (ecoord(image[i]) - base).dot(v);
    lo_tau = std::min(lo_tau, s);
    hi_tau = std::max(hi_tau, s);
    if (i == T) lo_T = hi_T = s;
    if (i >= T) {
      lo_T = std::min(lo_T, s);
      hi_T = std::max(hi_T, s);
    }
  }
  const double d = (ecoord(image[T]) - base).norm();
  if (d == 0.0) return 0.0;
  return (hi_T - lo_T) - (hi_tau - lo_tau) + eps * d;
}

double cat0_decrease_residual(const Space& space, std::span<const Point> image, std::size_t tau, std::size_t T,
                              const Direction& gamma, double eps) {
  if (!(tau < T) || T >= image.size()) throw std::invalid_argument("decrease check needs tau < T in range");
  const double d = distance(space, image[tau], image[T]);
  if (d <= space.tolerance()) return 0.0;
  const Extent whole = projection_extent(space, gamma, image.subspan(tau));
  const Extent tail = projection_extent(space, gamma, image.subspan(T));
  return tail.length() - whole.length() + 0.5 * eps * d;
}

double default_decrease_eps(const Space& space) {
  if (const auto* es = space.as<EuclideanSpace>()) return radius_constants(es->dim).eps_n;
  if (space.as<HyperbolicPlane>()) return radius_constants(2).eps_bold;
  if (is_finite_direction_space(space)) return 1.0 / 6.0;
  if (space.as<BookSpace>()) return 1.0 / (3.0 * std::sqrt(2.0));
  throw std::invalid_argument("no decrease constant for space " + space.label());
}

Direction perturb_direction(const Space& space, const Direction& dir, double max_angle, Rng& rng) {
  const double phi = uniform(rng, 0.0, std::max(0.0, max_angle));
  const double sign = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  if (const auto* ed = dir.as<EuclidDir>()) {
    const int n = static_cast<int>(ed->v.size());
    if (n == 1) return dir;
    Eigen::VectorXd u;
    do {
      u = random_unit(n, rng);
      u -= u.dot(ed->v) * ed->v;
    } while (u.norm() < 1e-8);
    u.normalize();
    return Direction{dir.base, EuclidDir{(std::cos(phi) * ed->v + std::sin(phi) * u).normalized()}};
  }
  if (const auto* hd = dir.as<HyperDir>()) {
    const auto [e1, e2] = hyperbolic_frame(dir.base.as<HyperCoord>()->x);
    Eigen::Vector3d u = e1 - minkowski(e1, hd->v) * hd->v;
    if (minkowski(u, u) < 1e-12) u = e2 - minkowski(e2, hd->v) * hd->v;
    u /= std::sqrt(minkowski(u, u));
    return Direction{dir.base, HyperDir{std::cos(phi) * hd->v + sign * std::sin(phi) * u}};
  }
  if (const auto* bd = dir.as<BookDir>()) {
    const auto& c = *dir.base.as<BookCoord>();
    const double ang = std::atan2(bd->v[1], bd->v[0]);
    if (c.b > 0.0) {
      const double t = ang + sign * phi;
      return Direction{dir.base, BookDir{bd->sheet, Eigen::Vector2d(std::cos(t), std::sin(t))}};
    }
    // Spine base: rotate inside a sheet, stopping at the spine.
    int sheet = bd->sheet;
    double t;
    if (bd->v[1] == 0.0) {
      sheet = std::uniform_int_distribution<int>(0, space.as<BookSpace>()->sheets - 1)(rng);
      t = bd->v[0] > 0.0 ? phi : kPi - phi;
    } else {
      t = std::clamp(ang + sign * phi, 0.0, kPi);
    }
    Eigen::Vector2d v(std::cos(t), std::sin(t));
    if (t == 0.0 || t == kPi || v[1] <= 0.0) {
      v = Eigen::Vector2d(t < kPi / 2 ? 1.0 : -1.0, 0.0);
      sheet = 0;
    }
    return Direction{dir.base, BookDir{sheet, v}};
  }
  if (is_finite_direction_space(space)) return dir;
  throw std::invalid_argument("cannot perturb directions in space " + space.label());
}

Direction opposite_direction(const Space& space, const Direction& dir, Rng& rng) {
  if (const auto* ed = dir.as<EuclidDir>()) return Direction{dir.base, EuclidDir{-ed->v}};
  if (const auto* hd = dir.as<HyperDir>()) return Direction{dir.base, HyperDir{-hd->v}};
  if (is_finite_direction_space(space)) {
    std::vector<Direction> others;
    for (auto& d : finite_directions(space, dir.base))
      if (direction_angle(space, d, dir) > 0.0) others.push_back(d);
    if (others.empty()) throw std::invalid_argument("no opposite direction at a leaf");
    return others[std::uniform_int_distribution<std::size_t>(0, others.size() - 1)(rng)];
  }
  if (const auto* bd = dir.as<BookDir>()) {
    const auto& c = *dir.base.as<BookCoord>();
    if (c.b > 0.0 || bd->v[1] == 0.0) return Direction{dir.base, BookDir{bd->sheet, -bd->v}};
    const int k = space.as<BookSpace>()->sheets;
    int j = std::uniform_int_distribution<int>(0, k - 2)(rng);
    if (j >= bd->sheet) ++j;
    return Direction{dir.base, BookDir{j, Eigen::Vector2d(-bd->v[0], bd->v[1])}};
  }
  throw std::invalid_argument("no opposite directions in space " + space.label());
}

ViolationReport directional_decrease_scan(const Curve& curve, const DecreaseScanConfig& cfg) {
  const Space& space = curve.space();
  ViolationReport rep;
  rep.check = "directional_decrease";
  rep.tolerance = cfg.tol;
  const double eps = cfg.eps > 0.0 ? cfg.eps : default_decrease_eps(space);
  const auto samples = check_samples(curve, cfg.densify_levels);
  std::vector<Point> image;
  for (const auto& s : samples) image.push_back(s.p);
  const std::size_t n = image.size();
  if (n < 2) return rep.finish();
  const bool euclid = space.as<EuclideanSpace>() != nullptr;
  const double delta = 2.0 * std::asin(eps / 2.0);
  Rng rng(cfg.seed);
  long long skipped = 0;
  for (int pair = 0; pair < cfg.n_pairs; ++pair) {
    // Stalled tails make the inequality trivial; redraw a bounded number of times.
    std::size_t tau = 0, T = 1;
    for (int attempt = 0; attempt < 64; ++attempt) {
      tau = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
      T = std::uniform_int_distribution<std::size_t>(tau + 1, n - 1)(rng);
      if (!same_point(space, image[tau], image[T])) break;
    }
    const Point& xt = image[tau];
    auto record = [&](double v, const Point& base) {
      if (rep.observe(v))
        rep.set_witness(v, {samples[tau].t, samples[T].t}, {xt, image[T], base});
    };
    if (same_point(space, xt, image[T])) {
      record(0.0, xt);
      continue;
    }
    std::vector<Direction> delta_set;
    for (std::size_t j = tau + 1; j < n; ++j)
      if (!same_point(space, xt, image[j])) delta_set.push_back(log_direction(space, xt, image[j]).direction);
    const bool improved = space.as<BookSpace>() || is_finite_direction_space(space);
    const Direction center = improved ? improved_cover_center(space, xt, delta_set).center
                                      : direction_cover_center(space, xt, delta_set).center;
    if (is_finite_direction_space(space) && finite_directions(space, xt).size() < 2) {
      // Leaf: no basepoints opposite the center, the condition is vacuous.
      skipped += cfg.n_dirs;
      continue;
    }
    for (int k = 0; k < cfg.n_dirs; ++k) {
      if (euclid) {
        // First draw sits on the boundary of the allowed cap.
        const auto& vbar = center.as<EuclidDir>()->v;
        Eigen::VectorXd v = vbar;
        if (vbar.size() > 1) {
          Eigen::VectorXd u;
          do {
            u = random_unit(static_cast<int>(vbar.size()), rng);
            u -= u.dot(vbar) * vbar;
          } while (u.norm() < 1e-8);
          u.normalize();
          const double phi = k == 0 ? delta : uniform(rng, 0.0, delta);
          v = std::cos(phi) * vbar + std::sin(phi) * u;
        }
        record(euclid_decrease_residual(image, tau, T, v, eps), xt);
        continue;
      }
      const Direction away = perturb_direction(space, opposite_direction(space, center, rng), delta, rng);
      const double s = cfg.sigma * (1.0 - uniform(rng, 0.0, 1.0));
      const auto [x, travelled] = shoot(space, away, s);
      const double dx = distance(space, xt, x);
      if (!(travelled > space.tolerance()) || !(dx > space.tolerance()) || !(dx < cfg.sigma)) {
        ++skipped;
        continue;
      }
      const Direction back_at_tau = log_direction(space, xt, x).direction;
      if (direction_angle(space, back_at_tau, center) < kPi - delta - 1e-12) {
        ++skipped;
        continue;
      }
      const Direction vx = log_direction(space, x, xt).direction;
      const Direction gamma = perturb_direction(space, vx, delta, rng);
      record(cat0_decrease_residual(space, image, tau, T, gamma, eps), x);
    }
  }
  if (skipped > 0) rep.note = std::to_string(skipped) + " basepoint draws left the admissible set";
  return rep.finish();
}

double euclidean_constant(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  const RadiusConstants rc = radius_constants(n);
  const double a = sphere_cap_area(n, 2.0 * std::asin(rc.eps_n / 2.0));
  return sphere_area(n) / (a * rc.eps_n);
}

namespace {

BoundReport finish_bound(BoundReport r) {
  if (r.bound_value > 0.0)
    r.ratio = r.length / r.bound_value;
  else
    r.ratio = r.length > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  r.pass = r.claimed && r.ratio <= 1.0 + r.tolerance;
  return r;
}

BoundReport base_report(const Curve& curve, std::string name, double tol) {
  BoundReport r;
  r.bound = std::move(name);
  r.space = curve.space().label();
  r.length = curve_length(curve);
  r.diam = curve_diameter(curve);
  r.tolerance = tol;
  return r;
}

std::vector<std::pair<Point, Point>> curve_segments(const Curve& curve) {
  std::vector<std::pair<Point, Point>> segs;
  if (curve.mode() == CurveMode::GeodesicInterpolated)
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) segs.emplace_back(curve[i].p, curve[i + 1].p);
  return segs;
}

// Refinement level making consecutive image points at most `spacing` apart.
int levels_for(const Curve& curve, double spacing) {
  if (curve.mode() == CurveMode::Discrete) return 0;
  double longest = 0.0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i)
    longest = std::max(longest, distance(curve.space(), curve[i].p, curve[i + 1].p));
  int levels = 0;
  while (levels < 12 && longest / (1 << levels) > spacing) ++levels;
  return levels;
}

}  // namespace

BoundReport euclidean_length_bound(const Curve& curve, const WidthConfig& width, double tol, int max_dim) {
  const auto* es = curve.space().as<EuclideanSpace>();
  if (!es) throw std::invalid_argument("euclidean bound needs a Euclidean curve");
  if (es->dim > max_dim) throw std::invalid_argument("dimension above the configured limit for the euclidean bound");
  BoundReport r = base_report(curve, "euclidean", tol);
  const auto pts = curve.points();
  const WidthReport w = mean_width(curve.space(), pts, {}, width);
  const RadiusConstants rc = radius_constants(es->dim);
  const double a = sphere_cap_area(es->dim, 2.0 * std::asin(rc.eps_n / 2.0));
  const double C = sphere_area(es->dim) / (a * rc.eps_n);
  r.width = w.mean_width;
  r.width_std_error = w.std_error;
  r.constants = {{"n", es->dim}, {"eps_n", rc.eps_n}, {"a_n", a}, {"A", sphere_area(es->dim)}, {"C_n", C}};
  r.bound_value = C * w.mean_width;
  if (w.method != "quadrature") r.note = "width by Monte Carlo";
  return finish_bound(r);
}

BoundReport tree_length_bound(const Curve& curve, double tol) {
  const Space& space = curve.space();
  int lambda = 0;
  if (const auto* ts = space.as<TreeSpace>())
    lambda = ts->graph->max_degree();
  else if (const auto* sp = space.as<SpiderSpace>())
    lambda = sp->k();
  else
    throw std::invalid_argument("tree bound needs a tree or spider curve");
  BoundReport r = base_report(curve, "tree", tol);
  const auto pts = curve.points();
  const auto segs = curve_segments(curve);
  const double h1 = hausdorff_measure_neighborhood(space, pts, 1.0, 1, segs);
  r.constants = {{"Lambda", lambda}, {"H1", h1}, {"factor", 6.0}};
  r.bound_value = 6.0 * lambda * h1 * r.diam;
  return finish_bound(r);
}

BoundReport book_length_bound(const Curve& curve, double tol) {
  const auto* bs = curve.space().as<BookSpace>();
  if (!bs) throw std::invalid_argument("book bound needs a book curve");
  BoundReport r = base_report(curve, "book", tol);
  const auto pts = curve.points();
  const auto segs = curve_segments(curve);
  const double h2 = hausdorff_measure_neighborhood(curve.space(), pts, 1.0, 2, segs);
  const double C = 54.0 * std::sqrt(2.0) * kPi;
  r.constants = {{"k", bs->sheets}, {"C", C}, {"H2", h2}};
  r.bound_value = C * bs->sheets * h2 * r.diam;
  return finish_bound(r);
}

BoundReport generic_cat0_bound(const Curve& curve, const RadiusConstants& rc, const Region& region, double tol) {
  BoundReport r = base_report(curve, "generic", tol);
  const Space& space = curve.space();
  r.constants = {{"m", static_cast<double>(rc.m_bound)}, {"eps", rc.eps_bold}, {"a", rc.a_ratio},
                 {"b", rc.b_ratio}, {"sigma", rc.sigma}};
  if (!(rc.a_ratio > 0.0) || !(rc.b_ratio > 0.0) || !(rc.eps_bold > 0.0))
    throw std::invalid_argument("constants a, b, eps must be positive");
  const auto pts = image_points(curve, 0, levels_for(curve, rc.sigma));
  for (const auto& p : pts) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : region.core) best = std::min(best, distance(space, p, c));
    if (best + rc.sigma > region.radius + 1e-12) {
      r.claimed = false;
      r.note = "sigma-neighborhood of the image leaves the region; no bound claimed";
      r.bound_value = std::numeric_limits<double>::quiet_NaN();
      r.ratio = std::numeric_limits<double>::quiet_NaN();
      r.pass = false;
      return r;
    }
  }
  r.bound_value = 2.0 / (rc.a_ratio * rc.b_ratio * rc.eps_bold) * r.diam;
  r.note = rc.note;
  return finish_bound(r);
}

BoundReport generic_cat0_bound(const Curve& curve, double sigma, double tol) {
  const Space& space = curve.space();
  Region region;
  if (space.as<TreeSpace>() || space.as<SpiderSpace>() || space.as<BookSpace>()) {
    region.core = image_points(curve, 0, levels_for(curve, sigma));
    region.radius = sigma;
  } else {
    const Point c = curve[0].p;
    double far = 0.0;
    for (const auto& p : image_points(curve, 0, levels_for(curve, sigma))) far = std::max(far, distance(space, c, p));
    region.core = {c};
    region.radius = far + sigma;
  }
  return generic_cat0_bound(curve, estimate_condition_constants(space, region, sigma), region, tol);
}

std::vector<BoundReport> applicable_bounds(const Curve& curve, const WidthConfig& width, double tol) {
  std::vector<BoundReport> out;
  const Space& space = curve.space();
  if (const auto* es = space.as<EuclideanSpace>()) {
    if (es->dim <= 4) out.push_back(euclidean_length_bound(curve, width, tol));
  } else if (space.as<TreeSpace>() || space.as<SpiderSpace>()) {
    out.push_back(tree_length_bound(curve, tol));
  } else if (space.as<BookSpace>()) {
    out.push_back(book_length_bound(curve, tol));
  }
  const auto* es = space.as<EuclideanSpace>();
  if (!space.as<ProductSpace>() && !(es && es->dim > 3)) out.push_back(generic_cat0_bound(curve, 1.0, tol));
  return out;
}

ViolationReport telescoping_check(const Curve& curve, const WidthConfig& width, double tol) {
  const auto* es = curve.space().as<EuclideanSpace>();
  if (!es) throw std::invalid_argument("telescoping check needs a Euclidean curve");
  ViolationReport rep;
  rep.check = "telescoping";
  rep.tolerance = tol;
  const RadiusConstants rc = radius_constants(es->dim);
  const double a = sphere_cap_area(es->dim, 2.0 * std::asin(rc.eps_n / 2.0));
  const auto pts = curve.points();
  const WidthReport w = mean_width(curve.space(), pts, {}, width);
  const double lhs = a / sphere_area(es->dim) * rc.eps_n * curve_length(curve);
  const double v = lhs - w.mean_width - 3.0 * w.std_error;
  if (rep.observe(v)) rep.set_witness(v, {curve.start_time(), curve.end_time()}, {});
  return rep.finish();
}

}  // namespace sccurve
