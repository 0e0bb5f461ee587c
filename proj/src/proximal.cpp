#include "sccurve/proximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sccurve/directions.hpp"
#include "sccurve/metric.hpp"
#include "sccurve/random.hpp"

namespace sccurve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

// Golden-section search of g on [a, b]; returns (argmin, value).
template <class G>
std::pair<double, double> golden(G&& g, double a, double b, int steps) {
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double gc = g(c), gd = g(d);
  for (int i = 0; i < steps && b - a > 0.0; ++i) {
    if (gc <= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kGolden * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kGolden * (b - a);
      gd = g(d);
    }
  }
  return gc <= gd ? std::make_pair(c, gc) : std::make_pair(d, gd);
}

// Grid of n points on [a, b] followed by golden refinement around every grid
// local minimum (the `keep` lowest ones). Returns the refined (t, value) pairs
// together with the interval ends.
template <class G>
std::vector<std::pair<double, double>> scan_1d(G&& g, double a, double b, int n, int steps, int keep = 12) {
  std::vector<std::pair<double, double>> out;
  if (!(b > a)) {
    out.push_back({a, g(a)});
    return out;
  }
  n = std::max(n, 3);
  std::vector<double> t(n), v(n);
  for (int i = 0; i < n; ++i) {
    t[i] = i + 1 == n ? b : a + (b - a) * i / (n - 1);
    v[i] = g(t[i]);
  }
  out.push_back({t.front(), v.front()});
  out.push_back({t.back(), v.back()});
  std::vector<int> minima;
  for (int i = 0; i < n; ++i) {
    const bool left = i == 0 || v[i] <= v[i - 1];
    const bool right = i + 1 == n || v[i] <= v[i + 1];
    if (left && right) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(), [&](int i, int j) { return v[i] < v[j]; });
  if (static_cast<int>(minima.size()) > keep) minima.resize(keep);
  for (int i : minima) {
    const double lo = t[std::max(i - 1, 0)];
    const double hi = t[std::min(i + 1, n - 1)];
    auto r = golden(g, lo, hi, steps);
    if (r.second <= v[i]) out.push_back(r);
    else out.push_back({t[i], v[i]});
  }
  return out;
}

// Nelder-Mead on R^n; infeasible points return +inf.
template <class G>
std::pair<Eigen::VectorXd, double> nelder_mead(G&& g, Eigen::VectorXd x0, double step, int max_iter) {
  const int n = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> s(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (int i = 0; i < n; ++i) s[i + 1][i] += step;
  for (int i = 0; i <= n; ++i) fv[i] = g(s[i]);
  std::vector<int> idx(n + 1);
  for (int it = 0; it < max_iter; ++it) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    double size = 0.0;
    for (int i = 1; i <= n; ++i) size = std::max(size, (s[idx[i]] - s[idx[0]]).lpNorm<Eigen::Infinity>());
    if (size <= 1e-14 * (1.0 + s[idx[0]].lpNorm<Eigen::Infinity>())) break;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) c += s[idx[i]];
    c /= n;
    const int w = idx[n];
    const Eigen::VectorXd xr = c + (c - s[w]);
    const double fr = g(xr);
    if (fr < fv[idx[0]]) {
      const Eigen::VectorXd xe = c + 2.0 * (c - s[w]);
      const double fe = g(xe);
      if (fe < fr) {
        s[w] = xe;
        fv[w] = fe;
      } else {
        s[w] = xr;
        fv[w] = fr;
      }
    } else if (fr < fv[idx[n - 1]]) {
      s[w] = xr;
      fv[w] = fr;
    } else {
      const bool outside = fr < fv[w];
      const Eigen::VectorXd xc = outside ? Eigen::VectorXd(c + 0.5 * (xr - c)) : Eigen::VectorXd(c + 0.5 * (s[w] - c));
      const double fc = g(xc);
      if (fc < (outside ? fr : fv[w])) {
        s[w] = xc;
        fv[w] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          const int j = idx[i];
          s[j] = s[idx[0]] + 0.5 * (s[j] - s[idx[0]]);
          fv[j] = g(s[j]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  return {s[best], fv[best]};
}

struct Candidate {
  Point z;
  double value;
  bool trusted;
};

class ResolventSolver {
 public:
  ResolventSolver(const ObjectiveFn& f, const Space& space, const Point& x, double tau, const SolverConfig& cfg)
      : f_(f), space_(space), x_(canonical(space, x)), tau_(tau), cfg_(cfg) {}

  double F(const Point& z) {
    ++evals_;
    if (!f_.in_domain(z)) return kInf;
    const double d = distance(space_, x_, z);
    const double v = f_(z) + d * d / (2.0 * tau_);
    return std::isnan(v) ? kInf : v;
  }

  void add(const Point& z, bool trusted = false) {
    const Point c = canonical(space_, z);
    const double v = F(c);
    if (std::isfinite(v)) cands_.push_back({c, v, trusted});
  }

  ResolventResult run();

 private:
  bool probe_unbounded(double& min_seen);
  void line_search(const Point& target);
  void search_euclid(double R);
  void search_planar(const std::function<std::optional<Point>(const Eigen::VectorXd&)>& map,
                     const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, const Eigen::VectorXd& center, double R);
  void search_tree(double R);
  void search_spider(double R);
  void search_book(double R);
  bool same_basin(const Candidate& a, const Candidate& b);

  const ObjectiveFn& f_;
  const Space& space_;
  Point x_;
  double tau_;
  SolverConfig cfg_;
  long long evals_ = 0;
  std::vector<Candidate> cands_;
};

bool ResolventSolver::probe_unbounded(double& min_seen) {
  std::vector<Direction> dirs;
  if (const auto* es = space_.as<EuclideanSpace>()) {
    for (int i = 0; i < es->dim; ++i)
      for (double sgn : {1.0, -1.0}) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(es->dim);
        v[i] = sgn;
        dirs.push_back(Direction{x_, EuclidDir{v}});
      }
  }
  if (!space_.as<TreeSpace>() && !space_.as<SpiderSpace>()) {
    Rng rng(0x5eedULL);
    for (int i = 0; i < 16; ++i) dirs.push_back(random_direction(space_, x_, rng));
  }
  for (const auto& dir : dirs) {
    for (double t = 1.0; t <= cfg_.unbounded_radius; t *= 2.0) {
      const Point z = shoot(space_, dir, t).first;
      const auto coords = flat_coordinates(z);
      if (!std::all_of(coords.begin(), coords.end(), [](double c) { return std::isfinite(c); })) break;
      if (!f_.in_domain(z)) break;
      const double fz = f_(z);
      min_seen = std::min(min_seen, fz);
      if (F(z) < cfg_.unbounded_value || fz < cfg_.unbounded_value) return true;
    }
  }
  return false;
}

void ResolventSolver::line_search(const Point& target) {
  const double D = distance(space_, x_, target);
  if (!(D > 0.0)) return;
  auto g = [&](double s) { return F(geodesic_point(space_, x_, target, s)); };
  for (const auto& [s, v] : scan_1d(g, 0.0, 1.0, 65, cfg_.golden_steps, 4))
    if (std::isfinite(v)) add(geodesic_point(space_, x_, target, s));
}

void ResolventSolver::search_planar(const std::function<std::optional<Point>(const Eigen::VectorXd&)>& map,
                                    const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                                    const Eigen::VectorXd& center, double R) {
  const int n = static_cast<int>(lo.size());
  auto g = [&](const Eigen::VectorXd& u) {
    for (int i = 0; i < n; ++i)
      if (u[i] < lo[i] || u[i] > hi[i]) return kInf;
    const auto p = map(u);
    return p ? F(*p) : kInf;
  };
  std::vector<std::pair<double, Eigen::VectorXd>> starts;
  auto consider = [&](const Eigen::VectorXd& u) {
    const double v = g(u);
    if (std::isfinite(v)) starts.push_back({v, u});
  };
  consider(center);
  if (n <= 3) {
    const int m = n == 1 ? cfg_.grid_1d : (n == 2 ? cfg_.grid_2d : 17);
    std::vector<int> ctr(n, 0);
    while (true) {
      Eigen::VectorXd u(n);
      for (int i = 0; i < n; ++i) u[i] = lo[i] + (hi[i] - lo[i]) * ctr[i] / (m - 1);
      consider(u);
      int k = 0;
      while (k < n && ++ctr[k] == m) ctr[k++] = 0;
      if (k == n) break;
    }
  } else {
    Rng rng(0xabcdefULL);
    for (int s = 0; s < 2000; ++s) {
      Eigen::VectorXd u(n);
      for (int i = 0; i < n; ++i) u[i] = uniform(rng, lo[i], hi[i]);
      consider(u);
    }
  }
  std::sort(starts.begin(), starts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  const int n_starts = std::min<int>(8, static_cast<int>(starts.size()));
  const double step = std::max(R, 1e-12) / std::max(4, cfg_.grid_2d / 2);
  for (int i = 0; i < n_starts; ++i) {
    auto [u, v] = nelder_mead(g, starts[i].second, step, cfg_.nelder_mead_iters);
    if (std::isfinite(v)) {
      if (auto p = map(u)) add(*p);
    }
  }
}

void ResolventSolver::search_euclid(double R) {
  const auto& xv = x_.as<EuclidCoord>()->x;
  const int n = static_cast<int>(xv.size());
  if (n == 1) {
    double a = xv[0] - R, b = xv[0] + R;
    if (f_.interval) {
      a = std::max(a, f_.interval->first);
      b = std::min(b, f_.interval->second);
      for (double e : {f_.interval->first, f_.interval->second})
        if (std::abs(e - xv[0]) <= R) add(Point::euclid({e}));
    }
    auto g = [&](double t) { return F(Point::euclid({t})); };
    for (const auto& [t, v] : scan_1d(g, a, b, cfg_.grid_1d, cfg_.golden_steps))
      if (std::isfinite(v)) add(Point::euclid({t}));
    return;
  }
  Eigen::VectorXd lo = xv.array() - R, hi = xv.array() + R;
  search_planar([](const Eigen::VectorXd& u) { return std::optional<Point>(Point::euclid(u)); }, lo, hi, xv, R);
}

void ResolventSolver::search_tree(double R) {
  const auto& g = *space_.as<TreeSpace>()->graph;
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    const double du = distance(space_, x_, tree_vertex_point(g, ed.u));
    const double dv = distance(space_, x_, tree_vertex_point(g, ed.v));
    const bool on_edge = x_.as<TreeCoord>()->edge == e;
    if (!on_edge && std::min(du, dv) > R) continue;
    auto h = [&](double o) { return F(Point::tree(e, o)); };
    const int n = std::clamp(static_cast<int>(std::ceil(ed.length / std::max(R, 1e-12) * 256)), 33, cfg_.grid_1d);
    for (const auto& [o, v] : scan_1d(h, 0.0, ed.length, n, cfg_.golden_steps, 6))
      if (std::isfinite(v)) add(Point::tree(e, o));
  }
}

void ResolventSolver::search_spider(double R) {
  const auto& sp = *space_.as<SpiderSpace>();
  for (int l = 0; l < sp.k(); ++l) {
    auto h = [&](double r) { return F(Point::spider(l, r)); };
    const int n = std::clamp(static_cast<int>(std::ceil(sp.legs[l] / std::max(R, 1e-12) * 256)), 33, cfg_.grid_1d);
    for (const auto& [r, v] : scan_1d(h, 0.0, sp.legs[l], n, cfg_.golden_steps, 6))
      if (std::isfinite(v)) add(Point::spider(l, r));
  }
}

void ResolventSolver::search_book(double R) {
  const auto& bs = *space_.as<BookSpace>();
  const auto& c = *x_.as<BookCoord>();
  for (int j = 0; j < bs.sheets; ++j) {
    const double bt = (c.sheet == j || c.b == 0.0) ? c.b : -c.b;
    if (bt + R <= 0.0) continue;
    Eigen::VectorXd lo(2), hi(2), ctr(2);
    lo << c.a - R, 0.0;
    hi << c.a + R, bt + R;
    ctr << c.a, std::max(bt, 0.0);
    search_planar(
        [j](const Eigen::VectorXd& u) { return std::optional<Point>(Point::book(j, u[0], std::max(u[1], 0.0))); },
        lo, hi, ctr, R);
  }
  auto h = [&](double a) { return F(Point::book(0, a, 0.0)); };
  for (const auto& [a, v] : scan_1d(h, c.a - R, c.a + R, cfg_.grid_1d, cfg_.golden_steps))
    if (std::isfinite(v)) add(Point::book(0, a, 0.0));
}

// Two near-optimal candidates belong to one basin unless F rises above both
// somewhere on the geodesic between them.
bool ResolventSolver::same_basin(const Candidate& a, const Candidate& b) {
  const double top = std::max(a.value, b.value);
  const double slack = 1e-12 * (1.0 + std::abs(top));
  for (int i = 1; i < 32; ++i) {
    const double v = F(geodesic_point(space_, a.z, b.z, i / 32.0));
    if (v > top + slack) return false;
  }
  return true;
}

ResolventResult ResolventSolver::run() {
  ResolventResult res;
  if (!f_.in_domain(x_)) throw std::invalid_argument("resolvent base point outside the objective's domain");
  double min_seen = f_(x_);
  if (!f_.lower_bound && probe_unbounded(min_seen)) {
    res.value = -kInf;
    res.status = ResolventStatus::Unbounded;
    res.diagnostic = "objective decreases without bound along a probe ray";
    res.evaluations = evals_;
    return res;
  }
  const double floor = f_.lower_bound ? *f_.lower_bound : min_seen;
  const double R = std::sqrt(2.0 * tau_ * std::max(0.0, f_(x_) - floor)) * (1.0 + 1e-9) + 1e-12;
  if (!f_.lower_bound) res.diagnostic = "no declared lower bound; search radius taken from probe minimum";

  add(x_);
  if (f_.hints)
    for (const auto& h : f_.hints(space_, x_, tau_)) add(h, true);
  for (const auto& a : f_.anchors) {
    if (!f_.in_domain(a)) continue;
    add(a);
    line_search(a);
  }
  if (space_.as<EuclideanSpace>()) {
    search_euclid(R);
  } else if (space_.as<HyperbolicPlane>()) {
    const Eigen::Vector3d xv = x_.as<HyperCoord>()->x;
    const auto [e1, e2] = hyperbolic_frame(xv);
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(2, -R), hi = Eigen::VectorXd::Constant(2, R);
    search_planar(
        [&, e1 = e1, e2 = e2](const Eigen::VectorXd& u) -> std::optional<Point> {
          const double t = u.norm();
          if (t == 0.0) return x_;
          const Eigen::Vector3d v = (u[0] * e1 + u[1] * e2) / t;
          const Eigen::Vector3d p = std::cosh(t) * xv + std::sinh(t) * v;
          return Point::hyper_lift(p[1], p[2]);
        },
        lo, hi, Eigen::VectorXd::Zero(2), R);
  } else if (space_.as<TreeSpace>()) {
    search_tree(R);
  } else if (space_.as<SpiderSpace>()) {
    search_spider(R);
  } else if (space_.as<BookSpace>()) {
    search_book(R);
  } else {
    throw std::invalid_argument("resolvent is not implemented for space " + space_.label());
  }

  if (cands_.empty()) {
    res.status = ResolventStatus::Empty;
    res.value = kInf;
    res.diagnostic = "no feasible candidate";
    res.evaluations = evals_;
    return res;
  }
  double best = kInf;
  for (const auto& c : cands_) best = std::min(best, c.value);
  // Near-optimal candidates, trusted first then by value.
  std::vector<Candidate> near;
  for (const auto& c : cands_)
    if (c.value <= best + cfg_.tie_tol) near.push_back(c);
  std::stable_sort(near.begin(), near.end(), [](const Candidate& a, const Candidate& b) {
    if (a.trusted != b.trusted) return a.trusted;
    return a.value < b.value;
  });
  std::vector<Candidate> reps;
  for (const auto& c : near) {
    bool merged = false;
    for (auto& r : reps) {
      if (distance(space_, r.z, c.z) <= cfg_.dedup_tol) {
        merged = true;
        break;
      }
    }
    if (!merged) reps.push_back(c);
  }
  // Collapse representatives that share a basin (keep the earlier, preferred one).
  std::vector<Candidate> distinct;
  for (const auto& r : reps) {
    bool merged = false;
    for (auto& d : distinct) {
      if (same_basin(d, r)) {
        if (!d.trusted && r.value < d.value) d = r;
        merged = true;
        break;
      }
    }
    if (!merged) distinct.push_back(r);
  }
  std::sort(distinct.begin(), distinct.end(), [&](const Candidate& a, const Candidate& b) {
    const double da = distance(space_, x_, a.z), db = distance(space_, x_, b.z);
    if (std::abs(da - db) > cfg_.dedup_tol) return da < db;
    return flat_coordinates(a.z) < flat_coordinates(b.z);
  });
  res.value = best;
  for (const auto& d : distinct) res.minimizers.push_back(d.z);
  res.status = distinct.size() == 1 ? ResolventStatus::Unique : ResolventStatus::MultipleTies;
  res.evaluations = evals_;
  return res;
}

}  // namespace

std::string status_label(ResolventStatus s) {
  switch (s) {
    case ResolventStatus::Unique:
      return "unique";
    case ResolventStatus::MultipleTies:
      return "multiple_ties";
    case ResolventStatus::Empty:
      return "empty";
    case ResolventStatus::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

ResolventResult resolvent(const ObjectiveFn& f, const Space& space, const Point& x, double tau,
                          const SolverConfig& cfg) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive and finite");
  if (f.convexity == ConvexityClass::LambdaConvex && f.lambda < 0.0 && !(tau < -1.0 / f.lambda))
    throw std::invalid_argument("tau must be below 1/(-lambda) for a lambda-convex objective with lambda < 0");
  ResolventSolver solver(f, space, x, tau, cfg);
  return solver.run();
}

double moreau_yosida(const ObjectiveFn& f, const Space& space, const Point& x, double tau, const SolverConfig& cfg) {
  return resolvent(f, space, x, tau, cfg).value;
}

GradientCurveRun discrete_gradient_curve(const ObjectiveFn& f, const Space& space, const Point& x0,
                                         const std::vector<double>& tau_schedule, const SolverConfig& cfg) {
  GradientCurveRun run;
  run.points.push_back(canonical(space, x0));
  run.values.push_back(f(run.points.back()));
  for (double tau : tau_schedule) {
    const auto res = resolvent(f, space, run.points.back(), tau, cfg);
    if (res.minimizers.empty()) {
      run.complete = false;
      run.diagnostic = "resolvent " + status_label(res.status) + " at step " + std::to_string(run.taus.size() + 1) +
                       (res.diagnostic.empty() ? "" : ": " + res.diagnostic);
      break;
    }
    run.points.push_back(res.minimizers.front());
    run.taus.push_back(tau);
    run.values.push_back(f(run.points.back()));
    run.statuses.push_back(res.status);
  }
  return run;
}

namespace {

std::vector<Sample> run_samples(const GradientCurveRun& run) {
  std::vector<Sample> samples;
  double t = 0.0;
  samples.push_back({0.0, run.points.front()});
  for (std::size_t k = 1; k < run.points.size(); ++k) {
    t += run.taus[k - 1];
    samples.push_back({t, run.points[k]});
  }
  return samples;
}

}  // namespace

Curve discrete_curve(const Space& space, const GradientCurveRun& run) {
  if (run.points.empty()) throw std::invalid_argument("empty run");
  return Curve(space, run_samples(run), CurveMode::Discrete);
}

Curve geodesic_interpolation(const Space& space, const GradientCurveRun& run) {
  if (run.points.empty()) throw std::invalid_argument("empty run");
  return Curve(space, run_samples(run), CurveMode::GeodesicInterpolated);
}

QuasiconvexityReport quasiconvexity_probe(const ObjectiveFn& f, const Space& space, int n_samples,
                                          std::uint64_t seed, double tol) {
  QuasiconvexityReport rep;
  rep.qc.check = "quasi_convexity";
  rep.qc.tolerance = tol;
  rep.lambda.check = "lambda_convexity";
  rep.lambda.tolerance = tol;
  const bool check_lambda = f.convexity != ConvexityClass::QuasiConvex;
  const double lambda = f.convexity == ConvexityClass::LambdaConvex ? f.lambda : 0.0;
  Rng rng(seed);
  auto sample = [&]() {
    if (f.interval) return Point::euclid({uniform(rng, f.interval->first, f.interval->second)});
    return random_point(space, rng, 2.0);
  };
  for (int i = 0; i < n_samples; ++i) {
    const Point x = sample();
    const Point y = sample();
    const double s = uniform(rng, 0.0, 1.0);
    const Point z = geodesic_point(space, x, y, s);
    const double fx = f(x), fy = f(y), fz = f(z);
    const double v = fz - std::max(fx, fy);
    if (rep.qc.observe(v)) rep.qc.set_witness(v, {s}, {x, y});
    if (check_lambda) {
      const double d = distance(space, x, y);
      const double rhs = (1.0 - s) * fx + s * fy - 0.5 * lambda * (1.0 - s) * s * d * d;
      const double w = fz - rhs;
      if (rep.lambda.observe(w)) rep.lambda.set_witness(w, {s}, {x, y});
    }
  }
  rep.qc.finish();
  rep.lambda.finish();
  return rep;
}

}  // namespace sccurve
