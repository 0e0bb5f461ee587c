#include "sccurve/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sccurve/directions.hpp"
#include "sccurve/metric.hpp"
#include "sccurve/random.hpp"

namespace sccurve {

std::vector<Sample> check_samples(const Curve& curve, int densify_levels) {
  if (curve.mode() == CurveMode::GeodesicInterpolated && densify_levels > 0) return densify(curve, densify_levels);
  return curve.samples();
}

ViolationReport is_self_contracted(const Curve& curve, const SamplingConfig& cfg) {
  ViolationReport rep;
  rep.check = "self_contracted";
  rep.tolerance = cfg.tol;
  const Space& space = curve.space();
  const auto samples = check_samples(curve, cfg.densify_levels);
  const std::size_t n = samples.size();
  auto witness = [&](double v, const Sample& a, const Sample& b, const Sample& c) {
    rep.set_witness(v, {a.t, b.t, c.t}, {a.p, b.p, c.p});
  };
  Rng rng(cfg.seed);
  if (static_cast<long long>(n) <= cfg.exhaustive_limit) {
    std::vector<double> d(n);
    for (std::size_t m = 2; m < n; ++m) {
      for (std::size_t k = 0; k < m; ++k) d[k] = distance(space, samples[k].p, samples[m].p);
      std::size_t arg = 0;
      for (std::size_t l = 1; l < m; ++l) {
        const double v = d[l] - d[arg];
        if (rep.observe(v)) witness(v, samples[arg], samples[l], samples[m]);
        if (d[l] < d[arg]) arg = l;
      }
    }
    if (n < 3) rep.note = "fewer than three samples";
  } else {
    const long long draws = cfg.random_triples > 0 ? cfg.random_triples : 1000000;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (long long i = 0; i < draws; ++i) {
      std::size_t idx[3] = {pick(rng), pick(rng), pick(rng)};
      std::sort(idx, idx + 3);
      if (idx[0] == idx[1] || idx[1] == idx[2]) continue;
      const auto& a = samples[idx[0]];
      const auto& b = samples[idx[1]];
      const auto& c = samples[idx[2]];
      const double v = distance(space, b.p, c.p) - distance(space, a.p, c.p);
      if (rep.observe(v)) witness(v, a, b, c);
    }
    rep.note = "random sample triples";
  }
  if (cfg.random_triples > 0 && curve.size() > 1) {
    const double t0 = curve.start_time(), t1 = curve.end_time();
    for (long long i = 0; i < cfg.random_triples; ++i) {
      double t[3] = {uniform(rng, t0, t1), uniform(rng, t0, t1), uniform(rng, t0, t1)};
      std::sort(t, t + 3);
      if (t[0] == t[1] || t[1] == t[2]) continue;
      const Sample a{t[0], curve.at(t[0])}, b{t[1], curve.at(t[1])}, c{t[2], curve.at(t[2])};
      const double v = distance(space, b.p, c.p) - distance(space, a.p, c.p);
      if (rep.observe(v)) witness(v, a, b, c);
    }
  }
  return rep.finish();
}

namespace {

std::size_t sample_index(const Curve& curve, double T) {
  for (std::size_t i = 0; i < curve.size(); ++i)
    if (std::abs(curve[i].t - T) <= 1e-12 * (1.0 + std::abs(T))) return i;
  throw std::invalid_argument("T is not a sample time of the curve");
}

}  // namespace

ViolationReport tail_monotonicity(const Curve& curve, double T, double tol) {
  ViolationReport rep;
  rep.check = "tail_monotonicity";
  rep.tolerance = tol;
  const std::size_t m = sample_index(curve, T);
  const Space& space = curve.space();
  double best = 0.0;
  std::size_t arg = 0;
  for (std::size_t l = 0; l <= m; ++l) {
    const double d = distance(space, curve[l].p, curve[m].p);
    if (l > 0) {
      const double v = d - best;
      if (rep.observe(v)) rep.set_witness(v, {curve[arg].t, curve[l].t, curve[m].t}, {curve[arg].p, curve[l].p, curve[m].p});
    }
    if (l == 0 || d < best) {
      best = d;
      arg = l;
    }
  }
  return rep.finish();
}

ViolationReport stationarity_check(const Curve& curve, double tol) {
  ViolationReport rep;
  rep.check = "stationarity";
  rep.tolerance = tol;
  const Space& space = curve.space();
  const std::size_t n = curve.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t last = i;
    for (std::size_t k = n; k-- > i + 1;) {
      if (same_point(space, curve[i].p, curve[k].p)) {
        last = k;
        break;
      }
    }
    for (std::size_t j = i + 1; j < last; ++j) {
      const double v = distance(space, curve[i].p, curve[j].p);
      if (rep.observe(v))
        rep.set_witness(v, {curve[i].t, curve[j].t, curve[last].t}, {curve[i].p, curve[j].p, curve[last].p});
    }
  }
  return rep.finish();
}

ViolationReport reparam_preserves(const Curve& curve, const std::function<double(double)>& phi,
                                  const std::vector<double>& new_times, const SamplingConfig& cfg) {
  if (new_times.empty()) throw std::invalid_argument("reparametrization needs sample times");
  std::vector<Sample> samples;
  double prev = -std::numeric_limits<double>::infinity();
  for (double s : new_times) {
    const double t = phi(s);
    if (t < prev) throw std::invalid_argument("time map is not non-decreasing");
    if (t < curve.start_time() || t > curve.end_time())
      throw std::invalid_argument("time map leaves the curve's sampled range");
    prev = t;
    samples.push_back({s, curve.at(t)});
  }
  const bool original = is_self_contracted(curve, cfg).pass;
  ViolationReport rep = is_self_contracted(Curve(curve.space(), std::move(samples), CurveMode::Discrete), cfg);
  rep.check = "reparam_preserves";
  rep.note = original ? "original curve self-contracted" : "original curve not self-contracted";
  return rep;
}

std::optional<double> angle_estimate_check(const Curve& curve, std::size_t tau, std::size_t t1, std::size_t t2) {
  if (!(tau < t1 && tau < t2) || t1 >= curve.size() || t2 >= curve.size())
    throw std::invalid_argument("angle estimate needs tau before both sample indices");
  const Space& space = curve.space();
  const Point& x = curve[tau].p;
  if (same_point(space, x, curve[t1].p) || same_point(space, x, curve[t2].p)) return std::nullopt;
  const auto a = log_direction(space, x, curve[t1].p);
  const auto b = log_direction(space, x, curve[t2].p);
  return direction_angle(space, a.direction, b.direction);
}

ViolationReport angle_estimate_scan(const Curve& curve, long long max_triples, std::uint64_t seed, double tol) {
  ViolationReport rep;
  rep.check = "angle_estimate";
  rep.tolerance = tol;
  const Space& space = curve.space();
  const std::size_t n = curve.size();
  const double half_pi = std::numbers::pi / 2;
  const long long total = static_cast<long long>(n) * (n > 0 ? n - 1 : 0) * (n > 1 ? n - 2 : 0) / 6;
  auto score = [&](std::size_t tau, std::size_t i, std::size_t j, const Direction& a, const Direction& b) {
    const double v = direction_angle(space, a, b) - half_pi;
    if (rep.observe(v))
      rep.set_witness(v, {curve[tau].t, curve[i].t, curve[j].t}, {curve[tau].p, curve[i].p, curve[j].p});
  };
  if (total <= max_triples) {
    for (std::size_t tau = 0; tau + 2 < n; ++tau) {
      std::vector<std::optional<Direction>> dirs(n);
      for (std::size_t i = tau + 1; i < n; ++i)
        if (!same_point(space, curve[tau].p, curve[i].p))
          dirs[i] = log_direction(space, curve[tau].p, curve[i].p).direction;
      for (std::size_t i = tau + 1; i < n; ++i) {
        if (!dirs[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j)
          if (dirs[j]) score(tau, i, j, *dirs[i], *dirs[j]);
      }
    }
  } else {
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (long long s = 0; s < max_triples; ++s) {
      std::size_t idx[3] = {pick(rng), pick(rng), pick(rng)};
      std::sort(idx, idx + 3);
      if (idx[0] == idx[1] || idx[1] == idx[2]) continue;
      const auto r = angle_estimate_check(curve, idx[0], idx[1], idx[2]);
      if (!r) continue;
      const double v = *r - half_pi;
      if (rep.observe(v))
        rep.set_witness(v, {curve[idx[0]].t, curve[idx[1]].t, curve[idx[2]].t},
                        {curve[idx[0]].p, curve[idx[1]].p, curve[idx[2]].p});
    }
  }
  return rep.finish();
}

ViolationReport ball_confinement_check(const Curve& curve, const Point& x, double r, double tol) {
  if (!(r > 0.0)) throw std::invalid_argument("ball radius must be positive");
  ViolationReport rep;
  rep.check = "ball_confinement";
  rep.tolerance = tol;
  const Space& space = curve.space();
  std::vector<double> d(curve.size());
  std::optional<std::size_t> first, last;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    d[i] = distance(space, x, curve[i].p);
    if (d[i] <= r) {
      if (!first) first = i;
      last = i;
    }
  }
  if (!first) return rep.finish();
  for (std::size_t k = *first + 1; k < *last; ++k) {
    const double v = d[k] - 3.0 * r;
    if (rep.observe(v)) rep.set_witness(v, {curve[*first].t, curve[k].t, curve[*last].t},
                                        {curve[*first].p, curve[k].p, curve[*last].p});
  }
  return rep.finish();
}

ViolationReport tT_check(const Curve& curve, double tol) {
  ViolationReport rep;
  rep.check = "tT";
  rep.tolerance = tol;
  const Space& space = curve.space();
  const std::size_t n = curve.size();
  for (std::size_t tau = 0; tau + 1 < n; ++tau) {
    double best = -1.0;
    std::size_t argT = tau + 1;
    for (std::size_t t = tau + 1; t < n; ++t) {
      const double d = distance(space, curve[t].p, curve[tau].p);
      if (d > best) {
        best = d;
        argT = t;
      }
      const double v = best / 2.0 - d;
      if (rep.observe(v))
        rep.set_witness(v, {curve[tau].t, curve[argT].t, curve[t].t}, {curve[tau].p, curve[argT].p, curve[t].p});
    }
  }
  return rep.finish();
}

double cosine_identity_residual(const Space& space, const Point& x, const Point& p, const Point& q) {
  const double a = distance(space, x, p);
  const double b = distance(space, x, q);
  const double c = distance(space, p, q);
  const double at_x = comparison_angle_from_sides(a, b, c);
  const double at_p = comparison_angle_from_sides(a, c, b);
  return std::abs(b * std::cos(at_x) + c * std::cos(at_p) - a);
}

double evi_residual(const Space& space, const ObjectiveFn& f, const Point& xi_t, const Point& xi_th, double h,
                    const Point& y) {
  if (!f.convex()) throw std::invalid_argument("EVI residual needs a convex objective");
  if (!(h > 0.0)) throw std::invalid_argument("EVI step must be positive");
  const double a = distance(space, xi_th, y);
  const double b = distance(space, xi_t, y);
  return (a * a - b * b) / (2.0 * h) + f(xi_t) - f(y);
}

double evi_residual(const ObjectiveFn& f, const Curve& curve, std::size_t i, const Point& y) {
  if (i + 1 >= curve.size()) throw std::invalid_argument("EVI needs a following sample");
  return evi_residual(curve.space(), f, curve[i].p, curve[i + 1].p, curve[i + 1].t - curve[i].t, y);
}

ViolationReport contraction_check(const Space& space, const ObjectiveFn& f, const GradientCurveRun& run1,
                                  const GradientCurveRun& run2, double tol) {
  if (run1.taus.size() != run2.taus.size()) throw std::invalid_argument("runs have different schedules");
  for (std::size_t k = 0; k < run1.taus.size(); ++k)
    if (run1.taus[k] != run2.taus[k]) throw std::invalid_argument("runs have different schedules");
  ViolationReport rep;
  rep.check = "contraction";
  rep.tolerance = tol;
  const std::size_t n = std::min(run1.points.size(), run2.points.size());
  double best = 0.0;
  std::size_t arg = 0;
  double t = 0.0, t_arg = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) t += run1.taus[k - 1];
    const double d = distance(space, run1.points[k], run2.points[k]);
    if (k > 0) {
      const double v = d - best;
      if (rep.observe(v))
        rep.set_witness(v, {t_arg, t}, {run1.points[arg], run2.points[arg], run1.points[k], run2.points[k]});
    }
    if (k == 0 || d < best) {
      best = d;
      arg = k;
      t_arg = t;
    }
  }
  rep.finish();
  if (!f.convex()) {
    rep.note = rep.pass ? "informational (objective not convex)" : "informational (objective not convex): increase seen";
    rep.pass = true;
  }
  return rep;
}

}  // namespace sccurve
