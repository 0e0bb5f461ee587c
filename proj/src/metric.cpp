#include "sccurve/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "detail/tree_path.hpp"

namespace sccurve {

namespace {

double hyper_distance(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  // |x-y|_M^2 = 4 sinh^2(d/2) on the hyperboloid; avoids arccosh cancellation.
  const Eigen::Vector3d diff = x - y;
  const double chord2 = std::max(0.0, minkowski(diff, diff));
  return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
}

double book_distance(const BookCoord& p, const BookCoord& q) {
  const double da = p.a - q.a;
  if (p.sheet == q.sheet || p.b == 0.0 || q.b == 0.0) return std::hypot(da, p.b - q.b);
  return std::hypot(da, p.b + q.b);
}

double spider_distance(const SpiderCoord& p, const SpiderCoord& q) {
  if (p.leg == q.leg) return std::abs(p.radius - q.radius);
  return p.radius + q.radius;
}

}  // namespace

double distance(const Space& space, const Point& p_in, const Point& q_in) {
  const Point p = canonical(space, p_in);
  const Point q = canonical(space, q_in);
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EuclideanSpace>) {
          return (p.as<EuclidCoord>()->x - q.as<EuclidCoord>()->x).norm();
        } else if constexpr (std::is_same_v<T, HyperbolicPlane>) {
          return hyper_distance(p.as<HyperCoord>()->x, q.as<HyperCoord>()->x);
        } else if constexpr (std::is_same_v<T, TreeSpace>) {
          return detail::tree_path(*s.graph, *p.as<TreeCoord>(), *q.as<TreeCoord>()).length;
        } else if constexpr (std::is_same_v<T, SpiderSpace>) {
          return spider_distance(*p.as<SpiderCoord>(), *q.as<SpiderCoord>());
        } else if constexpr (std::is_same_v<T, BookSpace>) {
          return book_distance(*p.as<BookCoord>(), *q.as<BookCoord>());
        } else {
          const auto& pc = p.as<ProductCoord>()->parts;
          const auto& qc = q.as<ProductCoord>()->parts;
          return std::hypot(distance(*s.left, pc[0], qc[0]), distance(*s.right, pc[1], qc[1]));
        }
      },
      space.kind());
}

bool same_point(const Space& space, const Point& p, const Point& q) {
  return distance(space, p, q) <= space.tolerance();
}

Point geodesic_point(const Space& space, const Point& x_in, const Point& y_in, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("geodesic parameter outside [0,1]");
  const Point x = canonical(space, x_in);
  const Point y = canonical(space, y_in);
  if (s == 0.0) return x;
  if (s == 1.0) return y;
  return std::visit(
      [&](const auto& sp) -> Point {
        using T = std::decay_t<decltype(sp)>;
        if constexpr (std::is_same_v<T, EuclideanSpace>) {
          const auto& a = x.as<EuclidCoord>()->x;
          const auto& b = y.as<EuclidCoord>()->x;
          return Point::euclid((1.0 - s) * a + s * b);
        } else if constexpr (std::is_same_v<T, HyperbolicPlane>) {
          const auto& a = x.as<HyperCoord>()->x;
          const auto& b = y.as<HyperCoord>()->x;
          const double d = hyper_distance(a, b);
          Eigen::Vector3d out;
          if (d < 1e-12) {
            out = (1.0 - s) * a + s * b;
          } else {
            out = (std::sinh((1.0 - s) * d) * a + std::sinh(s * d) * b) / std::sinh(d);
          }
          return Point::hyper_lift(out[1], out[2]);
        } else if constexpr (std::is_same_v<T, TreeSpace>) {
          const auto path = detail::tree_path(*sp.graph, *x.as<TreeCoord>(), *y.as<TreeCoord>());
          return canonical(space, detail::tree_path_point(path, s * path.length));
        } else if constexpr (std::is_same_v<T, SpiderSpace>) {
          const auto& a = *x.as<SpiderCoord>();
          const auto& b = *y.as<SpiderCoord>();
          if (a.leg == b.leg || a.radius == 0.0 || b.radius == 0.0) {
            // Both on one leg; the center belongs to every leg.
            const int leg = a.radius == 0.0 ? b.leg : a.leg;
            return canonical(space, Point::spider(leg, (1.0 - s) * a.radius + s * b.radius));
          }
          const double u = s * (a.radius + b.radius);
          if (u <= a.radius) return canonical(space, Point::spider(a.leg, a.radius - u));
          return canonical(space, Point::spider(b.leg, u - a.radius));
        } else if constexpr (std::is_same_v<T, BookSpace>) {
          const auto& a = *x.as<BookCoord>();
          const auto& b = *y.as<BookCoord>();
          if (a.sheet == b.sheet || a.b == 0.0 || b.b == 0.0) {
            const int sheet = a.b == 0.0 ? b.sheet : a.sheet;
            return canonical(space, Point::book(sheet, (1.0 - s) * a.a + s * b.a,
                                                std::max(0.0, (1.0 - s) * a.b + s * b.b)));
          }
          // Unfold b's sheet onto the lower half of a's plane and fold back.
          const double pa = (1.0 - s) * a.a + s * b.a;
          const double pb = (1.0 - s) * a.b - s * b.b;
          if (pb >= 0.0) return canonical(space, Point::book(a.sheet, pa, pb));
          return canonical(space, Point::book(b.sheet, pa, -pb));
        } else {
          const auto& xc = x.as<ProductCoord>()->parts;
          const auto& yc = y.as<ProductCoord>()->parts;
          return Point::product(geodesic_point(*sp.left, xc[0], yc[0], s),
                                geodesic_point(*sp.right, xc[1], yc[1], s));
        }
      },
      space.kind());
}

double diameter(const Space& space, std::span<const Point> points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::max(best, distance(space, points[i], points[j]));
  return best;
}

double comparison_angle_from_sides(double a, double b, double c) {
  const double num = std::max(0.0, (c - a + b) * (c + a - b));
  const double den = std::max(0.0, (a + b - c) * (a + b + c));
  return 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
}

double comparison_angle(const Space& space, const Point& x, const Point& y, const Point& z) {
  const double a = distance(space, x, y);
  const double b = distance(space, x, z);
  if (a <= space.tolerance() || b <= space.tolerance())
    throw std::invalid_argument("comparison angle at a degenerate vertex");
  return comparison_angle_from_sides(a, b, distance(space, y, z));
}

UpperAngle upper_angle(const Space& space, const Point& x, const Point& y, const Point& z,
                       std::span<const double> schedule, double monotone_tol) {
  std::vector<double> default_schedule;
  if (schedule.empty()) {
    for (int j = 1; j <= 20; ++j) default_schedule.push_back(std::ldexp(1.0, -j));
    schedule = default_schedule;
  }
  if (distance(space, x, y) <= space.tolerance() || distance(space, x, z) <= space.tolerance())
    throw std::invalid_argument("upper angle at a degenerate vertex");

  UpperAngle out;
  double prev_s = 2.0;
  for (double s : schedule) {
    if (!(s > 0.0 && s <= 1.0 && s < prev_s))
      throw std::invalid_argument("upper-angle schedule must decrease within (0,1]");
    prev_s = s;
    const Point ys = geodesic_point(space, x, y, s);
    const Point zs = geodesic_point(space, x, z, s);
    const double angle = comparison_angle_from_sides(distance(space, x, ys), distance(space, x, zs),
                                                     distance(space, ys, zs));
    if (!out.comparisons.empty() && angle > out.comparisons.back() + monotone_tol)
      throw std::runtime_error("comparison angles increase while shrinking: geometry bug");
    out.comparisons.push_back(angle);
  }
  const double last = out.comparisons.back();
  double limit = last;
  if (out.comparisons.size() >= 2) {
    // Curvature error is O(s^2): one Richardson step for halving schedules.
    const double prev = out.comparisons[out.comparisons.size() - 2];
    limit = std::clamp(last - (prev - last) / 3.0, 0.0, last);
  }
  out.angle = limit;
  return out;
}

double cat0_inequality_residual(const Space& space, const Point& x, const Point& y,
                                const Point& z, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("parameter outside [0,1]");
  const double dxy = distance(space, x, y);
  const double dxz = distance(space, x, z);
  const double dyz = distance(space, y, z);
  const double dxm = distance(space, x, geodesic_point(space, y, z, s));
  return (1.0 - s) * dxy * dxy + s * dxz * dxz - (1.0 - s) * s * dyz * dyz - dxm * dxm;
}

namespace {

// Opposite-side hinge of triangles (w,x,y) and (w,z,y) over a common base of
// length delta; returns |x~ - z~|.
double hinge(double d_wx, double d_xy, double d_yz, double d_zw, double delta) {
  if (delta <= 1e-300) return d_wx + d_zw;
  const double px = (d_wx * d_wx - d_xy * d_xy + delta * delta) / (2.0 * delta);
  const double hx = std::sqrt(std::max(0.0, d_wx * d_wx - px * px));
  const double pz = (d_zw * d_zw - d_yz * d_yz + delta * delta) / (2.0 * delta);
  const double hz = std::sqrt(std::max(0.0, d_zw * d_zw - pz * pz));
  return std::hypot(px - pz, hx + hz);
}

void require_triangle(double a, double b, double c, double tol) {
  if (a > b + c + tol || b > a + c + tol || c > a + b + tol)
    throw std::invalid_argument("four-point input violates the triangle inequality");
}

}  // namespace

SubembedResult four_point_subembed(double d_wx, double d_xy, double d_yz, double d_zw, double d_wy,
                                   double d_xz, const SubembedConfig& cfg) {
  for (double d : {d_wx, d_xy, d_yz, d_zw, d_wy, d_xz})
    if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("distances must be finite and >= 0");
  const double scale = std::max({1.0, d_wx, d_xy, d_yz, d_zw, d_wy, d_xz});
  const double tol = cfg.tol * scale;
  require_triangle(d_wx, d_xy, d_wy, tol);
  require_triangle(d_zw, d_yz, d_wy, tol);

  SubembedResult res;
  const double lo = d_wy;
  const double hi = std::max(lo, std::min(d_wx + d_xy, d_zw + d_yz));
  auto g = [&](double delta) {
    ++res.evaluations;
    return hinge(d_wx, d_xy, d_yz, d_zw, delta);
  };
  auto accept = [&](double delta, double value) {
    res.pass = true;
    res.witness_diagonal = delta;
    res.achieved_other = value;
    return res;
  };

  double best_val = g(lo);
  if (best_val >= d_xz - tol) return accept(lo, best_val);
  if (hi <= lo) {
    res.witness_diagonal = lo;
    res.achieved_other = best_val;
    return res;
  }

  const int n = std::max(1, cfg.grid_cells);
  int best_i = 0;
  for (int i = 1; i <= n; ++i) {
    const double delta = lo + (hi - lo) * static_cast<double>(i) / n;
    const double v = g(delta);
    if (v >= d_xz - tol) return accept(delta, v);
    if (v > best_val) {
      best_val = v;
      best_i = i;
    }
  }

  // Golden-section refinement of the hinge maximum around the best grid cell.
  const double cell = (hi - lo) / n;
  double a = std::max(lo, lo + (best_i - 1) * cell);
  double b = std::min(hi, lo + (best_i + 1) * cell);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double gc = g(c), gd = g(d);
  double best_delta = lo + best_i * cell;
  for (int it = 0; it < cfg.refine_steps; ++it) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - invphi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + invphi * (b - a);
      gd = g(d);
    }
    if (gc > best_val) {
      best_val = gc;
      best_delta = c;
    }
    if (gd > best_val) {
      best_val = gd;
      best_delta = d;
    }
  }
  if (best_val >= d_xz - tol) return accept(best_delta, best_val);
  res.witness_diagonal = best_delta;
  res.achieved_other = best_val;
  return res;
}

SubembedResult four_point_subembed(const Space& space, const Point& w, const Point& x,
                                   const Point& y, const Point& z, const SubembedConfig& cfg) {
  return four_point_subembed(distance(space, w, x), distance(space, x, y), distance(space, y, z),
                             distance(space, z, w), distance(space, w, y), distance(space, x, z), cfg);
}

}  // namespace sccurve
