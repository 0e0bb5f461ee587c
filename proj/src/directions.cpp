#include "sccurve/directions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "detail/tree_path.hpp"
#include "sccurve/metric.hpp"

namespace sccurve {

namespace {

constexpr double kPi = std::numbers::pi;

double mnorm(const Eigen::Vector3d& v) { return std::sqrt(std::max(0.0, minkowski(v, v))); }

double vec_angle(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  return 2.0 * std::atan2((u - v).norm(), (u + v).norm());
}

double hyper_angle(const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
  return 2.0 * std::atan2(mnorm(u - v), mnorm(u + v));
}

Eigen::Vector3d hyper_tangent_project(const Eigen::Vector3d& x, const Eigen::Vector3d& v) {
  return v + minkowski(v, x) * x;
}

// Vertex sitting at the canonical tree point p, or -1 if p is interior.
int tree_vertex_at(const TreeGraph& g, const TreeCoord& p) {
  const auto& ed = g.edge(p.edge);
  if (p.offset == 0.0) return ed.u;
  if (p.offset == ed.length) return ed.v;
  return -1;
}

// Offset of the canonical point p along edge e (p lies on e or at one of its ends).
double tree_offset_on(const TreeGraph& g, const TreeCoord& p, int e) {
  if (p.edge == e) return p.offset;
  const int w = tree_vertex_at(g, p);
  if (w < 0 || (g.edge(e).u != w && g.edge(e).v != w))
    throw std::invalid_argument("tree direction does not start at the base point");
  return detail::vertex_offset(g, e, w);
}

// Distance from canonical p to vertex w.
double tree_point_vertex_distance(const TreeGraph& g, const TreeCoord& p, int w) {
  const auto& ed = g.edge(p.edge);
  return std::min(p.offset + g.vertex_distance(ed.u, w),
                  ed.length - p.offset + g.vertex_distance(ed.v, w));
}

double book_dir_angle(const BookDir& d1, const BookDir& d2) {
  Eigen::Vector2d v2 = d2.v;
  const bool spine = d1.v[1] == 0.0 || d2.v[1] == 0.0;
  if (d1.sheet != d2.sheet && !spine) v2[1] = -v2[1];
  return 2.0 * std::atan2((d1.v - v2).norm(), (d1.v + v2).norm());
}

Direction make_book_dir(const Point& base, int sheet, Eigen::Vector2d v) {
  v.normalize();
  if (std::abs(v[1]) <= 1e-15) {
    v[1] = 0.0;
    v[0] = v[0] >= 0.0 ? 1.0 : -1.0;
    sheet = 0;
  }
  return Direction{base, BookDir{sheet, v}};
}

void require_base(const Space& space, const Point& x, const Direction& d) {
  if (!same_point(space, x, d.base)) throw std::invalid_argument("direction is based at another point");
}

struct Interval {
  double lo, hi;
};

double union_length(std::vector<Interval>& iv) {
  std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  double total = 0.0, cur_lo = 0.0, cur_hi = -1.0;
  bool open = false;
  for (const auto& i : iv) {
    if (i.hi <= i.lo) continue;
    if (!open || i.lo > cur_hi) {
      if (open) total += cur_hi - cur_lo;
      cur_lo = i.lo;
      cur_hi = i.hi;
      open = true;
    } else {
      cur_hi = std::max(cur_hi, i.hi);
    }
  }
  if (open) total += cur_hi - cur_lo;
  return total;
}

void push_clipped(std::vector<Interval>& iv, double lo, double hi, double len) {
  lo = std::max(lo, 0.0);
  hi = std::min(hi, len);
  if (hi > lo) iv.push_back({lo, hi});
}

double tree_measure(const TreeGraph& g, const std::vector<TreeCoord>& sources,
                    const std::vector<detail::TreePiece>& pieces, double r) {
  std::vector<std::vector<Interval>> per_edge(g.num_edges());
  for (const auto& pc : pieces)
    per_edge[pc.edge].push_back({std::min(pc.from, pc.to), std::max(pc.from, pc.to)});
  for (const auto& p : sources) {
    for (int e = 0; e < g.num_edges(); ++e) {
      const auto& ed = g.edge(e);
      if (p.edge == e && tree_vertex_at(g, p) < 0) {
        push_clipped(per_edge[e], p.offset - r, p.offset + r, ed.length);
        continue;
      }
      const double du = tree_point_vertex_distance(g, p, ed.u);
      const double dv = tree_point_vertex_distance(g, p, ed.v);
      if (r >= du) push_clipped(per_edge[e], 0.0, r - du, ed.length);
      if (r >= dv) push_clipped(per_edge[e], ed.length - (r - dv), ed.length, ed.length);
    }
  }
  double total = 0.0;
  for (auto& iv : per_edge) total += union_length(iv);
  return total;
}

double spider_measure(const SpiderSpace& sp, const std::vector<SpiderCoord>& sources,
                      const std::vector<std::pair<int, Interval>>& runs, double r) {
  std::vector<std::vector<Interval>> per_leg(sp.k());
  for (const auto& [leg, iv] : runs) per_leg[leg].push_back(iv);
  for (const auto& p : sources) {
    for (int l = 0; l < sp.k(); ++l) {
      if (l == p.leg) push_clipped(per_leg[l], p.radius - r, p.radius + r, sp.legs[l]);
      else if (r >= p.radius) push_clipped(per_leg[l], 0.0, r - p.radius, sp.legs[l]);
    }
  }
  double total = 0.0;
  for (auto& iv : per_leg) total += union_length(iv);
  return total;
}

Eigen::VectorXd cone_vector_euclid(const ConePoint& p) {
  return p.radius * p.direction->as<EuclidDir>()->v;
}

}  // namespace

LogResult log_direction(const Space& space, const Point& x_in, const Point& y_in) {
  const Point x = canonical(space, x_in);
  const Point y = canonical(space, y_in);
  const double d = distance(space, x, y);
  if (d <= space.tolerance()) throw std::invalid_argument("log_direction needs y != x");
  Direction dir = std::visit(
      [&](const auto& s) -> Direction {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EuclideanSpace>) {
          return Direction{x, EuclidDir{(y.as<EuclidCoord>()->x - x.as<EuclidCoord>()->x) / d}};
        } else if constexpr (std::is_same_v<T, HyperbolicPlane>) {
          const auto& a = x.as<HyperCoord>()->x;
          const Eigen::Vector3d diff = y.as<HyperCoord>()->x - a;
          Eigen::Vector3d u = hyper_tangent_project(a, diff);
          return Direction{x, HyperDir{u / mnorm(u)}};
        } else if constexpr (std::is_same_v<T, TreeSpace>) {
          const auto path = detail::tree_path(*s.graph, *x.as<TreeCoord>(), *y.as<TreeCoord>());
          for (const auto& pc : path.pieces)
            if (pc.length() > 0.0) return Direction{x, TreeDir{pc.edge, pc.to > pc.from}};
          throw std::logic_error("empty tree path between distinct points");
        } else if constexpr (std::is_same_v<T, SpiderSpace>) {
          const auto& a = *x.as<SpiderCoord>();
          const auto& b = *y.as<SpiderCoord>();
          if (a.radius == 0.0) return Direction{x, SpiderDir{b.leg, true}};
          if (a.leg == b.leg || b.radius == 0.0)
            return Direction{x, SpiderDir{a.leg, b.radius > a.radius}};
          return Direction{x, SpiderDir{a.leg, false}};
        } else if constexpr (std::is_same_v<T, BookSpace>) {
          const auto& a = *x.as<BookCoord>();
          const auto& b = *y.as<BookCoord>();
          if (a.b == 0.0) return make_book_dir(x, b.sheet, Eigen::Vector2d(b.a - a.a, b.b));
          if (a.sheet == b.sheet || b.b == 0.0)
            return make_book_dir(x, a.sheet, Eigen::Vector2d(b.a - a.a, b.b - a.b));
          return make_book_dir(x, a.sheet, Eigen::Vector2d(b.a - a.a, -b.b - a.b));
        } else {
          const auto& xc = x.as<ProductCoord>()->parts;
          const auto& yc = y.as<ProductCoord>()->parts;
          const double dl = distance(*s.left, xc[0], yc[0]);
          const double dr = distance(*s.right, xc[1], yc[1]);
          ProductDir pd;
          if (dl > s.left->tolerance())
            pd.left = std::make_shared<const Direction>(log_direction(*s.left, xc[0], yc[0]).direction);
          if (dr > s.right->tolerance())
            pd.right = std::make_shared<const Direction>(log_direction(*s.right, xc[1], yc[1]).direction);
          pd.alpha = !pd.left ? kPi / 2 : (!pd.right ? 0.0 : std::atan2(dr, dl));
          return Direction{x, pd};
        }
      },
      space.kind());
  return {std::move(dir), d};
}

double direction_angle(const Space& space, const Direction& d1, const Direction& d2) {
  if (!same_point(space, d1.base, d2.base)) throw std::invalid_argument("directions have different base points");
  if (d1.data.index() != d2.data.index()) throw std::invalid_argument("directions of different kinds");
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EuclideanSpace>) {
          return vec_angle(d1.as<EuclidDir>()->v, d2.as<EuclidDir>()->v);
        } else if constexpr (std::is_same_v<T, HyperbolicPlane>) {
          return hyper_angle(d1.as<HyperDir>()->v, d2.as<HyperDir>()->v);
        } else if constexpr (std::is_same_v<T, TreeSpace>) {
          const auto& a = *d1.as<TreeDir>();
          const auto& b = *d2.as<TreeDir>();
          return (a.edge == b.edge && a.increasing == b.increasing) ? 0.0 : kPi;
        } else if constexpr (std::is_same_v<T, SpiderSpace>) {
          const auto& a = *d1.as<SpiderDir>();
          const auto& b = *d2.as<SpiderDir>();
          return (a.leg == b.leg && a.outward == b.outward) ? 0.0 : kPi;
        } else if constexpr (std::is_same_v<T, BookSpace>) {
          return book_dir_angle(*d1.as<BookDir>(), *d2.as<BookDir>());
        } else {
          const auto& a = *d1.as<ProductDir>();
          const auto& b = *d2.as<ProductDir>();
          double c = 0.0;
          if (a.left && b.left)
            c += std::cos(a.alpha) * std::cos(b.alpha) * std::cos(direction_angle(*s.left, *a.left, *b.left));
          if (a.right && b.right)
            c += std::sin(a.alpha) * std::sin(b.alpha) * std::cos(direction_angle(*s.right, *a.right, *b.right));
          return std::acos(std::clamp(c, -1.0, 1.0));
        }
      },
      space.kind());
}

std::pair<Point, double> shoot(const Space& space, const Direction& dir, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("shoot needs t >= 0");
  const Point x = canonical(space, dir.base);
  return std::visit(
      [&](const auto& s) -> std::pair<Point, double> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EuclideanSpace>) {
          return {Point::euclid(x.as<EuclidCoord>()->x + t * dir.as<EuclidDir>()->v), t};
        } else if constexpr (std::is_same_v<T, HyperbolicPlane>) {
          const Eigen::Vector3d p = std::cosh(t) * x.as<HyperCoord>()->x + std::sinh(t) * dir.as<HyperDir>()->v;
          return {Point::hyper_lift(p[1], p[2]), t};
        } else if constexpr (std::is_same_v<T, TreeSpace>) {
          const auto& td = *dir.as<TreeDir>();
          const double len = s.graph->edge(td.edge).length;
          const double o = tree_offset_on(*s.graph, *x.as<TreeCoord>(), td.edge);
          const double end = td.increasing ? std::min(o + t, len) : std::max(o - t, 0.0);
          return {canonical(space, Point::tree(td.edge, end)), std::abs(end - o)};
        } else if constexpr (std::is_same_v<T, SpiderSpace>) {
          const auto& sd = *dir.as<SpiderDir>();
          const auto& c = *x.as<SpiderCoord>();
          const double r0 = c.radius == 0.0 ? 0.0 : c.radius;
          const double r = sd.outward ? std::min(r0 + t, s.legs[sd.leg]) : std::max(r0 - t, 0.0);
          return {canonical(space, Point::spider(sd.leg, r)), std::abs(r - r0)};
        } else if constexpr (std::is_same_v<T, BookSpace>) {
          const auto& bd = *dir.as<BookDir>();
          const auto& c = *x.as<BookCoord>();
          double travel = t;
          int sheet = bd.sheet;
          if (c.b > 0.0) {
            sheet = c.sheet;
            if (bd.v[1] < 0.0) travel = std::min(t, -c.b / bd.v[1]);
          }
          const double b = std::max(0.0, c.b + travel * bd.v[1]);
          return {canonical(space, Point::book(sheet, c.a + travel * bd.v[0], b)), travel};
        } else {
          const auto& pd = *dir.as<ProductDir>();
          const auto& xc = x.as<ProductCoord>()->parts;
          const double cl = std::cos(pd.alpha), sr = std::sin(pd.alpha);
          auto walk = [&](double tt) {
            std::pair<Point, double> l{xc[0], 0.0}, r{xc[1], 0.0};
            if (pd.left && cl > 0.0) l = shoot(*s.left, *pd.left, cl * tt);
            if (pd.right && sr > 0.0) r = shoot(*s.right, *pd.right, sr * tt);
            return std::make_tuple(l, r);
          };
          auto [l, r] = walk(t);
          double achieved = t;
          if (pd.left && cl > 0.0) achieved = std::min(achieved, l.second / cl);
          if (pd.right && sr > 0.0) achieved = std::min(achieved, r.second / sr);
          if (achieved < t) std::tie(l, r) = walk(achieved);
          return {Point::product(l.first, r.first), achieved};
        }
      },
      space.kind());
}

std::vector<Direction> finite_directions(const Space& space, const Point& x_in) {
  const Point x = canonical(space, x_in);
  std::vector<Direction> out;
  if (const auto* ts = space.as<TreeSpace>()) {
    const auto& g = *ts->graph;
    const auto& c = *x.as<TreeCoord>();
    const int w = tree_vertex_at(g, c);
    if (w < 0) {
      out.push_back({x, TreeDir{c.edge, true}});
      out.push_back({x, TreeDir{c.edge, false}});
    } else {
      for (int e : g.incident(w)) out.push_back({x, TreeDir{e, g.edge(e).u == w}});
    }
    return out;
  }
  if (const auto* sp = space.as<SpiderSpace>()) {
    const auto& c = *x.as<SpiderCoord>();
    if (c.radius == 0.0) {
      for (int l = 0; l < sp->k(); ++l) out.push_back({x, SpiderDir{l, true}});
    } else {
      if (c.radius < sp->legs[c.leg]) out.push_back({x, SpiderDir{c.leg, true}});
      out.push_back({x, SpiderDir{c.leg, false}});
    }
    return out;
  }
  throw std::invalid_argument("direction set is infinite in space " + space.label());
}

double cone_distance(double angle, double s, double t) {
  // Law of cosines in the half-angle form: stable for tiny angles.
  const double h = std::sin(0.5 * angle);
  return std::sqrt(std::max(0.0, (s - t) * (s - t) + 4.0 * s * t * h * h));
}

double cone_point_distance(const Space& space, const ConePoint& a, const ConePoint& b) {
  if (a.is_origin()) return b.is_origin() ? 0.0 : b.radius;
  if (b.is_origin()) return a.radius;
  return cone_distance(direction_angle(space, *a.direction, *b.direction), a.radius, b.radius);
}

ConePoint cone_barycenter_points(const Space& space, const Point& x_in, std::span<const ConePoint> pts) {
  if (pts.empty()) throw std::invalid_argument("cone barycenter of an empty set");
  const Point x = canonical(space, x_in);
  for (const auto& p : pts)
    if (!p.is_origin()) require_base(space, x, *p.direction);
  const double k = static_cast<double>(pts.size());
  return std::visit(
      [&](const auto& s) -> ConePoint {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EuclideanSpace>) {
          Eigen::VectorXd m = Eigen::VectorXd::Zero(s.dim);
          for (const auto& p : pts)
            if (!p.is_origin()) m += cone_vector_euclid(p);
          m /= k;
          const double r = m.norm();
          if (r <= 1e-15) return ConePoint{};
          return ConePoint{Direction{x, EuclidDir{m / r}}, r};
        } else if constexpr (std::is_same_v<T, HyperbolicPlane>) {
          Eigen::Vector3d m = Eigen::Vector3d::Zero();
          for (const auto& p : pts)
            if (!p.is_origin()) m += p.radius * p.direction->template as<HyperDir>()->v;
          m /= k;
          const double r = mnorm(m);
          if (r <= 1e-15) return ConePoint{};
          return ConePoint{Direction{x, HyperDir{m / r}}, r};
        } else if constexpr (std::is_same_v<T, TreeSpace> || std::is_same_v<T, SpiderSpace>) {
          // On a leg j at radius t the objective is k t^2 - 2 t (S_j - S_rest) + const.
          std::vector<std::pair<const Direction*, double>> groups;
          double total = 0.0;
          for (const auto& p : pts) {
            if (p.is_origin()) continue;
            total += p.radius;
            bool found = false;
            for (auto& [d, sum] : groups) {
              if (direction_angle(space, *d, *p.direction) == 0.0) {
                sum += p.radius;
                found = true;
                break;
              }
            }
            if (!found) groups.push_back({&*p.direction, p.radius});
          }
          double best_t = 0.0;
          const Direction* best = nullptr;
          for (const auto& [d, sum] : groups) {
            const double t = (2.0 * sum - total) / k;
            if (t > best_t) {
              best_t = t;
              best = d;
            }
          }
          if (!best) return ConePoint{};
          return ConePoint{*best, best_t};
        } else if constexpr (std::is_same_v<T, BookSpace>) {
          const auto& c = *x.as<BookCoord>();
          if (c.b > 0.0) {
            Eigen::Vector2d m = Eigen::Vector2d::Zero();
            for (const auto& p : pts)
              if (!p.is_origin()) m += p.radius * p.direction->template as<BookDir>()->v;
            m /= k;
            if (m.norm() <= 1e-15) return ConePoint{};
            const double r = m.norm();
            return ConePoint{Direction{x, BookDir{c.sheet, m / r}}, r};
          }
          // Spine base: unfold every other sheet into the lower half-plane of
          // sheet j, project the planar mean to b >= 0 and keep the best sheet.
          double best_val = 0.0;  // the origin scores 0 in k(|w|^2 - 2<w,m>)
          ConePoint best{};
          for (int j = 0; j < s.sheets; ++j) {
            Eigen::Vector2d m = Eigen::Vector2d::Zero();
            for (const auto& p : pts) {
              if (p.is_origin()) continue;
              const auto& bd = *p.direction->template as<BookDir>();
              Eigen::Vector2d u = p.radius * bd.v;
              if (bd.sheet != j && bd.v[1] != 0.0) u[1] = -u[1];
              m += u;
            }
            m /= k;
            const Eigen::Vector2d w(m[0], std::max(0.0, m[1]));
            const double val = w.squaredNorm() - 2.0 * w.dot(m);
            if (val < best_val - 1e-300 && w.norm() > 1e-15) {
              best_val = val;
              best = ConePoint{make_book_dir(x, j, w), w.norm()};
            }
          }
          return best;
        } else {
          const auto& xc = x.as<ProductCoord>()->parts;
          std::vector<ConePoint> left, right;
          for (const auto& p : pts) {
            if (p.is_origin()) {
              left.push_back({});
              right.push_back({});
              continue;
            }
            const auto& pd = *p.direction->template as<ProductDir>();
            ConePoint l, r;
            if (pd.left && std::cos(pd.alpha) > 0.0) l = ConePoint{*pd.left, p.radius * std::cos(pd.alpha)};
            if (pd.right && std::sin(pd.alpha) > 0.0) r = ConePoint{*pd.right, p.radius * std::sin(pd.alpha)};
            left.push_back(l);
            right.push_back(r);
          }
          const ConePoint bl = cone_barycenter_points(*s.left, xc[0], left);
          const ConePoint br = cone_barycenter_points(*s.right, xc[1], right);
          const double rl = bl.is_origin() ? 0.0 : bl.radius;
          const double rr = br.is_origin() ? 0.0 : br.radius;
          const double r = std::hypot(rl, rr);
          if (r <= 1e-15) return ConePoint{};
          ProductDir pd;
          if (rl > 0.0) pd.left = std::make_shared<const Direction>(*bl.direction);
          if (rr > 0.0) pd.right = std::make_shared<const Direction>(*br.direction);
          pd.alpha = std::atan2(rr, rl);
          return ConePoint{Direction{x, pd}, r};
        }
      },
      space.kind());
}

ConePoint cone_barycenter(const Space& space, const Point& x, std::span<const Direction> dirs) {
  std::vector<ConePoint> pts;
  pts.reserve(dirs.size());
  for (const auto& d : dirs) pts.push_back(ConePoint{d, 1.0});
  return cone_barycenter_points(space, x, pts);
}

namespace {

constexpr double kDiamTol = 1e-7;

void check_cover_input(const Space& space, const Point& x, std::span<const Direction> dirs) {
  if (dirs.empty()) throw std::invalid_argument("empty direction set");
  for (const auto& d : dirs) require_base(space, x, d);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i + 1; j < dirs.size(); ++j)
      if (direction_angle(space, dirs[i], dirs[j]) > kPi / 2 + kDiamTol)
        throw std::invalid_argument("direction set has angular diameter above pi/2");
}

double cover_radius(const Space& space, const Direction& c, std::span<const Direction> dirs) {
  double r = 0.0;
  for (const auto& d : dirs) r = std::max(r, direction_angle(space, c, d));
  return r;
}

// Geodesic midpoint of two directions at a book spine point (the link is k
// semicircles glued at the two spine directions).
Direction book_spine_midpoint(const Point& x, const BookDir& p, const BookDir& q) {
  const double phi_p = std::atan2(p.v[1], p.v[0]);
  const double phi_q = std::atan2(q.v[1], q.v[0]);
  const bool same = p.sheet == q.sheet || p.v[1] == 0.0 || q.v[1] == 0.0;
  if (same) {
    const int sheet = p.v[1] == 0.0 ? q.sheet : p.sheet;
    const double mid = 0.5 * (phi_p + phi_q);
    return make_book_dir(x, sheet, Eigen::Vector2d(std::cos(mid), std::sin(mid)));
  }
  const double via_plus = phi_p + phi_q;
  const double via_minus = 2.0 * kPi - phi_p - phi_q;
  double phi;
  int sheet;
  if (via_plus <= via_minus) {
    const double half = 0.5 * via_plus;
    if (half <= phi_p) {
      sheet = p.sheet;
      phi = phi_p - half;
    } else {
      sheet = q.sheet;
      phi = half - phi_p;
    }
  } else {
    const double half = 0.5 * via_minus;
    if (half <= kPi - phi_p) {
      sheet = p.sheet;
      phi = phi_p + half;
    } else {
      sheet = q.sheet;
      phi = kPi - (half - (kPi - phi_p));
    }
  }
  return make_book_dir(x, sheet, Eigen::Vector2d(std::cos(phi), std::sin(phi)));
}

}  // namespace

CoverResult direction_cover_center(const Space& space, const Point& x_in, std::span<const Direction> dirs) {
  const Point x = canonical(space, x_in);
  check_cover_input(space, x, dirs);
  std::vector<Direction> chosen;
  for (const auto& d : dirs) {
    bool separated = true;
    for (const auto& c : chosen) {
      if (direction_angle(space, c, d) < kPi / 3) {
        separated = false;
        break;
      }
    }
    if (separated) chosen.push_back(d);
  }
  std::optional<Direction> center;
  if (space.as<EuclideanSpace>()) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(chosen.front().as<EuclidDir>()->v.size());
    for (const auto& c : chosen) sum += c.as<EuclidDir>()->v;
    if (sum.norm() > 0.0) center = Direction{x, EuclidDir{sum.normalized()}};
  } else if (space.as<HyperbolicPlane>()) {
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (const auto& c : chosen) sum += c.as<HyperDir>()->v;
    if (mnorm(sum) > 0.0) center = Direction{x, HyperDir{sum / mnorm(sum)}};
  } else {
    const ConePoint bc = cone_barycenter(space, x, chosen);
    if (!bc.is_origin()) center = *bc.direction;
  }
  if (!center) center = chosen.front();
  const double r = cover_radius(space, *center, dirs);
  return CoverResult{*center, r, static_cast<int>(chosen.size())};
}

CoverResult improved_cover_center(const Space& space, const Point& x_in, std::span<const Direction> dirs) {
  const Point x = canonical(space, x_in);
  const auto* es = space.as<EuclideanSpace>();
  const bool planar_link = (es && es->dim <= 2) || space.as<HyperbolicPlane>() || space.as<BookSpace>();
  const bool discrete_link = space.as<TreeSpace>() || space.as<SpiderSpace>();
  if (!planar_link && !discrete_link) return direction_cover_center(space, x, dirs);
  check_cover_input(space, x, dirs);
  if (discrete_link) return CoverResult{dirs.front(), cover_radius(space, dirs.front(), dirs), 1};
  // The link is a metric graph of girth 2 pi, so a set of diameter <= pi/2 sits
  // in a tree-like ball and the midpoint of a diametral pair is its center.
  std::size_t bi = 0, bj = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i; j < dirs.size(); ++j) {
      const double a = direction_angle(space, dirs[i], dirs[j]);
      if (a > best) {
        best = a;
        bi = i;
        bj = j;
      }
    }
  const Direction& p = dirs[bi];
  const Direction& q = dirs[bj];
  Direction center = p;
  if (es) {
    const Eigen::VectorXd s = p.as<EuclidDir>()->v + q.as<EuclidDir>()->v;
    center = Direction{x, EuclidDir{s.normalized()}};
  } else if (space.as<HyperbolicPlane>()) {
    const Eigen::Vector3d s = p.as<HyperDir>()->v + q.as<HyperDir>()->v;
    center = Direction{x, HyperDir{s / mnorm(s)}};
  } else {
    const auto& bp = *p.as<BookDir>();
    const auto& bq = *q.as<BookDir>();
    if (x.as<BookCoord>()->b > 0.0) {
      center = make_book_dir(x, bp.sheet, bp.v + bq.v);
    } else {
      center = book_spine_midpoint(x, bp, bq);
    }
  }
  return CoverResult{center, cover_radius(space, center, dirs), 1};
}

double sphere_area(int n) {
  if (n < 1) throw std::invalid_argument("sphere dimension must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double sphere_cap_area(int n, double rho) {
  if (n < 1) throw std::invalid_argument("sphere dimension must be >= 1");
  rho = std::clamp(rho, 0.0, kPi);
  if (n == 1) return rho < kPi ? 1.0 : 2.0;
  if (n == 2) return 2.0 * rho;
  if (n == 3) return 2.0 * kPi * (1.0 - std::cos(rho));
  // A(S^{n-2}) * int_0^rho sin^{n-2}, composite Simpson.
  const int m = 4096;
  const double h = rho / m;
  double acc = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * std::pow(std::sin(i * h), n - 2);
  }
  return sphere_area(n - 1) * acc * h / 3.0;
}

RadiusConstants radius_constants(int n) {
  if (n < 1) throw std::invalid_argument("radius_constants needs n >= 1");
  RadiusConstants rc;
  rc.n = n;
  const double three_n = std::pow(3.0, n);
  rc.theta_n = std::acos(1.0 / (2.0 * three_n));
  rc.theta_improved = n == 1 ? 0.0 : (n == 2 ? kPi / 4 : rc.theta_n);
  rc.eps_n = 1.0 / (2.0 * three_n * 3.0);
  rc.m_bound = static_cast<long long>(std::llround(three_n));
  rc.eps_bold = 1.0 / (6.0 * three_n);
  rc.a_ratio = sphere_cap_area(n, 2.0 * std::asin(rc.eps_n / 2.0)) / sphere_area(n);
  return rc;
}

double union_disk_area_upper(std::span<const Eigen::Vector2d> centers_in, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("disk radius must be positive");
  std::vector<Eigen::Vector2d> centers;
  for (const auto& c : centers_in) {
    if (c[1] <= -r) continue;
    bool dup = false;
    for (const auto& d : centers)
      if ((c - d).norm() <= 1e-12 * r) {
        dup = true;
        break;
      }
    if (!dup) centers.push_back(c);
  }
  // Green's theorem: integrate (x dy - y dx)/2 over the uncovered arcs of each
  // circle that lie in y >= 0. The boundary on y = 0 contributes nothing.
  const double two_pi = 2.0 * kPi;
  double area = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const Eigen::Vector2d& ci = centers[i];
    std::vector<Interval> blocked;
    auto block = [&](double mid, double half) {
      double lo = std::fmod(mid - half, two_pi);
      if (lo < 0.0) lo += two_pi;
      const double hi = lo + 2.0 * half;
      if (hi <= two_pi) {
        blocked.push_back({lo, hi});
      } else {
        blocked.push_back({lo, two_pi});
        blocked.push_back({0.0, hi - two_pi});
      }
    };
    bool fully = false;
    for (std::size_t j = 0; j < centers.size(); ++j) {
      if (j == i) continue;
      const Eigen::Vector2d diff = centers[j] - ci;
      const double d = diff.norm();
      if (d >= 2.0 * r) continue;
      const double half = std::acos(std::clamp(d / (2.0 * r), -1.0, 1.0));
      block(std::atan2(diff[1], diff[0]), half);
    }
    if (ci[1] < r) {
      // Points with ci.y + r sin(theta) < 0.
      const double half = std::acos(std::clamp(ci[1] / r, -1.0, 1.0));
      if (half >= kPi) fully = true;
      else block(-kPi / 2, half);
    }
    if (fully) continue;
    std::sort(blocked.begin(), blocked.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    auto arc = [&](double a, double b) {
      if (b <= a) return;
      area += 0.5 * (r * r * (b - a) + r * ci[0] * (std::sin(b) - std::sin(a)) -
                     r * ci[1] * (std::cos(b) - std::cos(a)));
    };
    double cursor = 0.0;
    for (const auto& iv : blocked) {
      if (iv.lo > cursor) arc(cursor, iv.lo);
      cursor = std::max(cursor, iv.hi);
    }
    arc(cursor, two_pi);
  }
  return area;
}

double hausdorff_measure_neighborhood(const Space& space, std::span<const Point> points_in, double radius,
                                      int dim, std::span<const std::pair<Point, Point>> segments) {
  if (!(radius > 0.0)) throw std::invalid_argument("neighborhood radius must be positive");
  if (points_in.empty() && segments.empty()) return 0.0;
  std::vector<Point> points;
  for (const auto& p : points_in) points.push_back(canonical(space, p));
  if (const auto* ts = space.as<TreeSpace>()) {
    if (dim != 1) throw std::invalid_argument("trees carry H^1 only");
    const auto& g = *ts->graph;
    std::vector<TreeCoord> sources;
    std::vector<detail::TreePiece> pieces;
    for (const auto& p : points) sources.push_back(*p.as<TreeCoord>());
    for (const auto& [a, b] : segments) {
      const auto pa = *canonical(space, a).as<TreeCoord>();
      const auto pb = *canonical(space, b).as<TreeCoord>();
      sources.push_back(pa);
      sources.push_back(pb);
      const auto path = detail::tree_path(g, pa, pb);
      for (const auto& pc : path.pieces) {
        pieces.push_back(pc);
        sources.push_back(*canonical(space, Point::tree(pc.edge, pc.to)).as<TreeCoord>());
      }
    }
    return tree_measure(g, sources, pieces, radius);
  }
  if (const auto* sp = space.as<SpiderSpace>()) {
    if (dim != 1) throw std::invalid_argument("spiders carry H^1 only");
    std::vector<SpiderCoord> sources;
    std::vector<std::pair<int, Interval>> runs;
    for (const auto& p : points) sources.push_back(*p.as<SpiderCoord>());
    for (const auto& [a, b] : segments) {
      const auto pa = *canonical(space, a).as<SpiderCoord>();
      const auto pb = *canonical(space, b).as<SpiderCoord>();
      sources.push_back(pa);
      sources.push_back(pb);
      if (pa.leg == pb.leg || pa.radius == 0.0 || pb.radius == 0.0) {
        const int leg = pa.radius == 0.0 ? pb.leg : pa.leg;
        runs.push_back({leg, {std::min(pa.radius, pb.radius), std::max(pa.radius, pb.radius)}});
      } else {
        runs.push_back({pa.leg, {0.0, pa.radius}});
        runs.push_back({pb.leg, {0.0, pb.radius}});
        sources.push_back({0, 0.0});
      }
    }
    return spider_measure(*sp, sources, runs, radius);
  }
  if (const auto* bs = space.as<BookSpace>()) {
    if (dim != 2) throw std::invalid_argument("books carry H^2 only");
    std::vector<BookCoord> sources;
    for (const auto& p : points) sources.push_back(*p.as<BookCoord>());
    for (const auto& [a, b] : segments) {
      const double len = distance(space, a, b);
      const int n = std::max(1, static_cast<int>(std::ceil(len / (radius / 64.0))));
      for (int i = 0; i <= n; ++i)
        sources.push_back(*geodesic_point(space, a, b, static_cast<double>(i) / n).as<BookCoord>());
    }
    double total = 0.0;
    for (int s = 0; s < bs->sheets; ++s) {
      std::vector<Eigen::Vector2d> centers;
      for (const auto& c : sources)
        centers.emplace_back(c.a, (c.sheet == s || c.b == 0.0) ? c.b : -c.b);
      total += union_disk_area_upper(centers, radius);
    }
    return total;
  }
  throw std::invalid_argument("no Hausdorff measure for space " + space.label());
}

RadiusConstants estimate_condition_constants(const Space& space, const Region& region, double sigma) {
  if (region.core.empty()) throw std::invalid_argument("region needs at least one core point");
  if (!(region.radius > 0.0) || !(sigma > 0.0)) throw std::invalid_argument("radius and sigma must be positive");
  RadiusConstants rc;
  rc.sigma = sigma;
  if (space.as<TreeSpace>() || space.as<SpiderSpace>()) {
    rc.n = 1;
    rc.m_bound = 1;
    rc.eps_bold = 1.0 / 6.0;
    rc.theta_n = rc.theta_improved = 0.0;
    rc.eps_n = 1.0 / 3.0;
    int lambda = 0;
    bool leaf_inside = false;
    if (const auto* ts = space.as<TreeSpace>()) {
      const auto& g = *ts->graph;
      lambda = g.max_degree();
      for (int v = 0; v < g.num_vertices() && !leaf_inside; ++v) {
        if (g.degree(v) != 1) continue;
        for (const auto& c : region.core)
          if (distance(space, c, tree_vertex_point(g, v)) <= region.radius) leaf_inside = true;
      }
    } else {
      const auto& sp = *space.as<SpiderSpace>();
      lambda = std::max(sp.k(), 1);
      for (int l = 0; l < sp.k() && !leaf_inside; ++l)
        for (const auto& c : region.core)
          if (distance(space, c, Point::spider(l, sp.legs[l])) <= region.radius) leaf_inside = true;
    }
    rc.region_measure = hausdorff_measure_neighborhood(space, region.core, region.radius, 1);
    rc.a_ratio = 1.0 / lambda;
    rc.b_ratio = sigma / rc.region_measure;
    if (leaf_inside)
      rc.note = "region reaches leaf vertices where the volume-ratio condition fails; constants hold away from them";
    return rc;
  }
  if (const auto* bs = space.as<BookSpace>()) {
    const double s = std::asin(1.0 / (6.0 * std::sqrt(2.0)));
    rc.n = 2;
    rc.m_bound = 0;
    rc.theta_n = rc.theta_improved = kPi / 4;
    rc.eps_bold = 1.0 / (3.0 * std::sqrt(2.0));
    rc.eps_n = rc.eps_bold;
    rc.region_measure = hausdorff_measure_neighborhood(space, region.core, region.radius, 2);
    rc.a_ratio = 4.0 / (bs->sheets * kPi) * s;
    rc.b_ratio = 2.0 * s / rc.region_measure;
    rc.note = "book: eps from the direct cover radius pi/4; no total-boundedness count used";
    return rc;
  }
  const auto* es = space.as<EuclideanSpace>();
  const bool hyper = space.as<HyperbolicPlane>() != nullptr;
  if (!es && !hyper) throw std::invalid_argument("no condition constants for space " + space.label());
  if (region.core.size() != 1) throw std::invalid_argument("euclidean and hyperbolic regions must be balls");
  const int n = es ? es->dim : 2;
  const RadiusConstants base = radius_constants(n);
  rc = base;
  rc.sigma = sigma;
  const double cap = sphere_cap_area(n, 2.0 * std::asin(base.eps_bold / 2.0));
  rc.a_ratio = cap / sphere_area(n);
  if (es) {
    rc.region_measure = sphere_area(n) * std::pow(region.radius, n) / n;
    rc.b_ratio = cap * std::pow(sigma, n) / n / rc.region_measure;
  } else {
    rc.region_measure = 2.0 * kPi * (std::cosh(region.radius) - 1.0);
    rc.b_ratio = cap * (std::cosh(sigma) - 1.0) / rc.region_measure;
  }
  return rc;
}

}  // namespace sccurve
