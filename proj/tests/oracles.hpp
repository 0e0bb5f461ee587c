// Independent reference computations used by the tests. Nothing here calls
// into the library beyond plain data types.
#ifndef SCCURVE_TESTS_ORACLES_HPP
#define SCCURVE_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sccurve/space.hpp"

namespace oracle {

inline bool near(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

/// -z^3 + (z - x)^2 / (2 tau)
inline double neg_cube_prox_value(double z, double x, double tau) { return -z * z * z + (z - x) * (z - x) / (2 * tau); }

inline double spider_h1(const std::vector<double>& legs) {
  double s = 0.0;
  for (double l : legs) s += l;
  return s;
}

/// Convex hull perimeter by gift wrapping; nearly collinear candidates count
/// as collinear and the farther one wins.
inline double hull_perimeter(std::vector<Eigen::Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) return 0.0;
  const std::size_t start = 0;
  double perimeter = 0.0;
  std::size_t cur = start;
  for (std::size_t iter = 0; iter <= pts.size(); ++iter) {
    std::size_t next = cur == 0 ? 1 : 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == cur) continue;
      const Eigen::Vector2d a = pts[next] - pts[cur], b = pts[i] - pts[cur];
      const double cross = a.x() * b.y() - a.y() * b.x();
      const double slack = 1e-12 * a.norm() * b.norm();
      if (cross < -slack || (std::abs(cross) <= slack && b.squaredNorm() > a.squaredNorm())) next = i;
    }
    perimeter += (pts[next] - pts[cur]).norm();
    cur = next;
    if (cur == start) break;
  }
  return perimeter;
}

/// All-pairs vertex distances by Floyd-Warshall.
inline std::vector<std::vector<double>> tree_vertex_distances(const sccurve::TreeGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, std::numeric_limits<double>::infinity()));
  for (int v = 0; v < n; ++v) d[v][v] = 0.0;
  for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = std::min(d[e.u][e.v], e.length);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

inline double tree_point_distance(const sccurve::TreeGraph& g, const sccurve::Point& a, const sccurve::Point& b) {
  const auto d = tree_vertex_distances(g);
  const auto* ta = a.as<sccurve::TreeCoord>();
  const auto* tb = b.as<sccurve::TreeCoord>();
  const auto& ea = g.edge(ta->edge);
  const auto& eb = g.edge(tb->edge);
  if (ta->edge == tb->edge) return std::abs(ta->offset - tb->offset);
  const double ends[2][2] = {{ta->offset, ea.length - ta->offset}, {tb->offset, eb.length - tb->offset}};
  const int va[2] = {ea.u, ea.v}, vb[2] = {eb.u, eb.v};
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) best = std::min(best, ends[0][i] + d[va[i]][vb[j]] + ends[1][j]);
  return best;
}

/// H^1 of the closed r-neighborhood of tree points, with vertex distances from
/// Floyd-Warshall and per-edge interval unions.
inline double tree_neighborhood_length(const sccurve::TreeGraph& g, const std::vector<sccurve::Point>& pts,
                                       double r) {
  const auto d = tree_vertex_distances(g);
  double total = 0.0;
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    std::vector<std::pair<double, double>> iv;
    for (const auto& p : pts) {
      const auto* tc = p.as<sccurve::TreeCoord>();
      const auto& pe = g.edge(tc->edge);
      const double to_u = std::min(tc->offset + d[pe.u][ed.u], pe.length - tc->offset + d[pe.v][ed.u]);
      const double to_v = std::min(tc->offset + d[pe.u][ed.v], pe.length - tc->offset + d[pe.v][ed.v]);
      if (tc->edge == e) iv.emplace_back(tc->offset - r, tc->offset + r);
      if (to_u <= r) iv.emplace_back(0.0, r - to_u);
      if (to_v <= r) iv.emplace_back(ed.length - (r - to_v), ed.length);
    }
    for (auto& [a, b] : iv) {
      a = std::clamp(a, 0.0, ed.length);
      b = std::clamp(b, 0.0, ed.length);
    }
    std::sort(iv.begin(), iv.end());
    double covered = 0.0, lo = -1.0, hi = -1.0;
    for (const auto& [a, b] : iv) {
      if (a > hi) {
        covered += hi - lo;
        lo = a;
        hi = b;
      } else {
        hi = std::max(hi, b);
      }
    }
    covered += hi - lo;
    total += covered;
  }
  return total;
}

template <class R>
Eigen::VectorXd random_unit(R& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(n);
  do {
    for (int i = 0; i < n; ++i) v[i] = g(rng);
  } while (v.norm() < 1e-12);
  return v.normalized();
}

/// (1/k) sum |w - g_i|^2 - |w - b|^2 - (1/k) sum |b - g_i|^2 for cone points as vectors.
inline double variance_residual(const std::vector<Eigen::VectorXd>& g, const Eigen::VectorXd& b,
                                const Eigen::VectorXd& w) {
  double sw = 0.0, sb = 0.0;
  for (const auto& v : g) {
    sw += (w - v).squaredNorm();
    sb += (b - v).squaredNorm();
  }
  const double k = static_cast<double>(g.size());
  return sw / k - (w - b).squaredNorm() - sb / k;
}

/// Unit vectors with pairwise angles <= pi/2: a randomly rotated subset of the
/// closed positive orthant, optionally containing the rotated basis itself.
template <class R>
std::vector<Eigen::VectorXd> random_quarter_diameter_set(R& rng, int n, bool with_basis) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g(rng);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
  std::vector<Eigen::VectorXd> out;
  if (with_basis)
    for (int i = 0; i < n; ++i) out.push_back(q.col(i));
  const int extra = std::uniform_int_distribution<int>(1, 20)(rng);
  for (int k = 0; k < extra; ++k) {
    Eigen::VectorXd v = random_unit(rng, n).cwiseAbs();
    out.push_back((q * v).normalized());
  }
  return out;
}

}  // namespace oracle

#endif  // SCCURVE_TESTS_ORACLES_HPP
