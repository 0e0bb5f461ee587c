#ifndef SCCURVE_DETAIL_TREE_PATH_HPP
#define SCCURVE_DETAIL_TREE_PATH_HPP

#include <vector>

#include "sccurve/space.hpp"

namespace sccurve::detail {

// One straight run along an edge, from offset `from` to offset `to`.
struct TreePiece {
  int edge;
  double from;
  double to;
  double length() const { return from < to ? to - from : from - to; }
};

struct TreePath {
  std::vector<TreePiece> pieces;
  double length = 0.0;
};

inline double vertex_offset(const TreeGraph& g, int e, int v) {
  return g.edge(e).u == v ? 0.0 : g.edge(e).length;
}

// Unique geodesic between two (canonical) tree points as a list of edge runs.
inline TreePath tree_path(const TreeGraph& g, const TreeCoord& p, const TreeCoord& q) {
  TreePath path;
  if (p.edge == q.edge) {
    path.pieces.push_back({p.edge, p.offset, q.offset});
    path.length = path.pieces.back().length();
    return path;
  }
  const auto& ep = g.edge(p.edge);
  const auto& eq = g.edge(q.edge);
  const int exits[2] = {ep.u, ep.v};
  const double exit_cost[2] = {p.offset, ep.length - p.offset};
  const int entries[2] = {eq.u, eq.v};
  const double entry_cost[2] = {q.offset, eq.length - q.offset};
  double best = 0.0;
  int bi = -1, bj = -1;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double c = exit_cost[i] + g.vertex_distance(exits[i], entries[j]) + entry_cost[j];
      if (bi < 0 || c < best) {
        best = c;
        bi = i;
        bj = j;
      }
    }
  }
  const int a = exits[bi];
  const int b = entries[bj];
  if (exit_cost[bi] > 0.0) path.pieces.push_back({p.edge, p.offset, vertex_offset(g, p.edge, a)});
  for (int w = a; w != b;) {
    const int e = g.next_edge(w, b);
    const int z = g.other_end(e, w);
    path.pieces.push_back({e, vertex_offset(g, e, w), vertex_offset(g, e, z)});
    w = z;
  }
  if (entry_cost[bj] > 0.0) path.pieces.push_back({q.edge, vertex_offset(g, q.edge, b), q.offset});
  for (const auto& pc : path.pieces) path.length += pc.length();
  return path;
}

// Point at arclength u along the path (clamped to its ends).
inline Point tree_path_point(const TreePath& path, double u) {
  for (const auto& pc : path.pieces) {
    const double len = pc.length();
    if (u <= len) {
      const double dir = pc.to >= pc.from ? 1.0 : -1.0;
      return Point::tree(pc.edge, pc.from + dir * u);
    }
    u -= len;
  }
  const auto& last = path.pieces.back();
  return Point::tree(last.edge, last.to);
}

}  // namespace sccurve::detail

#endif  // SCCURVE_DETAIL_TREE_PATH_HPP
