#include "sccurve/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace sccurve {

TreeGraph::TreeGraph(std::vector<std::string> vertex_names, std::vector<Edge> edges)
    : names_(std::move(vertex_names)), edges_(std::move(edges)) {
  const int n = num_vertices();
  if (n < 2) throw std::invalid_argument("tree needs at least two vertices");
  if (num_edges() != n - 1) throw std::invalid_argument("tree must have |V|-1 edges");
  incident_.assign(n, {});
  for (int e = 0; e < num_edges(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.u < 0 || ed.u >= n || ed.v < 0 || ed.v >= n || ed.u == ed.v)
      throw std::invalid_argument("tree edge has invalid endpoints");
    if (!(ed.length > 0.0) || !std::isfinite(ed.length))
      throw std::invalid_argument("tree edge length must be positive and finite");
    incident_[ed.u].push_back(e);
    incident_[ed.v].push_back(e);
  }
  for (const auto& inc : incident_) max_degree_ = std::max(max_degree_, static_cast<int>(inc.size()));

  dist_.assign(static_cast<std::size_t>(n) * n, 0.0);
  next_.assign(static_cast<std::size_t>(n) * n, -1);
  // BFS from each target records, for every vertex, the edge leading toward it.
  for (int target = 0; target < n; ++target) {
    std::vector<char> seen(n, 0);
    std::queue<int> queue;
    queue.push(target);
    seen[target] = 1;
    int reached = 0;
    while (!queue.empty()) {
      const int w = queue.front();
      queue.pop();
      ++reached;
      for (int e : incident_[w]) {
        const int z = other_end(e, w);
        if (seen[z]) continue;
        seen[z] = 1;
        dist_[index(z, target)] = dist_[index(w, target)] + edges_[e].length;
        next_[index(z, target)] = e;
        queue.push(z);
      }
    }
    if (reached != n) throw std::invalid_argument("tree is not connected");
  }
}

int TreeGraph::vertex_index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::invalid_argument("unknown tree vertex: " + name);
  return static_cast<int>(it - names_.begin());
}

double TreeGraph::total_length() const {
  double total = 0.0;
  for (const auto& e : edges_) total += e.length;
  return total;
}

Space::Space(Kind kind, double tolerance) : kind_(std::move(kind)), tolerance_(tolerance) {
  if (!(tolerance_ > 0.0)) throw std::invalid_argument("space tolerance must be positive");
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EuclideanSpace>) {
          if (s.dim < 1) throw std::invalid_argument("euclidean dimension must be >= 1");
        } else if constexpr (std::is_same_v<T, TreeSpace>) {
          if (!s.graph) throw std::invalid_argument("tree space without graph");
        } else if constexpr (std::is_same_v<T, SpiderSpace>) {
          if (s.k() < 2) throw std::invalid_argument("spider needs k >= 2 legs");
          for (double l : s.legs)
            if (!(l > 0.0) || !std::isfinite(l))
              throw std::invalid_argument("spider leg lengths must be positive and finite");
        } else if constexpr (std::is_same_v<T, BookSpace>) {
          if (s.sheets < 2) throw std::invalid_argument("book needs k >= 2 sheets");
        } else if constexpr (std::is_same_v<T, ProductSpace>) {
          if (!s.left || !s.right) throw std::invalid_argument("product space with missing factor");
        }
      },
      kind_);
}

Space Space::euclidean(int dim) { return Space(EuclideanSpace{dim}); }
Space Space::hyperbolic() { return Space(HyperbolicPlane{}); }
Space Space::tree(TreeGraph graph) {
  return Space(TreeSpace{std::make_shared<const TreeGraph>(std::move(graph))});
}
Space Space::spider(int k, double leg_length) {
  if (k < 2) throw std::invalid_argument("spider needs k >= 2 legs");
  return Space(SpiderSpace{std::vector<double>(k, leg_length)});
}
Space Space::spider(std::vector<double> leg_lengths) { return Space(SpiderSpace{std::move(leg_lengths)}); }
Space Space::book(int sheets) { return Space(BookSpace{sheets}); }
Space Space::product(const Space& left, const Space& right) {
  return Space(ProductSpace{std::make_shared<const Space>(left), std::make_shared<const Space>(right)},
               std::max(left.tolerance(), right.tolerance()));
}

std::string Space::label() const {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EuclideanSpace>) {
          return "euclidean:" + std::to_string(s.dim);
        } else if constexpr (std::is_same_v<T, HyperbolicPlane>) {
          return "hyperbolic";
        } else if constexpr (std::is_same_v<T, TreeSpace>) {
          return "tree:" + std::to_string(s.graph->num_edges());
        } else if constexpr (std::is_same_v<T, SpiderSpace>) {
          return "spider:" + std::to_string(s.k());
        } else if constexpr (std::is_same_v<T, BookSpace>) {
          return "book:" + std::to_string(s.sheets);
        } else {
          return "product(" + s.left->label() + "|" + s.right->label() + ")";
        }
      },
      kind_);
}

Point Point::euclid(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return euclid(std::move(v));
}

Point Point::hyper_lift(double x1, double x2) {
  return hyper(Eigen::Vector3d(std::sqrt(1.0 + x1 * x1 + x2 * x2), x1, x2));
}

Point Point::product(Point left, Point right) {
  ProductCoord c;
  c.parts.push_back(std::move(left));
  c.parts.push_back(std::move(right));
  return Point{std::move(c)};
}

Point tree_vertex_point(const TreeGraph& g, int v) {
  if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("tree vertex out of range");
  const int e = g.incident(v).front();
  const auto& ed = g.edge(e);
  return Point::tree(e, ed.u == v ? 0.0 : ed.length);
}

namespace {

[[noreturn]] void mismatch(const Space& space) {
  throw std::invalid_argument("point does not belong to space " + space.label());
}

}  // namespace

void check_point(const Space& space, const Point& p) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        const double tol = space.tolerance();
        if constexpr (std::is_same_v<T, EuclideanSpace>) {
          const auto* c = p.as<EuclidCoord>();
          if (!c || c->x.size() != s.dim) mismatch(space);
          if (!c->x.allFinite()) throw std::invalid_argument("non-finite euclidean coordinates");
        } else if constexpr (std::is_same_v<T, HyperbolicPlane>) {
          const auto* c = p.as<HyperCoord>();
          if (!c) mismatch(space);
          const double q = minkowski(c->x, c->x);
          if (!(c->x[0] > 0.0) || std::abs(q + 1.0) > 1e-6 * std::max(1.0, c->x[0] * c->x[0]))
            throw std::invalid_argument("point is not on the upper hyperboloid sheet");
        } else if constexpr (std::is_same_v<T, TreeSpace>) {
          const auto* c = p.as<TreeCoord>();
          if (!c || c->edge < 0 || c->edge >= s.graph->num_edges()) mismatch(space);
          const double len = s.graph->edge(c->edge).length;
          if (c->offset < -tol || c->offset > len + tol)
            throw std::invalid_argument("tree offset outside its edge");
        } else if constexpr (std::is_same_v<T, SpiderSpace>) {
          const auto* c = p.as<SpiderCoord>();
          if (!c || c->leg < 0 || c->leg >= s.k()) mismatch(space);
          if (c->radius < -tol || c->radius > s.legs[c->leg] + tol)
            throw std::invalid_argument("spider radius outside its leg");
        } else if constexpr (std::is_same_v<T, BookSpace>) {
          const auto* c = p.as<BookCoord>();
          if (!c || c->sheet < 0 || c->sheet >= s.sheets) mismatch(space);
          if (c->b < -tol || !std::isfinite(c->a) || !std::isfinite(c->b))
            throw std::invalid_argument("book point needs b >= 0");
        } else {
          const auto* c = p.as<ProductCoord>();
          if (!c || c->parts.size() != 2) mismatch(space);
          check_point(*s.left, c->parts[0]);
          check_point(*s.right, c->parts[1]);
        }
      },
      space.kind());
}

Point canonical(const Space& space, const Point& p) {
  check_point(space, p);
  const double tol = space.tolerance();
  return std::visit(
      [&](const auto& s) -> Point {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EuclideanSpace>) {
          return p;
        } else if constexpr (std::is_same_v<T, HyperbolicPlane>) {
          const auto& x = p.as<HyperCoord>()->x;
          return Point::hyper_lift(x[1], x[2]);
        } else if constexpr (std::is_same_v<T, TreeSpace>) {
          const auto& c = *p.as<TreeCoord>();
          const auto& g = *s.graph;
          const auto& ed = g.edge(c.edge);
          if (c.offset <= tol) return tree_vertex_point(g, ed.u);
          if (c.offset >= ed.length - tol) return tree_vertex_point(g, ed.v);
          return p;
        } else if constexpr (std::is_same_v<T, SpiderSpace>) {
          const auto& c = *p.as<SpiderCoord>();
          if (c.radius <= tol) return Point::spider(0, 0.0);
          return Point::spider(c.leg, std::min(c.radius, s.legs[c.leg]));
        } else if constexpr (std::is_same_v<T, BookSpace>) {
          const auto& c = *p.as<BookCoord>();
          if (c.b <= tol) return Point::book(0, c.a, 0.0);
          return p;
        } else {
          const auto& c = *p.as<ProductCoord>();
          return Point::product(canonical(*s.left, c.parts[0]), canonical(*s.right, c.parts[1]));
        }
      },
      space.kind());
}

std::vector<double> flat_coordinates(const Point& p) {
  return std::visit(
      [](const auto& c) -> std::vector<double> {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, EuclidCoord>) {
          return std::vector<double>(c.x.data(), c.x.data() + c.x.size());
        } else if constexpr (std::is_same_v<T, HyperCoord>) {
          return {c.x[0], c.x[1], c.x[2]};
        } else if constexpr (std::is_same_v<T, TreeCoord>) {
          return {static_cast<double>(c.edge), c.offset};
        } else if constexpr (std::is_same_v<T, SpiderCoord>) {
          return {static_cast<double>(c.leg), c.radius};
        } else if constexpr (std::is_same_v<T, BookCoord>) {
          return {static_cast<double>(c.sheet), c.a, c.b};
        } else {
          std::vector<double> out;
          for (const auto& part : c.parts) {
            auto f = flat_coordinates(part);
            out.insert(out.end(), f.begin(), f.end());
          }
          return out;
        }
      },
      p.data);
}

Point default_point(const Space& space) {
  return std::visit(
      [](const auto& s) -> Point {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EuclideanSpace>) {
          return Point::euclid(Eigen::VectorXd::Zero(s.dim));
        } else if constexpr (std::is_same_v<T, HyperbolicPlane>) {
          return Point::hyper_lift(0.0, 0.0);
        } else if constexpr (std::is_same_v<T, TreeSpace>) {
          return tree_vertex_point(*s.graph, 0);
        } else if constexpr (std::is_same_v<T, SpiderSpace>) {
          return Point::spider(0, 0.0);
        } else if constexpr (std::is_same_v<T, BookSpace>) {
          return Point::book(0, 0.0, 0.0);
        } else {
          return Point::product(default_point(*s.left), default_point(*s.right));
        }
      },
      space.kind());
}

}  // namespace sccurve
