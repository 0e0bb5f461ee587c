#ifndef SCCURVE_SPACE_HPP
#define SCCURVE_SPACE_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace sccurve {

/// Finite metric tree: named vertices, weighted edges. Validated on construction
/// (connected, acyclic, positive finite lengths) and caches all-pairs vertex
/// distances plus next-hop edges so path queries are O(path length).
class TreeGraph {
 public:
  struct Edge {
    int u;
    int v;
    double length;
  };

  TreeGraph(std::vector<std::string> vertex_names, std::vector<Edge> edges);

  int num_vertices() const { return static_cast<int>(names_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& name(int v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  int vertex_index(const std::string& name) const;

  const std::vector<int>& incident(int v) const { return incident_.at(v); }
  int degree(int v) const { return static_cast<int>(incident_.at(v).size()); }
  int max_degree() const { return max_degree_; }
  double total_length() const;

  double vertex_distance(int a, int b) const { return dist_[index(a, b)]; }
  /// Edge id of the first edge on the path from `from` to `to`, or -1 if equal.
  int next_edge(int from, int to) const { return next_[index(from, to)]; }
  int other_end(int e, int v) const {
    const Edge& ed = edges_.at(e);
    return ed.u == v ? ed.v : ed.u;
  }

 private:
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a) * names_.size() + static_cast<std::size_t>(b);
  }

  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<double> dist_;
  std::vector<int> next_;
  int max_degree_ = 0;
};

class Space;

struct EuclideanSpace {
  int dim;
};
struct HyperbolicPlane {};
struct TreeSpace {
  std::shared_ptr<const TreeGraph> graph;
};
/// k segments glued at a common center; leg lengths are finite.
struct SpiderSpace {
  std::vector<double> legs;
  int k() const { return static_cast<int>(legs.size()); }
};
/// k closed half-planes glued along a common spine line.
struct BookSpace {
  int sheets;
};
struct ProductSpace {
  std::shared_ptr<const Space> left;
  std::shared_ptr<const Space> right;
};

/// Tagged descriptor of a concrete geodesic (CAT(0)) space.
class Space {
 public:
  using Kind = std::variant<EuclideanSpace, HyperbolicPlane, TreeSpace, SpiderSpace,
                            BookSpace, ProductSpace>;

  explicit Space(Kind kind, double tolerance = 1e-9);

  static Space euclidean(int dim);
  static Space hyperbolic();
  static Space tree(TreeGraph graph);
  static Space spider(int k, double leg_length = 1.0);
  static Space spider(std::vector<double> leg_lengths);
  static Space book(int sheets);
  static Space product(const Space& left, const Space& right);

  const Kind& kind() const { return kind_; }
  template <class T>
  const T* as() const {
    return std::get_if<T>(&kind_);
  }
  double tolerance() const { return tolerance_; }
  Space with_tolerance(double tol) const { return Space(kind_, tol); }

  /// Short human-readable tag such as "spider:5" or "euclidean:2".
  std::string label() const;

 private:
  Kind kind_;
  double tolerance_;
};

struct Point;

struct EuclidCoord {
  Eigen::VectorXd x;
};
/// Hyperboloid model: <x,x>_M = -x0^2 + x1^2 + x2^2 = -1, x0 > 0.
struct HyperCoord {
  Eigen::Vector3d x;
};
struct TreeCoord {
  int edge;
  double offset;
};
struct SpiderCoord {
  int leg;
  double radius;
};
struct BookCoord {
  int sheet;
  double a;
  double b;
};
struct ProductCoord {
  std::vector<Point> parts;
};

struct Point {
  std::variant<EuclidCoord, HyperCoord, TreeCoord, SpiderCoord, BookCoord, ProductCoord> data;

  static Point euclid(Eigen::VectorXd x) { return Point{EuclidCoord{std::move(x)}}; }
  static Point euclid(std::initializer_list<double> xs);
  /// Hyperboloid point from its raw (x0, x1, x2) coordinates.
  static Point hyper(const Eigen::Vector3d& x) { return Point{HyperCoord{x}}; }
  /// Lift of (x1, x2) onto the upper sheet of the hyperboloid.
  static Point hyper_lift(double x1, double x2);
  static Point tree(int edge, double offset) { return Point{TreeCoord{edge, offset}}; }
  static Point spider(int leg, double radius) { return Point{SpiderCoord{leg, radius}}; }
  static Point book(int sheet, double a, double b) { return Point{BookCoord{sheet, a, b}}; }
  static Point product(Point left, Point right);

  template <class T>
  const T* as() const {
    return std::get_if<T>(&data);
  }
};

/// Tree point placed at vertex v (canonical edge-offset representation).
Point tree_vertex_point(const TreeGraph& g, int v);

/// Validates that `p` belongs to `space`; throws std::invalid_argument otherwise.
void check_point(const Space& space, const Point& p);

/// Validated point in canonical form: spider/book spine points, tree vertices and
/// hyperboloid renormalization are all collapsed to a unique representation.
Point canonical(const Space& space, const Point& p);

/// Coordinates flattened for lexicographic ordering and serialization.
std::vector<double> flat_coordinates(const Point& p);

/// A distinguished "origin" of the space (Euclidean 0, hyperboloid apex, tree
/// vertex 0, spider center, book spine origin).
Point default_point(const Space& space);

/// Minkowski form <x,y> = -x0 y0 + x1 y1 + x2 y2.
inline double minkowski(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

}  // namespace sccurve

#endif  // SCCURVE_SPACE_HPP
