#include "sccurve/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sccurve {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw InputError("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InputError("bad number '" + s + "'");
  }
}

int to_int(const std::string& s) {
  const double v = to_double(s);
  if (v != std::floor(v)) throw InputError("expected an integer, got '" + s + "'");
  return static_cast<int>(v);
}

// Non-finite numbers have no JSON form; they are written as strings.
Json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

Json space_to_json(const Space& space) {
  Json j = std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        Json o;
        if constexpr (std::is_same_v<T, EuclideanSpace>) {
          o["kind"] = "euclidean";
          o["dim"] = s.dim;
        } else if constexpr (std::is_same_v<T, HyperbolicPlane>) {
          o["kind"] = "hyperbolic";
        } else if constexpr (std::is_same_v<T, TreeSpace>) {
          o["kind"] = "tree";
          o["vertices"] = s.graph->names();
          Json edges = Json::array();
          for (const auto& e : s.graph->edges()) edges.push_back(Json::array({e.u, e.v, e.length}));
          o["edges"] = edges;
        } else if constexpr (std::is_same_v<T, SpiderSpace>) {
          o["kind"] = "spider";
          o["legs"] = s.legs;
        } else if constexpr (std::is_same_v<T, BookSpace>) {
          o["kind"] = "book";
          o["sheets"] = s.sheets;
        } else {
          o["kind"] = "product";
          o["left"] = space_to_json(*s.left);
          o["right"] = space_to_json(*s.right);
        }
        return o;
      },
      space.kind());
  j["tolerance"] = space.tolerance();
  return j;
}

Space space_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    Space s = [&]() -> Space {
      if (kind == "euclidean") return Space::euclidean(j.at("dim").get<int>());
      if (kind == "hyperbolic") return Space::hyperbolic();
      if (kind == "spider") return Space::spider(j.at("legs").get<std::vector<double>>());
      if (kind == "book") return Space::book(j.at("sheets").get<int>());
      if (kind == "product") return Space::product(space_from_json(j.at("left")), space_from_json(j.at("right")));
      if (kind == "tree") {
        std::vector<TreeGraph::Edge> edges;
        for (const auto& e : j.at("edges"))
          edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
        return Space::tree(TreeGraph(j.at("vertices").get<std::vector<std::string>>(), std::move(edges)));
      }
      throw InputError("unknown space kind '" + kind + "'");
    }();
    if (j.contains("tolerance")) s = s.with_tolerance(j.at("tolerance").get<double>());
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed space: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid space: ") + e.what());
  }
}

Json point_to_json(const Point& p) {
  return std::visit(
      [](const auto& c) -> Json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, EuclidCoord>) {
          return std::vector<double>(c.x.data(), c.x.data() + c.x.size());
        } else if constexpr (std::is_same_v<T, HyperCoord>) {
          return Json::array({c.x[0], c.x[1], c.x[2]});
        } else if constexpr (std::is_same_v<T, TreeCoord>) {
          return Json::array({c.edge, c.offset});
        } else if constexpr (std::is_same_v<T, SpiderCoord>) {
          return Json::array({c.leg, c.radius});
        } else if constexpr (std::is_same_v<T, BookCoord>) {
          return Json::array({c.sheet, c.a, c.b});
        } else {
          return Json::array({point_to_json(c.parts[0]), point_to_json(c.parts[1])});
        }
      },
      p.data);
}

Point point_from_json(const Space& space, const Json& j) {
  try {
    if (!j.is_array()) throw InputError("point must be an array");
    Point p = std::visit(
        [&](const auto& s) -> Point {
          using T = std::decay_t<decltype(s)>;
          auto need = [&](std::size_t n) {
            if (j.size() != n) throw InputError("point has " + std::to_string(j.size()) + " entries, expected " +
                                                std::to_string(n));
          };
          if constexpr (std::is_same_v<T, EuclideanSpace>) {
            need(static_cast<std::size_t>(s.dim));
            Eigen::VectorXd x(s.dim);
            for (int i = 0; i < s.dim; ++i) x[i] = j.at(i).get<double>();
            return Point::euclid(x);
          } else if constexpr (std::is_same_v<T, HyperbolicPlane>) {
            need(3);
            return Point::hyper(Eigen::Vector3d(j[0].get<double>(), j[1].get<double>(), j[2].get<double>()));
          } else if constexpr (std::is_same_v<T, TreeSpace>) {
            need(2);
            return Point::tree(j[0].get<int>(), j[1].get<double>());
          } else if constexpr (std::is_same_v<T, SpiderSpace>) {
            need(2);
            return Point::spider(j[0].get<int>(), j[1].get<double>());
          } else if constexpr (std::is_same_v<T, BookSpace>) {
            need(3);
            return Point::book(j[0].get<int>(), j[1].get<double>(), j[2].get<double>());
          } else {
            need(2);
            return Point::product(point_from_json(*s.left, j[0]), point_from_json(*s.right, j[1]));
          }
        },
        space.kind());
    check_point(space, p);
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed point: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid point: ") + e.what());
  }
}

std::string mode_label(CurveMode mode) {
  return mode == CurveMode::Discrete ? "discrete" : "geodesic_interpolated";
}

CurveMode mode_from_label(const std::string& s) {
  if (s == "discrete") return CurveMode::Discrete;
  if (s == "geodesic_interpolated") return CurveMode::GeodesicInterpolated;
  throw InputError("unknown curve mode '" + s + "'");
}

Json curve_to_json(const Curve& curve) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["space"] = space_to_json(curve.space());
  j["mode"] = mode_label(curve.mode());
  if (curve.domain_end()) j["domain_end"] = *curve.domain_end();
  Json samples = Json::array();
  for (const auto& s : curve.samples()) {
    Json o;
    o["t"] = s.t;
    o["p"] = point_to_json(s.p);
    samples.push_back(o);
  }
  j["samples"] = samples;
  return j;
}

Curve curve_from_json(const Json& j) {
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) throw InputError("unsupported schema_version");
    const Space space = space_from_json(j.at("space"));
    std::vector<Sample> samples;
    for (const auto& s : j.at("samples")) samples.push_back({s.at("t").get<double>(), point_from_json(space, s.at("p"))});
    if (samples.empty()) throw InputError("curve has no samples");
    std::optional<double> end;
    if (j.contains("domain_end")) end = j.at("domain_end").get<double>();
    return Curve(space, std::move(samples), mode_from_label(j.at("mode").get<std::string>()), end);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed curve: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid curve: ") + e.what());
  }
}

Json report_to_json(const ViolationReport& r) {
  Json j;
  j["check"] = r.check;
  j["pass"] = r.pass;
  j["max_violation"] = num(r.max_violation);
  j["tolerance"] = r.tolerance;
  j["n_checked"] = r.n_checked;
  j["witness_times"] = r.witness_times;
  Json pts = Json::array();
  for (const auto& p : r.witness_points) pts.push_back(point_to_json(p));
  j["witness_points"] = pts;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json report_to_json(const BoundReport& r) {
  Json j;
  j["bound"] = r.bound;
  j["space"] = r.space;
  j["length"] = num(r.length);
  j["diam"] = num(r.diam);
  if (r.width) j["width"] = num(*r.width);
  if (r.width_std_error) j["width_std_error"] = num(*r.width_std_error);
  Json c;
  for (const auto& [k, v] : r.constants) c[k] = num(v);
  j["constants"] = c;
  j["bound_value"] = num(r.bound_value);
  j["ratio"] = num(r.ratio);
  j["claimed"] = r.claimed;
  j["pass"] = r.pass;
  j["tolerance"] = r.tolerance;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json report_to_json(const WidthReport& r) {
  Json j;
  j["mean_width"] = num(r.mean_width);
  j["n_directions"] = r.n_directions;
  j["seed"] = r.seed;
  j["std_error"] = num(r.std_error);
  j["method"] = r.method;
  return j;
}

Json report_to_json(const ResolventResult& r) {
  Json j;
  j["status"] = status_label(r.status);
  j["value"] = num(r.value);
  Json pts = Json::array();
  for (const auto& p : r.minimizers) pts.push_back(point_to_json(p));
  j["minimizers"] = pts;
  j["evaluations"] = r.evaluations;
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

std::string bound_csv_header() {
  return "schema_version,space,bound,length,diam,width,bound_value,ratio,claimed,pass";
}

std::string bound_csv_row(const BoundReport& r) {
  auto f = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::ostringstream o;
  o << kSchemaVersion << ',' << r.space << ',' << r.bound << ',' << f(r.length) << ',' << f(r.diam) << ','
    << (r.width ? f(*r.width) : "") << ',' << f(r.bound_value) << ',' << f(r.ratio) << ','
    << (r.claimed ? "true" : "false") << ',' << (r.pass ? "true" : "false");
  return o.str();
}

Space parse_space_spec(const std::string& spec_in) {
  const std::string spec = trim(spec_in);
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (kind == "hyperbolic") {
      if (!rest.empty()) throw InputError("hyperbolic takes no parameters");
      return Space::hyperbolic();
    }
    if (rest.empty()) throw InputError("space spec '" + spec + "' needs a parameter");
    if (kind == "euclidean") return Space::euclidean(to_int(rest));
    if (kind == "book") return Space::book(to_int(rest));
    if (kind == "tree") return Space::tree(load_tree_file(rest));
    if (kind == "product") {
      const auto bar = rest.find('|');
      if (bar == std::string::npos) throw InputError("product spec needs 'A|B'");
      return Space::product(parse_space_spec(rest.substr(0, bar)), parse_space_spec(rest.substr(bar + 1)));
    }
    if (kind == "spider") {
      const auto parts = split(rest, ':');
      const int k = to_int(parts[0]);
      if (parts.size() == 1) return Space::spider(k);
      if (parts.size() != 2) throw InputError("spider spec is spider:K[:LENGTHS]");
      const auto lens = split(parts[1], ',');
      if (lens.size() == 1) return Space::spider(k, to_double(lens[0]));
      if (static_cast<int>(lens.size()) != k) throw InputError("spider needs K leg lengths");
      std::vector<double> legs;
      for (const auto& l : lens) legs.push_back(to_double(l));
      return Space::spider(legs);
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid space spec: ") + e.what());
  }
  throw InputError("unknown space kind '" + kind + "'");
}

TreeGraph parse_tree(const std::string& text) {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  std::vector<TreeGraph::Edge> edges;
  auto vertex = [&](const std::string& n) {
    auto it = index.find(n);
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(names.size());
    names.push_back(n);
    index[n] = id;
    return id;
  };
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    std::vector<std::string> args;
    for (std::string a; ls >> a;) args.push_back(a);
    const std::string where = "tree line " + std::to_string(lineno) + ": ";
    if (word == "vertex") {
      if (args.size() != 1) throw InputError(where + "expected 'vertex NAME'");
      if (index.count(args[0])) throw InputError(where + "duplicate vertex '" + args[0] + "'");
      vertex(args[0]);
    } else if (word == "edge") {
      if (args.size() != 3) throw InputError(where + "expected 'edge U V LENGTH'");
      const int u = vertex(args[0]);
      const int v = vertex(args[1]);
      edges.push_back({u, v, to_double(args[2])});
    } else {
      throw InputError(where + "unknown directive '" + word + "'");
    }
  }
  try {
    return TreeGraph(std::move(names), std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid tree: ") + e.what());
  }
}

TreeGraph load_tree_file(const std::string& path) { return parse_tree(read_file(path)); }

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw InputError("config line " + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

Point parse_point(const Space& space, const std::string& text) {
  Json arr = Json::array();
  for (const auto& s : split(text, ',')) arr.push_back(to_double(s));
  if (space.as<ProductSpace>()) throw InputError("product points cannot be given as a flat list");
  return point_from_json(space, arr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw InputError("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace sccurve
