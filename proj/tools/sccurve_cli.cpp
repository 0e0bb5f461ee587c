// Command-line harness: simulate, verify, audit, counterexample, report.
// Exit codes: 0 pass, 1 property violation, 2 usage or input error.

#include <glob.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sccurve/generators.hpp"
#include "sccurve/io.hpp"
#include "sccurve/metric.hpp"
#include "sccurve/proximal.hpp"
#include "sccurve/verify.hpp"
#include "sccurve/width.hpp"

using namespace sccurve;
namespace fs = std::filesystem;

namespace {

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flag values win over the config file; config values win over defaults.
struct Settings {
  std::map<std::string, std::string> values;

  void load(const std::optional<std::string>& config) {
    if (config) values = parse_config(read_file(*config));
  }
  void set(const std::string& key, const std::optional<std::string>& flag) {
    if (flag) values[key] = *flag;
  }
  std::optional<std::string> get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end() || it->second.empty()) return std::nullopt;
    return it->second;
  }
  std::string str(const std::string& key, const std::string& def) const { return get(key).value_or(def); }
  double real(const std::string& key, double def) const {
    auto v = get(key);
    if (!v) return def;
    try {
      std::size_t pos = 0;
      const double d = std::stod(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument(*v);
      return d;
    } catch (const std::logic_error&) {
      throw UsageError("'" + key + "' expects a number, got '" + *v + "'");
    }
  }
  long long integer(const std::string& key, long long def) const {
    const double d = real(key, static_cast<double>(def));
    if (d != std::floor(d)) throw UsageError("'" + key + "' expects an integer");
    return static_cast<long long>(d);
  }
  std::uint64_t seed() const {
    auto v = get("seed");
    if (!v) return 1;
    try {
      return std::stoull(*v);
    } catch (const std::logic_error&) {
      throw UsageError("seed must be a non-negative integer");
    }
  }
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

fs::path out_dir(const Settings& s) { return fs::path(s.str("out", "out")); }

void write(const fs::path& p, const std::string& content) { write_file_atomic(p.string(), content); }

Curve load_curve(const std::string& path) { return curve_from_json(Json::parse(read_file(path))); }

// ---------------------------------------------------------------- simulate

int cmd_simulate(const Settings& s) {
  const Space space = parse_space_spec(s.get("space").value_or(""));
  const std::uint64_t seed = s.seed();
  ObjectiveParams params;
  if (auto a = s.get("anchor")) params.p = parse_point(space, *a);
  if (auto a = s.get("anchor2")) params.q = parse_point(space, *a);
  params.radius = s.real("radius", params.radius);
  params.step = s.real("step", params.step);
  params.value = s.real("value", params.value);
  const std::string name = s.str("objective", "half_sq_dist");
  ObjectiveFn f;
  try {
    f = make_objective(space, name, params);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::vector<double> taus;
  for (const auto& t : split_list(s.str("tau", "0.5"))) {
    Settings one;
    one.values["tau"] = t;
    taus.push_back(one.real("tau", 0.0));
  }
  const long long steps = s.integer("steps", taus.size() > 1 ? static_cast<long long>(taus.size()) : 10);
  if (steps < 0) throw UsageError("steps must be non-negative");
  if (taus.size() == 1) taus.assign(static_cast<std::size_t>(steps), taus[0]);
  if (static_cast<long long>(taus.size()) != steps) throw UsageError("tau list length differs from steps");
  for (double t : taus)
    if (!(t > 0.0)) throw UsageError("tau must be positive");

  Rng rng(seed);
  const Point x0 = s.get("start") ? parse_point(space, *s.get("start")) : random_point(space, rng, 1.0);
  if (!f.in_domain(x0)) throw UsageError("start point lies outside the objective's domain");

  const GradientCurveRun run = discrete_gradient_curve(f, space, x0, taus);
  const Curve disc = discrete_curve(space, run);
  const Curve interp = geodesic_interpolation(space, run);
  const fs::path dir = out_dir(s);
  write(dir / "curve_discrete.json", dump(curve_to_json(disc)));
  write(dir / "curve_interpolated.json", dump(curve_to_json(interp)));

  std::ostringstream trace;
  trace << "schema_version,k,t,tau,value,status\n";
  double t = 0.0;
  for (std::size_t k = 0; k < run.points.size(); ++k) {
    if (k > 0) t += run.taus[k - 1];
    trace << kSchemaVersion << ',' << k << ',' << fmt(t) << ',' << (k > 0 ? fmt(run.taus[k - 1]) : "") << ','
          << fmt(run.values[k]) << ',' << (k > 0 ? status_label(run.statuses[k - 1]) : "start") << '\n';
  }
  write(dir / "trace.csv", trace.str());

  Json log;
  log["schema_version"] = kSchemaVersion;
  log["command"] = "simulate";
  log["seed"] = seed;
  log["space"] = space_to_json(space);
  log["objective"] = name;
  log["convexity"] = convexity_label(f);
  log["start"] = point_to_json(x0);
  log["steps_requested"] = steps;
  log["steps_done"] = run.points.size() - 1;
  log["complete"] = run.complete;
  if (!run.diagnostic.empty()) log["diagnostic"] = run.diagnostic;
  write(dir / "run.json", dump(log));
  if (!run.complete) {
    std::cerr << "simulate: " << run.diagnostic << "\n";
    return kViolation;
  }
  return kPass;
}

// ---------------------------------------------------------------- verify

ViolationReport merge(std::string name, const std::vector<ViolationReport>& parts, double tol) {
  ViolationReport r;
  r.check = std::move(name);
  r.tolerance = tol;
  for (const auto& p : parts) {
    r.n_checked += p.n_checked;
    if (p.max_violation > r.max_violation) r.set_witness(p.max_violation, p.witness_times, p.witness_points);
  }
  return r.finish();
}

ViolationReport run_check(const std::string& check, const Curve& curve, std::uint64_t seed, double tol) {
  const bool interp = curve.mode() == CurveMode::GeodesicInterpolated;
  Rng rng(seed);
  if (check == "self_contracted") {
    SamplingConfig cfg;
    cfg.tol = tol;
    cfg.seed = seed;
    if (interp) {
      cfg.densify_levels = 3;
      cfg.random_triples = 1000;
    }
    return is_self_contracted(curve, cfg);
  }
  if (check == "tail") return tail_monotonicity(curve, curve.end_time(), tol);
  if (check == "stationarity") return stationarity_check(curve, tol);
  if (check == "angle") return angle_estimate_scan(curve, 200000, seed);
  if (check == "tT") return tT_check(curve, tol);
  if (check == "confinement") {
    std::vector<ViolationReport> parts;
    const double scale = std::max(curve_diameter(curve), 1e-3);
    std::uniform_int_distribution<std::size_t> pick(0, curve.size() - 1);
    for (int i = 0; i < 100; ++i)
      parts.push_back(ball_confinement_check(curve, curve[pick(rng)].p, uniform(rng, 0.05, 1.0) * scale, tol));
    return merge("ball_confinement", parts, tol);
  }
  if (check == "reparam") {
    std::vector<ViolationReport> parts;
    const double a = curve.start_time(), b = curve.end_time();
    for (int i = 0; i < 100; ++i) {
      const double power = uniform(rng, 0.2, 5.0);
      std::vector<double> s;
      for (int j = 0; j < 20; ++j) s.push_back(uniform(rng, 0.0, 1.0));
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      SamplingConfig cfg;
      cfg.tol = tol;
      parts.push_back(reparam_preserves(curve, [&](double u) { return std::min(b, a + (b - a) * std::pow(u, power)); },
                                        s, cfg));
    }
    return merge("reparam_preserves", parts, tol);
  }
  if (check == "decrease") {
    DecreaseScanConfig cfg;
    cfg.seed = seed;
    cfg.tol = tol;
    return directional_decrease_scan(curve, cfg);
  }
  throw UsageError("unknown check '" + check + "'");
}

int cmd_verify(const Settings& s, const std::string& curve_path) {
  const auto checks = split_list(s.str("check", "self_contracted"));
  if (checks.empty()) throw UsageError("no checks selected");
  static const std::vector<std::string> known = {"self_contracted", "tail", "stationarity", "angle",
                                                 "tT", "confinement", "reparam", "decrease"};
  for (const auto& c : checks)
    if (std::find(known.begin(), known.end(), c) == known.end()) throw UsageError("unknown check '" + c + "'");
  const Curve curve = load_curve(curve_path);
  const std::uint64_t seed = s.seed();
  const double tol = s.real("tol", 1e-9);
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "verify";
  out["seed"] = seed;
  out["space"] = curve.space().label();
  out["mode"] = mode_label(curve.mode());
  out["n_samples"] = curve.size();
  Json reports = Json::array();
  bool pass = true;
  for (const auto& c : checks) {
    const ViolationReport r = run_check(c, curve, seed, tol);
    pass = pass && r.pass;
    reports.push_back(report_to_json(r));
  }
  out["reports"] = reports;
  out["pass"] = pass;
  write(out_dir(s) / "verify.json", dump(out));
  return pass ? kPass : kViolation;
}

// ---------------------------------------------------------------- audit

int cmd_audit(const Settings& s, const std::string& curve_path) {
  const Curve curve = load_curve(curve_path);
  const std::string bound = s.str("bound", "auto");
  const double tol = s.real("tol", 1e-9);
  WidthConfig wc;
  wc.seed = s.seed();
  const Space& sp = curve.space();
  std::vector<BoundReport> reports;
  try {
    if (bound == "auto") {
      reports = applicable_bounds(curve, wc, tol);
    } else if (bound == "euclidean") {
      if (!sp.as<EuclideanSpace>()) throw UsageError("euclidean bound needs a Euclidean curve");
      reports.push_back(euclidean_length_bound(curve, wc, tol));
    } else if (bound == "tree") {
      if (!sp.as<TreeSpace>() && !sp.as<SpiderSpace>()) throw UsageError("tree bound needs a tree or spider curve");
      reports.push_back(tree_length_bound(curve, tol));
    } else if (bound == "book") {
      if (!sp.as<BookSpace>()) throw UsageError("book bound needs a book curve");
      reports.push_back(book_length_bound(curve, tol));
    } else if (bound == "generic") {
      reports.push_back(generic_cat0_bound(curve, s.real("sigma", 1.0), tol));
    } else {
      throw UsageError("unknown bound '" + bound + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (reports.empty()) throw UsageError("no bound applies to space " + sp.label());
  Json arr = Json::array();
  std::string csv = bound_csv_header() + "\n";
  bool pass = true;
  for (const auto& r : reports) {
    arr.push_back(report_to_json(r));
    csv += bound_csv_row(r) + "\n";
    pass = pass && r.pass;
  }
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "audit";
  out["seed"] = wc.seed;
  out["reports"] = arr;
  out["pass"] = pass;
  write(out_dir(s) / "audit.json", dump(out));
  write(out_dir(s) / "audit.csv", csv);
  return pass ? kPass : kViolation;
}

// ---------------------------------------------------------------- counterexample

std::string counterexample_header() {
  return "schema_version,family,k,length,diam,length_over_diam,self_contracted,bound_value,bound_pass";
}

int cmd_counterexample(const Settings& s, bool series) {
  const long long kmax = s.integer("k", 5);
  if (kmax < 2) throw UsageError("k must be >= 2");
  const fs::path dir = out_dir(s);
  std::string csv = counterexample_header() + "\n";
  Json rows = Json::array();
  bool pass = true;
  for (long long k = series ? 2 : kmax; k <= kmax; ++k) {
    const int ki = static_cast<int>(k);
    const WitnessResult w = unrectifiable_witness(ki);
    const Curve spider = spider_jump_curve(ki);
    const BoundReport sb = tree_length_bound(spider);
    const ViolationReport ssc = is_self_contracted(spider);
    struct Row {
      std::string family;
      double length, diam, ratio;
      bool sc;
      double bound;
      bool bpass;
    };
    const Row list[] = {
        {"orthonormal", w.length, w.diam, w.growth, w.self_contracted.pass, w.bound.bound_value, w.bound.pass},
        {"spider", sb.length, sb.diam, length_over_diameter(spider), ssc.pass, sb.bound_value, sb.pass}};
    for (const auto& r : list) {
      csv += std::to_string(kSchemaVersion) + "," + r.family + "," + std::to_string(k) + "," + fmt(r.length) + "," +
             fmt(r.diam) + "," + fmt(r.ratio) + "," + (r.sc ? "true" : "false") + "," + fmt(r.bound) + "," +
             (r.bpass ? "true" : "false") + "\n";
      Json j;
      j["family"] = r.family;
      j["k"] = k;
      j["length"] = r.length;
      j["diam"] = r.diam;
      j["length_over_diam"] = r.ratio;
      j["self_contracted"] = r.sc;
      j["bound_value"] = r.bound;
      j["bound_pass"] = r.bpass;
      rows.push_back(j);
      pass = pass && r.sc && r.bpass;
    }
    if (k == kmax) {
      write(dir / ("orthonormal_" + std::to_string(k) + ".json"), dump(curve_to_json(w.curve)));
      write(dir / ("spider_" + std::to_string(k) + ".json"), dump(curve_to_json(spider)));
    }
  }
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "counterexample";
  out["rows"] = rows;
  out["pass"] = pass;
  write(dir / "counterexample.json", dump(out));
  write(dir / "counterexample.csv", csv);
  return pass ? kPass : kViolation;
}

// ---------------------------------------------------------------- report

std::vector<std::string> expand(const std::vector<std::string>& patterns) {
  std::vector<std::string> files;
  for (const auto& p : patterns) {
    glob_t g{};
    if (glob(p.c_str(), 0, nullptr, &g) == 0)
      for (std::size_t i = 0; i < g.gl_pathc; ++i) files.emplace_back(g.gl_pathv[i]);
    globfree(&g);
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  return files;
}

int cmd_report(const Settings& s, const std::vector<std::string>& patterns) {
  const auto files = expand(patterns);
  struct Agg {
    long long rows = 0, passed = 0;
    double max_ratio = 0.0, sum_ratio = 0.0;
  };
  std::map<std::pair<std::string, std::string>, Agg> agg;
  std::map<std::string, std::map<long long, double>> growth;
  long long total = 0;
  for (const auto& f : files) {
    std::istringstream in(read_file(f));
    std::string header;
    if (!std::getline(in, header)) continue;
    const bool audit = header == bound_csv_header();
    const bool counter = header == counterexample_header();
    if (!audit && !counter) throw InputError("unrecognized CSV header in '" + f + "'");
    for (std::string line; std::getline(in, line);) {
      if (line.empty()) continue;
      std::vector<std::string> c;
      std::istringstream ls(line);
      for (std::string cell; std::getline(ls, cell, ',');) c.push_back(cell);
      if (!line.empty() && line.back() == ',') c.emplace_back();
      auto to_d = [&](const std::string& v) {
        try {
          return std::stod(v);
        } catch (const std::logic_error&) {
          throw InputError("bad number '" + v + "' in '" + f + "'");
        }
      };
      if (audit) {
        if (c.size() != 10) throw InputError("malformed audit row in '" + f + "'");
        Agg& a = agg[{c[1], c[2]}];
        const double ratio = to_d(c[7]);
        ++a.rows;
        a.passed += c[9] == "true";
        a.max_ratio = std::max(a.max_ratio, ratio);
        a.sum_ratio += ratio;
      } else {
        if (c.size() != 9) throw InputError("malformed counterexample row in '" + f + "'");
        growth[c[1]][std::stoll(c[2])] = to_d(c[5]);
        Agg& a = agg[{c[1], "counterexample"}];
        ++a.rows;
        a.passed += c[6] == "true" && c[8] == "true";
      }
      ++total;
    }
  }
  if (total == 0) throw UsageError("no report rows found");
  std::string out = "schema_version,space,bound,rows,passed,max_ratio,mean_ratio,pass\n";
  bool pass = true;
  for (const auto& [key, a] : agg) {
    const bool ok = a.passed == a.rows;
    pass = pass && ok;
    out += std::to_string(kSchemaVersion) + "," + key.first + "," + key.second + "," + std::to_string(a.rows) + "," +
           std::to_string(a.passed) + "," + fmt(a.max_ratio) + "," + fmt(a.sum_ratio / a.rows) + "," +
           (ok ? "true" : "false") + "\n";
  }
  const fs::path dir = out_dir(s);
  write(dir / "aggregate.csv", out);
  if (!growth.empty()) {
    std::string g = "schema_version,family,k,length_over_diam,slope\n";
    for (const auto& [family, series] : growth) {
      std::optional<std::pair<long long, double>> prev;
      for (const auto& [k, r] : series) {
        const std::string slope = prev ? fmt((r - prev->second) / static_cast<double>(k - prev->first)) : "";
        g += std::to_string(kSchemaVersion) + "," + family + "," + std::to_string(k) + "," + fmt(r) + "," + slope + "\n";
        prev = {k, r};
      }
    }
    write(dir / "growth.csv", g);
  }
  return pass ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-contracted curves in CAT(0) spaces: simulate, verify, audit, counterexample, report"};
  app.require_subcommand(1);
  std::optional<std::string> config, seed, space, objective, tau, steps, out, check, bound, tol, k, start, anchor,
      anchor2, radius, step, value, sigma;
  std::string curve_path;
  std::vector<std::string> patterns;
  bool series = false;

  auto common = [&](CLI::App* c) {
    c->add_option("--config", config, "flat key = value config file");
    c->add_option("--seed", seed, "64-bit seed");
    c->add_option("--out", out, "output directory");
    c->add_option("--tol", tol, "violation tolerance");
  };
  auto* sim = app.add_subcommand("simulate", "run a discrete gradient curve");
  common(sim);
  sim->add_option("--space", space, "space spec, e.g. euclidean:2, spider:3, book:3, tree:FILE");
  sim->add_option("--objective", objective, "catalog objective name");
  sim->add_option("--tau", tau, "step size or comma list");
  sim->add_option("--steps", steps, "number of steps");
  sim->add_option("--start", start, "start point coordinates");
  sim->add_option("--anchor", anchor, "objective anchor point");
  sim->add_option("--anchor2", anchor2, "second anchor (max_half_sq)");
  sim->add_option("--radius", radius, "dist_to_ball radius");
  sim->add_option("--step", step, "staircase step");
  sim->add_option("--value", value, "const value");

  auto* ver = app.add_subcommand("verify", "check properties of a curve file");
  common(ver);
  ver->add_option("curve", curve_path, "curve JSON")->required();
  ver->add_option("--check", check,
                  "comma list: self_contracted, tail, stationarity, angle, tT, confinement, reparam, decrease");

  auto* aud = app.add_subcommand("audit", "audit a rectifiability bound");
  common(aud);
  aud->add_option("curve", curve_path, "curve JSON")->required();
  aud->add_option("--bound", bound, "euclidean, tree, book, generic or auto");
  aud->add_option("--sigma", sigma, "neighborhood radius for the generic bound");

  auto* cex = app.add_subcommand("counterexample", "orthonormal and spider jump curves");
  common(cex);
  cex->add_option("--k", k, "number of jumps targets (k >= 2)");
  cex->add_flag("--series", series, "emit every k from 2 up to --k");

  auto* rep = app.add_subcommand("report", "aggregate audit and counterexample CSV rows");
  common(rep);
  rep->add_option("inputs", patterns, "CSV files or glob patterns")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    Settings s;
    s.load(config);
    s.set("seed", seed);
    s.set("out", out);
    s.set("tol", tol);
    s.set("space", space);
    s.set("objective", objective);
    s.set("tau", tau);
    s.set("steps", steps);
    s.set("start", start);
    s.set("anchor", anchor);
    s.set("anchor2", anchor2);
    s.set("radius", radius);
    s.set("step", step);
    s.set("value", value);
    s.set("check", check);
    s.set("bound", bound);
    s.set("sigma", sigma);
    s.set("k", k);
    if (*sim) return cmd_simulate(s);
    if (*ver) return cmd_verify(s, curve_path);
    if (*aud) return cmd_audit(s, curve_path);
    if (*cex) return cmd_counterexample(s, series);
    if (*rep) return cmd_report(s, patterns);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  }
  return kUsage;
}
