#ifndef SCCURVE_PROXIMAL_HPP
#define SCCURVE_PROXIMAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sccurve/curve.hpp"
#include "sccurve/objective.hpp"
#include "sccurve/report.hpp"

namespace sccurve {

enum class ResolventStatus { Unique, MultipleTies, Empty, Unbounded };

std::string status_label(ResolventStatus s);

struct SolverConfig {
  int grid_1d = 2001;            // points per 1-D domain or per edge/leg
  int grid_2d = 41;              // points per axis for planar searches
  int golden_steps = 100;
  int nelder_mead_iters = 4000;
  double tie_tol = 1e-6;         // values within this of the optimum are ties
  double dedup_tol = 1e-6;       // minimizers closer than this are merged
  double unbounded_value = -1e12;
  double unbounded_radius = 1e6;
};

struct ResolventResult {
  std::vector<Point> minimizers;  // tie-break order: nearest x, then lexicographic
  double value = 0.0;             // f_tau(x); -infinity when unbounded
  ResolventStatus status = ResolventStatus::Unique;
  std::string diagnostic;
  long long evaluations = 0;
};

/// J^f_tau(x): global minimizers of z -> f(z) + d^2(x,z)/(2 tau).
ResolventResult resolvent(const ObjectiveFn& f, const Space& space, const Point& x, double tau,
                          const SolverConfig& cfg = {});

/// f_tau(x); -infinity when the decrease probe detects unboundedness.
double moreau_yosida(const ObjectiveFn& f, const Space& space, const Point& x, double tau,
                     const SolverConfig& cfg = {});

struct GradientCurveRun {
  std::vector<Point> points;       // x^0, x^1, ...
  std::vector<double> taus;        // tau_k used to produce x^k (k >= 1)
  std::vector<double> values;      // f(x^k)
  std::vector<ResolventStatus> statuses;
  bool complete = true;
  std::string diagnostic;
};

/// Proximal-point iteration x^k in J^f_{tau_k}(x^{k-1}) with the nearest-to-x
/// tie break. Stops early (complete = false) at an empty resolvent.
GradientCurveRun discrete_gradient_curve(const ObjectiveFn& f, const Space& space, const Point& x0,
                                         const std::vector<double>& tau_schedule,
                                         const SolverConfig& cfg = {});

/// Discrete run as a jump curve at times t_k = tau_1 + ... + tau_k.
Curve discrete_curve(const Space& space, const GradientCurveRun& run);

/// Piecewise-geodesic extension through the run at the same times.
Curve geodesic_interpolation(const Space& space, const GradientCurveRun& run);

struct QuasiconvexityReport {
  ViolationReport qc;         // f(gamma(s)) - max(f(x), f(y))
  ViolationReport lambda;     // lambda-convexity inequality, when declared
};

QuasiconvexityReport quasiconvexity_probe(const ObjectiveFn& f, const Space& space, int n_samples,
                                          std::uint64_t seed, double tol = 1e-9);

}  // namespace sccurve

#endif  // SCCURVE_PROXIMAL_HPP
