#ifndef SCCURVE_VERIFY_HPP
#define SCCURVE_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sccurve/curve.hpp"
#include "sccurve/objective.hpp"
#include "sccurve/proximal.hpp"
#include "sccurve/report.hpp"

namespace sccurve {

struct SamplingConfig {
  /// Sample counts up to this limit are checked over every (k, l, m) triple
  /// (an O(n^2) prefix-minimum sweep); above it only random triples are used.
  int exhaustive_limit = 4000;
  /// Random time triples t1 < t2 < t3 drawn over the whole domain and
  /// evaluated through Curve::at (covers segment interiors of interpolated curves).
  long long random_triples = 0;
  /// Geodesic-midpoint refinement levels added before the exhaustive sweep
  /// (interpolated curves only).
  int densify_levels = 0;
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

/// d(xi(t2), xi(t3)) <= d(xi(t1), xi(t3)) + tol for t1 < t2 < t3.
ViolationReport is_self_contracted(const Curve& curve, const SamplingConfig& cfg = {});

/// t -> d(xi(t), xi(T)) non-increasing over the samples up to T (a sample time).
ViolationReport tail_monotonicity(const Curve& curve, double T, double tol = 1e-9);

/// xi(t1) = xi(t3) forces xi(t2) = xi(t1) for every sample in between.
ViolationReport stationarity_check(const Curve& curve, double tol = 1e-9);

/// Self-contractedness of xi o phi sampled at `new_times` (phi non-decreasing on
/// them; throws otherwise). The note records whether xi itself passed.
ViolationReport reparam_preserves(const Curve& curve, const std::function<double(double)>& phi,
                                  const std::vector<double>& new_times, const SamplingConfig& cfg = {});

/// Angle at xi(t_tau) between the directions to xi(t1) and xi(t2) (sample
/// indices, tau < t1, t2). nullopt when either point coincides with xi(tau).
std::optional<double> angle_estimate_check(const Curve& curve, std::size_t tau, std::size_t t1, std::size_t t2);

/// angle - pi/2 over admissible sample triples: all of them when there are at
/// most `max_triples`, otherwise a random subset of that size.
ViolationReport angle_estimate_scan(const Curve& curve, long long max_triples = 200000, std::uint64_t seed = 1,
                                    double tol = 1e-6);

/// Samples between two samples inside B(x, r) stay in B(x, 3r).
ViolationReport ball_confinement_check(const Curve& curve, const Point& x, double r, double tol = 1e-9);

/// d(xi(T), xi(tau))/2 - d(xi(t), xi(tau)) over sample indices tau < T <= t.
ViolationReport tT_check(const Curve& curve, double tol = 1e-9);

/// |d(x,q) cos A + d(p,q) cos B - d(x,p)| with A, B the comparison angles at x
/// and p of the triangle (x, p, q).
double cosine_identity_residual(const Space& space, const Point& x, const Point& p, const Point& q);

/// [d^2(xi(t+h), y) - d^2(xi(t), y)] / (2h) + f(xi(t)) - f(y). Refuses
/// objectives that are not declared convex.
double evi_residual(const Space& space, const ObjectiveFn& f, const Point& xi_t, const Point& xi_th, double h,
                    const Point& y);

/// Forward difference between samples i and i + 1 of the curve.
double evi_residual(const ObjectiveFn& f, const Curve& curve, std::size_t i, const Point& y);

/// d(xi(t_k), zeta(t_k)) non-increasing in k. For objectives that are not
/// convex the report is informational (pass forced true, note set).
ViolationReport contraction_check(const Space& space, const ObjectiveFn& f, const GradientCurveRun& run1,
                                  const GradientCurveRun& run2, double tol = 1e-6);

/// Samples used by the sweeps: the samples themselves, or their geodesic
/// refinement for interpolated curves.
std::vector<Sample> check_samples(const Curve& curve, int densify_levels);

}  // namespace sccurve

#endif  // SCCURVE_VERIFY_HPP
