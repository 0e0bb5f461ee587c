#ifndef SCCURVE_GENERATORS_HPP
#define SCCURVE_GENERATORS_HPP

#include <cstdint>

#include "sccurve/curve.hpp"
#include "sccurve/random.hpp"
#include "sccurve/report.hpp"
#include "sccurve/width.hpp"

namespace sccurve {

/// Jump curve visiting the tip of leg i at time i on a k-spider with legs of
/// length `leg`.
Curve spider_jump_curve(int k, double leg = 1.0);

/// Jump curve visiting (sheet i, 0, 1) at time i in a k-sheet book.
Curve book_spine_jump_curve(int k);

/// Jump curve through the standard basis e_1, ..., e_k of R^k.
Curve orthonormal_jump_curve(int k);

/// L / diam summed as sum_i d(p_i, p_{i+1}) / diam, exact when every step
/// equals the diameter.
double length_over_diameter(const Curve& curve);

struct WitnessResult {
  Curve curve;
  double length = 0.0;
  double diam = 0.0;
  double growth = 0.0;   // length / diam
  ViolationReport self_contracted;
  BoundReport bound;     // L <= C_k diam
};

/// Orthonormal jump curve in R^k with its length, diameter, self-contraction
/// check and the diameter form of the Euclidean bound.
WitnessResult unrectifiable_witness(int k);

enum class GeneratorMode { Mixed, Gradient, Rejection };

struct GeneratorConfig {
  GeneratorMode mode = GeneratorMode::Mixed;
  int max_rejections = 2000;  // per accepted point
  double scale = 1.0;
  double gradient_share = 0.25;  // Mixed: probability of a gradient run
};

/// Curve with at most n_steps samples at times 0, 1, ... that is
/// self-contracted at its samples with zero tolerance. Gradient mode runs the
/// proximal iteration of a random catalog objective; rejection mode proposes
/// short geodesic steps and keeps those that preserve self-contractedness.
/// Returns fewer samples when the rejection budget runs out.
Curve random_self_contracted(const Space& space, int n_steps, std::uint64_t seed, const GeneratorConfig& cfg = {});

/// Longest prefix of `points` that is self-contracted with zero tolerance.
std::size_t self_contracted_prefix(const Space& space, const std::vector<Point>& points);

/// Random tree: 1..max_edges edges, degrees <= max_degree, lengths in [0.2, 2].
TreeGraph random_tree(Rng& rng, int max_edges = 50, int max_degree = 6);

}  // namespace sccurve

#endif  // SCCURVE_GENERATORS_HPP
