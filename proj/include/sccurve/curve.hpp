#ifndef SCCURVE_CURVE_HPP
#define SCCURVE_CURVE_HPP

#include <optional>
#include <vector>

#include "sccurve/space.hpp"

namespace sccurve {

enum class CurveMode {
  Discrete,              // jump curve: xi(t) = p_i on [t_i, t_{i+1})
  GeodesicInterpolated,  // constant-speed geodesic between consecutive samples
};

struct Sample {
  double t;
  Point p;
};

/// Time-stamped point sequence living in one space. Times are strictly
/// increasing and the domain end (nullopt = +infinity) lies beyond the last one.
class Curve {
 public:
  Curve(Space space, std::vector<Sample> samples, CurveMode mode,
        std::optional<double> domain_end = std::nullopt);

  const Space& space() const { return space_; }
  const std::vector<Sample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }
  CurveMode mode() const { return mode_; }
  std::optional<double> domain_end() const { return domain_end_; }
  double start_time() const { return samples_.front().t; }
  double end_time() const { return samples_.back().t; }

  std::vector<Point> points() const;

  /// xi(t) for t in [first time, last time]; beyond the last sample the curve is
  /// constant.
  Point at(double t) const;

  Curve with_mode(CurveMode mode) const { return Curve(space_, samples_, mode, domain_end_); }

 private:
  Space space_;
  std::vector<Sample> samples_;
  CurveMode mode_;
  std::optional<double> domain_end_;
};

/// Curve from points at times 0, 1, 2, ...
Curve make_curve(const Space& space, std::vector<Point> points,
                 CurveMode mode = CurveMode::Discrete);

/// Polygonal length: sum of distances between consecutive samples. For
/// geodesically interpolated curves this is the exact length; for jump curves
/// it charges every jump its chord, as the supremum over partitions does.
double curve_length(const Curve& curve);

/// Diameter of the sample set.
double curve_diameter(const Curve& curve);

/// Samples plus `levels` rounds of geodesic-midpoint refinement between
/// consecutive samples (only for GeodesicInterpolated curves; jump curves are
/// returned as their samples). Times are interpolated alongside.
std::vector<Sample> densify(const Curve& curve, int levels);

/// Concatenation sharing the last sample of `a` with the first sample of `b`.
Curve concatenate(const Curve& a, const Curve& b);

}  // namespace sccurve

#endif  // SCCURVE_CURVE_HPP
