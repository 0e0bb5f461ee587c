#include "sccurve/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sccurve/metric.hpp"

namespace sccurve {

Curve::Curve(Space space, std::vector<Sample> samples, CurveMode mode,
             std::optional<double> domain_end)
    : space_(std::move(space)), samples_(std::move(samples)), mode_(mode), domain_end_(domain_end) {
  if (samples_.empty()) throw std::invalid_argument("curve needs at least one sample");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i].t)) throw std::invalid_argument("curve time must be finite");
    if (i > 0 && !(samples_[i].t > samples_[i - 1].t))
      throw std::invalid_argument("curve times must be strictly increasing");
    samples_[i].p = canonical(space_, samples_[i].p);
  }
  if (domain_end_ && !(*domain_end_ > samples_.back().t))
    throw std::invalid_argument("curve domain end must exceed the last sample time");
}

std::vector<Point> Curve::points() const {
  std::vector<Point> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.p);
  return out;
}

Point Curve::at(double t) const {
  if (t < samples_.front().t) throw std::invalid_argument("time before curve start");
  if (t >= samples_.back().t) return samples_.back().p;
  auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                             [](double v, const Sample& s) { return v < s.t; });
  const std::size_t i = static_cast<std::size_t>(it - samples_.begin()) - 1;
  if (mode_ == CurveMode::Discrete) return samples_[i].p;
  const double u = (t - samples_[i].t) / (samples_[i + 1].t - samples_[i].t);
  return geodesic_point(space_, samples_[i].p, samples_[i + 1].p, std::clamp(u, 0.0, 1.0));
}

Curve make_curve(const Space& space, std::vector<Point> points, CurveMode mode) {
  std::vector<Sample> samples;
  samples.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    samples.push_back({static_cast<double>(i), std::move(points[i])});
  return Curve(space, std::move(samples), mode);
}

double curve_length(const Curve& curve) {
  double total = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i)
    total += distance(curve.space(), curve[i - 1].p, curve[i].p);
  return total;
}

double curve_diameter(const Curve& curve) {
  const auto pts = curve.points();
  return diameter(curve.space(), pts);
}

std::vector<Sample> densify(const Curve& curve, int levels) {
  if (curve.mode() == CurveMode::Discrete || levels <= 0) return curve.samples();
  const int per_segment = 1 << levels;
  std::vector<Sample> out;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const auto& a = curve[i];
    const auto& b = curve[i + 1];
    out.push_back(a);
    for (int j = 1; j < per_segment; ++j) {
      const double u = static_cast<double>(j) / per_segment;
      out.push_back({a.t + u * (b.t - a.t), geodesic_point(curve.space(), a.p, b.p, u)});
    }
  }
  out.push_back(curve.samples().back());
  return out;
}

Curve concatenate(const Curve& a, const Curve& b) {
  if (a.space().label() != b.space().label()) throw std::invalid_argument("curves live in different spaces");
  if (!same_point(a.space(), a.samples().back().p, b.samples().front().p))
    throw std::invalid_argument("concatenation needs a shared sample");
  std::vector<Sample> samples = a.samples();
  const double shift = a.end_time() - b.start_time();
  for (std::size_t i = 1; i < b.size(); ++i) samples.push_back({b[i].t + shift, b[i].p});
  return Curve(a.space(), std::move(samples), a.mode(), std::nullopt);
}

}  // namespace sccurve
