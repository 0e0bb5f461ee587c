#ifndef SCCURVE_REPORT_HPP
#define SCCURVE_REPORT_HPP

#include <string>
#include <vector>

#include "sccurve/space.hpp"

namespace sccurve {

/// Outcome of a sampled check. max_violation is the largest positive excess
/// found (0 when nothing was violated); pass <=> max_violation <= tolerance.
struct ViolationReport {
  std::string check;
  double max_violation = 0.0;
  std::vector<double> witness_times;
  std::vector<Point> witness_points;
  long long n_checked = 0;
  double tolerance = 1e-9;
  bool pass = true;
  std::string note;

  /// Counts one check; true when `violation` beats the current maximum and
  /// the caller should store a witness with set_witness.
  bool observe(double violation) {
    ++n_checked;
    return violation > max_violation;
  }
  void set_witness(double violation, std::vector<double> times, std::vector<Point> points) {
    max_violation = violation;
    witness_times = std::move(times);
    witness_points = std::move(points);
  }
  ViolationReport& finish() {
    pass = max_violation <= tolerance;
    return *this;
  }
};

}  // namespace sccurve

#endif  // SCCURVE_REPORT_HPP
