#pragma once

// The optimal value g(C) = min_x f_C(x, A) as a function of the cutoff. g is
// continuous, non-decreasing, concave and piecewise linear with integer slopes
// n-1, ..., 0, so it is determined by at most n tangent lines.

#include <cstddef>
#include <optional>
#include <vector>

#include "cutoffloc/cutoff.hpp"
#include "cutoffloc/point.hpp"

namespace cutoffloc {

/// g_x(C) = f_C(x, A) for one fixed x.
class PointCurve {
 public:
  PointCurve() = default;
  explicit PointCurve(std::vector<double> dists);

  /// sum_{i<=j} d_i + (n - j) C with j = |{i : d_i <= C}|.
  double evaluate(double C) const;

  const std::vector<double>& sorted_dists() const { return d_; }

 private:
  std::vector<double> d_;
  std::vector<double> prefix_;  // prefix_[j] = d_1 + ... + d_j
};

PointCurve curve_at_point(Point x, const PointCloud& A, const MetricSpec& m);

struct CurveSegment {
  double C_start = 0.0;
  double value_start = 0.0;
  std::size_t slope = 0;
  double intercept = 0.0;  // g(C) = slope * C + intercept on this segment
  Point barycenter;        // optimal on the whole closed segment
};

class SensitivityCurve {
 public:
  std::size_t n = 0;
  std::vector<CurveSegment> segments;  // increasing C_start, decreasing slope
  std::size_t cutoff_calls = 0;        // solve_cutoff invocations
  std::size_t classic_calls = 0;       // 1 unless n == 1

  double evaluate(double C) const;
  const CurveSegment& segment_at(double C) const;
  std::vector<double> breakpoints() const;  // C_start of every segment but the first
};

struct SensitivityOptions {
  bool parallel = false;  // split slope ranges across async tasks
  Algorithm algorithm = Algorithm::pruned;
};

SensitivityCurve compute_g(const PointCloud& A, const MetricSpec& m,
                           const SensitivityOptions& opt = {});

struct AlphaSegment {
  double C_start = 0.0;
  double value_start = 0.0;
  double slope = 0.0;
  ExtendedLocation location;
};

/// g^(alpha)(C) = min(g(C), alpha n C).
struct AlphaCurve {
  double alpha = 0.0;
  std::optional<double> C0;  // crossing point; absent when g is unchanged
  std::vector<AlphaSegment> segments;

  double evaluate(double C) const;
};

AlphaCurve compute_g_alpha(const SensitivityCurve& curve, double alpha);

}  // namespace cutoffloc
