#include "cutoffloc/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <map>

#include "cutoffloc/classic.hpp"
#include "cutoffloc/metric.hpp"

namespace cutoffloc {
namespace {

struct Tangent {
  std::size_t slope;
  double intercept;
  Point barycenter;
};

struct Refiner {
  const PointCloud& A;
  MetricSpec m;
  SensitivityOptions opt;

  // Tangents with slopes strictly between lo.slope and hi.slope. Each call
  // either certifies the intersection lies on g or yields one new tangent.
  void refine(const Tangent& lo, const Tangent& hi, std::vector<Tangent>& out,
              std::size_t& calls, int depth) const {
    if (hi.slope - lo.slope < 2) return;
    const double C = (lo.intercept - hi.intercept) / static_cast<double>(hi.slope - lo.slope);
    if (!(C > 0.0) || !std::isfinite(C)) return;  // zero-length gap
    const double y = static_cast<double>(lo.slope) * C + lo.intercept;
    const CutoffSolution sol = solve_cutoff(A, m, CutoffSpec(C), opt.algorithm);
    ++calls;
    if (std::fabs(sol.value - y) <= value_slack(y)) return;
    const std::size_t k = A.size() - sol.active.size();
    // A slope outside the gap can only come from rounding; treat as on-curve.
    if (k <= lo.slope || k >= hi.slope) return;
    const Tangent mid{k, sol.value - static_cast<double>(k) * C, sol.location.point()};
    out.push_back(mid);
    if (opt.parallel && depth < 4) {
      std::vector<Tangent> right;
      std::size_t right_calls = 0;
      auto fut = std::async(std::launch::async, [&] { refine(mid, hi, right, right_calls, depth + 1); });
      refine(lo, mid, out, calls, depth + 1);
      fut.get();
      out.insert(out.end(), right.begin(), right.end());
      calls += right_calls;
    } else {
      refine(lo, mid, out, calls, depth + 1);
      refine(mid, hi, out, calls, depth + 1);
    }
  }
};

}  // namespace

PointCurve::PointCurve(std::vector<double> dists) : d_(std::move(dists)) {
  std::sort(d_.begin(), d_.end());
  prefix_.resize(d_.size() + 1, 0.0);
  for (std::size_t i = 0; i < d_.size(); ++i) prefix_[i + 1] = prefix_[i] + d_[i];
}

double PointCurve::evaluate(double C) const {
  const auto j = static_cast<std::size_t>(std::upper_bound(d_.begin(), d_.end(), C) - d_.begin());
  return prefix_[j] + static_cast<double>(d_.size() - j) * C;
}

PointCurve curve_at_point(Point x, const PointCloud& A, const MetricSpec& m) {
  std::vector<double> d(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) d[i] = dist_pow(x, A[i], m);
  return PointCurve(std::move(d));
}

const CurveSegment& SensitivityCurve::segment_at(double C) const {
  if (segments.empty()) throw UsageError("empty sensitivity curve");
  auto it = std::upper_bound(segments.begin(), segments.end(), C,
                             [](double c, const CurveSegment& s) { return c < s.C_start; });
  return it == segments.begin() ? segments.front() : *std::prev(it);
}

double SensitivityCurve::evaluate(double C) const {
  const CurveSegment& s = segment_at(C);
  return static_cast<double>(s.slope) * C + s.intercept;
}

std::vector<double> SensitivityCurve::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < segments.size(); ++i) out.push_back(segments[i].C_start);
  return out;
}

SensitivityCurve compute_g(const PointCloud& A, const MetricSpec& m,
                           const SensitivityOptions& opt) {
  if (A.empty()) throw UsageError("sensitivity curve needs at least one point");
  require_classic_supported(m);
  SensitivityCurve curve;
  curve.n = A.size();
  if (A.size() == 1) {
    curve.segments.push_back({0.0, 0.0, 0, 0.0, A[0]});
    return curve;
  }
  const std::size_t n = A.size();
  const ClassicSolution classic = solve_classic(A, m);
  curve.classic_calls = 1;
  const Tangent flat{0, classic.value, classic.location};
  const Tangent steep{n - 1, 0.0, A[0]};

  std::vector<Tangent> found{steep, flat};
  const Refiner refiner{A, m, opt};
  refiner.refine(flat, steep, found, curve.cutoff_calls, 0);

  std::map<std::size_t, Tangent, std::greater<>> by_slope;
  for (const Tangent& t : found) by_slope.emplace(t.slope, t);
  std::vector<Tangent> lines;
  for (const auto& [slope, t] : by_slope) lines.push_back(t);

  // Breakpoints are where consecutive tangents meet; coincident points can
  // make the steepest seed touch g only at C = 0, leaving an empty segment.
  double start = 0.0;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    double end = std::numeric_limits<double>::infinity();
    if (k + 1 < lines.size()) {
      end = (lines[k + 1].intercept - lines[k].intercept) /
            static_cast<double>(lines[k].slope - lines[k + 1].slope);
    }
    if (k + 1 < lines.size() && !(end > start)) continue;
    const Tangent& t = lines[k];
    curve.segments.push_back(
        {start, static_cast<double>(t.slope) * start + t.intercept, t.slope, t.intercept, t.barycenter});
    start = end;
  }
  return curve;
}

double AlphaCurve::evaluate(double C) const {
  auto it = std::upper_bound(segments.begin(), segments.end(), C,
                             [](double c, const AlphaSegment& s) { return c < s.C_start; });
  const AlphaSegment& s = it == segments.begin() ? segments.front() : *std::prev(it);
  return s.value_start + s.slope * (C - s.C_start);
}

AlphaCurve compute_g_alpha(const SensitivityCurve& curve, double alpha) {
  if (!(alpha > 0.0)) throw UsageError("alpha must be positive");
  if (curve.segments.empty()) throw UsageError("empty sensitivity curve");
  AlphaCurve out;
  out.alpha = alpha;
  const double n = static_cast<double>(curve.n);
  const double line = alpha * n;
  auto copy_from = [&](std::size_t first, double C_start) {
    for (std::size_t k = first; k < curve.segments.size(); ++k) {
      const CurveSegment& s = curve.segments[k];
      const double c = k == first ? C_start : s.C_start;
      out.segments.push_back({c, static_cast<double>(s.slope) * c + s.intercept,
                              static_cast<double>(s.slope), s.barycenter});
    }
  };
  if (alpha >= (n - 1.0) / n || line >= static_cast<double>(curve.segments.front().slope)) {
    copy_from(0, 0.0);
    return out;
  }
  // alpha n C - g(C) is convex, negative right after 0 and eventually
  // positive, so the first segment containing a root holds the only crossing.
  for (std::size_t k = 0; k < curve.segments.size(); ++k) {
    const CurveSegment& s = curve.segments[k];
    if (line <= static_cast<double>(s.slope)) continue;
    const double c0 = s.intercept / (line - static_cast<double>(s.slope));
    const double end = k + 1 < curve.segments.size() ? curve.segments[k + 1].C_start
                                                     : std::numeric_limits<double>::infinity();
    const double tol = 1e-12 * std::max(1.0, c0);
    if (c0 < s.C_start - tol || c0 > end + tol) continue;
    out.C0 = c0;
    out.segments.push_back({0.0, 0.0, line, ExtendedLocation::empty()});
    copy_from(k, c0);
    return out;
  }
  throw std::logic_error("no crossing between alpha*n*C and g");
}

}  // namespace cutoffloc
