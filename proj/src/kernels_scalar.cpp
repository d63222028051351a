// Scalar reference kernels. These define the semantics every SIMD variant is
// tested against.

#include <algorithm>
#include <limits>

#include "cutoffloc/kernels.hpp"

namespace cutoffloc::kernels {
namespace {

double cut_sum_scalar(CoordView v, Point c, const MetricSpec& m, double C) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = dist_pow_delta(v.xs[i] - c.x, v.ys[i] - c.y, m);
    s += d < C ? d : C;
  }
  return s;
}

std::size_t count_within_scalar(CoordView v, Point c, const MetricSpec& m, double C) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    n += dist_pow_delta(v.xs[i] - c.x, v.ys[i] - c.y, m) <= C ? 1 : 0;
  }
  return n;
}

BallStats ball_stats_scalar(CoordView v, Point c, const MetricSpec& m, double C) {
  BallStats st;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (dist_pow_delta(v.xs[i] - c.x, v.ys[i] - c.y, m) <= C) {
      ++st.count;
      st.sx += v.xs[i];
      st.sy += v.ys[i];
    }
  }
  return st;
}

void collect_within_scalar(CoordView v, Point c, const MetricSpec& m, double C,
                           std::vector<std::uint32_t>& out) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (dist_pow_delta(v.xs[i] - c.x, v.ys[i] - c.y, m) <= C) {
      out.push_back(static_cast<std::uint32_t>(i));
    }
  }
}

WeiszfeldSums weiszfeld_sums_scalar(CoordView v, Point z) {
  WeiszfeldSums s;
  s.min_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double dx = v.xs[i] - z.x;
    const double dy = v.ys[i] - z.y;
    const double d = std::sqrt(dx * dx + dy * dy);
    const double w = 1.0 / d;
    s.wx += v.xs[i] * w;
    s.wy += v.ys[i] * w;
    s.w += w;
    s.dist_sum += d;
    s.min_dist = std::min(s.min_dist, d);
  }
  return s;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{cut_sum_scalar, count_within_scalar, ball_stats_scalar,
                             collect_within_scalar, weiszfeld_sums_scalar};
  return t;
}

}  // namespace cutoffloc::kernels
