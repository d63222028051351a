#include "cutoffloc/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cutoffloc/kernels.hpp"

namespace cutoffloc {

double dist_pow(Point x, Point y, const MetricSpec& m) {
  return kernels::dist_pow_delta(y.x - x.x, y.y - x.y, m);
}

double dist_cut(Point x, Point y, const MetricSpec& m, double C) {
  const double d = dist_pow(x, y, m);
  return d < C ? d : C;
}

double dist_empty(const ExtendedLocation& x, const ExtendedLocation& y, const MetricSpec& m,
                  double C, double alpha) {
  if (x.is_empty() && y.is_empty()) return 0.0;
  if (x.is_empty() || y.is_empty()) return alpha * C;
  return dist_cut(x.point(), y.point(), m, C);
}

double objective(const ExtendedLocation& x, const PointCloud& A, const MetricSpec& m,
                 const std::optional<CutoffSpec>& spec) {
  if (A.empty()) throw UsageError("objective needs a nonempty point set");
  if (x.is_empty()) {
    if (!spec || !spec->alpha) throw UsageError("EMPTY location requires an alpha");
    return static_cast<double>(A.size()) * *spec->alpha * spec->C;
  }
  const double C = spec ? spec->C : std::numeric_limits<double>::infinity();
  return kernels::cut_sum(kernels::view(A), x.point(), m, C);
}

ActiveSplit active_const_split(Point x, const PointCloud& A, const MetricSpec& m, double C) {
  ActiveSplit s;
  for (std::size_t i = 0; i < A.size(); ++i) {
    (dist_pow(x, A[i], m) <= C ? s.active : s.constant).push_back(i);
  }
  return s;
}

double diameter(const PointCloud& A, const MetricSpec& m) {
  const MetricSpec plain(m.norm, 1.0);
  double best = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = i + 1; j < A.size(); ++j) best = std::max(best, dist_pow(A[i], A[j], plain));
  }
  return best;
}

double min_pair_dist_pow(const PointCloud& A, const MetricSpec& m) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = i + 1; j < A.size(); ++j) best = std::min(best, dist_pow(A[i], A[j], m));
  }
  return best;
}

double mpd(const PointCloud& A, const MetricSpec& m, double C) {
  const std::size_t n = A.size();
  if (n < 2) throw UsageError("mean pairwise distance needs at least two points");
  // Each unordered pair appears twice in the ordered sum.
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s += dist_cut(A[i], A[j], m, C);
  }
  return 2.0 * s / (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace cutoffloc
