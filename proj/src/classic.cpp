#include "cutoffloc/classic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cutoffloc/kernels.hpp"

namespace cutoffloc {
namespace {

constexpr double kAtPoint = 1e-14;
constexpr double kNudge = 1e-10;
constexpr int kSnapEvery = 16;

double median_of(std::vector<double>& v) {
  const std::size_t n = v.size();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  const double upper = *mid;
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), mid);
  return (lower + upper) / 2.0;
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

struct DataPointTest {
  bool optimal = false;
  double rx = 0.0;  // resultant of unit vectors from a_k to the other points
  double ry = 0.0;
};

// a_k minimizes the sum of Euclidean distances iff the resultant of unit
// vectors towards the other points has length at most the multiplicity of a_k.
DataPointTest test_data_point(std::span<const double> xs, std::span<const double> ys,
                              std::size_t k) {
  DataPointTest t;
  double mult = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - xs[k];
    const double dy = ys[i] - ys[k];
    const double d = std::sqrt(dx * dx + dy * dy);
    if (d <= kAtPoint) {
      mult += 1.0;
    } else {
      t.rx += dx / d;
      t.ry += dy / d;
    }
  }
  t.optimal = std::hypot(t.rx, t.ry) <= mult;
  return t;
}

std::size_t nearest_index(std::span<const double> xs, std::span<const double> ys, Point z) {
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - z.x;
    const double dy = ys[i] - z.y;
    const double d = dx * dx + dy * dy;
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

double l2_sum(std::span<const double> xs, std::span<const double> ys, Point z) {
  return kernels::cut_sum({xs, ys}, z, MetricSpec(Norm::l2, 1.0),
                          std::numeric_limits<double>::infinity());
}

}  // namespace

bool classic_supported(const MetricSpec& m) {
  return m.is(Norm::l2, 1.0) || m.is(Norm::l2, 2.0) || m.is(Norm::l1, 1.0);
}

void require_classic_supported(const MetricSpec& m) {
  if (!classic_supported(m)) {
    throw UnsupportedConfig("no barycenter solver for p=" + to_string(m.norm) +
                            ", q=" + std::to_string(m.q) +
                            " (supported: p=2 q=1, p=2 q=2, p=1 q=1)");
  }
}

ClassicSolution weiszfeld(std::span<const double> xs, std::span<const double> ys,
                          const WeiszfeldOptions& opt) {
  const std::size_t n = xs.size();
  if (n == 0) throw UsageError("barycenter of an empty set");
  ClassicSolution sol;
  if (n == 1) {
    sol.location = {xs[0], ys[0]};
    return sol;
  }
  if (n == 2) {
    sol.location = {(xs[0] + xs[1]) / 2.0, (ys[0] + ys[1]) / 2.0};
    sol.value = l2_sum(xs, ys, sol.location);
    return sol;
  }

  Point z{mean_of(xs), mean_of(ys)};
  const kernels::CoordView v{xs, ys};
  int it = 0;
  while (it < opt.max_iterations) {
    ++it;
    const kernels::WeiszfeldSums s = kernels::weiszfeld_sums(v, z);
    if (opt.trace) opt.trace->push_back(s.dist_sum);
    const bool at_point = s.min_dist < kAtPoint;
    if (at_point || it % kSnapEvery == 0) {
      const std::size_t k = nearest_index(xs, ys, z);
      const DataPointTest t = test_data_point(xs, ys, k);
      if (t.optimal) {
        z = {xs[k], ys[k]};
        break;
      }
      if (at_point) {
        // Step off the data point along the descent direction.
        const double len = std::hypot(t.rx, t.ry);
        z = {xs[k] + kNudge * t.rx / len, ys[k] + kNudge * t.ry / len};
        continue;
      }
    }
    const Point next{s.wx / s.w, s.wy / s.w};
    const double move = std::hypot(next.x - z.x, next.y - z.y);
    z = next;
    if (move <= opt.rel_tol * (1.0 + std::hypot(z.x, z.y))) {
      // Convergence towards an optimal data point is slow; land on it exactly.
      const std::size_t k = nearest_index(xs, ys, z);
      if (test_data_point(xs, ys, k).optimal) z = {xs[k], ys[k]};
      break;
    }
  }
  sol.location = z;
  sol.iterations = it;
  sol.value = l2_sum(xs, ys, z);
  if (opt.trace) opt.trace->push_back(sol.value);
  return sol;
}

ClassicSolution solve_classic(const PointCloud& A, const MetricSpec& m) {
  require_classic_supported(m);
  if (A.empty()) throw UsageError("barycenter of an empty set");
  ClassicSolution sol;
  if (m.is(Norm::l2, 1.0)) return weiszfeld(A.xs(), A.ys());
  if (m.is(Norm::l2, 2.0)) {
    sol.location = {mean_of(A.xs()), mean_of(A.ys())};
  } else {
    std::vector<double> xs(A.xs().begin(), A.xs().end());
    std::vector<double> ys(A.ys().begin(), A.ys().end());
    sol.location = {median_of(xs), median_of(ys)};
  }
  sol.value = kernels::cut_sum(kernels::view(A), sol.location, m,
                               std::numeric_limits<double>::infinity());
  return sol;
}

ClassicSolution solve_classic_subset(const PointCloud& A, std::span<const std::size_t> idx,
                                     const MetricSpec& m) {
  if (idx.empty()) throw UsageError("barycenter of an empty index set");
  return solve_classic(A.subset(idx), m);
}

ClassicScratch::ClassicScratch(const MetricSpec& m) : m_(m) { require_classic_supported(m); }

Point ClassicScratch::solve(const PointCloud& A, std::span<const std::uint32_t> idx) {
  if (idx.empty()) throw UsageError("barycenter of an empty index set");
  if (idx.size() == 1) return A[idx[0]];
  const auto xs = A.xs();
  const auto ys = A.ys();
  if (m_.is(Norm::l2, 2.0)) {
    double sx = 0.0, sy = 0.0;
    for (std::uint32_t i : idx) {
      sx += xs[i];
      sy += ys[i];
    }
    const double n = static_cast<double>(idx.size());
    return {sx / n, sy / n};
  }
  xs_.clear();
  ys_.clear();
  for (std::uint32_t i : idx) {
    xs_.push_back(xs[i]);
    ys_.push_back(ys[i]);
  }
  if (m_.is(Norm::l1, 1.0)) return {median_of(xs_), median_of(ys_)};
  return weiszfeld(xs_, ys_).location;
}

}  // namespace cutoffloc
