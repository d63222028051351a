#pragma once

// Data-parallel inner loops over a point cloud. Every kernel has a scalar
// reference implementation and, where the CPU supports it, an AVX2 variant
// chosen at runtime. Both variants evaluate d^q with the same sequence of
// IEEE operations, so threshold comparisons (d^q <= C) agree bit for bit and
// sums differ only by summation order.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cutoffloc/point.hpp"

namespace cutoffloc::kernels {

enum class Isa { scalar, avx2 };

std::string to_string(Isa isa);

/// Best instruction set this binary can use on the running CPU.
Isa detected_isa();

/// Instruction set used by the free functions below. Defaults to
/// detected_isa(); tests pin it to compare variants.
Isa active_isa();

/// Pin the dispatch to `isa` (must be available), or restore auto-detection.
void force_isa(std::optional<Isa> isa);

bool isa_available(Isa isa);

struct CoordView {
  std::span<const double> xs;
  std::span<const double> ys;

  std::size_t size() const { return xs.size(); }
};

inline CoordView view(const PointCloud& cloud) { return {cloud.xs(), cloud.ys()}; }

/// d^q for a coordinate difference. Shared by metric_core and the scalar
/// kernels; the AVX2 kernels replicate exactly these operations for q in {1,2}.
inline double dist_pow_delta(double dx, double dy, const MetricSpec& m) {
  const double ax = std::fabs(dx);
  const double ay = std::fabs(dy);
  if (m.norm == Norm::l2) {
    const double sq = dx * dx + dy * dy;
    if (m.q == 2.0) return sq;
    const double d = std::sqrt(sq);
    return m.q == 1.0 ? d : std::pow(d, m.q);
  }
  const double d = m.norm == Norm::l1 ? ax + ay : (ax > ay ? ax : ay);
  if (m.q == 1.0) return d;
  if (m.q == 2.0) return d * d;
  return std::pow(d, m.q);
}

struct WeiszfeldSums {
  double wx = 0.0;        // sum x_i / d_i
  double wy = 0.0;        // sum y_i / d_i
  double w = 0.0;         // sum 1 / d_i
  double dist_sum = 0.0;  // sum d_i, the l2 objective at z
  double min_dist = 0.0;  // min d_i
};

struct BallStats {
  std::size_t count = 0;
  double sx = 0.0;
  double sy = 0.0;
};

/// Function table for one instruction set.
struct KernelTable {
  // sum_i min(d^q(c, a_i), C); C may be +infinity.
  double (*cut_sum)(CoordView, Point c, const MetricSpec&, double C);
  // |{i : d^q(c, a_i) <= C}|
  std::size_t (*count_within)(CoordView, Point c, const MetricSpec&, double C);
  // count and coordinate sums of {i : d^q(c, a_i) <= C}
  BallStats (*ball_stats)(CoordView, Point c, const MetricSpec&, double C);
  // appends the indices {i : d^q(c, a_i) <= C} in increasing order
  void (*collect_within)(CoordView, Point c, const MetricSpec&, double C,
                         std::vector<std::uint32_t>& out);
  // Euclidean Weiszfeld accumulators at z
  WeiszfeldSums (*weiszfeld_sums)(CoordView, Point z);
};

const KernelTable& scalar_table();
/// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_table();
const KernelTable& table(Isa isa);
const KernelTable& active_table();

inline double cut_sum(CoordView v, Point c, const MetricSpec& m, double C) {
  return active_table().cut_sum(v, c, m, C);
}
inline std::size_t count_within(CoordView v, Point c, const MetricSpec& m, double C) {
  return active_table().count_within(v, c, m, C);
}
inline BallStats ball_stats(CoordView v, Point c, const MetricSpec& m, double C) {
  return active_table().ball_stats(v, c, m, C);
}
inline void collect_within(CoordView v, Point c, const MetricSpec& m, double C,
                           std::vector<std::uint32_t>& out) {
  active_table().collect_within(v, c, m, C, out);
}
inline WeiszfeldSums weiszfeld_sums(CoordView v, Point z) {
  return active_table().weiszfeld_sums(v, z);
}

}  // namespace cutoffloc::kernels
