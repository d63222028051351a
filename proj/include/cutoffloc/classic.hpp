#pragma once

// The classic barycenter problem without cutoff: minimize sum_i d^q(x, a_i).
// Supported (p, q): (2, 2) mean, (1, 1) coordinate median, (2, 1) Weiszfeld.

#include <cstdint>
#include <span>
#include <vector>

#include "cutoffloc/point.hpp"

namespace cutoffloc {

struct ClassicSolution {
  Point location;
  double value = 0.0;
  int iterations = 0;  // 0 for closed forms
};

bool classic_supported(const MetricSpec& m);

/// Throws UnsupportedConfig for (p, q) outside the supported set.
void require_classic_supported(const MetricSpec& m);

ClassicSolution solve_classic(const PointCloud& A, const MetricSpec& m);
ClassicSolution solve_classic_subset(const PointCloud& A, std::span<const std::size_t> idx,
                                     const MetricSpec& m);

struct WeiszfeldOptions {
  double rel_tol = 1e-12;
  int max_iterations = 10000;
  std::vector<double>* trace = nullptr;  // objective at every iterate, if set
};

/// Euclidean geometric median of xs/ys.
ClassicSolution weiszfeld(std::span<const double> xs, std::span<const double> ys,
                          const WeiszfeldOptions& opt = {});

/// Location-only solver with reusable buffers, used inside the candidate
/// loops where the subset changes on every call.
class ClassicScratch {
 public:
  explicit ClassicScratch(const MetricSpec& m);

  Point solve(const PointCloud& A, std::span<const std::uint32_t> idx);

 private:
  MetricSpec m_;
  std::vector<double> xs_;
  std::vector<double> ys_;
};

}  // namespace cutoffloc
