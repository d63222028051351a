#pragma once

// Powered distances, the cutoff and empty-aware variants, objective values and
// cloud summaries. Everything here is a pure function.

#include <optional>

#include "cutoffloc/point.hpp"

namespace cutoffloc {

/// ||y - x||_p^q
double dist_pow(Point x, Point y, const MetricSpec& m);

/// min(||y - x||_p^q, C)
double dist_cut(Point x, Point y, const MetricSpec& m, double C);

/// alpha*C when exactly one side is EMPTY, 0 when both are, dist_cut otherwise.
double dist_empty(const ExtendedLocation& x, const ExtendedLocation& y, const MetricSpec& m,
                  double C, double alpha);

/// sum_i dist(x, a_i) with no cutoff when `spec` is absent, d_C with a cutoff,
/// and n*alpha*C for EMPTY (which needs spec->alpha).
double objective(const ExtendedLocation& x, const PointCloud& A, const MetricSpec& m,
                 const std::optional<CutoffSpec>& spec);

struct ActiveSplit {
  IndexSet active;    // d^q(x, a_i) <= C
  IndexSet constant;  // the rest, each contributing exactly C
};

ActiveSplit active_const_split(Point x, const PointCloud& A, const MetricSpec& m, double C);

/// Largest pairwise norm distance (not raised to q); 0 for a single point.
double diameter(const PointCloud& A, const MetricSpec& m);

/// Smallest pairwise d^q over index pairs; +inf when n < 2. Coincident
/// points give 0.
double min_pair_dist_pow(const PointCloud& A, const MetricSpec& m);

/// Mean cut distance over ordered pairs of distinct indices. Needs n >= 2.
double mpd(const PointCloud& A, const MetricSpec& m, double C);
inline double mpd_normalized(const PointCloud& A, const MetricSpec& m, double C) {
  return mpd(A, m, C) / C;
}

/// Comparison slack shared by the solvers: 1e-9 * max(1, |v|).
inline double value_slack(double v) { return 1e-9 * (v > 1.0 ? v : (v < -1.0 ? -v : 1.0)); }

}  // namespace cutoffloc
