#pragma once

// Replicated timing study of the three cutoff algorithms on generated
// scenarios: share of candidate evaluations skipped relative to the baseline
// and wall time relative to the baseline.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cutoffloc/cutoff.hpp"
#include "cutoffloc/point.hpp"

namespace cutoffloc {

struct BenchConfig {
  std::vector<int> scenarios{1};
  std::vector<double> Cs{0.05};
  double alpha = 0.5;
  MetricSpec metric{Norm::l2, 2.0};
  int replicates = 20;
  double expected_points = 600.0;
  std::uint64_t seed = 1;
  unsigned threads = 1;  // replicate-level
};

struct BenchRow {
  int scenario = 0;
  double C = 0.0;
  Algorithm algorithm = Algorithm::baseline;
  double skip_fraction = 0.0;  // mean over replicates of 1 - cand(alg) / cand(baseline)
  double rel_time = 0.0;       // total time(alg) / total time(baseline)
  double value_mean = 0.0;
  double time_s = 0.0;         // total wall time over replicates
};

/// Rows ordered by scenario, C, then baseline, pruned, pruned_empty.
std::vector<BenchRow> run_bench(const BenchConfig& cfg);

/// Columns scenario,C,algorithm,skip_fraction,rel_time,value_mean.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace cutoffloc
