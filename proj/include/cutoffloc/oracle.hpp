#pragma once

// Brute-force reference solvers and the worked example point sets. These are
// deliberately simple and share no enumeration code with the cutoff solvers.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cutoffloc/cutoff.hpp"
#include "cutoffloc/point.hpp"

namespace cutoffloc {

constexpr std::size_t kOracleMaxPoints = 14;

/// Minimum of f_C (or f_{C,alpha}) over the classic barycenters of all
/// 2^n - 1 nonempty subsets, plus EMPTY when alpha is set. Exact; n <= 14.
CutoffSolution oracle_subsets(const PointCloud& A, const MetricSpec& m, const CutoffSpec& spec);

/// Best f_C over a uniform grid with `resolution` intervals per axis on the
/// bounding box grown by C^(1/q). Doubling the resolution nests the grids.
CutoffSolution oracle_grid(const PointCloud& A, const MetricSpec& m, double C, int resolution);

struct FixtureParams {
  double C = 1.0;
  double eps = 0.05;
  double q = 1.0;
  std::size_t n = 3;  // middle-point count for the 1-D same-location examples
};

struct Fixture {
  std::string name;
  PointCloud cloud;
  MetricSpec metric;
  CutoffSpec cutoff;
  std::map<std::string, double> expected;
};

std::vector<std::string> fixture_names();

/// Throws UsageError for unknown names.
Fixture fixture(const std::string& name, const FixtureParams& params = {});

}  // namespace cutoffloc
