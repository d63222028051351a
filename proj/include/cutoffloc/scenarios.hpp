#pragma once

// Random point patterns in the unit square for the benchmark study. Output is
// a pure function of (id, expected_points, seed) on every platform: the
// engine is std::mt19937_64 (fully specified by the standard) and the
// uniform, Poisson and Gaussian draws are written out here rather than taken
// from <random>'s implementation-defined distributions.

#include <cstdint>
#include <random>
#include <string_view>

#include "cutoffloc/point.hpp"

namespace cutoffloc {

inline constexpr std::string_view kScenarioPrng = "mt19937_64+splitmix64-streams";

struct ScenarioSpec {
  int id = 1;  // 1..6
  double expected_points = 600.0;
  std::uint64_t seed = 1;
};

/// Throws UsageError for an id outside 1..6 or a non-positive mean.
PointCloud generate(const ScenarioSpec& spec);

namespace rng {

std::uint64_t splitmix64(std::uint64_t x);

/// Independent engine for component `stream` of a pattern.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t stream);

double uniform01(std::mt19937_64& g);  // [0, 1), 53-bit
std::uint64_t poisson(std::mt19937_64& g, double mean);
double normal(std::mt19937_64& g);

}  // namespace rng
}  // namespace cutoffloc
