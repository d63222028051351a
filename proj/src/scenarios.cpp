#include "cutoffloc/scenarios.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace cutoffloc {
namespace rng {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t s) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(s + 0x51ed27)));
}

double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

std::uint64_t poisson(std::mt19937_64& g, double mean) {
  // Knuth's product method, in chunks so exp(-chunk) stays well above
  // underflow; a Poisson(a + b) count is the sum of Poisson(a) and Poisson(b).
  constexpr double kChunk = 20.0;
  std::uint64_t total = 0;
  while (mean > 0.0) {
    const double lam = mean > kChunk ? kChunk : mean;
    mean -= lam;
    const double limit = std::exp(-lam);
    double prod = uniform01(g);
    while (prod > limit) {
      ++total;
      prod *= uniform01(g);
    }
  }
  return total;
}

double normal(std::mt19937_64& g) {
  // Box-Muller, one variate per call; u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - uniform01(g);
  const double u2 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rng

namespace {

struct Rect {
  double x0, x1, y0, y1;
};

void fill_rect(PointCloud& out, std::mt19937_64& g, const Rect& r, double mean) {
  const std::uint64_t k = rng::poisson(g, mean);
  for (std::uint64_t i = 0; i < k; ++i) {
    const double x = r.x0 + (r.x1 - r.x0) * rng::uniform01(g);
    const double y = r.y0 + (r.y1 - r.y0) * rng::uniform01(g);
    out.push_back({x, y});
  }
}

std::vector<Rect> rectangles(int id) {
  switch (id) {
    case 1: return {{0.0, 1.0, 0.0, 1.0}};
    case 2: return {{0.0, 0.5, 0.0, 0.5}, {0.4, 0.9, 0.4, 0.9}};
    case 3: return {{0.0, 1.0, 0.0, 1.0}, {0.3, 0.7, 0.3, 0.7}};
    case 4: return {{0.0, 1.0, 0.0, 1.0}, {0.35, 0.65, 0.35, 0.65}};
    case 5: return {{0.0, 0.5, 0.25, 0.75}, {0.3, 0.9, 0.25, 0.75}};
    default: return {};
  }
}

PointCloud generate_once(const ScenarioSpec& spec, std::uint64_t attempt) {
  PointCloud out;
  // Stream index: attempt * 16 + component.
  auto component = [&](std::uint64_t c) { return rng::stream(spec.seed, attempt * 16 + c); };
  if (spec.id == 6) {
    constexpr int kClusters = 4;
    constexpr double kSigma = 0.025;
    const double per_cluster = 0.9 * spec.expected_points / kClusters;
    for (int k = 0; k < kClusters; ++k) {
      auto g = component(static_cast<std::uint64_t>(k));
      const Point center{rng::uniform01(g), rng::uniform01(g)};
      const std::uint64_t cnt = rng::poisson(g, per_cluster);
      for (std::uint64_t i = 0; i < cnt; ++i) {
        const double dx = kSigma * rng::normal(g);
        const double dy = kSigma * rng::normal(g);
        out.push_back({center.x + dx, center.y + dy});
      }
    }
    auto g = component(kClusters);
    fill_rect(out, g, {0.0, 1.0, 0.0, 1.0}, 0.1 * spec.expected_points);
    return out;
  }
  const std::vector<Rect> rects = rectangles(spec.id);
  const double share = spec.expected_points / static_cast<double>(rects.size());
  for (std::size_t k = 0; k < rects.size(); ++k) {
    auto g = component(k);
    fill_rect(out, g, rects[k], share);
  }
  return out;
}

}  // namespace

PointCloud generate(const ScenarioSpec& spec) {
  if (spec.id < 1 || spec.id > 6) throw UsageError("scenario id must be in 1..6");
  if (!(spec.expected_points > 0.0) || !std::isfinite(spec.expected_points)) {
    throw UsageError("expected point count must be positive");
  }
  for (std::uint64_t attempt = 0;; ++attempt) {
    PointCloud c = generate_once(spec, attempt);
    if (!c.empty()) return c;
  }
}

}  // namespace cutoffloc
