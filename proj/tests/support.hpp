#pragma once

// Test-side reference arithmetic. Deliberately written against the raw
// formulas rather than the library helpers so the two can disagree.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cutoffloc/point.hpp"

namespace testref {

inline double norm_dist(cutoffloc::Point a, cutoffloc::Point b, cutoffloc::Norm p) {
  const double dx = std::abs(a.x - b.x);
  const double dy = std::abs(a.y - b.y);
  switch (p) {
    case cutoffloc::Norm::l1: return dx + dy;
    case cutoffloc::Norm::l2: return std::hypot(dx, dy);
    case cutoffloc::Norm::linf: return std::max(dx, dy);
  }
  return 0.0;
}

inline double dq(cutoffloc::Point a, cutoffloc::Point b, cutoffloc::Norm p, double q) {
  return std::pow(norm_dist(a, b, p), q);
}

inline double f_cut(cutoffloc::Point x, const std::vector<cutoffloc::Point>& A, cutoffloc::Norm p,
                    double q, double C) {
  double s = 0.0;
  for (const auto& a : A) s += std::min(dq(x, a, p, q), C);
  return s;
}

inline double f_plain(cutoffloc::Point x, const std::vector<cutoffloc::Point>& A,
                      cutoffloc::Norm p, double q) {
  double s = 0.0;
  for (const auto& a : A) s += dq(x, a, p, q);
  return s;
}

inline std::vector<cutoffloc::Point> uniform_points(std::size_t n, std::uint64_t seed,
                                                    double lo = 0.0, double hi = 1.0) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<cutoffloc::Point> out(n);
  for (auto& p : out) {
    p.x = u(g);
    p.y = u(g);
  }
  return out;
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

inline cutoffloc::PointCloud line(std::initializer_list<double> xs) {
  cutoffloc::PointCloud c(1);
  for (double x : xs) c.push_back({x, 0.0});
  return c;
}

}  // namespace testref
