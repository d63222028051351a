#include "cutoffloc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cutoffloc/classic.hpp"
#include "cutoffloc/metric.hpp"

namespace cutoffloc {
namespace {

// Plain loop on purpose: the oracle does not go through the SIMD kernels.
double f_cut(Point x, const PointCloud& A, const MetricSpec& m, double C) {
  double s = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i) s += dist_cut(x, A[i], m, C);
  return s;
}

CutoffSolution finish(const PointCloud& A, const MetricSpec& m, double C,
                      const ExtendedLocation& loc, double value) {
  CutoffSolution s;
  s.location = loc;
  s.value = value;
  if (!loc.is_empty()) s.active = active_const_split(loc.point(), A, m, C).active;
  return s;
}

PointCloud line_cloud(std::initializer_list<double> xs) {
  PointCloud c(1);
  for (double x : xs) c.push_back({x, 0.0});
  return c;
}

// One-dimensional examples are norm-agnostic; pick a norm the solvers accept.
MetricSpec line_metric(double q) { return MetricSpec(q == 1.0 ? Norm::l1 : Norm::l2, q); }

}  // namespace

CutoffSolution oracle_subsets(const PointCloud& A, const MetricSpec& m, const CutoffSpec& spec) {
  const std::size_t n = A.size();
  if (n == 0) throw UsageError("oracle needs at least one point");
  if (n > kOracleMaxPoints) {
    throw UsageError("subset oracle is limited to " + std::to_string(kOracleMaxPoints) + " points");
  }
  require_classic_supported(m);
  double best = std::numeric_limits<double>::infinity();
  Point best_loc;
  IndexSet idx;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    idx.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    const Point x = solve_classic_subset(A, idx, m).location;
    const double v = f_cut(x, A, m, spec.C);
    if (v < best) {
      best = v;
      best_loc = x;
    }
  }
  if (spec.alpha) {
    const double empty = static_cast<double>(n) * *spec.alpha * spec.C;
    if (empty < best) return finish(A, m, spec.C, ExtendedLocation::empty(), empty);
  }
  return finish(A, m, spec.C, best_loc, best);
}

CutoffSolution oracle_grid(const PointCloud& A, const MetricSpec& m, double C, int resolution) {
  if (A.empty()) throw UsageError("oracle needs at least one point");
  if (resolution < 1) throw UsageError("grid resolution must be positive");
  const auto [x_lo, x_hi] = std::minmax_element(A.xs().begin(), A.xs().end());
  const auto [y_lo, y_hi] = std::minmax_element(A.ys().begin(), A.ys().end());
  const double r = m.radius(C);
  const double x0 = *x_lo - r, wx = (*x_hi + r) - x0;
  const double y0 = *y_lo - r, wy = (*y_hi + r) - y0;
  const double res = static_cast<double>(resolution);
  double best = std::numeric_limits<double>::infinity();
  Point best_loc;
  for (int i = 0; i <= resolution; ++i) {
    for (int j = 0; j <= resolution; ++j) {
      const Point x{x0 + wx * (static_cast<double>(i) / res), y0 + wy * (static_cast<double>(j) / res)};
      const double v = f_cut(x, A, m, C);
      if (v < best) {
        best = v;
        best_loc = x;
      }
    }
  }
  return finish(A, m, C, best_loc, best);
}

std::vector<std::string> fixture_names() {
  return {"triangle",    "triangleq2",    "cminuseps",    "chalfpluseps",
          "discontinuity", "xinxc1dim", "xnotinxc1dim", "xnotinxc1norm"};
}

Fixture fixture(const std::string& name, const FixtureParams& p) {
  const double C = p.C;
  const double eps = p.eps;
  Fixture f;
  f.name = name;
  if (name == "triangle" || name == "triangleq2") {
    // Equilateral triangle of side sqrt(3) C centred at the origin.
    const double c = name == "triangle" ? C : 1.0;
    const double h = std::sqrt(3.0) * c / 2.0;
    f.cloud = PointCloud(std::vector<Point>{{-c / 2.0, h}, {-c / 2.0, -h}, {c, 0.0}});
    f.cutoff = CutoffSpec(c);
    if (name == "triangle") {
      f.metric = MetricSpec(Norm::l2, 1.0);
      f.expected = {{"Z_classic", 3.0 * c},
                    {"Z_cutoff", 2.0 * c},
                    {"f_C_eta", (std::sqrt(3.0) + 1.0) * c},
                    {"eta_x", -c / 2.0},
                    {"eta_y", 0.0}};
    } else {
      f.metric = MetricSpec(Norm::l2, 2.0);
      f.expected = {{"f_C_xi", 3.0}, {"f_C_eta", 2.5}, {"eta_x", -0.5}, {"eta_y", 0.0}};
    }
  } else if (name == "cminuseps") {
    f.metric = line_metric(p.q);
    f.cloud = line_cloud({0.0, std::pow(C - eps, 1.0 / p.q)});
    f.cutoff = CutoffSpec(C, 0.5);
    f.expected = {{"Z_cutoff", C - eps}, {"mpd", C - eps}};
  } else if (name == "chalfpluseps") {
    // 2m points: -delta, 0 (m-1 times), C (m-1 times), C + delta.
    const auto m = static_cast<std::size_t>(std::floor(C / (4.0 * eps) + 0.5)) + 1;
    const double md = static_cast<double>(m);
    const double delta = (2.0 * md * (2.0 * md - 1.0) * eps - md * C) / (4.0 * (md - 1.0));
    f.metric = MetricSpec(Norm::l1, 1.0);
    f.cloud = PointCloud(1);
    f.cloud.push_back({-delta, 0.0});
    for (std::size_t i = 0; i + 1 < m; ++i) f.cloud.push_back({0.0, 0.0});
    for (std::size_t i = 0; i + 1 < m; ++i) f.cloud.push_back({C, 0.0});
    f.cloud.push_back({C + delta, 0.0});
    f.cutoff = CutoffSpec(C, 0.5);
    f.expected = {{"m", md},
                  {"delta", delta},
                  {"mpd", C / 2.0 + eps},
                  {"Z_cutoff", md * C + delta},
                  {"Z_empty", md * C}};
  } else if (name == "discontinuity") {
    f.metric = MetricSpec(Norm::l1, 1.0);
    f.cloud = line_cloud({0.0, 0.5, 5.0, 6.0, 7.0});
    f.cutoff = CutoffSpec(3.0);
    f.expected = {{"Z_cutoff", 8.0}, {"diameter", 7.0}, {"Z_classic", 12.5}};
  } else if (name == "xinxc1dim") {
    f.metric = MetricSpec(Norm::l1, 1.0);
    f.cloud = line_cloud({0.0, 0.0, C + eps, -C - eps});
    f.cutoff = CutoffSpec(C);
    f.expected = {{"Z_classic", 2.0 * (C + eps)}, {"Z_cutoff", 2.0 * C}, {"x_opt", 0.0}};
  } else if (name == "xnotinxc1dim") {
    f.metric = MetricSpec(Norm::l1, 1.0);
    f.cloud = PointCloud(1);
    for (std::size_t i = 0; i < std::max<std::size_t>(p.n, 2); ++i) f.cloud.push_back({0.0, 0.0});
    f.cloud.push_back({C - eps, 0.0});
    f.cloud.push_back({-(C - eps), 0.0});
    f.cutoff = CutoffSpec(C);
    f.expected = {{"Z_classic", 2.0 * (C - eps)}, {"Z_cutoff", 2.0 * (C - eps)}, {"x_opt", 0.0}};
  } else if (name == "xnotinxc1norm") {
    f.metric = MetricSpec(Norm::l1, 1.0);
    f.cloud = PointCloud(std::vector<Point>{{-eps / 2.0, eps / 2.0},
                                            {-eps / 2.0, -eps / 2.0},
                                            {0.0, 0.0},
                                            {C - eps / 4.0, eps / 4.0},
                                            {C - eps / 4.0, -eps / 4.0}});
    f.cutoff = CutoffSpec(C);
    f.expected = {{"Z_classic", 2.0 * C + 2.0 * eps},
                  {"f_C_eta", 1.5 * eps + 2.0 * C},
                  {"eta_x", -eps / 2.0},
                  {"eta_y", 0.0}};
  } else {
    throw UsageError("unknown fixture '" + name + "'");
  }
  return f;
}

}  // namespace cutoffloc
