#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "cutoffloc/classic.hpp"
#include "cutoffloc/metric.hpp"
#include "support.hpp"

using namespace cutoffloc;

namespace {
const MetricSpec L2Q1(Norm::l2, 1.0);
const MetricSpec L2Q2(Norm::l2, 2.0);
const MetricSpec L1Q1(Norm::l1, 1.0);

// Independent Euclidean median: dense grid, then pattern search refinement.
Point grid_then_pattern(const std::vector<Point>& pts) {
  Point best{0, 0};
  double fb = INFINITY;
  for (int i = 0; i <= 200; ++i) {
    for (int j = 0; j <= 200; ++j) {
      const Point p{i / 200.0, j / 200.0};
      const double f = testref::f_plain(p, pts, Norm::l2, 1.0);
      if (f < fb) fb = f, best = p;
    }
  }
  for (double step = 1.0 / 200; step > 1e-13; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (const Point d : {Point{step, 0}, Point{-step, 0}, Point{0, step}, Point{0, -step}}) {
        const Point p{best.x + d.x, best.y + d.y};
        const double f = testref::f_plain(p, pts, Norm::l2, 1.0);
        if (f < fb) fb = f, best = p, moved = true;
      }
    }
  }
  return best;
}
}  // namespace

TEST_CASE("support matrix") {
  CHECK(classic_supported(L2Q1));
  CHECK(classic_supported(L2Q2));
  CHECK(classic_supported(L1Q1));
  CHECK_FALSE(classic_supported(MetricSpec(Norm::l2, 3.0)));
  CHECK_FALSE(classic_supported(MetricSpec(Norm::linf, 1.0)));
  CHECK_FALSE(classic_supported(MetricSpec(Norm::l1, 2.0)));
  CHECK_THROWS_AS(require_classic_supported(MetricSpec(Norm::l2, 3.0)), UnsupportedConfig);
  CHECK_THROWS_AS(solve_classic(PointCloud(std::vector<Point>{{0, 0}}), MetricSpec(Norm::linf, 1.0)),
                  UnsupportedConfig);
}

TEST_CASE("equilateral triangle has its center as Euclidean median") {
  const double h = std::sqrt(3.0) / 2.0;
  const PointCloud A(std::vector<Point>{{-0.5, h}, {-0.5, -h}, {1.0, 0.0}});
  const ClassicSolution s = solve_classic(A, L2Q1);
  CHECK(std::abs(s.location.x) < 1e-9);
  CHECK(std::abs(s.location.y) < 1e-9);
  CHECK(s.value == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("closed forms and small sets") {
  const PointCloud one(std::vector<Point>{{2, -1}});
  for (const MetricSpec& m : {L2Q1, L2Q2, L1Q1}) {
    const ClassicSolution s = solve_classic(one, m);
    CHECK(s.location == Point{2, -1});
    CHECK(s.value == 0.0);
  }
  // two points: value 2^(1-q) ||a-b||^q
  const PointCloud two(std::vector<Point>{{0, 0}, {3, 4}});
  CHECK(solve_classic(two, L2Q1).value == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(solve_classic(two, L2Q2).value == doctest::Approx(12.5).epsilon(1e-12));
  CHECK(solve_classic(two, L1Q1).value == doctest::Approx(7.0).epsilon(1e-12));

  const PointCloud A(std::vector<Point>{{0, 1}, {1, 5}, {2, 0}, {7, 2}});
  const ClassicSolution mean = solve_classic(A, L2Q2);
  CHECK(mean.location == Point{2.5, 2.0});
  CHECK(mean.iterations == 0);
  // even count: midpoint of the median interval in each coordinate
  const ClassicSolution med = solve_classic(A, L1Q1);
  CHECK(med.location == Point{1.5, 1.5});
}

TEST_CASE("subset solver") {
  const PointCloud A = testref::line({0, 0.5, 5, 6, 7});
  const std::vector<std::size_t> idx{2, 3, 4};
  const ClassicSolution s = solve_classic_subset(A, idx, L1Q1);
  CHECK(s.location.x == 6.0);
  CHECK(s.value == 2.0);
  const std::vector<std::size_t> single{1};
  CHECK(solve_classic_subset(A, single, L2Q1).location.x == 0.5);
  CHECK_THROWS_AS(solve_classic_subset(A, std::vector<std::size_t>{}, L2Q1), UsageError);
  std::vector<std::size_t> all(A.size());
  std::iota(all.begin(), all.end(), 0);
  CHECK(solve_classic_subset(A, all, L2Q2).location == solve_classic(A, L2Q2).location);

  ClassicScratch scratch(L2Q2);
  const std::vector<std::uint32_t> sub{0, 1};
  CHECK(scratch.solve(A, sub).x == 0.25);
}

TEST_CASE("Weiszfeld against an independent search on random clouds") {
  for (int rep = 0; rep < 10; ++rep) {
    const auto pts = testref::uniform_points(20, 40 + rep);
    const ClassicSolution s = solve_classic(PointCloud(pts), L2Q1);
    const Point ref = grid_then_pattern(pts);
    CHECK(std::hypot(s.location.x - ref.x, s.location.y - ref.y) < 1e-4);
    const double fr = testref::f_plain(ref, pts, Norm::l2, 1.0);
    CHECK(testref::rel_close(s.value, fr, 1e-8));
    CHECK(s.value <= fr + 1e-12 * fr);
    // stationarity along sampled directions
    for (int k = 0; k < 8; ++k) {
      const double t = k * M_PI / 4;
      const double h = 1e-7;
      const Point p{s.location.x + h * std::cos(t), s.location.y + h * std::sin(t)};
      CHECK((testref::f_plain(p, pts, Norm::l2, 1.0) - s.value) / h >= -1e-6);
    }
  }
}

TEST_CASE("Weiszfeld trace is non-increasing and stops at an optimal data point") {
  const auto pts = testref::uniform_points(30, 77);
  std::vector<double> xs, ys, trace;
  for (const Point& p : pts) xs.push_back(p.x), ys.push_back(p.y);
  WeiszfeldOptions opt;
  opt.trace = &trace;
  weiszfeld(xs, ys, opt);
  REQUIRE(trace.size() >= 2);
  for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1] + 1e-12 * trace[i - 1]);

  // Heavy multiplicity at the origin makes it the median exactly.
  const std::vector<double> hx{0, 0, 0, 0, 1, -1, 0.3}, hy{0, 0, 0, 0, 0.2, 0.5, -1};
  const ClassicSolution s = weiszfeld(hx, hy);
  CHECK(s.location == Point{0, 0});

  // Mean lands on a data point that is not the median.
  const std::vector<double> cx{0, 3, 3, 3, -9}, cy{0, 1, -1, 0, 0};
  const ClassicSolution t = weiszfeld(cx, cy);
  std::vector<Point> cp;
  for (std::size_t i = 0; i < cx.size(); ++i) cp.push_back({cx[i], cy[i]});
  for (int k = 0; k < 8; ++k) {
    const double a = k * M_PI / 4;
    const Point p{t.location.x + 1e-7 * std::cos(a), t.location.y + 1e-7 * std::sin(a)};
    CHECK(testref::f_plain(p, cp, Norm::l2, 1.0) >= t.value - 1e-12);
  }
}

TEST_CASE("coordinate median stays within the coordinate range") {
  for (int rep = 0; rep < 50; ++rep) {
    const auto pts = testref::uniform_points(1 + rep % 9, rep);
    const ClassicSolution s = solve_classic(PointCloud(pts), L1Q1);
    double best = INFINITY;
    for (const Point& a : pts) {
      for (const Point& b : pts) best = std::min(best, testref::f_plain({a.x, b.y}, pts, Norm::l1, 1.0));
    }
    CHECK(testref::rel_close(s.value, best, 1e-12));
  }
}
