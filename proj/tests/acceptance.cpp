// Acceptance suite. Prints one PASS/FAIL line per criterion (detail lines are
// indented) and exits non-zero if any criterion fails. Pass criterion numbers
// as arguments to run a subset, e.g. `acceptance 1 5`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cutoffloc/bench.hpp"
#include "cutoffloc/classic.hpp"
#include "cutoffloc/cutoff.hpp"
#include "cutoffloc/metric.hpp"
#include "cutoffloc/oracle.hpp"
#include "cutoffloc/reductions.hpp"
#include "cutoffloc/sensitivity.hpp"

using namespace cutoffloc;

namespace {

// Pinned tolerances.
constexpr double kExampleRel = 1e-9;
constexpr double kOracleRel = 1e-8;
constexpr double kVerdictEq = 1e-9;
constexpr double kGapMargin = 1e-12;
constexpr double kCurveContinuity = 1e-9;
constexpr double kCurveVsSolver = 1e-7;
constexpr double kTriangleSlack = 1e-12;
constexpr double kSkipMin = 0.99;
constexpr double kFastRelTime = 0.3;
constexpr double kPrunedRelTimeMax = 1.05;

bool rel_eq(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

struct Checker {
  int failures = 0;
  int checks = 0;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (failures <= 20) std::printf("    fail: %s\n", what.c_str());
    }
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const MetricSpec kMetrics[] = {MetricSpec(Norm::l2, 1.0), MetricSpec(Norm::l2, 2.0),
                               MetricSpec(Norm::l1, 1.0)};
const Algorithm kAlgorithms[] = {Algorithm::baseline, Algorithm::pruned, Algorithm::pruned_empty};

// ---------------------------------------------------------------- 1
bool criterion1() {
  Checker c;
  {
    const Fixture f = fixture("triangle");
    const double C = f.cutoff.C;
    c.expect(rel_eq(solve_classic(f.cloud, f.metric).value, 3.0 * C, kExampleRel), "triangle Z* = 3C");
    for (Algorithm a : {Algorithm::baseline, Algorithm::pruned}) {
      c.expect(rel_eq(solve_cutoff(f.cloud, f.metric, f.cutoff, a).value, 2.0 * C, kExampleRel),
               "triangle Z*_C = 2C (" + to_string(a) + ")");
    }
    c.expect(rel_eq(objective(Point{-C / 2, 0}, f.cloud, f.metric, f.cutoff), (std::sqrt(3.0) + 1) * C,
                    kExampleRel),
             "triangle f_C((-C/2,0)) = (sqrt3+1)C");
  }
  {
    const Fixture f = fixture("triangleq2");
    c.expect(rel_eq(objective(Point{0, 0}, f.cloud, f.metric, f.cutoff), 3.0, kExampleRel),
             "triangle q=2 f_C(xi) = 3");
    c.expect(rel_eq(objective(Point{-0.5, 0}, f.cloud, f.metric, f.cutoff), 2.5, kExampleRel),
             "triangle q=2 f_C(eta) = 2.5");
    for (Algorithm a : {Algorithm::baseline, Algorithm::pruned}) {
      c.expect(solve_cutoff(f.cloud, f.metric, f.cutoff, a).value <= 2.5 * (1 + kExampleRel),
               "triangle q=2 solver value <= 2.5");
    }
  }
  {
    const Fixture f = fixture("cminuseps", {.C = 1.0, .eps = 0.1, .q = 1.0});
    const CutoffSolution s = solve_cutoff(f.cloud, f.metric, CutoffSpec(1.0, 0.5), Algorithm::pruned_empty);
    c.expect(!s.location.is_empty(), "C-eps: finite location");
    c.expect(rel_eq(s.value, 0.9, kExampleRel), "C-eps: value 0.9");
  }
  {
    const Fixture f = fixture("chalfpluseps", {.C = 1.0, .eps = 0.05});
    const double n = f.expected.at("m");
    const double delta = f.expected.at("delta");
    const CutoffSolution s = solve_cutoff(f.cloud, f.metric, CutoffSpec(1.0, 0.5), Algorithm::pruned_empty);
    c.expect(s.location.is_empty(), "C/2+eps: pruned_empty returns EMPTY");
    c.expect(rel_eq(s.value, n * 1.0, kExampleRel), "C/2+eps: value nC");
    const CutoffSolution o = oracle_subsets(f.cloud, f.metric, CutoffSpec(1.0));
    c.expect(!o.location.is_empty() && rel_eq(o.value, n + delta, kExampleRel),
             "C/2+eps: oracle finite optimum nC + delta");
    c.expect(delta > 0, "C/2+eps: delta > 0");
  }
  {
    const Fixture f = fixture("discontinuity");
    const SensitivityCurve g = compute_g(f.cloud, f.metric);
    const std::vector<double> bp = g.breakpoints();
    const double want[] = {0.5, 1.5, 5.25};
    c.expect(bp.size() == 3, "discontinuity: three breakpoints");
    for (std::size_t k = 0; k < std::min<std::size_t>(bp.size(), 3); ++k) {
      c.expect(std::abs(bp[k] - want[k]) <= kExampleRel, "discontinuity: breakpoint " + fmt("%g", want[k]));
    }
    std::vector<std::size_t> slopes;
    for (const CurveSegment& s : g.segments) slopes.push_back(s.slope);
    c.expect(slopes == std::vector<std::size_t>{4, 3, 2, 0}, "discontinuity: slopes 4,3,2,0");
    const Point rep = g.segment_at(3.0).barycenter;
    c.expect(rel_eq(objective(rep, f.cloud, f.metric, CutoffSpec(3.0)), 8.0, kExampleRel),
             "discontinuity: representative on [1.5,5.25] has f_C = 8 at C = 3");
  }
  std::printf("  %d checks, %d failed\n", c.checks, c.failures);
  return c.failures == 0;
}

// ---------------------------------------------------------------- 2, 3
struct Instance {
  PointCloud cloud;
  MetricSpec metric;
  double C;
  double alpha;
};

std::vector<Instance> random_instances() {
  std::mt19937_64 g(20240601);
  std::uniform_int_distribution<int> nd(3, 12);
  std::uniform_int_distribution<int> md(0, 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double alphas[] = {0.25, 0.5, 0.9};
  std::vector<Instance> out;
  for (int k = 0; k < 500; ++k) {
    Instance in;
    const int n = nd(g);
    for (int i = 0; i < n; ++i) {
      const double x = u(g);
      in.cloud.push_back({x, u(g)});
    }
    in.metric = kMetrics[md(g)];
    const double hi = 2.0 * std::pow(diameter(in.cloud, in.metric), in.metric.q);
    const double lo = 0.01;
    in.C = lo * std::pow(hi / lo, u(g));
    in.alpha = alphas[md(g)];
    out.push_back(std::move(in));
  }
  return out;
}

struct OracleValues {
  CutoffSolution plain;
  CutoffSolution with_alpha;
  double classic = 0.0;
};

std::vector<OracleValues>& oracle_cache(const std::vector<Instance>& inst) {
  static std::vector<OracleValues> cache;
  if (cache.empty()) {
    for (const Instance& in : inst) {
      cache.push_back({oracle_subsets(in.cloud, in.metric, CutoffSpec(in.C)),
                       oracle_subsets(in.cloud, in.metric, CutoffSpec(in.C, in.alpha)),
                       solve_classic(in.cloud, in.metric).value});
    }
  }
  return cache;
}

bool criterion2(const std::vector<Instance>& inst) {
  Checker c;
  const auto& ov = oracle_cache(inst);
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const Instance& in = inst[k];
    const std::string tag = "instance " + std::to_string(k);
    for (Algorithm a : kAlgorithms) {
      const CutoffSolution s = solve_cutoff(in.cloud, in.metric, CutoffSpec(in.C, in.alpha), a);
      c.expect(rel_eq(s.value, ov[k].with_alpha.value, kOracleRel), tag + " alpha " + to_string(a));
      if (a != Algorithm::pruned_empty) {
        const CutoffSolution p = solve_cutoff(in.cloud, in.metric, CutoffSpec(in.C), a);
        c.expect(rel_eq(p.value, ov[k].plain.value, kOracleRel), tag + " no alpha " + to_string(a));
      }
    }
  }
  std::printf("  %zu instances, %d comparisons, %d mismatches\n", inst.size(), c.checks, c.failures);
  return c.failures == 0;
}

bool criterion3(const std::vector<Instance>& inst) {
  Checker c;
  const auto& ov = oracle_cache(inst);
  std::size_t fired = 0;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const Instance& in = inst[k];
    const double n = static_cast<double>(in.cloud.size());
    const double zc = ov[k].plain.value;
    const double z = ov[k].classic;
    const double empty_value = n * in.alpha * in.C;
    const ReductionReport r = analyze(in.cloud, in.metric, CutoffSpec(in.C, in.alpha));
    for (const Verdict& v : r.verdicts) {
      if (!v.fired) continue;
      ++fired;
      const std::string tag = "instance " + std::to_string(k) + " " + v.id;
      if (v.id == "classic_equals_cutoff" || v.id == "ball_2r0") {
        c.expect(std::abs(z - zc) <= kVerdictEq * std::max(1.0, z), tag);
      } else if (v.id == "strict_gap") {
        c.expect(zc < z - kGapMargin * std::max(1.0, z), tag);
      } else if (v.id == "tiny_C") {
        c.expect(rel_eq(zc, (n - 1) * in.C, kVerdictEq), tag);
      } else if (v.id == "empty_optimal") {
        c.expect(std::abs(ov[k].with_alpha.value - empty_value) <= kVerdictEq * std::max(1.0, empty_value),
                 tag);
      } else if (v.id == "empty_excluded") {
        c.expect(zc < empty_value, tag);
      }
    }
  }
  std::printf("  %zu fired verdicts checked, %d violations\n", fired, c.failures);
  return c.failures == 0;
}

// ---------------------------------------------------------------- 4
bool criterion4() {
  Checker c;
  std::mt19937_64 g(777);
  std::uniform_int_distribution<int> nd(2, 15);
  std::uniform_int_distribution<int> md(0, 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    PointCloud A;
    const int n = nd(g);
    for (int i = 0; i < n; ++i) {
      const double x = u(g);
      A.push_back({x, u(g)});
    }
    const MetricSpec m = kMetrics[md(g)];
    const SensitivityCurve curve = compute_g(A, m);
    const std::string tag = "curve " + std::to_string(k);
    c.expect(curve.cutoff_calls <= static_cast<std::size_t>(n - 1), tag + " solver calls <= n-1");
    for (std::size_t s = 1; s < curve.segments.size(); ++s) {
      const CurveSegment& a = curve.segments[s - 1];
      const CurveSegment& b = curve.segments[s];
      c.expect(a.slope > b.slope, tag + " slopes strictly decreasing");
      const double left = static_cast<double>(a.slope) * b.C_start + a.intercept;
      c.expect(std::abs(left - b.value_start) <= kCurveContinuity * std::max(1.0, b.value_start),
               tag + " continuity");
    }
    const double top = 1.5 * std::pow(diameter(A, m), m.q);
    for (int j = 0; j < 50; ++j) {
      const double C = top * (1e-3 + u(g));
      const double v = solve_cutoff(A, m, CutoffSpec(C), Algorithm::pruned).value;
      c.expect(rel_eq(curve.evaluate(C), v, kCurveVsSolver), tag + fmt(" value at C=%.6g", C));
    }
  }
  std::printf("  %d checks, %d failed\n", c.checks, c.failures);
  return c.failures == 0;
}

// ---------------------------------------------------------------- 5
bool criterion5() {
  Checker c;
  std::mt19937_64 g(55);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_int_distribution<int> pick(0, 6);
  const Norm norms[] = {Norm::l1, Norm::l2, Norm::linf};
  const double C = 1.0;
  double worst_cut = 0.0, worst_empty = 0.0;
  for (int k = 0; k < 100000; ++k) {
    const MetricSpec m(norms[k % 3], 1.0);
    const Point a{u(g), u(g)}, b{u(g), u(g)}, d{u(g), u(g)};
    worst_cut = std::max(worst_cut, dist_cut(a, d, m, C) - dist_cut(a, b, m, C) - dist_cut(b, d, m, C));
    // one in seven triples has EMPTY in each slot
    const int e = pick(g);
    const ExtendedLocation x = e == 0 ? ExtendedLocation::empty() : ExtendedLocation(a);
    const ExtendedLocation y = e == 1 ? ExtendedLocation::empty() : ExtendedLocation(b);
    const ExtendedLocation z = e == 2 ? ExtendedLocation::empty() : ExtendedLocation(d);
    worst_empty = std::max(worst_empty, dist_empty(x, z, m, C, 0.5) - dist_empty(x, y, m, C, 0.5) -
                                            dist_empty(y, z, m, C, 0.5));
  }
  c.expect(worst_cut <= kTriangleSlack, fmt("d_C triangle excess %.3g", worst_cut));
  c.expect(worst_empty <= kTriangleSlack, fmt("d_C,0.5 triangle excess %.3g", worst_empty));
  // alpha = 0.4: x, z with d(x, z) > 2 alpha C routed through EMPTY
  const MetricSpec m(Norm::l2, 1.0);
  const Point x{0, 0}, z{0.9, 0};
  const double direct = dist_empty(x, z, m, C, 0.4);
  const double via = dist_empty(x, ExtendedLocation::empty(), m, C, 0.4) +
                     dist_empty(ExtendedLocation::empty(), z, m, C, 0.4);
  c.expect(direct > via + kTriangleSlack, "alpha 0.4 violation found");
  std::printf("  100000 triples; worst excess d_C %.3g, d_C,0.5 %.3g; alpha 0.4: %.2f > %.2f\n",
              worst_cut, worst_empty, direct, via);
  return c.failures == 0;
}

// ---------------------------------------------------------------- 6
bool criterion6() {
  Checker c;
  BenchConfig cfg;
  cfg.alpha = 0.5;
  cfg.metric = MetricSpec(Norm::l2, 2.0);
  cfg.expected_points = 600;
  cfg.replicates = 20;
  cfg.seed = 1;

  cfg.scenarios = {1};
  cfg.Cs = {0.01, 0.02, 0.03, 0.05, 0.075, 0.1};
  std::vector<BenchRow> rows = run_bench(cfg);

  cfg.scenarios = {2, 3, 4, 5, 6};
  cfg.Cs = {0.01, 0.05, 0.1};
  const std::vector<BenchRow> more = run_bench(cfg);
  rows.insert(rows.end(), more.begin(), more.end());

  std::printf("  scenario      C  pruned skip   time | pruned_empty skip   time\n");
  for (std::size_t k = 0; k < rows.size(); k += 3) {
    const BenchRow& pr = rows[k + 1];
    const BenchRow& pe = rows[k + 2];
    std::printf("  %8d %6.3f  %11.3f %6.3f | %17.3f %6.3f\n", pr.scenario, pr.C, pr.skip_fraction,
                pr.rel_time, pe.skip_fraction, pe.rel_time);
    const std::string tag = "scenario " + std::to_string(pr.scenario) + fmt(" C=%g", pr.C);
    if (pr.scenario == 1) {
      c.expect(pe.skip_fraction >= kSkipMin, tag + fmt(" pruned_empty skip %.3f", pe.skip_fraction));
      if (pr.C <= 0.02) {
        c.expect(pe.rel_time <= kFastRelTime, tag + fmt(" pruned_empty time %.3f", pe.rel_time));
      }
    }
    c.expect(pr.rel_time <= kPrunedRelTimeMax, tag + fmt(" pruned time %.3f", pr.rel_time));
  }
  return c.failures == 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto want = [&](int k) { return only.empty() || only.count(k) > 0; };

  std::vector<Instance> inst;
  if (want(2) || want(3)) inst = random_instances();

  const std::pair<int, std::function<bool()>> criteria[] = {
      {1, criterion1},
      {2, [&] { return criterion2(inst); }},
      {3, [&] { return criterion3(inst); }},
      {4, criterion4},
      {5, criterion5},
      {6, criterion6},
  };
  const char* names[] = {"",
                         "worked-example regression",
                         "oracle equivalence, 500 random instances",
                         "reduction soundness",
                         "sensitivity-curve properties",
                         "metric axioms",
                         "benchmark trend"};
  int failed = 0;
  for (const auto& [k, fn] : criteria) {
    if (!want(k)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    const bool ok = fn();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %s: %s (%.1fs)\n", k, names[k], ok ? "PASS" : "FAIL", s);
    std::fflush(stdout);
    failed += ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
