#include "cutoffloc/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "cutoffloc/bench.hpp"
#include "cutoffloc/classic.hpp"
#include "cutoffloc/csv_io.hpp"
#include "cutoffloc/cutoff.hpp"
#include "cutoffloc/kernels.hpp"
#include "cutoffloc/reductions.hpp"
#include "cutoffloc/scenarios.hpp"
#include "cutoffloc/sensitivity.hpp"

namespace cutoffloc {
namespace {

struct Options {
  std::string input;
  std::vector<int> scenarios;
  double expected_points = 600.0;
  std::string p = "2";
  std::optional<double> q;
  std::vector<double> Cs;
  std::optional<double> alpha;
  std::string algorithm = "pruned";
  bool sweep = false;
  bool bench = false;
  bool generate = false;
  int replicates = 20;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;
  std::string isa = "auto";
  bool no_timing = false;
};

std::string location_text(const ExtendedLocation& loc, int dim) {
  if (loc.is_empty()) return "EMPTY";
  const Point& p = loc.point();
  if (dim == 1) return format_double(p.x);
  return format_double(p.x) + "," + format_double(p.y);
}

PointCloud load_cloud(const Options& o) {
  if (!o.input.empty()) return read_points_csv(o.input);
  ScenarioSpec spec;
  spec.id = o.scenarios.front();
  spec.expected_points = o.expected_points;
  spec.seed = o.seed;
  return generate(spec);
}

void require_single_source(const Options& o) {
  const bool has_input = !o.input.empty();
  const bool has_scenario = !o.scenarios.empty();
  if (has_input == has_scenario) throw UsageError("give exactly one of --input or --scenario");
  if (has_scenario && o.scenarios.size() != 1) throw UsageError("--scenario takes one id here");
}

void cmd_solve(const Options& o, std::ostream& out) {
  require_single_source(o);
  if (o.Cs.size() != 1) throw UsageError("--C takes exactly one value when solving");
  const MetricSpec metric(parse_norm(o.p), o.q.value_or(1.0));
  require_classic_supported(metric);
  const Algorithm algorithm = parse_algorithm(o.algorithm);
  const CutoffSpec spec(o.Cs.front(), o.alpha);
  if (algorithm == Algorithm::pruned_empty && !spec.alpha) {
    throw UsageError("--algorithm pruned_empty needs --alpha");
  }
  const PointCloud cloud = load_cloud(o);
  if (cloud.empty()) throw IoError("input contains no points");

  const ReductionReport report = analyze(cloud, metric, spec);
  SolveOptions so;
  so.threads = o.threads;
  const auto t0 = std::chrono::steady_clock::now();
  const CutoffSolution sol = solve_cutoff(cloud, metric, spec, algorithm, so);
  const auto t1 = std::chrono::steady_clock::now();

  std::string fired;
  for (const std::string& id : report.fired_ids()) fired += (fired.empty() ? "" : ",") + id;
  out << "algorithm=" << to_string(algorithm) << '\n'
      << "n=" << cloud.size() << '\n'
      << "p=" << to_string(metric.norm) << '\n'
      << "q=" << format_double(metric.q) << '\n'
      << "C=" << format_double(spec.C) << '\n'
      << "alpha=" << (spec.alpha ? format_double(*spec.alpha) : "none") << '\n'
      << "location=" << location_text(sol.location, cloud.dim()) << '\n'
      << "value=" << format_double(sol.value) << '\n'
      << "active_count=" << sol.active.size() << '\n'
      << "pairs_total=" << sol.stats.pairs_total << '\n'
      << "pairs_examined=" << sol.stats.pairs_examined << '\n'
      << "points_skipped=" << sol.stats.points_skipped << '\n'
      << "candidates_evaluated=" << sol.stats.candidates_evaluated << '\n'
      << "reductions=" << (fired.empty() ? "none" : fired) << '\n'
      << "recommended=" << to_string(report.recommended) << '\n'
      << "isa=" << kernels::to_string(kernels::active_isa()) << '\n';
  if (!o.no_timing) {
    out << "wall_time_s=" << format_double(std::chrono::duration<double>(t1 - t0).count()) << '\n';
  }
}

void cmd_sweep(const Options& o, std::ostream& out) {
  require_single_source(o);
  if (!o.Cs.empty()) throw UsageError("--C has no meaning with --sweep");
  const MetricSpec metric(parse_norm(o.p), o.q.value_or(1.0));
  require_classic_supported(metric);
  if (o.alpha && !(*o.alpha > 0.0)) throw UsageError("alpha must be positive");
  const PointCloud cloud = load_cloud(o);
  if (cloud.empty()) throw IoError("input contains no points");

  SensitivityOptions so;
  so.parallel = o.threads > 1;
  const SensitivityCurve g = compute_g(cloud, metric, so);
  out << "C_break,g_value,slope,bary_x,bary_y\n";
  auto row = [&](double c, double v, double slope, const ExtendedLocation& loc) {
    out << format_double(c) << ',' << format_double(v) << ',' << format_double(slope) << ',';
    if (loc.is_empty()) {
      out << "EMPTY,EMPTY\n";
    } else {
      out << format_double(loc.point().x) << ',' << format_double(loc.point().y) << '\n';
    }
  };
  if (o.alpha) {
    const AlphaCurve ga = compute_g_alpha(g, *o.alpha);
    for (const AlphaSegment& s : ga.segments) row(s.C_start, s.value_start, s.slope, s.location);
  } else {
    for (const CurveSegment& s : g.segments) {
      row(s.C_start, s.value_start, static_cast<double>(s.slope), s.barycenter);
    }
  }
}

void cmd_bench(const Options& o, std::ostream& out) {
  if (!o.input.empty()) throw UsageError("--bench runs on generated scenarios, not --input");
  if (o.scenarios.empty()) throw UsageError("--bench needs --scenario");
  if (o.Cs.empty()) throw UsageError("--bench needs --C");
  if (o.replicates < 1) throw UsageError("--replicates must be at least 1");
  BenchConfig cfg;
  cfg.scenarios = o.scenarios;
  cfg.Cs = o.Cs;
  cfg.alpha = o.alpha.value_or(0.5);
  cfg.metric = MetricSpec(parse_norm(o.p), o.q.value_or(2.0));
  require_classic_supported(cfg.metric);
  cfg.replicates = o.replicates;
  cfg.expected_points = o.expected_points;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  write_bench_csv(out, run_bench(cfg));
}

void cmd_generate(const Options& o, std::ostream& out) {
  if (o.scenarios.size() != 1 || !o.input.empty()) {
    throw UsageError("--generate needs exactly one --scenario id");
  }
  const PointCloud cloud = load_cloud(o);
  write_points_csv(out, cloud,
                   {"prng=" + std::string(kScenarioPrng), "scenario=" + std::to_string(o.scenarios[0]),
                    "seed=" + std::to_string(o.seed),
                    "expected_points=" + format_double(o.expected_points)});
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact barycenter location with distance cutoff and empty option", "cutoffloc"};
  app.add_option("--input", o.input, "points CSV (x,y or x per line)");
  app.add_option("--scenario", o.scenarios, "scenario id(s) 1..6; comma list for --bench")
      ->delimiter(',')
      ->check(CLI::Range(1, 6));
  app.add_option("--expected-points", o.expected_points, "mean point count of generated patterns");
  app.add_option("--p", o.p, "norm: 1, 2 or inf");
  app.add_option("--q", o.q, "distance exponent (default 1; 2 for --bench)");
  app.add_option("--C", o.Cs, "cutoff; comma list for --bench")->delimiter(',');
  app.add_option("--alpha", o.alpha, "price factor of the empty solution");
  app.add_option("--algorithm", o.algorithm, "baseline, pruned or pruned_empty");
  auto* sweep = app.add_flag("--sweep", o.sweep, "optimal value as a function of C (CSV)");
  auto* bench = app.add_flag("--bench", o.bench, "timing study over scenarios (CSV)");
  auto* gen = app.add_flag("--generate", o.generate, "write a scenario pattern as CSV");
  sweep->excludes(bench)->excludes(gen);
  bench->excludes(gen);
  app.add_option("--replicates", o.replicates, "patterns per scenario for --bench");
  app.add_option("--seed", o.seed, "random seed for generated patterns");
  app.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", o.out, "write output here instead of stdout");
  app.add_option("--isa", o.isa, "kernel instruction set: auto, scalar or avx2");
  app.add_flag("--no-timing", o.no_timing, "omit wall_time_s from the solve record");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  bool restore = false;  // run_cli may be called in-process; undo a forced ISA
  try {
    if (o.isa == "scalar") {
      kernels::force_isa(kernels::Isa::scalar);
      restore = true;
    } else if (o.isa == "avx2") {
      kernels::force_isa(kernels::Isa::avx2);
      restore = true;
    } else if (o.isa != "auto") {
      throw UsageError("--isa must be auto, scalar or avx2");
    }

    std::ostringstream buf;
    if (o.sweep) {
      cmd_sweep(o, buf);
    } else if (o.bench) {
      cmd_bench(o, buf);
    } else if (o.generate) {
      cmd_generate(o, buf);
    } else {
      cmd_solve(o, buf);
    }
    if (restore) kernels::force_isa(std::nullopt);

    if (o.out.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(o.out);
      if (!(f << buf.str())) throw IoError("cannot write '" + o.out + "'");
    }
    return kExitOk;
  } catch (const IoError& e) {
    if (restore) kernels::force_isa(std::nullopt);
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {  // UsageError, UnsupportedConfig
    if (restore) kernels::force_isa(std::nullopt);
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace cutoffloc
