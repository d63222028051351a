#include "cutoffloc/bench.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <ostream>
#include <thread>

#include "cutoffloc/csv_io.hpp"
#include "cutoffloc/scenarios.hpp"

namespace cutoffloc {
namespace {

constexpr std::array<Algorithm, 3> kAlgorithms{Algorithm::baseline, Algorithm::pruned,
                                               Algorithm::pruned_empty};

struct Sample {
  double seconds = 0.0;
  double candidates = 0.0;
  double value = 0.0;
};

// samples[c][a] for one (scenario, replicate)
using ReplicateResult = std::vector<std::array<Sample, 3>>;

ReplicateResult run_replicate(const BenchConfig& cfg, int scenario, int replicate) {
  ScenarioSpec spec;
  spec.id = scenario;
  spec.expected_points = cfg.expected_points;
  // Hash each component on its own; a plain xor of seed and replicate makes
  // nearby seeds permute the same set of patterns.
  using rng::splitmix64;
  spec.seed = splitmix64(splitmix64(splitmix64(cfg.seed) ^ static_cast<std::uint64_t>(scenario)) ^
                         static_cast<std::uint64_t>(replicate));
  const PointCloud cloud = generate(spec);
  ReplicateResult out(cfg.Cs.size());
  for (std::size_t c = 0; c < cfg.Cs.size(); ++c) {
    const CutoffSpec cut(cfg.Cs[c], cfg.alpha);
    // Rotate the algorithm order so cache and frequency effects do not
    // always favour the same algorithm.
    for (std::size_t k = 0; k < kAlgorithms.size(); ++k) {
      const std::size_t a = (k + static_cast<std::size_t>(replicate)) % kAlgorithms.size();
      const auto t0 = std::chrono::steady_clock::now();
      const CutoffSolution sol = solve_cutoff(cloud, cfg.metric, cut, kAlgorithms[a]);
      const auto t1 = std::chrono::steady_clock::now();
      out[c][a] = {std::chrono::duration<double>(t1 - t0).count(),
                   static_cast<double>(sol.stats.candidates_evaluated), sol.value};
    }
  }
  return out;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  if (cfg.replicates < 1) throw UsageError("replicates must be at least 1");
  if (cfg.scenarios.empty() || cfg.Cs.empty()) throw UsageError("bench needs scenarios and C values");
  for (double C : cfg.Cs) CutoffSpec(C, cfg.alpha);  // validate before any work

  const std::size_t per_scenario = static_cast<std::size_t>(cfg.replicates);
  const std::size_t jobs = cfg.scenarios.size() * per_scenario;
  std::vector<ReplicateResult> results(jobs);

  {
    // Untimed warm-up: page in code and data before the first measurement.
    ScenarioSpec warm{cfg.scenarios.front(), cfg.expected_points, cfg.seed};
    solve_cutoff(generate(warm), cfg.metric, CutoffSpec(cfg.Cs.front(), cfg.alpha),
                 Algorithm::baseline);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next.fetch_add(1); j < jobs; j = next.fetch_add(1)) {
      results[j] = run_replicate(cfg, cfg.scenarios[j / per_scenario],
                                 static_cast<int>(j % per_scenario));
    }
  };
  const unsigned threads = std::max(1u, cfg.threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<BenchRow> rows;
  for (std::size_t s = 0; s < cfg.scenarios.size(); ++s) {
    for (std::size_t c = 0; c < cfg.Cs.size(); ++c) {
      std::array<double, 3> time{}, skip{}, value{};
      for (std::size_t r = 0; r < per_scenario; ++r) {
        const auto& smp = results[s * per_scenario + r][c];
        for (std::size_t a = 0; a < 3; ++a) {
          time[a] += smp[a].seconds;
          value[a] += smp[a].value;
          skip[a] += smp[0].candidates > 0.0 ? 1.0 - smp[a].candidates / smp[0].candidates : 0.0;
        }
      }
      const double reps = static_cast<double>(per_scenario);
      for (std::size_t a = 0; a < 3; ++a) {
        rows.push_back({cfg.scenarios[s], cfg.Cs[c], kAlgorithms[a], skip[a] / reps,
                        time[0] > 0.0 ? time[a] / time[0] : 1.0, value[a] / reps, time[a]});
      }
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "scenario,C,algorithm,skip_fraction,rel_time,value_mean\n";
  for (const BenchRow& r : rows) {
    out << r.scenario << ',' << format_double(r.C) << ',' << to_string(r.algorithm) << ','
        << format_double(r.skip_fraction) << ',' << format_double(r.rel_time) << ','
        << format_double(r.value_mean) << '\n';
  }
}

}  // namespace cutoffloc
