#include "cutoffloc/cutoff.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "cutoffloc/classic.hpp"
#include "cutoffloc/kernels.hpp"
#include "cutoffloc/metric.hpp"

namespace cutoffloc {
namespace {

// Candidates are ranked by (i, k): outer index, then position within that
// index's block. EMPTY ranks before everything.
using Ordinal = std::int64_t;
constexpr Ordinal kEmptyOrdinal = -1;

Ordinal make_ordinal(std::size_t i, std::size_t k) {
  return (static_cast<Ordinal>(i) << 32) | static_cast<Ordinal>(k);
}

// Keeps every candidate within slack of the smallest value seen; the winner is
// the earliest of those. Merging two incumbents gives the same winner as
// offering all their candidates to one, so thread partitioning cannot change it.
class Incumbent {
 public:
  struct Entry {
    Ordinal ordinal;
    double value;
    ExtendedLocation location;
  };

  double best() const { return best_; }

  void offer(Ordinal ord, double v, const ExtendedLocation& loc) {
    if (v < best_) {
      best_ = v;
      const double cut = best_ + value_slack(best_);
      std::erase_if(entries_, [cut](const Entry& e) { return e.value > cut; });
    }
    if (v <= best_ + value_slack(best_)) entries_.push_back({ord, v, loc});
  }

  void merge(const Incumbent& other) {
    for (const Entry& e : other.entries_) offer(e.ordinal, e.value, e.location);
  }

  const Entry& winner() const {
    return *std::min_element(entries_.begin(), entries_.end(),
                             [](const Entry& a, const Entry& b) { return a.ordinal < b.ordinal; });
  }

  bool empty() const { return entries_.empty(); }

 private:
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<Entry> entries_;
};

double guard_value(const MetricSpec& m, double C) {
  if (m.q == 1.0) return 2.0 * C;
  if (m.q == 2.0) return 4.0 * C;
  return std::pow(2.0, m.q) * C;
}

void insert_sorted(std::vector<std::uint32_t>& v, std::uint32_t x) {
  const auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

// Walks the candidate subsets belonging to one outer index i.
class PairEnumerator {
 public:
  PairEnumerator(const PointCloud& A, const MetricSpec& m, double C)
      : A_(A), m_(m), C_(C), guard_(guard_value(m, C)), r_(m.radius(C)), all_(kernels::view(A)) {}

  // Calls emit(ordinal, subset) for each candidate; returns the number of
  // pairs (i, j > i) the inner loop looked at.
  template <class Emit>
  std::size_t visit(std::size_t i, Emit&& emit) {
    const auto ui = static_cast<std::uint32_t>(i);
    std::size_t k = 0;
    single_[0] = ui;
    emit(make_ordinal(i, k++), std::span<const std::uint32_t>(single_));

    const Point ai = A_[i];
    near_.clear();
    kernels::collect_within(all_, ai, m_, guard_, near_);
    for (std::uint32_t j : near_) {
      if (j <= ui) continue;
      const Point aj = A_[j];
      if (ai == aj) continue;
      const double d = std::hypot(aj.x - ai.x, aj.y - ai.y);
      // The guard passed, so a rounding excess of d over 2r means a diameter pair.
      for (const Point& c : ball_centers_l2(ai, aj, std::max(r_, d / 2.0))) {
        S_.clear();
        kernels::collect_within(all_, c, m_, C_, S_);
        insert_sorted(S_, ui);
        insert_sorted(S_, j);
        emit(make_ordinal(i, k++), std::span<const std::uint32_t>(S_));
        emit_without(i, k, {ui, ui}, emit);
        emit_without(i, k, {j, j}, emit);
        emit_without(i, k, {ui, j}, emit);
      }
    }
    return A_.size() - 1 - i;
  }

 private:
  template <class Emit>
  void emit_without(std::size_t i, std::size_t& k, std::pair<std::uint32_t, std::uint32_t> drop,
                    Emit&& emit) {
    sub_.clear();
    for (std::uint32_t s : S_) {
      if (s != drop.first && s != drop.second) sub_.push_back(s);
    }
    if (!sub_.empty()) emit(make_ordinal(i, k++), std::span<const std::uint32_t>(sub_));
  }

  const PointCloud& A_;
  MetricSpec m_;
  double C_;
  double guard_;
  double r_;
  kernels::CoordView all_;
  std::uint32_t single_[1] = {0};
  std::vector<std::uint32_t> near_;
  std::vector<std::uint32_t> S_;
  std::vector<std::uint32_t> sub_;
};

// Points not yet ruled out, as a compacted coordinate array.
class CandidatePool {
 public:
  explicit CandidatePool(const PointCloud& A)
      : xs_(A.xs().begin(), A.xs().end()), ys_(A.ys().begin(), A.ys().end()) {
    idx_.resize(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) idx_[i] = i;
  }

  std::size_t count_within(Point c, const MetricSpec& m, double r) const {
    return kernels::count_within({xs_, ys_}, c, m, r);
  }

  void remove(std::size_t i) {
    const auto it = std::lower_bound(idx_.begin(), idx_.end(), i);
    if (it == idx_.end() || *it != i) return;
    const auto pos = it - idx_.begin();
    idx_.erase(it);
    xs_.erase(xs_.begin() + pos);
    ys_.erase(ys_.begin() + pos);
  }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<std::size_t> idx_;
};

struct RunResult {
  Incumbent incumbent;
  PruneStats stats;
  std::vector<SkipCertificate> skips;
};

RunResult run_l2_sequential(const PointCloud& A, const MetricSpec& m, const CutoffSpec& spec,
                            Algorithm algorithm) {
  const std::size_t n = A.size();
  const double C = spec.C;
  const double guard = guard_value(m, C);
  const auto all = kernels::view(A);
  RunResult r;
  if (algorithm == Algorithm::pruned_empty) {
    r.incumbent.offer(kEmptyOrdinal, static_cast<double>(n) * *spec.alpha * C,
                      ExtendedLocation::empty());
  }
  PairEnumerator pairs(A, m, C);
  ClassicScratch classic(m);
  CandidatePool pool(A);
  auto evaluate = [&](Ordinal ord, std::span<const std::uint32_t> subset) {
    const Point loc = classic.solve(A, subset);
    r.incumbent.offer(ord, kernels::cut_sum(all, loc, m, C), loc);
    ++r.stats.candidates_evaluated;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (algorithm != Algorithm::baseline) {
      const std::size_t near = pool.count_within(A[i], m, guard);
      const double bound = static_cast<double>(n - near) * C;
      if (bound >= r.incumbent.best()) {
        r.skips.push_back({i, near, bound, r.incumbent.best()});
        ++r.stats.points_skipped;
        pool.remove(i);
        continue;
      }
    }
    r.stats.pairs_examined += pairs.visit(i, evaluate);
  }
  return r;
}

// Outer indices are handed out dynamically. There is no shared pool, so a
// point is skipped only when its bound beats a snapshot of the best value by
// more than the tie slack; that keeps the winner identical to a sequential run.
RunResult run_l2_parallel(const PointCloud& A, const MetricSpec& m, const CutoffSpec& spec,
                          Algorithm algorithm, unsigned threads) {
  const std::size_t n = A.size();
  const double C = spec.C;
  const double guard = guard_value(m, C);
  const auto all = kernels::view(A);
  const double empty_value =
      algorithm == Algorithm::pruned_empty ? static_cast<double>(n) * *spec.alpha * C
                                           : std::numeric_limits<double>::infinity();
  std::atomic<std::size_t> next{0};
  std::atomic<double> shared_best{empty_value};
  std::vector<RunResult> parts(threads);

  auto worker = [&](RunResult& r) {
    PairEnumerator pairs(A, m, C);
    ClassicScratch classic(m);
    auto publish = [&](double v) {
      double cur = shared_best.load(std::memory_order_relaxed);
      while (v < cur && !shared_best.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
      }
    };
    auto evaluate = [&](Ordinal ord, std::span<const std::uint32_t> subset) {
      const Point loc = classic.solve(A, subset);
      const double v = kernels::cut_sum(all, loc, m, C);
      r.incumbent.offer(ord, v, loc);
      ++r.stats.candidates_evaluated;
      publish(v);
    };
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      if (algorithm != Algorithm::baseline) {
        const std::size_t near = kernels::count_within(all, A[i], m, guard);
        const double bound = static_cast<double>(n - near) * C;
        const double s = shared_best.load(std::memory_order_relaxed);
        if (bound > s + 2.0 * value_slack(s)) {
          r.skips.push_back({i, near, bound, s});
          ++r.stats.points_skipped;
          continue;
        }
      }
      r.stats.pairs_examined += pairs.visit(i, evaluate);
    }
  };

  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, std::ref(parts[t]));
  worker(parts[0]);
  for (auto& th : pool) th.join();

  RunResult out;
  if (algorithm == Algorithm::pruned_empty) {
    out.incumbent.offer(kEmptyOrdinal, empty_value, ExtendedLocation::empty());
  }
  for (const RunResult& p : parts) {
    out.incumbent.merge(p.incumbent);
    out.stats.pairs_examined += p.stats.pairs_examined;
    out.stats.points_skipped += p.stats.points_skipped;
    out.stats.candidates_evaluated += p.stats.candidates_evaluated;
    out.skips.insert(out.skips.end(), p.skips.begin(), p.skips.end());
  }
  std::sort(out.skips.begin(), out.skips.end(),
            [](const SkipCertificate& a, const SkipCertificate& b) { return a.index < b.index; });
  return out;
}

RunResult run_l1(const PointCloud& A, const MetricSpec& m, const CutoffSpec& spec,
                 Algorithm algorithm, unsigned threads) {
  const std::vector<Point> grid = candidate_points_l1(A);
  const auto all = kernels::view(A);
  const std::size_t n = A.size();
  RunResult r;
  if (algorithm == Algorithm::pruned_empty) {
    r.incumbent.offer(kEmptyOrdinal, static_cast<double>(n) * *spec.alpha * spec.C,
                      ExtendedLocation::empty());
  }
  threads = std::max<unsigned>(1, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));
  std::vector<Incumbent> parts(threads);
  auto worker = [&](unsigned t) {
    for (std::size_t k = t; k < grid.size(); k += threads) {
      parts[t].offer(make_ordinal(k, 0), kernels::cut_sum(all, grid[k], m, spec.C), grid[k]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();
  for (const Incumbent& p : parts) r.incumbent.merge(p);
  r.stats.candidates_evaluated = grid.size();
  return r;
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::baseline: return "baseline";
    case Algorithm::pruned: return "pruned";
    case Algorithm::pruned_empty: return "pruned_empty";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "baseline") return Algorithm::baseline;
  if (s == "pruned") return Algorithm::pruned;
  if (s == "pruned_empty") return Algorithm::pruned_empty;
  throw UsageError("algorithm must be baseline, pruned or pruned_empty (got '" + s + "')");
}

std::vector<Point> ball_centers_l2(Point a, Point b, double r) {
  if (a == b) throw UsageError("ball centers through a coincident pair are not unique");
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double d = std::hypot(dx, dy);
  if (d > 2.0 * r) return {};
  const Point mid{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
  const double half = d / 2.0;
  const double h2 = r * r - half * half;
  if (h2 <= 0.0) return {mid};
  const double h = std::sqrt(h2);
  const double ux = -dy / d;
  const double uy = dx / d;
  return {{mid.x + h * ux, mid.y + h * uy}, {mid.x - h * ux, mid.y - h * uy}};
}

void candidate_subsets_l2(const PointCloud& A, const MetricSpec& m, double C,
                          const std::function<void(std::span<const std::uint32_t>)>& emit) {
  if (m.norm != Norm::l2) throw UnsupportedConfig("candidate subsets need the Euclidean norm");
  PairEnumerator pairs(A, m, C);
  for (std::size_t i = 0; i < A.size(); ++i) {
    pairs.visit(i, [&](Ordinal, std::span<const std::uint32_t> s) { emit(s); });
  }
}

std::vector<Point> candidate_points_l1(const PointCloud& A) {
  std::vector<double> xs(A.xs().begin(), A.xs().end());
  std::vector<double> ys(A.ys().begin(), A.ys().end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  std::vector<Point> out;
  out.reserve(xs.size() * ys.size());
  for (double x : xs) {
    for (double y : ys) out.push_back({x, y});
  }
  return out;
}

CutoffSolution solve_cutoff(const PointCloud& A, const MetricSpec& m, const CutoffSpec& spec,
                            Algorithm algorithm, const SolveOptions& opt) {
  if (A.empty()) throw UsageError("cutoff solver needs at least one point");
  require_classic_supported(m);
  if (algorithm == Algorithm::pruned_empty && !spec.alpha) {
    throw UsageError("pruned_empty needs alpha");
  }
  if (A.size() > std::numeric_limits<std::uint32_t>::max()) throw UsageError("too many points");
  const std::size_t n = A.size();
  const unsigned threads = std::max(1u, opt.threads);

  RunResult r;
  if (m.norm == Norm::l1) {
    r = run_l1(A, m, spec, algorithm, threads);
  } else if (threads == 1) {
    r = run_l2_sequential(A, m, spec, algorithm);
  } else {
    r = run_l2_parallel(A, m, spec, algorithm, threads);
  }
  if (spec.alpha && algorithm != Algorithm::pruned_empty) {
    r.incumbent.offer(kEmptyOrdinal, static_cast<double>(n) * *spec.alpha * spec.C,
                      ExtendedLocation::empty());
  }

  CutoffSolution sol;
  const auto& w = r.incumbent.winner();
  sol.location = w.location;
  sol.value = w.value;
  if (!w.location.is_empty()) {
    std::vector<std::uint32_t> act;
    kernels::collect_within(kernels::view(A), w.location.point(), m, spec.C, act);
    sol.active.assign(act.begin(), act.end());
  }
  sol.stats = r.stats;
  sol.stats.pairs_total = n * (n - 1) / 2;
  sol.skips = std::move(r.skips);
  return sol;
}

}  // namespace cutoffloc
