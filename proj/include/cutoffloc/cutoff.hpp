#pragma once

// Exact solvers for the barycenter problem with cutoff C, optionally with the
// empty barycenter priced at alpha*C per point.
//
// Euclidean (q = 1 or 2): every optimum is the classic barycenter of its own
// active set, and that set fits in a radius-C^(1/q) ball with two points on the
// boundary. Enumerating those balls gives O(n^2) candidate subsets. The l1 path
// evaluates f_C on the grid of coordinate lines through the data instead.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cutoffloc/point.hpp"

namespace cutoffloc {

enum class Algorithm {
  baseline,     // every candidate subset
  pruned,       // skip points with too many far neighbours
  pruned_empty  // pruned, starting from the empty barycenter's value n*alpha*C
};

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& s);

struct PruneStats {
  std::size_t pairs_total = 0;     // n(n-1)/2
  std::size_t pairs_examined = 0;  // pairs visited by the inner loop
  std::size_t points_skipped = 0;
  std::size_t candidates_evaluated = 0;
};

/// Evidence for one skipped point: (n - m) * C >= best value at that moment.
struct SkipCertificate {
  std::size_t index = 0;
  std::size_t m = 0;  // points still in the pool within d^q <= 2^q C
  double bound = 0.0;
  double best = 0.0;
};

struct CutoffSolution {
  ExtendedLocation location;
  double value = 0.0;
  IndexSet active;  // empty for EMPTY
  PruneStats stats;
  std::vector<SkipCertificate> skips;
};

struct SolveOptions {
  unsigned threads = 1;
};

/// Centers of the radius-r Euclidean circles through a and b: none when
/// ||a - b|| > 2r, the midpoint when the pair is a diameter, else two points
/// (the one left of a->b first). Throws UsageError when a == b.
std::vector<Point> ball_centers_l2(Point a, Point b, double r);

/// Streams the candidate subsets of the Euclidean enumeration in solver
/// order: for each i, the singleton {i}, then for each j > i with
/// d^q(a_i, a_j) <= 2^q C and each center, S, S\{i}, S\{j}, S\{i,j}
/// (empty sets are not emitted). Index lists are ascending.
void candidate_subsets_l2(const PointCloud& A, const MetricSpec& m, double C,
                          const std::function<void(std::span<const std::uint32_t>)>& emit);

/// Grid of all (x_i, y_j) over distinct coordinates, x-major, ascending.
std::vector<Point> candidate_points_l1(const PointCloud& A);

/// Global optimum of f_C, or of f_{C,alpha} when spec.alpha is set.
/// pruned_empty requires alpha. Among candidates within 1e-9*max(1, v) of the
/// best value v the earliest in enumeration order wins (EMPTY counts as
/// earliest), so the result does not depend on the thread count.
CutoffSolution solve_cutoff(const PointCloud& A, const MetricSpec& m, const CutoffSpec& spec,
                            Algorithm algorithm, const SolveOptions& opt = {});

}  // namespace cutoffloc
