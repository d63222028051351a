#pragma once

// Geometry-only pre-checks: when the classic barycenter already solves the
// cutoff problem, when the empty barycenter is forced or ruled out, and the
// tiny-C closed form. Verdicts are sound but incomplete.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cutoffloc/cutoff.hpp"
#include "cutoffloc/point.hpp"

namespace cutoffloc {

struct EnclosingBall {
  Point center;
  double radius = 0.0;
};

/// Exact smallest enclosing ball for p = 2 (move-to-front incremental), and
/// for p = 1 and p = inf (bounding box, in rotated coordinates for p = 1).
EnclosingBall smallest_enclosing_ball(const PointCloud& A, const MetricSpec& m);

/// 2 * r_seb <= C^(1/q), which implies Z* = Z*_C.
bool check_theorem_2r0(const PointCloud& A, const MetricSpec& m, double C);

enum class DiamVerdict { classic_equals_cutoff, strict_gap, inconclusive };
std::string to_string(DiamVerdict v);

DiamVerdict check_diam_shortcuts(const PointCloud& A, const MetricSpec& m, double C);

/// When C < 2^-q * min pairwise d^q, (a_1, (n-1)C, {a_1}) is optimal.
std::optional<CutoffSolution> check_tiny_C(const PointCloud& A, const MetricSpec& m, double C);

/// Most points of A in one closed ball of radius C^(1/q). The count uses a
/// relative tolerance of 1e-12 on d^q <= C, so it can only overestimate.
std::size_t max_ball_coverage(const PointCloud& A, const MetricSpec& m, double C);

enum class EmptyVerdict { empty_optimal, empty_excluded, unknown };
std::string to_string(EmptyVerdict v);

EmptyVerdict decide_empty(const PointCloud& A, const MetricSpec& m, double C, double alpha);

enum class Action { solve_classic_suffices, empty_is_optimal, empty_excluded, must_solve_cutoff };
std::string to_string(Action a);

struct Verdict {
  std::string id;
  bool fired = false;
  std::optional<std::variant<double, Point>> witness;
};

struct ReductionReport {
  std::vector<Verdict> verdicts;
  Action recommended = Action::must_solve_cutoff;

  std::vector<std::string> fired_ids() const;
};

/// Runs every applicable check. Advisory only; callers may still solve.
ReductionReport analyze(const PointCloud& A, const MetricSpec& m, const CutoffSpec& spec);

}  // namespace cutoffloc
