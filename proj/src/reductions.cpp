#include "cutoffloc/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "cutoffloc/kernels.hpp"
#include "cutoffloc/metric.hpp"

namespace cutoffloc {
namespace {

constexpr double kCoverTol = 1e-12;

struct Circle {
  Point c;
  double r = -1.0;

  bool contains(Point p) const {
    return std::hypot(p.x - c.x, p.y - c.y) <= r * (1.0 + 1e-12) + 1e-15;
  }
};

Circle from_two(Point a, Point b) {
  return {{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}, std::hypot(a.x - b.x, a.y - b.y) / 2.0};
}

Circle from_three(Point a, Point b, Point c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  if (std::fabs(d) <= 1e-300) {
    // Collinear: the widest pair spans the other point.
    Circle best = from_two(a, b);
    for (const Circle& k : {from_two(a, c), from_two(b, c)}) {
      if (k.r > best.r) best = k;
    }
    return best;
  }
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const Point center{a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
  const double r = std::max({std::hypot(a.x - center.x, a.y - center.y),
                             std::hypot(b.x - center.x, b.y - center.y),
                             std::hypot(c.x - center.x, c.y - center.y)});
  return {center, r};
}

EnclosingBall seb_l2(const PointCloud& A) {
  std::vector<Point> pts = A.points();
  // Fixed-seed shuffle keeps the expected linear running time and determinism.
  std::mt19937_64 rng(0x5eb);
  std::shuffle(pts.begin(), pts.end(), rng);
  Circle c;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (c.r >= 0.0 && c.contains(pts[i])) continue;
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (c.contains(pts[j])) continue;
      c = from_two(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (!c.contains(pts[k])) c = from_three(pts[i], pts[j], pts[k]);
      }
    }
  }
  return {c.c, std::max(c.r, 0.0)};
}

// Half-width box center of a coordinate pair stream.
struct Box {
  double lo_u = std::numeric_limits<double>::infinity();
  double hi_u = -std::numeric_limits<double>::infinity();
  double lo_v = std::numeric_limits<double>::infinity();
  double hi_v = -std::numeric_limits<double>::infinity();

  void add(double u, double v) {
    lo_u = std::min(lo_u, u);
    hi_u = std::max(hi_u, u);
    lo_v = std::min(lo_v, v);
    hi_v = std::max(hi_v, v);
  }
};

double pow_q(double d, double q) {
  if (q == 1.0) return d;
  if (q == 2.0) return d * d;
  return std::pow(d, q);
}

// Max number of points in an axis-parallel square of half-width r. Some
// optimal square has a point on its left edge and one on its bottom edge.
std::size_t max_square_coverage(const std::vector<double>& us, const std::vector<double>& vs,
                                double r) {
  const MetricSpec sup(Norm::linf, 1.0);
  const kernels::CoordView view{us, vs};
  const double rt = r * (1.0 + kCoverTol);
  std::size_t best = 0;
  for (double u : us) {
    for (double v : vs) best = std::max(best, kernels::count_within(view, {u + r, v + r}, sup, rt));
  }
  return best;
}

}  // namespace

EnclosingBall smallest_enclosing_ball(const PointCloud& A, const MetricSpec& m) {
  if (A.empty()) throw UsageError("enclosing ball of an empty set");
  Box box;
  switch (m.norm) {
    case Norm::l2:
      return seb_l2(A);
    case Norm::linf:
      for (std::size_t i = 0; i < A.size(); ++i) box.add(A[i].x, A[i].y);
      return {{(box.lo_u + box.hi_u) / 2.0, (box.lo_v + box.hi_v) / 2.0},
              std::max(box.hi_u - box.lo_u, box.hi_v - box.lo_v) / 2.0};
    case Norm::l1: {
      // |dx| + |dy| = max(|du|, |dv|) for u = x + y, v = x - y.
      for (std::size_t i = 0; i < A.size(); ++i) box.add(A[i].x + A[i].y, A[i].x - A[i].y);
      const double u = (box.lo_u + box.hi_u) / 2.0;
      const double v = (box.lo_v + box.hi_v) / 2.0;
      return {{(u + v) / 2.0, (u - v) / 2.0},
              std::max(box.hi_u - box.lo_u, box.hi_v - box.lo_v) / 2.0};
    }
  }
  return {};
}

bool check_theorem_2r0(const PointCloud& A, const MetricSpec& m, double C) {
  return 2.0 * smallest_enclosing_ball(A, m).radius <= m.radius(C);
}

std::string to_string(DiamVerdict v) {
  switch (v) {
    case DiamVerdict::classic_equals_cutoff: return "classic_equals_cutoff";
    case DiamVerdict::strict_gap: return "strict_gap";
    case DiamVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

DiamVerdict check_diam_shortcuts(const PointCloud& A, const MetricSpec& m, double C) {
  const double diam = diameter(A, m);
  const double r = m.radius(C);
  if (diam <= r || r >= 2.0 * diam) return DiamVerdict::classic_equals_cutoff;
  if (diam > 2.0 * r) return DiamVerdict::strict_gap;
  return DiamVerdict::inconclusive;
}

std::optional<CutoffSolution> check_tiny_C(const PointCloud& A, const MetricSpec& m, double C) {
  if (A.empty()) throw UsageError("tiny-C check needs at least one point");
  const double threshold = min_pair_dist_pow(A, m) / std::pow(2.0, m.q);
  if (!(C < threshold)) return std::nullopt;
  CutoffSolution s;
  s.location = A[0];
  s.value = static_cast<double>(A.size() - 1) * C;
  s.active = {0};
  return s;
}

std::size_t max_ball_coverage(const PointCloud& A, const MetricSpec& m, double C) {
  if (A.empty()) return 0;
  const double r = m.radius(C);
  if (m.norm == Norm::l2) {
    const auto all = kernels::view(A);
    const double ct = C * (1.0 + kCoverTol);
    std::size_t best = 0;
    for (std::size_t i = 0; i < A.size(); ++i) {
      best = std::max(best, kernels::count_within(all, A[i], m, ct));
      for (std::size_t j = i + 1; j < A.size(); ++j) {
        if (A[i] == A[j]) continue;
        for (const Point& c : ball_centers_l2(A[i], A[j], r)) {
          best = std::max(best, kernels::count_within(all, c, m, ct));
        }
      }
    }
    return best;
  }
  std::vector<double> us(A.size()), vs(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) {
    const Point p = A[i];
    us[i] = m.norm == Norm::l1 ? p.x + p.y : p.x;
    vs[i] = m.norm == Norm::l1 ? p.x - p.y : p.y;
  }
  return max_square_coverage(us, vs, r);
}

std::string to_string(EmptyVerdict v) {
  switch (v) {
    case EmptyVerdict::empty_optimal: return "empty_optimal";
    case EmptyVerdict::empty_excluded: return "empty_excluded";
    case EmptyVerdict::unknown: return "unknown";
  }
  return "?";
}

EmptyVerdict decide_empty(const PointCloud& A, const MetricSpec& m, double C, double alpha) {
  if (A.empty()) throw UsageError("empty-barycenter check needs at least one point");
  if (!(alpha > 0.0)) throw UsageError("alpha must be positive");
  const double n = static_cast<double>(A.size());
  const double share = (n - 1.0) / n;
  if (alpha > share) return EmptyVerdict::empty_excluded;

  const double diam_q = pow_q(diameter(A, m), m.q);
  const double cover = static_cast<double>(max_ball_coverage(A, m, C));
  const bool optimal = cover <= (1.0 - alpha) * n ||
                       alpha <= std::min(diam_q / (std::pow(2.0, m.q) * n * C), 1.0 / n);
  // Strict bounds: a rounding-level excess over the bound is a tie, not an exclusion.
  const auto above = [&](double bound) { return alpha > bound * (1.0 + 1e-12); };
  const bool excluded = above(mpd_normalized(A, m, C) * share) || above(diam_q / C * share);
  if (optimal && excluded) return EmptyVerdict::unknown;
  if (optimal) return EmptyVerdict::empty_optimal;
  if (excluded) return EmptyVerdict::empty_excluded;
  return EmptyVerdict::unknown;
}

std::string to_string(Action a) {
  switch (a) {
    case Action::solve_classic_suffices: return "solve_classic_suffices";
    case Action::empty_is_optimal: return "empty_is_optimal";
    case Action::empty_excluded: return "empty_excluded";
    case Action::must_solve_cutoff: return "must_solve_cutoff";
  }
  return "?";
}

std::vector<std::string> ReductionReport::fired_ids() const {
  std::vector<std::string> out;
  for (const Verdict& v : verdicts) {
    if (v.fired) out.push_back(v.id);
  }
  return out;
}

ReductionReport analyze(const PointCloud& A, const MetricSpec& m, const CutoffSpec& spec) {
  ReductionReport rep;
  const EnclosingBall ball = smallest_enclosing_ball(A, m);
  const bool small_ball = 2.0 * ball.radius <= m.radius(spec.C);
  rep.verdicts.push_back({"ball_2r0", small_ball, ball.radius});

  const DiamVerdict dv = check_diam_shortcuts(A, m, spec.C);
  const double diam = diameter(A, m);
  rep.verdicts.push_back({"classic_equals_cutoff", dv == DiamVerdict::classic_equals_cutoff, diam});
  rep.verdicts.push_back({"strict_gap", dv == DiamVerdict::strict_gap, diam});

  const auto tiny = check_tiny_C(A, m, spec.C);
  Verdict tv{"tiny_C", tiny.has_value(), std::nullopt};
  if (tiny) tv.witness = tiny->location.point();
  rep.verdicts.push_back(tv);

  bool empty_optimal = false;
  bool empty_excluded = false;
  if (spec.alpha) {
    const EmptyVerdict ev = decide_empty(A, m, spec.C, *spec.alpha);
    empty_optimal = ev == EmptyVerdict::empty_optimal;
    empty_excluded = ev == EmptyVerdict::empty_excluded;
    rep.verdicts.push_back({"empty_optimal", empty_optimal, std::nullopt});
    rep.verdicts.push_back({"empty_excluded", empty_excluded, std::nullopt});
  }

  const bool classic_ok = small_ball || dv == DiamVerdict::classic_equals_cutoff;
  if (empty_optimal) {
    rep.recommended = Action::empty_is_optimal;
  } else if (classic_ok && (!spec.alpha || empty_excluded)) {
    rep.recommended = Action::solve_classic_suffices;
  } else if (empty_excluded) {
    rep.recommended = Action::empty_excluded;
  }
  return rep;
}

}  // namespace cutoffloc
