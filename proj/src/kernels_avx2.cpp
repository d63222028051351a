// AVX2 variants of the point-cloud kernels, four doubles per step. Compiled
// with a per-function target attribute so the rest of the binary stays at the
// baseline ISA; dispatch checks the CPU before handing out this table.
// Exponents other than 1 and 2 have no vector pow here and go to the scalar
// reference.

#include <algorithm>
#include <array>
#include <bit>
#include <limits>

#include "cutoffloc/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define CUTOFFLOC_HAS_AVX2 1
#include <immintrin.h>
#endif

namespace cutoffloc::kernels {

#ifdef CUTOFFLOC_HAS_AVX2

#define CUTOFFLOC_AVX2 __attribute__((target("avx2")))

namespace {

bool vector_exponent(const MetricSpec& m) { return m.q == 1.0 || m.q == 2.0; }

CUTOFFLOC_AVX2 inline __m256d vabs(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// Same operation sequence as dist_pow_delta for q in {1, 2}.
CUTOFFLOC_AVX2 inline __m256d dist_pow_v(__m256d dx, __m256d dy, Norm norm, bool square) {
  if (norm == Norm::l2) {
    const __m256d sq = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    return square ? sq : _mm256_sqrt_pd(sq);
  }
  const __m256d ax = vabs(dx);
  const __m256d ay = vabs(dy);
  const __m256d d = norm == Norm::l1 ? _mm256_add_pd(ax, ay) : _mm256_max_pd(ax, ay);
  return square ? _mm256_mul_pd(d, d) : d;
}

CUTOFFLOC_AVX2 inline double hsum(__m256d v) {
  alignas(32) std::array<double, 4> lanes;
  _mm256_store_pd(lanes.data(), v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

CUTOFFLOC_AVX2 double cut_sum_avx2(CoordView v, Point c, const MetricSpec& m, double C) {
  if (!vector_exponent(m)) return scalar_table().cut_sum(v, c, m, C);
  const bool square = m.q == 2.0;
  const __m256d cx = _mm256_set1_pd(c.x);
  const __m256d cy = _mm256_set1_pd(c.y);
  const __m256d cv = _mm256_set1_pd(C);
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n = v.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(v.xs.data() + i), cx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(v.ys.data() + i), cy);
    acc = _mm256_add_pd(acc, _mm256_min_pd(dist_pow_v(dx, dy, m.norm, square), cv));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = dist_pow_delta(v.xs[i] - c.x, v.ys[i] - c.y, m);
    s += d < C ? d : C;
  }
  return s;
}

CUTOFFLOC_AVX2 std::size_t count_within_avx2(CoordView v, Point c, const MetricSpec& m,
                                             double C) {
  if (!vector_exponent(m)) return scalar_table().count_within(v, c, m, C);
  const bool square = m.q == 2.0;
  const __m256d cx = _mm256_set1_pd(c.x);
  const __m256d cy = _mm256_set1_pd(c.y);
  const __m256d cv = _mm256_set1_pd(C);
  const std::size_t n = v.size();
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(v.xs.data() + i), cx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(v.ys.data() + i), cy);
    const __m256d le = _mm256_cmp_pd(dist_pow_v(dx, dy, m.norm, square), cv, _CMP_LE_OQ);
    count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(_mm256_movemask_pd(le))));
  }
  for (; i < n; ++i) {
    count += dist_pow_delta(v.xs[i] - c.x, v.ys[i] - c.y, m) <= C ? 1 : 0;
  }
  return count;
}

CUTOFFLOC_AVX2 BallStats ball_stats_avx2(CoordView v, Point c, const MetricSpec& m, double C) {
  if (!vector_exponent(m)) return scalar_table().ball_stats(v, c, m, C);
  const bool square = m.q == 2.0;
  const __m256d cx = _mm256_set1_pd(c.x);
  const __m256d cy = _mm256_set1_pd(c.y);
  const __m256d cv = _mm256_set1_pd(C);
  __m256d sx = _mm256_setzero_pd();
  __m256d sy = _mm256_setzero_pd();
  BallStats st;
  const std::size_t n = v.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(v.xs.data() + i);
    const __m256d y = _mm256_loadu_pd(v.ys.data() + i);
    const __m256d le = _mm256_cmp_pd(
        dist_pow_v(_mm256_sub_pd(x, cx), _mm256_sub_pd(y, cy), m.norm, square), cv, _CMP_LE_OQ);
    sx = _mm256_add_pd(sx, _mm256_and_pd(le, x));
    sy = _mm256_add_pd(sy, _mm256_and_pd(le, y));
    st.count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(_mm256_movemask_pd(le))));
  }
  st.sx = hsum(sx);
  st.sy = hsum(sy);
  for (; i < n; ++i) {
    if (dist_pow_delta(v.xs[i] - c.x, v.ys[i] - c.y, m) <= C) {
      ++st.count;
      st.sx += v.xs[i];
      st.sy += v.ys[i];
    }
  }
  return st;
}

CUTOFFLOC_AVX2 void collect_within_avx2(CoordView v, Point c, const MetricSpec& m, double C,
                                        std::vector<std::uint32_t>& out) {
  if (!vector_exponent(m)) {
    scalar_table().collect_within(v, c, m, C, out);
    return;
  }
  const bool square = m.q == 2.0;
  const __m256d cx = _mm256_set1_pd(c.x);
  const __m256d cy = _mm256_set1_pd(c.y);
  const __m256d cv = _mm256_set1_pd(C);
  const std::size_t n = v.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(v.xs.data() + i), cx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(v.ys.data() + i), cy);
    unsigned bits = static_cast<unsigned>(
        _mm256_movemask_pd(_mm256_cmp_pd(dist_pow_v(dx, dy, m.norm, square), cv, _CMP_LE_OQ)));
    while (bits != 0) {
      const int lane = std::countr_zero(bits);
      out.push_back(static_cast<std::uint32_t>(i + static_cast<std::size_t>(lane)));
      bits &= bits - 1;
    }
  }
  for (; i < n; ++i) {
    if (dist_pow_delta(v.xs[i] - c.x, v.ys[i] - c.y, m) <= C) {
      out.push_back(static_cast<std::uint32_t>(i));
    }
  }
}

CUTOFFLOC_AVX2 WeiszfeldSums weiszfeld_sums_avx2(CoordView v, Point z) {
  const __m256d zx = _mm256_set1_pd(z.x);
  const __m256d zy = _mm256_set1_pd(z.y);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d wx = _mm256_setzero_pd();
  __m256d wy = _mm256_setzero_pd();
  __m256d w = _mm256_setzero_pd();
  __m256d ds = _mm256_setzero_pd();
  __m256d mn = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  const std::size_t n = v.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(v.xs.data() + i);
    const __m256d y = _mm256_loadu_pd(v.ys.data() + i);
    const __m256d dx = _mm256_sub_pd(x, zx);
    const __m256d dy = _mm256_sub_pd(y, zy);
    const __m256d d = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    const __m256d wi = _mm256_div_pd(one, d);
    wx = _mm256_add_pd(wx, _mm256_mul_pd(x, wi));
    wy = _mm256_add_pd(wy, _mm256_mul_pd(y, wi));
    w = _mm256_add_pd(w, wi);
    ds = _mm256_add_pd(ds, d);
    mn = _mm256_min_pd(mn, d);
  }
  WeiszfeldSums s;
  s.wx = hsum(wx);
  s.wy = hsum(wy);
  s.w = hsum(w);
  s.dist_sum = hsum(ds);
  alignas(32) std::array<double, 4> lanes;
  _mm256_store_pd(lanes.data(), mn);
  s.min_dist = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
  for (; i < n; ++i) {
    const double dx = v.xs[i] - z.x;
    const double dy = v.ys[i] - z.y;
    const double d = std::sqrt(dx * dx + dy * dy);
    const double wi = 1.0 / d;
    s.wx += v.xs[i] * wi;
    s.wy += v.ys[i] * wi;
    s.w += wi;
    s.dist_sum += d;
    s.min_dist = std::min(s.min_dist, d);
  }
  return s;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable t{cut_sum_avx2, count_within_avx2, ball_stats_avx2,
                             collect_within_avx2, weiszfeld_sums_avx2};
  return &t;
}

#else

const KernelTable* avx2_table() { return nullptr; }

#endif

}  // namespace cutoffloc::kernels
