// AVX2 lane for the entrywise kernels. This translation unit is compiled with
// -mavx2; it must only be entered after the runtime dispatch has confirmed
// CPU support.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "negtype/kernels.hpp"

namespace negtype::kernels::detail {

namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

}  // namespace

SignSplit sign_split_weighted_avx2(const double* w, const double* q,
                                   std::size_t m, double eps) {
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d vneps = _mm256_set1_pd(-eps);
  __m256d acc_pos = _mm256_setzero_pd();
  __m256d acc_neg = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256d vq = _mm256_loadu_pd(q + i);
    __m256d vw = _mm256_loadu_pd(w + i);
    __m256d prod = _mm256_mul_pd(vw, vq);
    __m256d mpos = _mm256_cmp_pd(vq, veps, _CMP_GT_OQ);
    __m256d mneg = _mm256_cmp_pd(vq, vneps, _CMP_LT_OQ);
    acc_pos = _mm256_add_pd(acc_pos, _mm256_and_pd(prod, mpos));
    acc_neg = _mm256_add_pd(acc_neg, _mm256_and_pd(prod, mneg));
  }
  SignSplit s;
  s.pos = hsum(acc_pos);
  s.neg = hsum(acc_neg);
  for (; i < m; ++i) {
    if (q[i] > eps)
      s.pos += w[i] * q[i];
    else if (q[i] < -eps)
      s.neg += w[i] * q[i];
  }
  return s;
}

double sum_positive_avx2(const double* q, std::size_t m, double eps) {
  const __m256d veps = _mm256_set1_pd(eps);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256d vq = _mm256_loadu_pd(q + i);
    __m256d mask = _mm256_cmp_pd(vq, veps, _CMP_GT_OQ);
    acc = _mm256_add_pd(acc, _mm256_and_pd(vq, mask));
  }
  double s = hsum(acc);
  for (; i < m; ++i)
    if (q[i] > eps) s += q[i];
  return s;
}

void clip_box_avx2(double* x, const double* lo, const double* hi,
                   std::size_t m) {
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256d vx = _mm256_loadu_pd(x + i);
    vx = _mm256_max_pd(vx, _mm256_loadu_pd(lo + i));
    vx = _mm256_min_pd(vx, _mm256_loadu_pd(hi + i));
    _mm256_storeu_pd(x + i, vx);
  }
  for (; i < m; ++i) {
    double v = x[i] < lo[i] ? lo[i] : x[i];
    x[i] = v > hi[i] ? hi[i] : v;
  }
}

}  // namespace negtype::kernels::detail

#endif  // x86_64
