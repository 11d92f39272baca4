#pragma once

#include <cstddef>

// Hot entrywise loops shared by the certificate/gap evaluators: sign-split
// weighted sums over matrix entries and box clipping for the projection
// solver. Scalar reference implementations always exist; an AVX2 variant is
// selected at runtime when the CPU supports it. The two lanes are
// equivalence-tested against each other.

namespace negtype::kernels {

struct SignSplit {
  double pos = 0.0;  // sum of w[i]*q[i] over entries with q[i] >  eps
  double neg = 0.0;  // sum of w[i]*q[i] over entries with q[i] < -eps (<= 0)
};

// Entries with |q[i]| <= eps contribute to neither sum.
SignSplit sign_split_weighted(const double* w, const double* q, std::size_t m,
                              double eps);

// pos(A): sum of entries strictly above eps.
double sum_positive(const double* q, std::size_t m, double eps);

// x[i] <- clamp(x[i], lo[i], hi[i])
void clip_box(double* x, const double* lo, const double* hi, std::size_t m);

enum class Lane { scalar, avx2 };

Lane active_lane();
// Test hook; returns false if the requested lane is unavailable.
bool force_lane(Lane lane);

namespace detail {
SignSplit sign_split_weighted_scalar(const double* w, const double* q,
                                     std::size_t m, double eps);
double sum_positive_scalar(const double* q, std::size_t m, double eps);
void clip_box_scalar(double* x, const double* lo, const double* hi,
                     std::size_t m);
#if defined(__x86_64__) || defined(_M_X64)
SignSplit sign_split_weighted_avx2(const double* w, const double* q,
                                   std::size_t m, double eps);
double sum_positive_avx2(const double* q, std::size_t m, double eps);
void clip_box_avx2(double* x, const double* lo, const double* hi,
                   std::size_t m);
#endif
}  // namespace detail

}  // namespace negtype::kernels
