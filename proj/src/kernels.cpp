#include "negtype/kernels.hpp"

#include <algorithm>

namespace negtype::kernels {

namespace detail {

SignSplit sign_split_weighted_scalar(const double* w, const double* q,
                                     std::size_t m, double eps) {
  SignSplit s;
  for (std::size_t i = 0; i < m; ++i) {
    if (q[i] > eps)
      s.pos += w[i] * q[i];
    else if (q[i] < -eps)
      s.neg += w[i] * q[i];
  }
  return s;
}

double sum_positive_scalar(const double* q, std::size_t m, double eps) {
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (q[i] > eps) s += q[i];
  return s;
}

void clip_box_scalar(double* x, const double* lo, const double* hi,
                     std::size_t m) {
  for (std::size_t i = 0; i < m; ++i)
    x[i] = std::min(std::max(x[i], lo[i]), hi[i]);
}

}  // namespace detail

namespace {

using SignSplitFn = SignSplit (*)(const double*, const double*, std::size_t,
                                  double);
using SumPosFn = double (*)(const double*, std::size_t, double);
using ClipFn = void (*)(double*, const double*, const double*, std::size_t);

struct Dispatch {
  SignSplitFn sign_split = detail::sign_split_weighted_scalar;
  SumPosFn sum_positive = detail::sum_positive_scalar;
  ClipFn clip_box = detail::clip_box_scalar;
  Lane lane = Lane::scalar;
};

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Dispatch make_dispatch(Lane lane) {
  Dispatch d;
#if defined(__x86_64__) || defined(_M_X64)
  if (lane == Lane::avx2) {
    d.sign_split = detail::sign_split_weighted_avx2;
    d.sum_positive = detail::sum_positive_avx2;
    d.clip_box = detail::clip_box_avx2;
    d.lane = Lane::avx2;
  }
#else
  (void)lane;
#endif
  return d;
}

Dispatch& dispatch() {
  static Dispatch d =
      make_dispatch(avx2_available() ? Lane::avx2 : Lane::scalar);
  return d;
}

}  // namespace

SignSplit sign_split_weighted(const double* w, const double* q, std::size_t m,
                              double eps) {
  return dispatch().sign_split(w, q, m, eps);
}

double sum_positive(const double* q, std::size_t m, double eps) {
  return dispatch().sum_positive(q, m, eps);
}

void clip_box(double* x, const double* lo, const double* hi, std::size_t m) {
  dispatch().clip_box(x, lo, hi, m);
}

Lane active_lane() { return dispatch().lane; }

bool force_lane(Lane lane) {
  if (lane == Lane::avx2 && !avx2_available()) return false;
  dispatch() = make_dispatch(lane);
  return true;
}

}  // namespace negtype::kernels
