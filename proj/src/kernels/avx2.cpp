// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "itm/kernels.hpp"

namespace itm::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

}  // namespace

// Four points per lane group. cos/sin(2 pi x) are seeded with libm and the
// higher harmonics come from the angle-addition recurrence
//   c_{k+1} = c_k c_1 - s_k s_1,  s_{k+1} = s_k c_1 + c_k s_1.
void trig_sums(std::span<const double> xs, std::span<const double> coefs, std::size_t degree,
               std::span<double> cos_sums, std::span<double> sin_sums) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> acc_c(4 * degree, 0.0), acc_s(4 * degree, 0.0);

  const std::size_t n = xs.size();
  std::size_t i = 0;
  alignas(32) double c1v[4], s1v[4];
  for (; i + 4 <= n; i += 4) {
    for (int l = 0; l < 4; ++l) {
      c1v[l] = std::cos(two_pi * xs[i + l]);
      s1v[l] = std::sin(two_pi * xs[i + l]);
    }
    const __m256d c1 = _mm256_load_pd(c1v);
    const __m256d s1 = _mm256_load_pd(s1v);
    const __m256d w = _mm256_loadu_pd(&coefs[i]);
    __m256d ck = c1, sk = s1;
    for (std::size_t k = 0; k < degree; ++k) {
      _mm256_storeu_pd(&acc_c[4 * k], _mm256_fmadd_pd(w, ck, _mm256_loadu_pd(&acc_c[4 * k])));
      _mm256_storeu_pd(&acc_s[4 * k], _mm256_fmadd_pd(w, sk, _mm256_loadu_pd(&acc_s[4 * k])));
      __m256d cn = _mm256_fmsub_pd(ck, c1, _mm256_mul_pd(sk, s1));
      __m256d sn = _mm256_fmadd_pd(sk, c1, _mm256_mul_pd(ck, s1));
      ck = cn;
      sk = sn;
    }
  }
  for (std::size_t k = 0; k < degree; ++k) {
    cos_sums[k] = hsum(_mm256_loadu_pd(&acc_c[4 * k]));
    sin_sums[k] = hsum(_mm256_loadu_pd(&acc_s[4 * k]));
  }
  // tail
  for (; i < n; ++i) {
    for (std::size_t k = 1; k <= degree; ++k) {
      double angle = two_pi * static_cast<double>(k) * xs[i];
      cos_sums[k - 1] += coefs[i] * std::cos(angle);
      sin_sums[k - 1] += coefs[i] * std::sin(angle);
    }
  }
}

std::size_t count_near(std::span<const double> xs, std::span<const double> centres, double eps, bool circle) {
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  std::size_t count = 0;
  const std::size_t n = xs.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(&xs[i]);
    __m256d hit = _mm256_setzero_pd();
    for (double h : centres) {
      __m256d d = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(x, _mm256_set1_pd(h)));
      if (circle) d = _mm256_min_pd(d, _mm256_sub_pd(one, d));
      hit = _mm256_or_pd(hit, _mm256_cmp_pd(d, veps, _CMP_LT_OQ));
    }
    count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(hit))));
  }
  if (i < n) count += scalar::count_near(xs.subspan(i), centres, eps, circle);
  return count;
}

}  // namespace itm::kernels::avx2
