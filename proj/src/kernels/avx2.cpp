#include <immintrin.h>

#include "lrf/kernels.hpp"

namespace lrf::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void hermite_transform_avx2(const double* in, double* out, std::size_t count, int m) {
  std::size_t i = 0;
  if (m == 0) {
    const __m256d one = _mm256_set1_pd(1.0);
    for (; i + 4 <= count; i += 4) _mm256_storeu_pd(out + i, one);
    for (; i < count; ++i) out[i] = 1.0;
    return;
  }
  if (m == 1) {
    for (; i + 4 <= count; i += 4) _mm256_storeu_pd(out + i, _mm256_loadu_pd(in + i));
    for (; i < count; ++i) out[i] = in[i];
    return;
  }
  const __m256d one = _mm256_set1_pd(1.0);
  for (; i + 4 <= count; i += 4) {
    const __m256d x = _mm256_loadu_pd(in + i);
    if (m == 2) {
      _mm256_storeu_pd(out + i, _mm256_fmsub_pd(x, x, one));
    } else {
      __m256d hm1 = one, h = x;
      for (int k = 1; k < m; ++k) {
        const __m256d next = _mm256_fmsub_pd(x, h, _mm256_mul_pd(_mm256_set1_pd(double(k)), hm1));
        hm1 = h;
        h = next;
      }
      _mm256_storeu_pd(out + i, h);
    }
  }
  for (; i < count; ++i) {
    double hm1 = 1.0, h = in[i];
    for (int k = 1; k < m; ++k) {
      const double next = in[i] * h - double(k) * hm1;
      hm1 = h;
      h = next;
    }
    out[i] = h;
  }
}

void spectral_scale_avx2(double* interleaved, const double* mult, std::size_t count) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d mv = _mm256_loadu_pd(mult + i);
    const __m256d lo = _mm256_permute4x64_pd(mv, 0x50);  // m0 m0 m1 m1
    const __m256d hi = _mm256_permute4x64_pd(mv, 0xFA);  // m2 m2 m3 m3
    double* p = interleaved + 2 * i;
    _mm256_storeu_pd(p, _mm256_mul_pd(_mm256_loadu_pd(p), lo));
    _mm256_storeu_pd(p + 4, _mm256_mul_pd(_mm256_loadu_pd(p + 4), hi));
  }
  for (; i < count; ++i) {
    interleaved[2 * i] *= mult[i];
    interleaved[2 * i + 1] *= mult[i];
  }
}

double masked_sum_avx2(const double* v, const std::uint8_t* mask, std::size_t count) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d sel = _mm256_set_pd(mask[i + 3] ? 1.0 : 0.0, mask[i + 2] ? 1.0 : 0.0,
                                      mask[i + 1] ? 1.0 : 0.0, mask[i] ? 1.0 : 0.0);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(v + i), sel, acc);
  }
  double s = hsum(acc);
  for (; i < count; ++i)
    if (mask[i]) s += v[i];
  return s;
}

void moment_accumulate_avx2(const double* v, std::size_t count, double acc[4]) {
  __m256d s1 = _mm256_setzero_pd(), s2 = s1, s3 = s1, s4 = s1;
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d x = _mm256_loadu_pd(v + i);
    const __m256d x2 = _mm256_mul_pd(x, x);
    s1 = _mm256_add_pd(s1, x);
    s2 = _mm256_add_pd(s2, x2);
    s3 = _mm256_fmadd_pd(x2, x, s3);
    s4 = _mm256_fmadd_pd(x2, x2, s4);
  }
  double t1 = hsum(s1), t2 = hsum(s2), t3 = hsum(s3), t4 = hsum(s4);
  for (; i < count; ++i) {
    const double x = v[i], x2 = x * x;
    t1 += x;
    t2 += x2;
    t3 += x2 * x;
    t4 += x2 * x2;
  }
  acc[0] += t1;
  acc[1] += t2;
  acc[2] += t3;
  acc[3] += t4;
}

}  // namespace

const Ops* avx2_ops_internal() {
  static const Ops ops{hermite_transform_avx2, spectral_scale_avx2,
                       masked_sum_avx2, moment_accumulate_avx2, "avx2"};
  return &ops;
}

}  // namespace lrf::kernels
