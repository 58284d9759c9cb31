#include "lrf/kernels.hpp"

namespace lrf::kernels {
namespace {

inline double hermite_point(double x, int m) {
  if (m == 0) return 1.0;
  if (m == 1) return x;
  double hm1 = 1.0, h = x;
  for (int k = 1; k < m; ++k) {
    const double next = x * h - static_cast<double>(k) * hm1;
    hm1 = h;
    h = next;
  }
  return h;
}

void hermite_transform_scalar(const double* in, double* out, std::size_t count, int m) {
  switch (m) {
    case 1:
      for (std::size_t i = 0; i < count; ++i) out[i] = in[i];
      return;
    case 2:
      for (std::size_t i = 0; i < count; ++i) out[i] = in[i] * in[i] - 1.0;
      return;
    case 3:
      for (std::size_t i = 0; i < count; ++i) out[i] = in[i] * (in[i] * in[i] - 3.0);
      return;
    default:
      for (std::size_t i = 0; i < count; ++i) out[i] = hermite_point(in[i], m);
  }
}

void spectral_scale_scalar(double* interleaved, const double* mult, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    interleaved[2 * i] *= mult[i];
    interleaved[2 * i + 1] *= mult[i];
  }
}

double masked_sum_scalar(const double* v, const std::uint8_t* mask, std::size_t count) {
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i)
    if (mask[i]) s += v[i];
  return s;
}

void moment_accumulate_scalar(const double* v, std::size_t count, double acc[4]) {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double x = v[i];
    const double x2 = x * x;
    s1 += x;
    s2 += x2;
    s3 += x2 * x;
    s4 += x2 * x2;
  }
  acc[0] += s1;
  acc[1] += s2;
  acc[2] += s3;
  acc[3] += s4;
}

}  // namespace

const Ops& scalar() {
  static const Ops ops{hermite_transform_scalar, spectral_scale_scalar,
                       masked_sum_scalar, moment_accumulate_scalar, "scalar"};
  return ops;
}

}  // namespace lrf::kernels
