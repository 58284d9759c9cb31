#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops of the pipeline. Every kernel has a scalar
// reference implementation and may have SIMD variants; the active variant
// is chosen once at startup from CPU features. Variants must agree with
// the scalar reference to rounding (see tests/test_kernels.cpp).

namespace lrf::kernels {

struct Ops {
  // out[i] = H_m(in[i]), probabilists' convention, m >= 0.
  void (*hermite_transform)(const double* in, double* out, std::size_t count, int m);
  // Interleaved complex spectrum scaled in place by a real multiplier:
  // re/im pair i scaled by mult[i].
  void (*spectral_scale)(double* interleaved, const double* mult, std::size_t count);
  // Sum of v[i] over i with mask[i] != 0.
  double (*masked_sum)(const double* v, const std::uint8_t* mask, std::size_t count);
  // Accumulates sum, sum of squares, cubes and fourths into acc[0..3].
  void (*moment_accumulate)(const double* v, std::size_t count, double acc[4]);
  const char* name;
};

const Ops& scalar();

// Named variant lookup ("scalar", "avx2"); nullptr when not compiled in
// or not runnable on this CPU.
const Ops* variant(const char* name);

// Best variant for the running CPU.
const Ops& active();

// For tests: force a variant by name ("scalar", "avx2"); returns false if
// the variant is not compiled in or not runnable on this CPU.
bool set_active(const char* name);

}  // namespace lrf::kernels
