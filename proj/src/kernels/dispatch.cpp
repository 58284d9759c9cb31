#include <cstring>

#include "lrf/kernels.hpp"

namespace lrf::kernels {

#if defined(LRF_BUILD_AVX2)
const Ops* avx2_ops_internal();
#endif

namespace {

const Ops* pick_best() {
#if defined(LRF_BUILD_AVX2)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return avx2_ops_internal();
#endif
  return &scalar();
}

const Ops*& active_slot() {
  static const Ops* slot = pick_best();
  return slot;
}

}  // namespace

const Ops* variant(const char* name) {
  if (std::strcmp(name, "scalar") == 0) return &scalar();
#if defined(LRF_BUILD_AVX2)
  if (std::strcmp(name, "avx2") == 0 && __builtin_cpu_supports("avx2") &&
      __builtin_cpu_supports("fma"))
    return avx2_ops_internal();
#endif
  return nullptr;
}

const Ops& active() { return *active_slot(); }

bool set_active(const char* name) {
  const Ops* v = variant(name);
  if (!v) return false;
  active_slot() = v;
  return true;
}

}  // namespace lrf::kernels
