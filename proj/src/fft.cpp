#include "lrf/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "lrf/errors.hpp"

namespace lrf {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void transform(std::vector<std::complex<double>>& data, const std::size_t* shape, int n, int sign) {
  if (n < 1 || n > 3) throw ValidationError("fft: dimension must be 1..3");
  std::size_t total = 1;
  int dims[3];
  for (int a = 0; a < n; ++a) {
    dims[a] = static_cast<int>(shape[a]);
    total *= shape[a];
  }
  if (data.size() != total) throw ValidationError("fft: buffer size does not match shape");

  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(n, dims, buf, buf, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace

void fft_forward(std::vector<std::complex<double>>& data, const std::size_t* shape, int n) {
  transform(data, shape, n, FFTW_FORWARD);
}

void fft_inverse(std::vector<std::complex<double>>& data, const std::size_t* shape, int n) {
  transform(data, shape, n, FFTW_BACKWARD);
}

}  // namespace lrf
