#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace lrf {

// Thin FFTW wrapper. Unnormalized transforms, row-major layout,
// up to three dimensions. Plan creation is serialized internally, so
// concurrent callers with distinct buffers are safe.
void fft_forward(std::vector<std::complex<double>>& data, const std::size_t* shape, int n);
void fft_inverse(std::vector<std::complex<double>>& data, const std::size_t* shape, int n);

}  // namespace lrf
