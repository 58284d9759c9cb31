#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lrf/errors.hpp"

namespace lrf {

// A sampled field realization on a regular grid. Row-major storage,
// axis 0 slowest. `origin` is the grid index of the coordinate origin.
struct LatticeField {
  int n = 1;
  std::array<std::size_t, 3> shape{1, 1, 1};  // axes beyond n are 1
  double spacing = 1.0;
  std::array<std::ptrdiff_t, 3> origin{0, 0, 0};
  std::vector<double> values;

  std::size_t size() const {
    std::size_t s = 1;
    for (int a = 0; a < n; ++a) s *= shape[a];
    return s;
  }

  // Physical coordinate of cell index along an axis.
  double coord(int axis, std::ptrdiff_t idx) const {
    return (static_cast<double>(idx) - static_cast<double>(origin[axis])) * spacing;
  }

  void validate() const {
    for (int a = 0; a < n; ++a) {
      if (shape[a] == 0) throw ValidationError("LatticeField: zero extent on axis " + std::to_string(a));
      if (origin[a] < 0 || static_cast<std::size_t>(origin[a]) >= shape[a])
        throw ValidationError("LatticeField: origin outside grid on axis " + std::to_string(a));
    }
    if (values.size() != size()) throw ValidationError("LatticeField: value count mismatch");
  }
};

struct FieldDumpMeta {
  int n = 1;
  std::array<std::size_t, 3> shape{1, 1, 1};
  double spacing = 1.0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
};

// Flat binary of 64-bit little-endian reals plus a sidecar text header
// at path + ".hdr".
void dump_field(const LatticeField& f, const FieldDumpMeta& meta, const std::string& path);
LatticeField load_field(const std::string& path);

}  // namespace lrf
