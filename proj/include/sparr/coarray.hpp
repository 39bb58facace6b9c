#pragma once

// Difference coarray machinery: difference multisets, the unordered-pair
// weight function, realized lags, holes, and the central hole-free segment.

#include <cstdint>
#include <vector>

#include "sparr/geometry.hpp"

namespace sparr {

// Unordered-pair lag counts over [0, aperture], backed by a dense table.
// w(0) counts each sensor once. zero_lags tracks how many lags in
// [1, aperture] currently have zero weight, so hole checks stay O(1) while
// the redundancy scan mutates counts in place.
struct WeightFunction {
  std::vector<std::int64_t> counts;
  Position aperture = 0;
  std::int64_t zero_lags = 0;

  std::int64_t operator()(Position m) const {
    if (m < 0) m = -m;
    if (m > aperture) return 0;
    return counts[static_cast<std::size_t>(m)];
  }

  bool hole_free() const { return zero_lags == 0; }

  // Adjusts w(m) by delta and keeps the zero-weight lag count in sync.
  void bump(Position m, std::int64_t delta) {
    auto& c = counts[static_cast<std::size_t>(m)];
    const bool was_zero = (c == 0);
    c += delta;
    const bool is_zero = (c == 0);
    if (m >= 1) zero_lags += static_cast<std::int64_t>(is_zero) - static_cast<std::int64_t>(was_zero);
  }
};

inline WeightFunction weight_function(const ArrayGeometry& g) {
  WeightFunction w;
  w.aperture = g.aperture();
  w.counts.assign(static_cast<std::size_t>(w.aperture) + 1, 0);
  const auto& pos = g.positions();
  w.counts[0] = static_cast<std::int64_t>(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      ++w.counts[static_cast<std::size_t>(pos[j] - pos[i])];
    }
  }
  for (Position m = 1; m <= w.aperture; ++m) {
    if (w.counts[static_cast<std::size_t>(m)] == 0) ++w.zero_lags;
  }
  return w;
}

// All N^2 ordered differences n1 - n2, sorted ascending (negatives included).
inline std::vector<Position> difference_set(const ArrayGeometry& g) {
  const auto& pos = g.positions();
  std::vector<Position> diffs;
  diffs.reserve(pos.size() * pos.size());
  for (Position a : pos) {
    for (Position b : pos) diffs.push_back(a - b);
  }
  std::sort(diffs.begin(), diffs.end());
  return diffs;
}

// One-sided coarray summary: realized lags, holes in [1, L], the largest u
// with [0, u] fully realized, and the uniform degrees of freedom 2u + 1.
struct CoarrayProfile {
  std::vector<Position> dca;
  std::vector<Position> holes;
  Position aperture = 0;
  Position u_max = 0;
  std::int64_t udof = 1;
  bool hole_free = true;
};

inline CoarrayProfile coarray_profile(const ArrayGeometry& g) {
  const WeightFunction w = weight_function(g);
  CoarrayProfile p;
  p.aperture = w.aperture;
  for (Position m = 0; m <= w.aperture; ++m) {
    if (w.counts[static_cast<std::size_t>(m)] > 0) {
      p.dca.push_back(m);
    } else {
      p.holes.push_back(m);
    }
  }
  p.u_max = w.aperture;
  for (Position m = 1; m <= w.aperture; ++m) {
    if (w.counts[static_cast<std::size_t>(m)] == 0) {
      p.u_max = m - 1;
      break;
    }
  }
  p.udof = 2 * p.u_max + 1;
  p.hole_free = p.holes.empty();
  return p;
}

inline bool is_hole_free(const ArrayGeometry& g) {
  return weight_function(g).zero_lags == 0;
}

}  // namespace sparr
