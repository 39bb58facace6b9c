#pragma once

// Benchmark geometry constructions: uniform linear arrays, the three-fold
// redundant array family, the triple-redundancy array family, and the fixed
// demonstration arrays.

#include <stdexcept>
#include <string>
#include <vector>

#include "sparr/geometry.hpp"

namespace sparr {

enum class Family { ula, fra3, tra, named };

struct GeneratorRangeError : std::invalid_argument {
  GeneratorRangeError(const std::string& family, std::size_t n, std::size_t min_n)
      : std::invalid_argument(family + " generator requires n >= " + std::to_string(min_n) +
                              ", got " + std::to_string(n)) {}
};

inline ArrayGeometry gen_ula(std::size_t n) {
  if (n < 2) throw GeneratorRangeError("ula", n, 2);
  std::vector<Position> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[i] = static_cast<Position>(i);
  return ArrayGeometry::from_positions(std::move(pos));
}

// Three-fold redundant array with n sensors. For n <= 14 the layout is three
// blocks {0,1,2}, {n-6,n-5,n-4}, {2n-9 .. 3n-16}. From n = 15 on, the layout
// is {0,1,2}, then b = i+2 triples spaced gap apart starting at 3*alpha+kappa,
// then a run of 3*alpha+kappa consecutive sensors, where i = (n-15) div 6,
// k = (n-15) mod 6, (alpha, kappa) = (i+2, k) for k <= 2 and (i+3, k-3)
// otherwise, and gap = 3*(alpha+1) + kappa.
inline ArrayGeometry gen_3fra(std::size_t n) {
  if (n < 10) throw GeneratorRangeError("3fra", n, 10);
  const Position N = static_cast<Position>(n);
  std::vector<Position> pos;
  pos.reserve(n);
  if (n <= 14) {
    for (Position p = 0; p < 3; ++p) pos.push_back(p);
    for (Position p = N - 6; p <= N - 4; ++p) pos.push_back(p);
    for (Position p = 2 * N - 9; p <= 3 * N - 16; ++p) pos.push_back(p);
    return ArrayGeometry::from_positions(std::move(pos));
  }
  const Position i = (N - 15) / 6;
  const Position k = (N - 15) % 6;
  const Position b = i + 2;
  const Position alpha = (k <= 2) ? i + 2 : i + 3;
  const Position kappa = (k <= 2) ? k : k - 3;
  const Position gap = 3 * (alpha + 1) + kappa;
  for (Position p = 0; p < 3; ++p) pos.push_back(p);
  Position m = 3 * alpha + kappa;
  for (Position t = 0; t < b; ++t) {
    pos.push_back(m);
    pos.push_back(m + 1);
    pos.push_back(m + 2);
    m += gap;
  }
  for (Position p = m; p < m + 3 * alpha + kappa; ++p) pos.push_back(p);
  return ArrayGeometry::from_positions(std::move(pos));
}

// Triple-redundancy array with n sensors and aperture 2n - 1: a dense head
// [0 .. a] with a = 5 + (n-15) div 2, a step-3 middle run of a+3-t sensors,
// a junction gap of t (4 when n = 1 mod 4, else 3), and a step-2 tail ending
// at the aperture.
inline ArrayGeometry gen_tra(std::size_t n) {
  if (n < 15) throw GeneratorRangeError("tra", n, 15);
  const Position N = static_cast<Position>(n);
  const Position a = 5 + (N - 15) / 2;
  const Position t = (N % 4 == 1) ? 4 : 3;
  const Position m = a + 3 - t;
  const Position c = N - 1 - a - m;
  std::vector<Position> pos;
  pos.reserve(n);
  for (Position p = 0; p <= a; ++p) pos.push_back(p);
  for (Position j = 0; j < m; ++j) pos.push_back(a + 3 * (j + 1));
  const Position mid_end = a + 3 * m;
  for (Position j = 0; j < c; ++j) pos.push_back(mid_end + t + 2 * j);
  return ArrayGeometry::from_positions(std::move(pos));
}

// Fixed 18-aperture demonstration geometries: a hole-free sparse array, its
// holey counterpart (sensor 10 moved to 9, losing lag 10), and the ULA with
// the same aperture.
inline ArrayGeometry named_demo_array(const std::string& name) {
  if (name == "fig1_holefree") {
    return ArrayGeometry::from_positions({0, 1, 2, 6, 10, 14, 17});
  }
  if (name == "fig1_holey") {
    return ArrayGeometry::from_positions({0, 1, 2, 6, 9, 14, 17});
  }
  if (name == "fig1_ula") {
    return gen_ula(18);
  }
  throw std::invalid_argument("unknown named array '" + name +
                              "' (known: fig1_holefree, fig1_holey, fig1_ula)");
}

}  // namespace sparr
