#pragma once

// Closed-form vulnerability predictions for the two array families and a
// cross-validation harness against the exhaustive scanner.

#include <stdexcept>
#include <string>
#include <vector>

#include "sparr/generators.hpp"
#include "sparr/redundancy.hpp"

namespace sparr {

struct OutOfClosedFormRange : std::domain_error {
  OutOfClosedFormRange(const std::string& family, std::size_t n, std::size_t min_n)
      : std::domain_error("no closed-form prediction for " + family + " with n = " +
                          std::to_string(n) + " (needs n >= " + std::to_string(min_n) +
                          "); use the exhaustive scan") {}
};

struct VulnerabilityPrediction {
  Family family = Family::fra3;
  std::size_t n = 0;
  // Scalars of the mod-6 rule, defined for n >= 15.
  std::int64_t k = 0;
  std::int64_t i = 0;
  bool vulnerable = false;
  std::vector<SensorPair> predicted_hesps;
  std::vector<Position> predicted_holes;
};

// Three-fold family rule: with k = (n-15) mod 6 and i = (n-15-k)/6, the
// array has HESPs exactly when i is even, at (2, (L+1)/2) and
// ((L+1)/2, (L+3)/2), both of which share the hole (L-1)/2. Rows
// 10 <= n <= 14 follow no closed form and ship as lookup data: pairs
// (n-5, n-4) and (n-4, 2n-9) with shared hole n-4.
inline VulnerabilityPrediction predict_3fra(std::size_t n, Position L) {
  if (n < 10) throw OutOfClosedFormRange("3fra", n, 10);
  VulnerabilityPrediction p;
  p.family = Family::fra3;
  p.n = n;
  if (n <= 14) {
    const Position N = static_cast<Position>(n);
    p.vulnerable = true;
    p.predicted_hesps = {SensorPair(N - 5, N - 4), SensorPair(N - 4, 2 * N - 9)};
    p.predicted_holes = {N - 4};
    return p;
  }
  p.k = static_cast<std::int64_t>(n - 15) % 6;
  p.i = (static_cast<std::int64_t>(n - 15) - p.k) / 6;
  p.vulnerable = (p.i % 2 == 0);
  if (p.vulnerable) {
    if (L % 2 == 0) {
      throw std::invalid_argument("vulnerable 3fra instance with even aperture " +
                                  std::to_string(L) + "; midpoint pair undefined");
    }
    const Position mid = (L + 1) / 2;
    p.predicted_hesps = {SensorPair(2, mid), SensorPair(mid, mid + 1)};
    p.predicted_holes = {(L - 1) / 2};
  }
  return p;
}

// Triple-redundancy family rule, valid from n = 20 on: HESPs at (2, L-2) and
// (3, L-2) with a predicted hole at L-1. Smaller instances carry extra pairs
// and need the exhaustive scan.
inline VulnerabilityPrediction predict_tra(std::size_t n, Position L) {
  if (n < 20) throw OutOfClosedFormRange("tra", n, 20);
  VulnerabilityPrediction p;
  p.family = Family::tra;
  p.n = n;
  p.k = static_cast<std::int64_t>(n - 15) % 6;
  p.i = (static_cast<std::int64_t>(n - 15) - p.k) / 6;
  p.vulnerable = true;
  p.predicted_hesps = {SensorPair(2, L - 2), SensorPair(3, L - 2)};
  p.predicted_holes = {L - 1};
  return p;
}

struct PredictionDiscrepancy {
  std::size_t n = 0;
  std::vector<SensorPair> predicted;
  std::vector<SensorPair> observed;
};

// Runs generator, scanner and predictor over [n_from, n_to] and returns the
// instances whose scanned HESP set differs from the predicted one. Only the
// pair sets are compared; hole locations are left to direct outcome checks.
inline std::vector<PredictionDiscrepancy> cross_validate(Family family, std::size_t n_from,
                                                         std::size_t n_to,
                                                         const ScanOptions& options = {}) {
  std::vector<PredictionDiscrepancy> mismatches;
  for (std::size_t n = n_from; n <= n_to; ++n) {
    const ArrayGeometry g = (family == Family::fra3) ? gen_3fra(n) : gen_tra(n);
    const VulnerabilityPrediction p = (family == Family::fra3)
                                          ? predict_3fra(n, g.aperture())
                                          : predict_tra(n, g.aperture());
    const RobustnessReport report = scan_two_failures(g, options);
    std::vector<SensorPair> observed;
    observed.reserve(report.hesps.size());
    for (const auto& h : report.hesps) observed.push_back(h.pair);
    std::vector<SensorPair> predicted = p.predicted_hesps;
    std::sort(predicted.begin(), predicted.end());
    if (predicted != observed) mismatches.push_back({n, std::move(predicted), std::move(observed)});
  }
  return mismatches;
}

}  // namespace sparr
