#pragma once

// Triple-redundancy analysis: terminal-weight conformance checking,
// theoretical essential-pair enumeration, exhaustive two-failure and
// k-failure scanning with an incremental fast path, and HESP detection.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sparr/coarray.hpp"
#include "sparr/geometry.hpp"

namespace sparr {

struct MissingAnchorSensor : GeometryError {
  explicit MissingAnchorSensor(Position p)
      : GeometryError("geometry lacks the anchor sensor at position " + std::to_string(p)) {}
};

struct ScanSizeError : std::runtime_error {
  explicit ScanSizeError(std::size_t n)
      : std::runtime_error("refusing exhaustive scan for N = " + std::to_string(n) +
                           " > 5000 without allow_large") {}
};

struct SensorPair {
  Position a = 0;
  Position b = 0;

  SensorPair() = default;
  SensorPair(Position x, Position y) : a(std::min(x, y)), b(std::max(x, y)) {}

  bool operator==(const SensorPair& o) const { return a == o.a && b == o.b; }
  bool operator<(const SensorPair& o) const { return a < o.a || (a == o.a && b < o.b); }
};

// Pairs whose failure is already expected to break the coarray: every pair
// containing the first sensor, every pair containing the last sensor, and
// the inner terminal pair (min+1, max-1). complete is false when the inner
// pair could not be formed because one of its sensors is absent.
struct EssentialPairSet {
  std::vector<SensorPair> pairs;
  bool complete = true;

  std::size_t cardinality() const { return pairs.size(); }
  bool contains(const SensorPair& p) const {
    return std::binary_search(pairs.begin(), pairs.end(), p);
  }
};

struct TrslaCheck {
  bool conformant = false;
  std::optional<Position> first_violation;
};

struct FailureOutcome {
  std::vector<Position> removed;
  bool span_changed = false;
  std::vector<Position> holes_created;
  bool survives = true;
};

struct HespRecord {
  SensorPair pair;
  bool span_changed = false;
  std::vector<Position> holes;

  bool operator<(const HespRecord& o) const { return pair < o.pair; }
};

struct ScanOptions {
  // 0 means: take SPARR_WORKERS from the environment, else hardware threads.
  unsigned workers = 0;
  // Re-test every excluded pair and record any that fail to break the coarray.
  bool verify_excluded = false;
  // Override the N > 5000 size guard.
  bool allow_large = false;
};

struct RobustnessReport {
  std::vector<Position> geometry;
  std::size_t n = 0;
  Position aperture = 0;
  TrslaCheck trsla;
  std::size_t esp_count = 0;
  bool esp_set_complete = true;
  std::vector<Position> essential_sensors;
  std::uint64_t scanned_pairs = 0;
  std::vector<HespRecord> hesps;
  bool pass = false;
  double elapsed_ms = 0.0;
  unsigned workers_used = 1;
  // Excluded pairs that survived removal, populated when verify_excluded is set.
  std::optional<std::vector<SensorPair>> non_breaking_excluded;

  const char* verdict() const { return pass ? "PASS" : "FAIL"; }
};

// True when w(m) >= 3 for every 0 <= m <= L-2, w(L-1) = 2 and w(L) = 1.
// Reports the smallest lag violating that profile otherwise.
inline TrslaCheck check_trsla_weights(const ArrayGeometry& g) {
  const WeightFunction w = weight_function(g);
  const Position L = w.aperture;
  TrslaCheck r;
  for (Position m = 0; m <= L - 2; ++m) {
    if (w(m) < 3) {
      r.first_violation = m;
      return r;
    }
  }
  if (w(L - 1) != 2) {
    r.first_violation = L - 1;
    return r;
  }
  if (w(L) != 1) {
    r.first_violation = L;
    return r;
  }
  r.conformant = true;
  return r;
}

namespace detail {

// Exclusion pairs that can be formed from the sensors actually present.
// Requires nothing beyond min and max, which every geometry has; the inner
// terminal pair is added only when both of its sensors exist.
inline EssentialPairSet effective_esp_set(const ArrayGeometry& g) {
  const Position lo = g.min_position();
  const Position hi = g.max_position();
  EssentialPairSet e;
  for (Position p : g.positions()) {
    if (p != lo) e.pairs.emplace_back(lo, p);
  }
  for (Position p : g.positions()) {
    if (p != lo && p != hi) e.pairs.emplace_back(p, hi);
  }
  const Position inner_lo = lo + 1;
  const Position inner_hi = hi - 1;
  if (g.contains(inner_lo) && g.contains(inner_hi) && inner_lo < inner_hi) {
    e.pairs.emplace_back(inner_lo, inner_hi);
  } else {
    e.complete = false;
  }
  std::sort(e.pairs.begin(), e.pairs.end());
  e.pairs.erase(std::unique(e.pairs.begin(), e.pairs.end()), e.pairs.end());
  return e;
}

}  // namespace detail

// The 2N-2 pairs expected to be essential for a conforming array: (min, n)
// for every other sensor n, (m, max) for every m not in {min, max}, and the
// inner terminal pair (min+1, max-1). The two inner anchor sensors must be
// present; conformance is impossible without them.
inline EssentialPairSet expected_esp_set(const ArrayGeometry& g) {
  const Position lo = g.min_position();
  const Position hi = g.max_position();
  if (!g.contains(lo + 1)) throw MissingAnchorSensor(lo + 1);
  if (!g.contains(hi - 1)) throw MissingAnchorSensor(hi - 1);
  return detail::effective_esp_set(g);
}

// Reference implementation: rebuilds the survivor coarray from scratch.
inline FailureOutcome test_pair_removal(const ArrayGeometry& g, const SensorPair& p) {
  if (g.size() < 4) throw TooFewSensors(g.size());
  const ArrayGeometry survivors = g.remove_sensors({p.a, p.b});
  FailureOutcome out;
  out.removed = {p.a, p.b};
  out.span_changed = survivors.min_position() != g.min_position() ||
                     survivors.max_position() != g.max_position();
  out.holes_created = coarray_profile(survivors).holes;
  out.survives = !out.span_changed && out.holes_created.empty();
  return out;
}

namespace detail {

// Shared by the pair and k-subset fast paths. w must correspond to g and is
// restored to its input state before returning.
inline FailureOutcome incremental_subset_check(WeightFunction& w,
                                               const std::vector<Position>& removed,
                                               const ArrayGeometry& g) {
  const auto& pos = g.positions();
  FailureOutcome out;
  out.removed = removed;

  Position new_lo = 0;
  Position new_hi = 0;
  bool found = false;
  for (Position p : pos) {
    if (std::find(removed.begin(), removed.end(), p) != removed.end()) continue;
    if (!found) {
      new_lo = p;
      found = true;
    }
    new_hi = p;
  }
  out.span_changed = new_lo != g.min_position() || new_hi != g.max_position();
  const Position survivor_aperture = new_hi - new_lo;

  for (Position r : removed) {
    for (Position s : pos) {
      if (std::find(removed.begin(), removed.end(), s) != removed.end()) continue;
      w.bump(std::abs(s - r), -1);
    }
  }
  for (std::size_t i = 0; i < removed.size(); ++i) {
    for (std::size_t j = i + 1; j < removed.size(); ++j) {
      w.bump(std::abs(removed[j] - removed[i]), -1);
    }
  }

  if (w.zero_lags > 0) {
    for (Position m = 1; m <= survivor_aperture; ++m) {
      if (w.counts[static_cast<std::size_t>(m)] == 0) out.holes_created.push_back(m);
    }
  }
  out.survives = !out.span_changed && out.holes_created.empty();

  for (Position r : removed) {
    for (Position s : pos) {
      if (std::find(removed.begin(), removed.end(), s) != removed.end()) continue;
      w.bump(std::abs(s - r), +1);
    }
  }
  for (std::size_t i = 0; i < removed.size(); ++i) {
    for (std::size_t j = i + 1; j < removed.size(); ++j) {
      w.bump(std::abs(removed[j] - removed[i]), +1);
    }
  }
  return out;
}

// Interior sensors whose lone removal already punches a hole. Pairs touching
// such a sensor are skipped by the scans: the single failure dominates and
// reporting its pairs would drown the genuine pair findings.
inline std::vector<Position> individually_essential_sensors(const ArrayGeometry& g,
                                                            WeightFunction& w) {
  std::vector<Position> essential;
  for (Position s : g.positions()) {
    if (s == g.min_position() || s == g.max_position()) continue;
    const auto& pos = g.positions();
    for (Position t : pos) {
      if (t != s) w.bump(std::abs(t - s), -1);
    }
    bool breaks = false;
    if (w.zero_lags > 0) {
      for (Position m = 1; m <= w.aperture && !breaks; ++m) {
        if (w.counts[static_cast<std::size_t>(m)] == 0) breaks = true;
      }
    }
    for (Position t : pos) {
      if (t != s) w.bump(std::abs(t - s), +1);
    }
    if (breaks) essential.push_back(s);
  }
  return essential;
}

inline unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPARR_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace detail

// O(N) pair check against a prebuilt weight table; w is restored afterwards.
// Output is identical to test_pair_removal.
inline FailureOutcome incremental_removal_check(WeightFunction& w, const SensorPair& p,
                                                const ArrayGeometry& g) {
  return detail::incremental_subset_check(w, {p.a, p.b}, g);
}

// Exhaustive scan over all sensor pairs outside the exclusion set. Pairs
// containing an individually essential sensor are also skipped (a single
// failure already breaks those; the sensors are reported instead). Every
// non-surviving scanned pair is reported as a hidden essential sensor pair.
inline RobustnessReport scan_two_failures(const ArrayGeometry& g, const EssentialPairSet& exclude,
                                          const ScanOptions& options = {}) {
  if (g.size() < 4) throw TooFewSensors(g.size());
  if (g.size() > 5000 && !options.allow_large) throw ScanSizeError(g.size());
  const auto t0 = std::chrono::steady_clock::now();

  RobustnessReport report;
  report.geometry = g.positions();
  report.n = g.size();
  report.aperture = g.aperture();
  report.trsla = check_trsla_weights(g);
  report.esp_count = exclude.cardinality();
  report.esp_set_complete = exclude.complete;

  WeightFunction base = weight_function(g);
  report.essential_sensors = detail::individually_essential_sensors(g, base);

  const auto& pos = g.positions();
  const std::size_t n = pos.size();
  std::vector<bool> skip(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    skip[i] = std::binary_search(report.essential_sensors.begin(),
                                 report.essential_sensors.end(), pos[i]);
  }

  const std::uint64_t total_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  unsigned workers = detail::resolve_workers(options.workers);
  if (workers > total_pairs) workers = static_cast<unsigned>(total_pairs);
  if (workers == 0) workers = 1;
  report.workers_used = workers;

  std::vector<std::vector<HespRecord>> found(workers);
  std::vector<std::uint64_t> counted(workers, 0);

  // Pairs (i, j) with i < j are numbered lexicographically; each worker
  // walks one contiguous range of that numbering.
  auto run_chunk = [&](unsigned wi, std::uint64_t begin, std::uint64_t end) {
    if (begin >= end) return;
    WeightFunction local = base;
    std::size_t i = 0;
    std::uint64_t row_start = 0;
    while (row_start + (n - 1 - i) <= begin) {
      row_start += n - 1 - i;
      ++i;
    }
    std::size_t j = i + 1 + static_cast<std::size_t>(begin - row_start);
    for (std::uint64_t cur = begin; cur < end; ++cur) {
      if (!skip[i] && !skip[j]) {
        const SensorPair pair(pos[i], pos[j]);
        if (!exclude.contains(pair)) {
          ++counted[wi];
          FailureOutcome out = incremental_removal_check(local, pair, g);
          if (!out.survives) {
            found[wi].push_back({pair, out.span_changed, std::move(out.holes_created)});
          }
        }
      }
      if (++j >= n) {
        ++i;
        j = i + 1;
      }
    }
  };

  if (workers == 1) {
    run_chunk(0, 0, total_pairs);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total_pairs + workers - 1) / workers;
    for (unsigned wi = 0; wi < workers; ++wi) {
      const std::uint64_t begin = chunk * wi;
      const std::uint64_t end = std::min(total_pairs, begin + chunk);
      pool.emplace_back(run_chunk, wi, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  for (unsigned wi = 0; wi < workers; ++wi) {
    report.scanned_pairs += counted[wi];
    report.hesps.insert(report.hesps.end(), found[wi].begin(), found[wi].end());
  }
  std::sort(report.hesps.begin(), report.hesps.end());

  if (options.verify_excluded) {
    std::vector<SensorPair> non_breaking;
    for (const SensorPair& p : exclude.pairs) {
      if (!g.contains(p.a) || !g.contains(p.b)) continue;
      if (incremental_removal_check(base, p, g).survives) non_breaking.push_back(p);
    }
    report.non_breaking_excluded = std::move(non_breaking);
  }

  report.pass = report.hesps.empty() && report.trsla.conformant;
  report.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return report;
}

// Convenience overload excluding the pairs expected to be essential. Falls
// back to the formable subset when an inner anchor sensor is absent, so
// non-conforming geometries can still be scanned.
inline RobustnessReport scan_two_failures(const ArrayGeometry& g,
                                          const ScanOptions& options = {}) {
  return scan_two_failures(g, detail::effective_esp_set(g), options);
}

struct KFailureRecord {
  std::vector<Position> subset;
  bool span_changed = false;
  std::vector<Position> holes;

  bool operator<(const KFailureRecord& o) const { return subset < o.subset; }
};

struct KScanResult {
  std::vector<KFailureRecord> essential_subsets;
  std::uint64_t scanned = 0;
};

// Exhaustive scan over k-subsets of sensors, minus explicit exclusions. For
// k >= 2, subsets containing an individually essential sensor are skipped,
// matching scan_two_failures; for k = 1 the scan is exactly the search for
// those sensors, so no such filter applies.
inline KScanResult scan_k_failures(const ArrayGeometry& g, std::size_t k,
                                   const std::set<std::vector<Position>>& exclude = {},
                                   const ScanOptions& options = {}) {
  const std::size_t n = g.size();
  if (k < 1 || k > n - 2) {
    throw std::invalid_argument("k must be in [1, N-2], got " + std::to_string(k));
  }
  if (n > 5000 && !options.allow_large) throw ScanSizeError(n);

  const auto& pos = g.positions();
  WeightFunction w = weight_function(g);
  std::vector<Position> essential_singles;
  if (k >= 2) essential_singles = detail::individually_essential_sensors(g, w);

  KScanResult result;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<Position> subset(k);
  auto advance = [&]() -> bool {
    std::size_t i = k;
    while (i-- > 0) {
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    bool skip = false;
    for (std::size_t i = 0; i < k; ++i) {
      subset[i] = pos[idx[i]];
      if (std::binary_search(essential_singles.begin(), essential_singles.end(), subset[i])) {
        skip = true;
      }
    }
    if (!skip && !exclude.count(subset)) {
      ++result.scanned;
      FailureOutcome out = detail::incremental_subset_check(w, subset, g);
      if (!out.survives) {
        result.essential_subsets.push_back({subset, out.span_changed, std::move(out.holes_created)});
      }
    }
  } while (advance());
  std::sort(result.essential_subsets.begin(), result.essential_subsets.end());
  return result;
}

}  // namespace sparr
