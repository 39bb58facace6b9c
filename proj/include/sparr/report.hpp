#pragma once

// Machine-readable serializations: robustness reports as JSON or CSV, sweep
// tables, and weight-function plot data.

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "sparr/coarray.hpp"
#include "sparr/redundancy.hpp"

namespace sparr {

inline constexpr const char* kSchemaVersion = "1";

inline nlohmann::json pairs_to_json(const std::vector<SensorPair>& pairs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : pairs) arr.push_back({p.a, p.b});
  return arr;
}

inline nlohmann::json report_to_json(const RobustnessReport& r) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["geometry"] = r.geometry;
  j["N"] = r.n;
  j["L"] = r.aperture;
  j["trsla_conformant"] = r.trsla.conformant;
  j["first_violating_lag"] =
      r.trsla.first_violation ? nlohmann::json(*r.trsla.first_violation) : nlohmann::json();
  j["esp_count"] = r.esp_count;
  j["esp_set_complete"] = r.esp_set_complete;
  j["essential_sensors"] = r.essential_sensors;
  j["scanned"] = r.scanned_pairs;
  nlohmann::json hesps = nlohmann::json::array();
  for (const auto& h : r.hesps) {
    hesps.push_back({{"pair", {h.pair.a, h.pair.b}},
                     {"holes", h.holes},
                     {"span_changed", h.span_changed}});
  }
  j["hesps"] = hesps;
  j["verdict"] = r.verdict();
  j["elapsed_ms"] = r.elapsed_ms;
  j["workers"] = r.workers_used;
  if (r.non_breaking_excluded) {
    j["non_breaking_excluded"] = pairs_to_json(*r.non_breaking_excluded);
  }
  return j;
}

// One HESP per row; holes separated by spaces inside the last column.
inline std::string report_to_csv(const RobustnessReport& r) {
  std::ostringstream out;
  out << "pair_a,pair_b,span_changed,holes\n";
  for (const auto& h : r.hesps) {
    out << h.pair.a << ',' << h.pair.b << ',' << (h.span_changed ? 1 : 0) << ',';
    for (std::size_t i = 0; i < h.holes.size(); ++i) {
      if (i) out << ' ';
      out << h.holes[i];
    }
    out << '\n';
  }
  return out.str();
}

// "Nil" for a clean row, otherwise space-separated "(a,b)" pairs.
inline std::string format_hesp_list(const std::vector<HespRecord>& hesps) {
  if (hesps.empty()) return "Nil";
  std::ostringstream out;
  for (std::size_t i = 0; i < hesps.size(); ++i) {
    if (i) out << ' ';
    out << '(' << hesps[i].pair.a << ',' << hesps[i].pair.b << ')';
  }
  return out.str();
}

struct SweepRow {
  std::size_t n = 0;
  Position aperture = 0;
  std::vector<HespRecord> hesps;
};

inline std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "N,L,hesps\n";
  for (const auto& row : rows) {
    const std::string hesps = format_hesp_list(row.hesps);
    out << row.n << ',' << row.aperture << ',';
    if (hesps.find(',') != std::string::npos) {
      out << '"' << hesps << '"';
    } else {
      out << hesps;
    }
    out << '\n';
  }
  return out.str();
}

inline nlohmann::json sweep_to_json(const std::vector<SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json hesps = nlohmann::json::array();
    for (const auto& h : row.hesps) {
      hesps.push_back({{"pair", {h.pair.a, h.pair.b}},
                       {"holes", h.holes},
                       {"span_changed", h.span_changed}});
    }
    arr.push_back({{"N", row.n}, {"L", row.aperture}, {"hesps", hesps}});
  }
  return arr;
}

// Two-column plot data over [-L, L] using the even symmetry of the weights.
inline std::string weight_plot_csv(const WeightFunction& w) {
  std::ostringstream out;
  out << "lag,weight\n";
  for (Position m = -w.aperture; m <= w.aperture; ++m) {
    out << m << ',' << w(m) << '\n';
  }
  return out.str();
}

}  // namespace sparr
