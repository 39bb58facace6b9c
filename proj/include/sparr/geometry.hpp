#pragma once

// Integer sensor-position sets: construction, validation, inter-element
// spacing conversions, sensor removal, and the plain-text file format.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparr {

using Position = std::int64_t;

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyInput : GeometryError {
  EmptyInput() : GeometryError("geometry input is empty") {}
};

struct DuplicatePosition : GeometryError {
  explicit DuplicatePosition(Position p)
      : GeometryError("duplicate sensor position " + std::to_string(p)) {}
};

struct TooFewSensors : GeometryError {
  explicit TooFewSensors(std::size_t n)
      : GeometryError("geometry needs at least 2 sensors, got " + std::to_string(n)) {}
};

struct InvalidSpacing : GeometryError {
  explicit InvalidSpacing(Position s)
      : GeometryError("inter-element spacing must be >= 1, got " + std::to_string(s)) {}
};

struct UnknownPosition : GeometryError {
  explicit UnknownPosition(Position p)
      : GeometryError("no sensor at position " + std::to_string(p)) {}
};

struct ParseError : GeometryError {
  using GeometryError::GeometryError;
};

// Sorted unique sensor positions in half-wavelength units. from_positions
// normalizes the minimum to 0; remove_sensors keeps survivor coordinates
// unchanged so that span loss stays observable.
class ArrayGeometry {
 public:
  static ArrayGeometry from_positions(std::vector<Position> raw) {
    if (raw.empty()) throw EmptyInput();
    std::sort(raw.begin(), raw.end());
    for (std::size_t i = 1; i < raw.size(); ++i) {
      if (raw[i] == raw[i - 1]) throw DuplicatePosition(raw[i]);
    }
    if (raw.size() < 2) throw TooFewSensors(raw.size());
    const Position base = raw.front();
    for (auto& p : raw) p -= base;
    return ArrayGeometry(std::move(raw));
  }

  static ArrayGeometry from_ies(const std::vector<Position>& spacings) {
    if (spacings.empty()) throw EmptyInput();
    std::vector<Position> pos;
    pos.reserve(spacings.size() + 1);
    pos.push_back(0);
    for (Position s : spacings) {
      if (s < 1) throw InvalidSpacing(s);
      pos.push_back(pos.back() + s);
    }
    return ArrayGeometry(std::move(pos));
  }

  // Successive differences of positions; inverse of from_ies.
  std::vector<Position> to_ies() const {
    std::vector<Position> ies;
    ies.reserve(pos_.size() - 1);
    for (std::size_t i = 1; i < pos_.size(); ++i) ies.push_back(pos_[i] - pos_[i - 1]);
    return ies;
  }

  // Survivor geometry after removing the given sensors. Coordinates are not
  // re-normalized; the aperture is recomputed over the survivors.
  ArrayGeometry remove_sensors(const std::vector<Position>& removed) const {
    std::set<Position> gone;
    for (Position p : removed) {
      if (!contains(p)) throw UnknownPosition(p);
      gone.insert(p);
    }
    std::vector<Position> kept;
    kept.reserve(pos_.size() - gone.size());
    for (Position p : pos_) {
      if (!gone.count(p)) kept.push_back(p);
    }
    if (kept.size() < 2) throw TooFewSensors(kept.size());
    return ArrayGeometry(std::move(kept));
  }

  const std::vector<Position>& positions() const { return pos_; }
  std::size_t size() const { return pos_.size(); }
  Position min_position() const { return pos_.front(); }
  Position max_position() const { return pos_.back(); }
  Position aperture() const { return pos_.back() - pos_.front(); }

  bool contains(Position p) const {
    return std::binary_search(pos_.begin(), pos_.end(), p);
  }

  bool operator==(const ArrayGeometry& other) const { return pos_ == other.pos_; }

 private:
  explicit ArrayGeometry(std::vector<Position> sorted_unique)
      : pos_(std::move(sorted_unique)) {}

  std::vector<Position> pos_;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace detail

// Plain-text geometry format: integers separated by whitespace and/or commas,
// lines starting with '#' ignored. If the first non-comment line is "ies:"
// the remaining integers are inter-element spacings instead of positions.
inline ArrayGeometry parse_geometry_text(const std::string& text) {
  std::istringstream iss(text);
  std::string line;
  std::vector<Position> values;
  bool ies_mode = false;
  bool saw_content = false;
  std::size_t lineno = 0;
  while (std::getline(iss, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!saw_content && t == "ies:") {
      ies_mode = true;
      saw_content = true;
      continue;
    }
    saw_content = true;
    std::string cleaned;
    cleaned.reserve(t.size());
    for (char c : t) cleaned.push_back(c == ',' ? ' ' : c);
    std::istringstream toks(cleaned);
    std::string tok;
    while (toks >> tok) {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        values.push_back(static_cast<Position>(v));
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": expected an integer, got '" +
                         tok + "'");
      }
    }
  }
  if (values.empty()) throw EmptyInput();
  return ies_mode ? ArrayGeometry::from_ies(values) : ArrayGeometry::from_positions(values);
}

inline ArrayGeometry parse_geometry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open geometry file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_geometry_text(buf.str());
}

inline std::string format_positions(const ArrayGeometry& g) {
  std::ostringstream out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out << ' ';
    out << g.positions()[i];
  }
  return out.str();
}

}  // namespace sparr
