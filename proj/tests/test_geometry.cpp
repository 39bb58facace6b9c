#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sparr/coarray.hpp"
#include "sparr/generators.hpp"
#include "sparr/geometry.hpp"

using sparr::ArrayGeometry;
using sparr::Position;

namespace {

std::string write_temp(const std::string& content) {
  static int counter = 0;
  const std::string path = "sparr_geom_test_" + std::to_string(counter++) + ".txt";
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("from_positions normalizes and validates") {
  const auto g = ArrayGeometry::from_positions({0, 1, 2, 6, 10, 14, 17});
  CHECK(g.size() == 7);
  CHECK(g.aperture() == 17);

  const auto shifted = ArrayGeometry::from_positions({5, 6, 7});
  CHECK(shifted.positions() == std::vector<Position>{0, 1, 2});
  CHECK(shifted.aperture() == 2);

  CHECK_THROWS_AS(ArrayGeometry::from_positions({0, 0, 3}), sparr::DuplicatePosition);
  CHECK_THROWS_AS(ArrayGeometry::from_positions({}), sparr::EmptyInput);
  CHECK_THROWS_AS(ArrayGeometry::from_positions({4}), sparr::TooFewSensors);
}

TEST_CASE("from_positions accepts unsorted and negative input") {
  const auto g = ArrayGeometry::from_positions({14, -3, 0, 5});
  CHECK(g.positions() == std::vector<Position>{0, 3, 8, 17});
}

TEST_CASE("translation invariance of from_positions") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Position> raw;
    const int n = 2 + static_cast<int>(rng() % 12);
    std::set<Position> seen;
    while (static_cast<int>(seen.size()) < n) seen.insert(static_cast<Position>(rng() % 100));
    raw.assign(seen.begin(), seen.end());
    const Position shift = static_cast<Position>(rng() % 1000) - 500;
    std::vector<Position> moved = raw;
    for (auto& p : moved) p += shift;
    CHECK(ArrayGeometry::from_positions(raw) == ArrayGeometry::from_positions(moved));
  }
}

TEST_CASE("from_ies builds cumulative positions") {
  CHECK(ArrayGeometry::from_ies({1, 1, 4, 4}).positions() ==
        std::vector<Position>{0, 1, 2, 6, 10});
  CHECK(ArrayGeometry::from_ies({1}).positions() == std::vector<Position>{0, 1});
  CHECK(ArrayGeometry::from_ies({1, 1, 1}).positions() == std::vector<Position>{0, 1, 2, 3});
  CHECK_THROWS_AS(ArrayGeometry::from_ies({1, 0, 2}), sparr::InvalidSpacing);
  CHECK_THROWS_AS(ArrayGeometry::from_ies({-3}), sparr::InvalidSpacing);
  CHECK_THROWS_AS(ArrayGeometry::from_ies({}), sparr::EmptyInput);
}

TEST_CASE("to_ies is the inverse of from_ies") {
  CHECK(ArrayGeometry::from_positions({0, 1, 2, 6, 10}).to_ies() ==
        std::vector<Position>{1, 1, 4, 4});
  CHECK(ArrayGeometry::from_positions({0, 1}).to_ies() == std::vector<Position>{1});
  CHECK(ArrayGeometry::from_positions({0, 5, 17}).to_ies() == std::vector<Position>{5, 12});

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Position> spacings;
    const int n = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) spacings.push_back(1 + static_cast<Position>(rng() % 9));
    const auto g = ArrayGeometry::from_ies(spacings);
    CHECK(g.to_ies() == spacings);
    CHECK(ArrayGeometry::from_ies(g.to_ies()) == g);
  }
}

TEST_CASE("remove_sensors keeps coordinates and recomputes the aperture") {
  const auto fra = sparr::gen_3fra(15);

  const auto healthy = fra.remove_sensors({6, 8});
  CHECK(healthy.size() == 13);
  CHECK(sparr::is_hole_free(healthy));

  CHECK(fra.remove_sensors({}) == fra);

  const auto broken = fra.remove_sensors({2, 15});
  CHECK(broken.size() == 13);
  const auto profile = sparr::coarray_profile(broken);
  CHECK(profile.holes == std::vector<Position>{14});

  CHECK_THROWS_AS(fra.remove_sensors({5}), sparr::UnknownPosition);
  const auto tiny = ArrayGeometry::from_positions({0, 1, 2});
  CHECK_THROWS_AS(tiny.remove_sensors({1, 2}), sparr::TooFewSensors);
}

TEST_CASE("remove_sensors does not re-normalize") {
  const auto g = ArrayGeometry::from_positions({0, 1, 2, 6, 10});
  const auto survivors = g.remove_sensors({0, 1});
  CHECK(survivors.positions() == std::vector<Position>{2, 6, 10});
  CHECK(survivors.min_position() == 2);
  CHECK(survivors.aperture() == 8);
}

TEST_CASE("remove_sensors composes over disjoint sets") {
  const auto g = sparr::gen_3fra(15);
  const auto both = g.remove_sensors({1, 16, 24});
  const auto chained = g.remove_sensors({1, 24}).remove_sensors({16});
  CHECK(both == chained);
}

TEST_CASE("geometry files parse positions with comments and commas") {
  const auto path = write_temp("# demo array\n0, 1, 2\n6 10\n# trailing comment\n14,17\n");
  const auto g = sparr::parse_geometry_file(path);
  CHECK(g.positions() == std::vector<Position>{0, 1, 2, 6, 10, 14, 17});
  std::remove(path.c_str());
}

TEST_CASE("geometry files support the ies directive") {
  const auto path = write_temp("# spacing form\nies:\n1, 1, 4, 4\n");
  const auto g = sparr::parse_geometry_file(path);
  CHECK(g.positions() == std::vector<Position>{0, 1, 2, 6, 10});
  std::remove(path.c_str());
}

TEST_CASE("geometry file errors are loud") {
  CHECK_THROWS_AS(sparr::parse_geometry_file("definitely_missing_file.txt"), sparr::ParseError);
  CHECK_THROWS_AS(sparr::parse_geometry_text("0 zebra 3"), sparr::ParseError);
  CHECK_THROWS_AS(sparr::parse_geometry_text("# only comments\n"), sparr::EmptyInput);
  CHECK_THROWS_AS(sparr::parse_geometry_text("0 0 3"), sparr::DuplicatePosition);
}

TEST_CASE("format_positions round-trips through the parser") {
  const auto g = sparr::gen_3fra(17);
  CHECK(sparr::parse_geometry_text(sparr::format_positions(g)) == g);
}
