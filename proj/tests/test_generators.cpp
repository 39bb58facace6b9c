#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cstddef>
#include <vector>

#include "sparr/generators.hpp"
#include "sparr/redundancy.hpp"

using sparr::Position;
using sparr::SensorPair;

namespace {

struct FamilyRow {
  std::size_t n;
  Position aperture;
  std::vector<SensorPair> hesps;
};

// Exhaustive two-failure scan results for the triple-redundant family,
// frozen from an independent reference implementation.
const std::vector<FamilyRow> kFra3Rows = {
    {10, 14, {{5, 6}, {6, 11}}},    {11, 17, {{6, 7}, {7, 13}}},
    {12, 20, {{7, 8}, {8, 15}}},    {13, 23, {{8, 9}, {9, 17}}},
    {14, 26, {{9, 10}, {10, 19}}},  {15, 29, {{2, 15}, {15, 16}}},
    {16, 33, {{2, 17}, {17, 18}}},  {17, 37, {{2, 19}, {19, 20}}},
    {18, 41, {{2, 21}, {21, 22}}},  {19, 45, {{2, 23}, {23, 24}}},
    {20, 49, {{2, 25}, {25, 26}}},  {21, 53, {}},
    {22, 58, {}},                   {23, 63, {}},
    {24, 68, {}},                   {25, 73, {}},
    {26, 78, {}},                   {27, 83, {{2, 42}, {42, 43}}},
    {28, 89, {{2, 45}, {45, 46}}},  {29, 95, {{2, 48}, {48, 49}}},
    {30, 101, {{2, 51}, {51, 52}}}, {31, 107, {{2, 54}, {54, 55}}},
    {32, 113, {{2, 57}, {57, 58}}}, {33, 119, {}},
    {34, 126, {}},                  {35, 133, {}},
    {36, 140, {}},                  {37, 147, {}},
    {38, 154, {}},                  {39, 161, {{2, 81}, {81, 82}}},
    {40, 169, {{2, 85}, {85, 86}}}, {41, 177, {{2, 89}, {89, 90}}},
    {42, 185, {{2, 93}, {93, 94}}}, {43, 193, {{2, 97}, {97, 98}}},
    {44, 201, {{2, 101}, {101, 102}}}, {45, 209, {}},
    {46, 218, {}},                  {47, 227, {}},
    {48, 236, {}},                  {49, 245, {}},
    {50, 254, {}},
};

// Same scan for the thinned family, which keeps its L = 2N-1 aperture but
// is never terminal-weight conformant.
const std::vector<FamilyRow> kTraRows = {
    {15, 29, {{2, 27}, {3, 27}, {4, 14}, {11, 14}, {14, 17}}},
    {16, 31, {{2, 29}, {3, 29}, {4, 14}, {14, 17}}},
    {17, 33, {{2, 31}, {3, 31}, {4, 15}, {15, 18}}},
    {18, 35, {{2, 18}, {2, 33}, {3, 33}, {15, 18}}},
    {19, 37, {{2, 19}, {2, 35}, {3, 35}, {16, 19}}},
    {20, 39, {{2, 37}, {3, 37}}},
    {21, 41, {{2, 39}, {3, 39}}},
    {22, 43, {{2, 41}, {3, 41}}},
    {23, 45, {{2, 43}, {3, 43}}},
    {24, 47, {{2, 45}, {3, 45}}},
    {25, 49, {{2, 47}, {3, 47}}},
    {26, 51, {{2, 49}, {3, 49}}},
    {27, 53, {{2, 51}, {3, 51}}},
    {28, 55, {{2, 53}, {3, 53}}},
    {29, 57, {{2, 55}, {3, 55}}},
    {30, 59, {{2, 57}, {3, 57}}},
};

std::vector<SensorPair> hesp_pairs(const sparr::RobustnessReport& r) {
  std::vector<SensorPair> pairs;
  for (const auto& h : r.hesps) pairs.push_back(h.pair);
  return pairs;
}

}  // namespace

TEST_CASE("uniform array generator") {
  CHECK(sparr::gen_ula(2).positions() == std::vector<Position>{0, 1});
  CHECK(sparr::gen_ula(5).positions() == std::vector<Position>({0, 1, 2, 3, 4}));
  CHECK(sparr::gen_ula(18).aperture() == 17);
  CHECK_THROWS_AS(sparr::gen_ula(1), sparr::GeneratorRangeError);
}

TEST_CASE("triple-redundant generator reproduces the reference design") {
  CHECK(sparr::gen_3fra(15).positions() ==
        std::vector<Position>({0, 1, 2, 6, 7, 8, 15, 16, 17, 24, 25, 26, 27, 28, 29}));
  CHECK_THROWS_AS(sparr::gen_3fra(9), sparr::GeneratorRangeError);
}

TEST_CASE("triple-redundant family apertures and conformance") {
  for (const auto& row : kFra3Rows) {
    const auto g = sparr::gen_3fra(row.n);
    INFO("N = " << row.n);
    REQUIRE(g.size() == row.n);
    REQUIRE(g.aperture() == row.aperture);
    REQUIRE(sparr::check_trsla_weights(g).conformant);
  }
}

TEST_CASE("triple-redundant family scan matches the frozen table") {
  for (const auto& row : kFra3Rows) {
    const auto report = sparr::scan_two_failures(sparr::gen_3fra(row.n));
    INFO("N = " << row.n);
    REQUIRE(hesp_pairs(report) == row.hesps);
  }
}

TEST_CASE("thinned generator reproduces the reference design") {
  CHECK(sparr::gen_tra(15).positions() ==
        std::vector<Position>({0, 1, 2, 3, 4, 5, 8, 11, 14, 17, 20, 23, 25, 27, 29}));
  CHECK_THROWS_AS(sparr::gen_tra(14), sparr::GeneratorRangeError);
}

TEST_CASE("thinned family keeps the doubled aperture but never conforms") {
  for (const auto& row : kTraRows) {
    const auto g = sparr::gen_tra(row.n);
    INFO("N = " << row.n);
    REQUIRE(g.size() == row.n);
    REQUIRE(g.aperture() == static_cast<Position>(2 * row.n - 1));
    REQUIRE(g.aperture() == row.aperture);
    const auto check = sparr::check_trsla_weights(g);
    REQUIRE_FALSE(check.conformant);
    REQUIRE(check.first_violation.has_value());
  }
  CHECK(*sparr::check_trsla_weights(sparr::gen_tra(15)).first_violation == 26);
  CHECK(*sparr::check_trsla_weights(sparr::gen_tra(20)).first_violation == 36);
  CHECK(*sparr::check_trsla_weights(sparr::gen_tra(25)).first_violation == 46);
  CHECK(*sparr::check_trsla_weights(sparr::gen_tra(30)).first_violation == 56);
}

TEST_CASE("thinned family scan matches the frozen table") {
  for (const auto& row : kTraRows) {
    const auto report = sparr::scan_two_failures(sparr::gen_tra(row.n));
    INFO("N = " << row.n);
    auto expected = row.hesps;
    std::sort(expected.begin(), expected.end());
    REQUIRE(hesp_pairs(report) == expected);
  }
}

TEST_CASE("named demonstration arrays") {
  CHECK(sparr::named_demo_array("fig1_holefree").positions() ==
        std::vector<Position>({0, 1, 2, 6, 10, 14, 17}));
  CHECK(sparr::named_demo_array("fig1_holey").positions() ==
        std::vector<Position>({0, 1, 2, 6, 9, 14, 17}));
  CHECK(sparr::named_demo_array("fig1_ula") == sparr::gen_ula(18));
  CHECK_THROWS_AS(sparr::named_demo_array("nope"), std::invalid_argument);
}

TEST_CASE("generators are deterministic") {
  for (std::size_t n : {10, 15, 23, 42}) {
    CHECK(sparr::gen_3fra(n) == sparr::gen_3fra(n));
  }
  for (std::size_t n : {15, 20, 29}) {
    CHECK(sparr::gen_tra(n) == sparr::gen_tra(n));
  }
}
