#include <cmath>
#include <string>

#include "doctest.h"
#include "voa/families.hpp"
#include "voa/numkit.hpp"
#include "voa/svg.hpp"

namespace {

voa::ScanTable demo_table() {
  voa::ScanTable t;
  t.param_name = "p";
  t.columns = {"low", "high"};
  t.provenance = "family=demo";
  t.rows = {{0.0, {0.0, 1.0}}, {0.5, {0.25, 1.5}}, {1.0, {1.0, 2.0}}};
  return t;
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_SUITE("svg") {

TEST_CASE("chart carries one polyline per column plus labels") {
  const std::string svg = voa::to_svg(demo_table());
  CHECK(svg.rfind("<svg ", 0) == 0);
  CHECK(svg.find("</svg>\n") == svg.size() - 7);
  CHECK(count_occurrences(svg, "<polyline") == 2);
  CHECK(svg.find(">p</text>") != std::string::npos);
  CHECK(svg.find(">low</text>") != std::string::npos);
  CHECK(svg.find(">high</text>") != std::string::npos);
  CHECK(svg.find("family=demo") != std::string::npos);
  CHECK(svg.find("nan") == std::string::npos);
}

TEST_CASE("output is a pure function of the table") {
  const std::string a = voa::to_svg(demo_table());
  const std::string b = voa::to_svg(demo_table());
  CHECK(a == b);

  voa::ScanTable shifted = demo_table();
  shifted.rows[1].values[0] = 0.75;
  CHECK(voa::to_svg(shifted) != a);
}

TEST_CASE("names are xml-escaped") {
  voa::ScanTable t = demo_table();
  t.columns = {"a<b", "c&d"};
  t.param_name = "x>y";
  const std::string svg = voa::to_svg(t);
  CHECK(svg.find("a&lt;b") != std::string::npos);
  CHECK(svg.find("c&amp;d") != std::string::npos);
  CHECK(svg.find("x&gt;y") != std::string::npos);
  CHECK(svg.find("a<b") == std::string::npos);
}

TEST_CASE("flat and single-point data still render") {
  voa::ScanTable flat = demo_table();
  for (auto& r : flat.rows) r.values = {0.5, 0.5};
  const std::string svg = voa::to_svg(flat);
  CHECK(count_occurrences(svg, "<polyline") == 2);

  voa::ScanTable single;
  single.param_name = "p";
  single.columns = {"v"};
  single.rows = {{0.25, {3.0}}};
  CHECK(voa::to_svg(single).find("<polyline") != std::string::npos);
}

TEST_CASE("malformed tables are rejected") {
  voa::ScanTable empty;
  empty.param_name = "p";
  empty.columns = {"v"};
  CHECK_THROWS_AS(voa::to_svg(empty), voa::StructuralError);

  voa::ScanTable unordered = demo_table();
  unordered.rows[2].param = 0.25;
  CHECK_THROWS_AS(voa::to_svg(unordered), voa::StructuralError);

  voa::ScanTable ragged = demo_table();
  ragged.rows[1].values.pop_back();
  CHECK_THROWS_AS(voa::to_svg(ragged), voa::StructuralError);

  voa::ScanTable poisoned = demo_table();
  poisoned.rows[1].values[1] = std::nan("");
  CHECK_THROWS_AS(voa::to_svg(poisoned), voa::NumericalError);

  voa::ScanTable no_columns;
  no_columns.param_name = "p";
  no_columns.rows = {{0.0, {}}};
  CHECK_THROWS_AS(voa::to_svg(no_columns), voa::StructuralError);
}

}  // TEST_SUITE
