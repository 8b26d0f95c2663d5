#include <catch2/catch_amalgamated.hpp>

#include "fedslice/rational.hpp"

using namespace fedslice;

TEST_CASE("decimal parsing is exact") {
  CHECK(qty_parse("12") == Qty(12));
  CHECK(qty_parse("-3.25") == Qty(-13, 4));
  CHECK(qty_parse("0.1") == Qty(1, 10));
  CHECK(qty_parse("2.5e2") == Qty(250));
  CHECK(qty_parse("1e-3") == Qty(1, 1000));
  CHECK(qty_parse("3/2") == Qty(3, 2));
  CHECK_THROWS(qty_parse("abc"));
  CHECK_THROWS(qty_parse(""));
}

TEST_CASE("json round trip keeps quantities exact") {
  for (const Qty& q : {Qty(0), Qty(7), Qty(-13, 4), Qty(1, 3), Qty(1000000, 7)}) {
    CHECK(qty_from_json(qty_to_json(q)) == q);
  }
  // JSON doubles go through their shortest decimal rendering.
  nlohmann::json j = nlohmann::json::parse("2.5");
  CHECK(qty_from_json(j) == Qty(5, 2));
  j = nlohmann::json::parse("0.1");
  CHECK(qty_from_json(j) == Qty(1, 10));
}

TEST_CASE("canonical text form") {
  CHECK(to_string(Qty(4, 2)) == "2");
  CHECK(to_string(Qty(3, 2)) == "3/2");
  CHECK(to_string(Qty(-3, 9)) == "-1/3");
}
