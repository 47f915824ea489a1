#include "doctest.h"
#include "seqroc/csv.hpp"
#include "seqroc/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

using namespace seqroc;

TEST_CASE("parse handles quoting, CRLF and blank lines") {
  std::istringstream in("a,b,c\r\n1,\"x,y\",3\r\n\r\n4,\"he said \"\"hi\"\"\",6\n");
  const csv::Table t = csv::parse(in);
  REQUIRE(t.header.size() == 3);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][1] == "x,y");
  CHECK(t.rows[1][1] == "he said \"hi\"");
  CHECK(t.find("c").value() == 2);
  CHECK_FALSE(t.find("zz").has_value());
}

TEST_CASE("ragged row reports its row number") {
  std::istringstream in("a,b\n1,2\n3\n");
  try {
    csv::parse(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 2);
  }
}

TEST_CASE("format_exact round-trips and format_sig rounds") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 12345.678901234567, 5e-324}) {
    CHECK(csv::parse_double(csv::format_exact(v)) == v);
  }
  CHECK(csv::format_sig(0.123456789, 6) == "0.123457");
  CHECK(csv::format_sig(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(csv::format_sig(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(std::isinf(csv::parse_double("-inf")));
  CHECK_THROWS_AS(csv::parse_double("1.5x"), std::invalid_argument);
  CHECK_THROWS_AS(csv::parse_double(""), std::invalid_argument);
}

TEST_CASE("write then parse gives the same table") {
  csv::Table t;
  t.header = {"k", "v"};
  t.rows = {{"a", "1"}, {"b,c", "2"}, {"q\"", ""}};
  std::ostringstream out;
  csv::write(out, t);
  std::istringstream in(out.str());
  const csv::Table back = csv::parse(in);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
}
