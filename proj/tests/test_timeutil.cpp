#include <doctest.h>

#include <sstream>

#include "triage/csvio.hpp"
#include "triage/timeutil.hpp"

using namespace triage;

TEST_CASE("civil date conversions agree on known anchors") {
  CHECK(days_from_civil(1970, 1, 1) == 0);
  CHECK(days_from_civil(1970, 1, 2) == 1);
  CHECK(days_from_civil(1969, 12, 31) == -1);
  CHECK(days_from_civil(2014, 8, 24) == 1408838400 / kSecondsPerDay);
  CHECK(days_from_civil(2000, 2, 29) - days_from_civil(2000, 2, 28) == 1);  // leap day
  int y;
  unsigned m, d;
  civil_from_days(days_from_civil(2014, 8, 24), y, m, d);
  CHECK(y == 2014);
  CHECK(m == 8);
  CHECK(d == 24);
}

TEST_CASE("civil conversions round-trip across a wide range") {
  for (std::int64_t z = -200000; z <= 200000; z += 137) {
    int y;
    unsigned m, d;
    civil_from_days(z, y, m, d);
    CHECK(days_from_civil(y, m, d) == z);
  }
}

TEST_CASE("parse_iso8601 accepts the documented shapes") {
  CHECK(parse_iso8601("1970-01-01") == UtcSeconds(0));
  CHECK(parse_iso8601("1970-01-02") == UtcSeconds(86400));
  CHECK(parse_iso8601("2014-08-24T10:20:44Z") == UtcSeconds(1408875644));
  CHECK(parse_iso8601("2014-08-24T10:20:44") == UtcSeconds(1408875644));
  // paper-style month-first date
  CHECK(parse_iso8601("08-24-2014") == UtcSeconds(1408838400));
  CHECK_FALSE(parse_iso8601("not a date").has_value());
  CHECK_FALSE(parse_iso8601("2014-13-01").has_value());
  CHECK_FALSE(parse_iso8601("").has_value());
}

TEST_CASE("format_iso8601 round-trips through parse") {
  for (UtcSeconds t : {UtcSeconds(0), UtcSeconds(1408875644), UtcSeconds(-1),
                       UtcSeconds(4102444799)}) {
    auto back = parse_iso8601(format_iso8601(t));
    REQUIRE(back.has_value());
    CHECK(*back == t);
  }
}

TEST_CASE("floor_day and floor_hour handle negatives") {
  CHECK(floor_day(0) == 0);
  CHECK(floor_day(86399) == 0);
  CHECK(floor_day(86400) == 86400);
  CHECK(floor_day(-1) == -86400);
  CHECK(floor_hour(3600) == 3600);
  CHECK(floor_hour(3599) == 0);
  CHECK(floor_hour(-1) == -3600);
}

TEST_CASE("csv quoting round-trips awkward fields") {
  std::vector<std::string> fields = {"plain", "with,comma", "with \"quotes\"",
                                     "multi\nline", ""};
  std::ostringstream out;
  write_csv_row(out, fields);
  std::istringstream in(out.str());
  auto rows = read_csv(in);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == fields);
}

TEST_CASE("read_csv handles crlf and quoted commas") {
  std::istringstream in("a,b\r\n\"x,y\",\"z\"\"w\"\r\n");
  auto rows = read_csv(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"a", "b"});
  CHECK(rows[1] == std::vector<std::string>{"x,y", "z\"w"});
}
