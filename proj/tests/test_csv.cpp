#include <doctest.h>

#include "disparity/csv.hpp"
#include "disparity/errors.hpp"

using namespace disparity;

TEST_CASE("plain csv parsing") {
  CsvTable t = parse_csv("a,b,c\n1,2,3\n4,5,6\n");
  CHECK(t.header == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0] == std::vector<std::string>{"1", "2", "3"});
  CHECK(t.rows[1] == std::vector<std::string>{"4", "5", "6"});
}

TEST_CASE("quoting, escapes, CRLF, BOM, missing final newline") {
  CsvTable t = parse_csv("\xEF\xBB\xBFh1,h2\r\n\"a,b\",\"say \"\"hi\"\"\"\r\n\"line\nbreak\",x");
  CHECK(t.header == std::vector<std::string>{"h1", "h2"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][0] == "a,b");
  CHECK(t.rows[0][1] == "say \"hi\"");
  CHECK(t.rows[1][0] == "line\nbreak");
}

TEST_CASE("csv errors") {
  CHECK_THROWS_AS(parse_csv(""), DataError);
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), DataError);
  CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), DataError);
  CHECK_THROWS_AS(parse_csv("a,b\n\"unterminated,2\n"), DataError);
  CHECK_THROWS_AS(parse_csv("a,b\nmid\"quote,2\n"), DataError);
  CHECK_THROWS_AS(parse_csv("a,b\n\"x\"y,2\n"), DataError);
  CHECK_THROWS_AS(read_csv_file("/nonexistent/file.csv"), DataError);
}

TEST_CASE("aggregate header detection is exact") {
  CHECK(is_aggregate_csv(parse_csv("group,favorable,unfavorable\nA,1,2\n")));
  CHECK_FALSE(is_aggregate_csv(parse_csv("group,favorable,unfavorable,extra\nA,1,2,3\n")));
  CHECK_FALSE(is_aggregate_csv(parse_csv("Group,favorable,unfavorable\nA,1,2\n")));
  CHECK_FALSE(is_aggregate_csv(parse_csv("group,unfavorable,favorable\nA,1,2\n")));
}

TEST_CASE("aggregate parsing") {
  auto entries = parse_aggregate_csv(parse_csv("group,favorable,unfavorable\nA, 4,6\nB,5,5\n"));
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].group.str() == "A");
  CHECK(entries[0].favorable == 4);
  CHECK(entries[1].unfavorable == 5);

  CHECK_THROWS_WITH_AS(
      parse_aggregate_csv(parse_csv("group,favorable,unfavorable\nA,-1,2\n")),
      "group 'A': negative favorable count", DataError);
  CHECK_THROWS_AS(parse_aggregate_csv(parse_csv("group,favorable,unfavorable\nA,x,2\n")),
                  DataError);
  CHECK_THROWS_AS(parse_aggregate_csv(parse_csv("group,favorable,unfavorable\nA,1.5,2\n")),
                  DataError);
  CHECK_THROWS_AS(parse_aggregate_csv(parse_csv("group,favorable,unfavorable\nA,,2\n")),
                  DataError);
}

TEST_CASE("record view and ignored fields") {
  CsvTable t = parse_csv("name,race,hired\nalice,X0,Y\nbob,X1,N\n");
  auto records = csv_records(t);
  REQUIRE(records.size() == 2);
  CHECK(records[0].at("race") == "X0");
  CHECK(records[1].at("hired") == "N");
  CHECK(ignored_fields(t, "race", "hired") == std::vector<std::string>{"name"});
  CHECK(ignored_fields(t, "nope", "hired") ==
        std::vector<std::string>{"name", "race"});
}
