#include <doctest.h>

#include "disparity/errors.hpp"
#include "disparity/group_table.hpp"

using namespace disparity;

namespace {

GroupOutcomeTable hiring_table() {
  return GroupOutcomeTable::from_aggregate({
      {GroupLabel{"X0"}, 4, 6},
      {GroupLabel{"X1"}, 5, 5},
  });
}

}  // namespace

TEST_CASE("labels are trimmed, non-empty, byte-compared") {
  CHECK(GroupLabel{" A "} == GroupLabel{"A"});
  CHECK(GroupLabel{"a"}.str() == "a");
  CHECK_FALSE(GroupLabel{"a"} == GroupLabel{"A"});
  CHECK_THROWS_AS(GroupLabel{""}, DataError);
  CHECK_THROWS_AS(GroupLabel{"  \t "}, DataError);
}

TEST_CASE("aggregate construction and selection rates") {
  GroupOutcomeTable t = hiring_table();
  CHECK(t.groups().size() == 2);
  CHECK(t.groups()[0].str() == "X0");
  CHECK(t.groups()[1].str() == "X1");
  CHECK(t.selection_rate(GroupLabel{"X0"}) == 0.4);
  CHECK(t.selection_rate(GroupLabel{"X1"}) == 0.5);
  CHECK(t.grand_total() == 20);
  CHECK(t.counts(GroupLabel{"X0"}).favorable == 4);
  CHECK(t.counts(GroupLabel{"X0"}).unfavorable == 6);
}

TEST_CASE("aggregate validation") {
  CHECK_THROWS_AS(GroupOutcomeTable::from_aggregate({}), DataError);
  CHECK_THROWS_AS(GroupOutcomeTable::from_aggregate({{GroupLabel{"A"}, -1, 5}}), DataError);
  CHECK_THROWS_AS(GroupOutcomeTable::from_aggregate({{GroupLabel{"A"}, 1, -5}}), DataError);
  CHECK_THROWS_AS(GroupOutcomeTable::from_aggregate(
                      {{GroupLabel{"A"}, 1, 2}, {GroupLabel{"A"}, 3, 4}}),
                  DataError);
  CHECK_THROWS_AS(GroupOutcomeTable::from_aggregate(
                      {{GroupLabel{"A"}, 0, 0}, {GroupLabel{"B"}, 0, 0}}),
                  DataError);
  // a single zero-total group among others is allowed
  GroupOutcomeTable t = GroupOutcomeTable::from_aggregate(
      {{GroupLabel{"A"}, 1, 1}, {GroupLabel{"B"}, 0, 0}});
  CHECK(t.counts(GroupLabel{"B"}).total() == 0);
  CHECK_THROWS_AS(t.selection_rate(GroupLabel{"B"}), DataError);
  CHECK_THROWS_AS(t.selection_rate(GroupLabel{"missing"}), DataError);
  CHECK_THROWS_AS(t.counts(GroupLabel{"missing"}), DataError);
}

TEST_CASE("row tally with explicit unfavorable set") {
  OutcomePolarity polarity{"Y", std::vector<std::string>{"N"}};
  std::vector<Record> rows = {
      {{"g", "A"}, {"o", "Y"}}, {{"g", "A"}, {"o", "N"}},  {{"g", "B"}, {"o", "N"}},
      {{"g", "B"}, {"o", "N"}}, {{"g", " A "}, {"o", "Y"}},
  };
  GroupOutcomeTable t = GroupOutcomeTable::from_rows(rows, "g", "o", polarity);
  CHECK(t.groups().size() == 2);
  CHECK(t.counts(GroupLabel{"A"}).favorable == 2);
  CHECK(t.counts(GroupLabel{"A"}).unfavorable == 1);
  CHECK(t.counts(GroupLabel{"B"}).unfavorable == 2);

  std::vector<Record> bad = {{{"g", "A"}, {"o", "maybe"}}};
  CHECK_THROWS_AS(GroupOutcomeTable::from_rows(bad, "g", "o", polarity), DataError);
  std::vector<Record> missing = {{{"g", "A"}}};
  CHECK_THROWS_AS(GroupOutcomeTable::from_rows(missing, "g", "o", polarity), DataError);
  CHECK_THROWS_AS(GroupOutcomeTable::from_rows({}, "g", "o", polarity), DataError);
}

TEST_CASE("row tally with implicit unfavorable") {
  OutcomePolarity polarity{"hired"};
  std::vector<Record> rows = {
      {{"g", "A"}, {"o", "hired"}},
      {{"g", "A"}, {"o", "rejected"}},
      {{"g", "A"}, {"o", "waitlisted"}},
  };
  GroupOutcomeTable t = GroupOutcomeTable::from_rows(rows, "g", "o", polarity);
  CHECK(t.counts(GroupLabel{"A"}).favorable == 1);
  CHECK(t.counts(GroupLabel{"A"}).unfavorable == 2);
}

TEST_CASE("polarity validation") {
  CHECK_THROWS_AS(OutcomePolarity("", std::nullopt), ConfigError);
  CHECK_THROWS_AS(OutcomePolarity("Y", std::vector<std::string>{}), ConfigError);
  CHECK_THROWS_AS(OutcomePolarity("Y", std::vector<std::string>{"N", "Y"}), ConfigError);
  OutcomePolarity p{"Y", std::vector<std::string>{"N", "n"}};
  CHECK(p.is_listed_unfavorable("n"));
  CHECK_FALSE(p.is_listed_unfavorable("Y"));
}

TEST_CASE("polarity flip is an involution and complements rates") {
  GroupOutcomeTable t = hiring_table();
  GroupOutcomeTable f = t.flip_polarity();
  CHECK(f.selection_rate(GroupLabel{"X0"}) == 0.6);
  CHECK(f.selection_rate(GroupLabel{"X1"}) == 0.5);
  CHECK(f.flip_polarity() == t);
  CHECK(f.groups() == t.groups());

  OutcomePolarity polarity{"Y", std::vector<std::string>{"N"}};
  std::vector<Record> rows = {{{"g", "A"}, {"o", "Y"}}, {{"g", "B"}, {"o", "N"}}};
  GroupOutcomeTable tallied = GroupOutcomeTable::from_rows(rows, "g", "o", polarity);
  CHECK_FALSE(tallied.polarity()->flipped());
  CHECK(tallied.flip_polarity().polarity()->flipped());
  CHECK_FALSE(tallied.flip_polarity().flip_polarity().polarity()->flipped());
  CHECK(tallied.flip_polarity().flip_polarity() == tallied);
}

TEST_CASE("reference distribution invariants") {
  ReferenceDistribution ref{{{GroupLabel{"W"}, 0.5}, {GroupLabel{"M"}, 0.5}}};
  CHECK(ref.proportion(GroupLabel{"W"}) == 0.5);
  CHECK(ref.contains(GroupLabel{"M"}));
  CHECK_FALSE(ref.contains(GroupLabel{"Z"}));
  CHECK_THROWS_AS(ref.proportion(GroupLabel{"Z"}), DataError);

  CHECK_THROWS_AS(ReferenceDistribution{{}}, ConfigError);
  CHECK_THROWS_AS((ReferenceDistribution{{{GroupLabel{"A"}, 0.6}, {GroupLabel{"B"}, 0.3}}}),
                  ConfigError);
  CHECK_THROWS_AS((ReferenceDistribution{{{GroupLabel{"A"}, 1.5}, {GroupLabel{"B"}, -0.5}}}),
                  ConfigError);
  CHECK_THROWS_AS((ReferenceDistribution{{{GroupLabel{"A"}, 0.5}, {GroupLabel{"A"}, 0.5}}}),
                  ConfigError);
  // tolerance 1e-9 on the sum
  ReferenceDistribution close{{{GroupLabel{"A"}, 0.5 + 4e-10}, {GroupLabel{"B"}, 0.5}}};
  CHECK(close.size() == 2);
}
