#include <doctest.h>

#include <algorithm>

#include "monoidlab/profiles.hpp"
#include "oracles.hpp"

using namespace monoidlab;

namespace {

const std::vector<std::pair<MonoidClass, std::string>>& classes() {
  static const std::vector<std::pair<MonoidClass, std::string>> c = {
      {MonoidClass::General, "general"}, {MonoidClass::Atomic, "atomic"},         {MonoidClass::ACCP, "accp"},
      {MonoidClass::SR, "sr"},           {MonoidClass::PreSchreier, "preschreier"}, {MonoidClass::GCD, "gcd"},
      {MonoidClass::GCDs, "gcds"}};
  return c;
}

Profile make(std::initializer_list<ConditionId> ids) {
  Profile p = 0;
  for (auto id : ids) p = with(p, id, true);
  return p;
}

}  // namespace

TEST_CASE("profile bits") {
  const auto p = make({ConditionId::C0s, ConditionId::C6r});
  CHECK(get(p, ConditionId::C0s));
  CHECK_FALSE(get(p, ConditionId::C0r));
  CHECK(to_bit_string(p) == "100000000000000001");
  CHECK(from_bit_string(to_bit_string(p)) == p);
  CHECK_THROWS_AS(from_bit_string("10"), InvalidParameter);
}

TEST_CASE("constraint set examples") {
  const auto g = constraint_set(MonoidClass::General);
  CHECK(g.implies(ConditionId::C4r, ConditionId::C4pr));
  CHECK_FALSE(g.implies(ConditionId::C4pr, ConditionId::C4ps));
  CHECK(constraint_set(MonoidClass::GCDs).forced.contains(ConditionId::C5ps));
  CHECK(constraint_set(MonoidClass::ACCP).forced ==
        std::set<ConditionId>{ConditionId::C0s, ConditionId::C3s, ConditionId::C6s});
  for (const auto& [c, name] : classes()) {
    CHECK(is_consistent(kAllTrue, constraint_set(c)));
  }
  CHECK(is_consistent(0, g));
  CHECK_FALSE(is_consistent(0, constraint_set(MonoidClass::Atomic)));
  CHECK_FALSE(is_consistent(make({ConditionId::C5r, ConditionId::C5s, ConditionId::C5pr, ConditionId::C5ps}), g));
}

TEST_CASE("enumeration matches an independent scan") {
  for (const auto& [c, name] : classes()) {
    CAPTURE(name);
    const auto got = enumerate(c);
    const auto expect = oracle::enumerate(name);
    CHECK(got == expect);
    CHECK(std::is_sorted(got.begin(), got.end()));
  }
}

TEST_CASE("profile counts") {
  CHECK(enumerate(MonoidClass::General).size() == 2960);
  CHECK(enumerate(MonoidClass::Atomic).size() == 2708);
  CHECK(enumerate(MonoidClass::ACCP).size() == 324);
  CHECK(enumerate(MonoidClass::SR).size() == 57);
  CHECK(enumerate(MonoidClass::PreSchreier).size() == 26);
  CHECK(enumerate(MonoidClass::GCD).size() == 11);
  CHECK(enumerate(MonoidClass::GCDs).size() == 7);
}

TEST_CASE("smaller classes embed in larger ones") {
  const std::vector<std::pair<MonoidClass, MonoidClass>> chain = {
      {MonoidClass::Atomic, MonoidClass::General}, {MonoidClass::ACCP, MonoidClass::Atomic},
      {MonoidClass::SR, MonoidClass::General},     {MonoidClass::PreSchreier, MonoidClass::SR},
      {MonoidClass::GCD, MonoidClass::PreSchreier}, {MonoidClass::GCDs, MonoidClass::GCD}};
  for (const auto& [small, large] : chain) {
    const auto ps = enumerate(small);
    CHECK(ps.size() <= enumerate(large).size());
    const auto cs = constraint_set(large);
    CHECK(std::all_of(ps.begin(), ps.end(), [&](Profile p) { return is_consistent(p, cs); }));
  }
}

TEST_CASE("general table rows") {
  const auto t = table_breakdown(MonoidClass::General);
  CHECK(t.total == 2960);
  std::vector<std::size_t> counts;
  for (const auto& r : t.rows) counts.push_back(r.count);
  CHECK(counts == std::vector<std::size_t>{4, 264, 1512, 88, 840, 252});
  const auto expect = oracle::pair_table(oracle::enumerate("general"));
  for (const auto& r : t.rows) {
    REQUIRE(r.key.size() == 2);
    CHECK(expect.at({r.key[0], r.key[1]}) == r.count);
  }
  CHECK(t.rows.front().key == std::vector<int>{2, 2});
  CHECK(t.rows.back().key == std::vector<int>{0, 0});
}

TEST_CASE("atomic total drops the v0 = 0 stratum") {
  const auto g = table_breakdown(MonoidClass::General);
  CHECK(table_breakdown(MonoidClass::Atomic).total == g.total - g.rows.back().count);
}

TEST_CASE("every table sums to its class count") {
  for (const auto& [c, name] : classes()) {
    const auto t = table_breakdown(c);
    std::size_t sum = 0;
    for (const auto& r : t.rows) sum += r.count;
    CHECK(sum == t.total);
    CHECK(t.total == enumerate(c).size());
  }
}

TEST_CASE("pair values") {
  CHECK(pair_values(kAllTrue) == PairValues{2, 2, 2, 2, 2, 2, 2});
  CHECK(pair_values(0) == PairValues{0, 0, 0, 0, 0, 0, 0});
  const auto p = make({ConditionId::C0s, ConditionId::C1s, ConditionId::C3s, ConditionId::C6s});
  CHECK(pair_values(p) == PairValues{1, 1, 0, 1, 0, 0, 1});
  CHECK_THROWS_AS(pair_values(make({ConditionId::C2r})), InvalidParameter);
  for (auto q : enumerate(MonoidClass::General)) {
    CHECK(decode_pair_values(pair_values(q), q) == q);
  }
}

TEST_CASE("pair lemma holds on the general enumeration") {
  CHECK(verify_pair_lemma(enumerate(MonoidClass::General)).empty());
  CHECK(verify_pair_lemma({kAllTrue}).empty());
}

TEST_CASE("emitters") {
  const auto ps = enumerate(MonoidClass::GCDs);
  const auto csv = profiles_csv(ps);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);
  const auto j = profiles_json(MonoidClass::GCDs, ps);
  CHECK(j["count"] == 7);
  const auto t = table_csv(table_breakdown(MonoidClass::General));
  CHECK(std::count(t.begin(), t.end(), '\n') == 7);
}
