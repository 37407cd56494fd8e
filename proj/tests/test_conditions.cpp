#include <doctest.h>

#include "monoidlab/conditions.hpp"
#include "monoidlab/families.hpp"
#include "oracles.hpp"

using namespace monoidlab;

namespace {

std::vector<Element> parse_all(const MonoidHandle& m, std::initializer_list<const char*> xs) {
  std::vector<Element> out;
  for (const char* x : xs) out.push_back(m->parse(x));
  return out;
}

}  // namespace

TEST_CASE("condition names round-trip") {
  CHECK(all_conditions().size() == 18);
  for (auto id : all_conditions()) CHECK(parse_condition(to_string(id)) == id);
  CHECK(to_string(ConditionId::C4pr) == "4'r");
  CHECK_FALSE(parse_condition("7s").has_value());
  CHECK(twin(ConditionId::C5ps) == ConditionId::C5pr);
  CHECK(shape_of(ConditionId::C6r) == Shape::Six);
  CHECK(make_condition(Shape::FourPrime, false) == ConditionId::C4ps);
}

TEST_CASE("witness examples") {
  const auto f1 = build("free:1");
  const auto eleven = f1->parse("11");
  const auto three = check_condition(f1, eleven, ConditionId::C3s, Budget{});
  CHECK(three.answer.is_yes());
  REQUIRE(three.witness);
  CHECK(three.witness->factors == parse_all(f1, {"1", "1", "0", "1"}));
  const auto six = check_condition(f1, eleven, ConditionId::C6s, Budget{});
  CHECK(six.answer.is_yes());
  CHECK(six.witness->b == f1->parse("5"));
  CHECK(six.witness->c == f1->parse("1"));

  const auto q = build("rationals");
  CHECK(check_condition(q, q->parse("1"), ConditionId::C0s, Budget{}).answer.is_no());
  const auto r6 = check_condition(q, q->parse("1"), ConditionId::C6r, Budget{});
  CHECK(r6.answer.is_yes());
  CHECK(r6.witness->b == q->parse("1/2"));
  CHECK(r6.witness->c == q->parse("0"));
}

TEST_CASE("units satisfy every condition") {
  for (const char* spec : {"numerical:2", "free:2", "rationals", "chain:1,2", "doublechain"}) {
    const auto m = build(spec);
    for (const auto& r : check_conditions(m, m->identity(), {all_conditions().begin(), all_conditions().end()},
                                          Budget{})) {
      CAPTURE(std::string(spec));
      CAPTURE(to_string(r.id));
      CHECK(r.answer.is_yes());
    }
  }
}

TEST_CASE("condition engine agrees with brute force") {
  struct Case {
    const char* spec;
    std::int64_t bound;
  };
  for (const auto& c : {Case{"free:1", 16}, Case{"free:2", 4}, Case{"numerical:2", 14}, Case{"numerical:3", 14},
                        Case{"numerical:1", 12}}) {
    const auto m = build(c.spec);
    const auto probes = m->window(2 * c.bound);
    const oracle::Conditions sqf(m, [&](const Element& x) { return oracle::square_free(m, x); }, 32);
    const oracle::Conditions gpr(m, [&](const Element& x) { return oracle::radical(m, x, probes, 32); }, 32);
    CAPTURE(std::string(c.spec));
    for (const auto& a : m->window(c.bound)) {
      CAPTURE(m->format(a));
      const auto expect_s = sqf.all(a);
      const auto expect_r = gpr.all(a);
      const auto got = check_conditions(m, a, {all_conditions().begin(), all_conditions().end()}, Budget{});
      for (const auto& r : got) {
        CAPTURE(to_string(r.id));
        REQUIRE_FALSE(r.answer.is_unknown());
        const auto shape = static_cast<std::size_t>(shape_of(r.id));
        CHECK(r.answer.is_yes() == (is_radical_variant(r.id) ? expect_r : expect_s)[shape]);
        if (r.answer.is_yes()) {
          REQUIRE(r.witness);
          CHECK(validate_witness(m, a, r.id, *r.witness, Budget{}).is_yes());
        }
      }
    }
  }
}

TEST_CASE("chain elements agree with brute force over bounded divisors") {
  // On y-free elements of a chain the divisor set is finite, so the oracle is exact.
  const auto m = build("chain:1,2");
  const oracle::Conditions sqf(m, [&](const Element& x) { return oracle::square_free(m, x); }, 32);
  for (const auto& a : m->window(3)) {
    if (m->format(a).find('y') != std::string::npos) continue;
    CAPTURE(m->format(a));
    const auto expect = sqf.all(a);
    for (auto shape : {Shape::Zero, Shape::One, Shape::Two, Shape::Three, Shape::Four, Shape::FourPrime, Shape::Five,
                       Shape::FivePrime, Shape::Six}) {
      const auto r = check_condition(m, a, make_condition(shape, false), Budget{});
      CAPTURE(to_string(r.id));
      REQUIRE_FALSE(r.answer.is_unknown());
      CHECK(r.answer.is_yes() == expect[static_cast<std::size_t>(shape)]);
    }
  }
}

TEST_CASE("witnesses that do not re-validate are rejected") {
  const auto f1 = build("free:1");
  Witness w;
  w.b = f1->parse("4");
  w.c = f1->parse("1");
  CHECK(validate_witness(f1, f1->parse("11"), ConditionId::C6s, w, Budget{}).is_no());
  w.c = f1->parse("3");
  CHECK(validate_witness(f1, f1->parse("11"), ConditionId::C6s, w, Budget{}).is_no());
  Witness seq;
  seq.factors = parse_all(f1, {"1", "1", "0", "1"});
  CHECK(validate_witness(f1, f1->parse("11"), ConditionId::C3s, seq, Budget{}).is_yes());
  seq.factors = parse_all(f1, {"3", "0", "2"});
  CHECK(validate_witness(f1, f1->parse("11"), ConditionId::C3s, seq, Budget{}).is_no());
}

TEST_CASE("uniqueness examples") {
  const auto f1 = build("free:1");
  const auto r = check_uniqueness(f1, f1->parse("12"), ConditionId::C6s, Budget{});
  CHECK(r.unique);
  CHECK(r.complete);
  CHECK(r.witness_count == 1);
  const auto all = all_witnesses(f1, f1->parse("12"), ConditionId::C6s, Budget{});
  REQUIRE(all.witnesses.size() == 1);
  CHECK(all.witnesses[0].b == f1->parse("6"));
  CHECK(all.witnesses[0].c == f1->parse("0"));

  const auto f2 = build("free:2");
  const auto t = all_witnesses(f2, f2->parse("5,3"), ConditionId::C3s, Budget{});
  REQUIRE(t.witnesses.size() == 1);
  CHECK(t.witnesses[0].factors == parse_all(f2, {"1,1", "0,1", "1,0"}));
  CHECK(check_uniqueness(f2, f2->parse("5,3"), ConditionId::C3s, Budget{}).unique);

  for (auto id : {ConditionId::C1s, ConditionId::C2s, ConditionId::C3s, ConditionId::C6s, ConditionId::C5r}) {
    CHECK(check_uniqueness(f2, f2->identity(), id, Budget{}).unique);
  }
  CHECK_THROWS_AS(all_witnesses(f2, f2->identity(), ConditionId::C4s, Budget{}), InvalidParameter);
}

TEST_CASE("witness counts agree with brute force") {
  const auto f2 = build("free:2");
  auto in_s = [&](const Element& x) { return oracle::square_free(f2, x); };
  for (const auto& a : f2->window(5)) {
    CAPTURE(f2->format(a));
    CHECK(all_witnesses(f2, a, ConditionId::C6s, Budget{}).witnesses.size() ==
          oracle::six_witnesses(f2, a, in_s).size());
  }
  const auto n2 = build("numerical:2");
  auto n_in_s = [&](const Element& x) { return oracle::square_free(n2, x); };
  for (const auto& a : n2->window(16)) {
    CAPTURE(n2->format(a));
    const auto got = all_witnesses(n2, a, ConditionId::C6s, Budget{});
    CHECK(got.witnesses.size() == oracle::six_witnesses(n2, a, n_in_s).size());
  }
}

TEST_CASE("uniqueness report counts every square decomposition") {
  const auto n2 = build("numerical:2");
  const auto a = n2->parse("13");
  const auto r = check_uniqueness(n2, a, ConditionId::C6s, Budget{});
  const auto brute = oracle::six_witnesses(n2, a, [&](const Element& x) { return oracle::square_free(n2, x); });
  CHECK(r.witness_count == brute.size());
  CHECK(r.unique == (brute.size() <= 1));
}

TEST_CASE("condition result JSON") {
  const auto f1 = build("free:1");
  const auto j = to_json(f1, check_condition(f1, f1->parse("11"), ConditionId::C6s, Budget{}));
  CHECK(j["condition"] == "6s");
  CHECK(j["answer"] == "yes");
  CHECK(j["witness"]["b"] == "(5)");
}
