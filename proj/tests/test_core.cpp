#include <doctest.h>

#include <random>

#include "monoidlab/core.hpp"
#include "monoidlab/families.hpp"

using namespace monoidlab;

namespace {

Element num(std::int64_t v) { return Element::integer(v); }

Element parse(const MonoidHandle& m, const char* s) { return m->parse(s); }

}  // namespace

TEST_CASE("ternary values and labels") {
  CHECK(Ternary::yes().is_yes());
  CHECK(Ternary::no().label() == "no");
  const auto u = Ternary::unknown("budget");
  CHECK(u.is_unknown());
  CHECK(u.reason() == "budget");
  CHECK(Ternary::from_bool(true) == Ternary::yes());
}

TEST_CASE("checked arithmetic throws on overflow") {
  CHECK(checked_add(2, 3) == 5);
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), std::overflow_error);
  CHECK_THROWS_AS(checked_mul(INT64_MAX / 2 + 1, 2), std::overflow_error);
}

TEST_CASE("rationals are reduced and ordered") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(3, 4).to_string() == "3/4");
  CHECK(Rational(4, 2).to_string() == "2");
  CHECK_THROWS_AS(Rational(1, 0), InvalidElement);
}

TEST_CASE("budget validation") {
  Budget b;
  CHECK_NOTHROW(b.validate());
  CHECK(b.max_factor_count == 16);
  CHECK(b.max_power == 32);
  CHECK(b.max_divisor_enumeration == 100000);
  CHECK(b.max_depth == 6);
  b.max_power = 0;
  CHECK_THROWS_AS(b.validate(), InvalidParameter);
}

TEST_CASE("mul") {
  const auto n2 = build("numerical:2");
  CHECK(mul(n2, num(2), num(3)) == num(5));
  CHECK_THROWS_AS(mul(n2, num(1), num(3)), InvalidElement);

  const auto f2 = build("free:2");
  CHECK(mul(f2, parse(f2, "1,0"), parse(f2, "0,1")) == parse(f2, "1,1"));

  const auto c11 = build("chain:1,1");
  const auto prod = mul(c11, parse(c11, "y1"), parse(c11, "x2"));
  // y1 = x2 y2, so y1 x2 = x2^2 y2 at depth 2.
  const auto f = to_chain_form(ChainSpec{1, 1}, prod);
  CHECK(f.depth == 2);
  CHECK(f.x == std::map<std::int64_t, std::int64_t>{{2, 2}});
  CHECK(f.y == 1);
  CHECK(prod == parse(c11, "x2*y1"));
}

TEST_CASE("is_unit") {
  const auto n3 = build("numerical:3");
  CHECK(is_unit(n3, num(0)));
  CHECK_FALSE(is_unit(n3, num(3)));
  const auto q = build("rationals");
  CHECK_FALSE(is_unit(q, q->parse("1/2")));
  CHECK(is_unit(q, q->parse("0")));
}

TEST_CASE("divides") {
  const auto n3 = build("numerical:3");
  CHECK(divides(n3, num(3), num(7)).is_yes());
  CHECK(divides(n3, num(3), num(4)).is_no());
  const auto c11 = build("chain:1,1");
  CHECK(divides(c11, parse(c11, "x2"), parse(c11, "y1")).is_yes());
  CHECK(quotient(n3, num(7), num(3)) == num(4));
  CHECK_FALSE(quotient(n3, num(4), num(3)).has_value());
}

TEST_CASE("divisors") {
  const auto f2 = build("free:2");
  const auto ds = divisors(f2, parse(f2, "1,1"), Budget{});
  CHECK(ds == std::vector<Element>{parse(f2, "0,0"), parse(f2, "1,0"), parse(f2, "0,1"), parse(f2, "1,1")});
  const auto n2 = build("numerical:2");
  CHECK(divisors(n2, num(4), Budget{}) == std::vector<Element>{num(0), num(2), num(4)});
  const auto q = build("rationals");
  CHECK_THROWS_AS(divisors(q, q->parse("1"), Budget{}), DivisorSetInfinite);
  const auto c12 = build("chain:1,2");
  CHECK_THROWS_AS(divisors(c12, parse(c12, "y1"), Budget{}), DivisorSetInfinite);
  Budget tiny;
  tiny.max_divisor_enumeration = 3;
  CHECK_THROWS_AS(divisors(f2, parse(f2, "3,3"), tiny), BudgetExhausted);
}

TEST_CASE("associates") {
  const auto f2 = build("free:2");
  CHECK(associates_eq(f2, parse(f2, "1,0"), parse(f2, "1,0")));
  CHECK_FALSE(associates_eq(build("numerical:2"), num(2), num(3)));
  const auto q = build("rationals");
  CHECK(associates_eq(q, q->parse("1"), q->parse("1")));
}

TEST_CASE("coprime") {
  const auto f2 = build("free:2");
  CHECK(coprime(f2, parse(f2, "1,0"), parse(f2, "0,1"), Budget{}).is_yes());
  CHECK(coprime(f2, parse(f2, "1,1"), parse(f2, "1,0"), Budget{}).is_no());
  const auto n2 = build("numerical:2");
  CHECK(coprime(n2, num(7), num(0), Budget{}).is_yes());
  // Common divisors of 2 and 3 in N>=2 ∪ {0} are only 0.
  CHECK(coprime(n2, num(2), num(3), Budget{}).is_yes());
  CHECK(coprime(n2, num(4), num(6), Budget{}).is_no());
}

TEST_CASE("gcd and lcm") {
  const auto f2 = build("free:2");
  CHECK(gcd(f2, parse(f2, "2,1"), parse(f2, "1,3")) == parse(f2, "1,1"));
  const auto n2 = build("numerical:2");
  CHECK(gcd(n2, num(4), num(5)) == num(2));
  // 5 and 6 share the divisors 0, 2, 3 and neither 2 nor 3 divides the other.
  CHECK_FALSE(gcd(n2, num(5), num(6)).has_value());
  CHECK(lcm_of_set(f2, {parse(f2, "1,0"), parse(f2, "0,1")}) == parse(f2, "1,1"));
  CHECK(gcd_of_set(f2, {parse(f2, "2,1"), parse(f2, "1,3"), parse(f2, "3,2")}) == parse(f2, "1,1"));
}

TEST_CASE("divides_some_power") {
  const auto f2 = build("free:2");
  const auto r = divides_some_power(f2, parse(f2, "3,2"), parse(f2, "1,1"), Budget{});
  CHECK(r.answer.is_yes());
  CHECK(r.n == 3);
  CHECK(divides_some_power(f2, parse(f2, "1,0"), parse(f2, "0,1"), Budget{}).answer.is_no());
  const auto u = divides_some_power(f2, parse(f2, "0,0"), parse(f2, "2,0"), Budget{});
  CHECK(u.answer.is_yes());
  CHECK(u.n == 1);
}

TEST_CASE("divides_some_power agrees with a naive loop") {
  for (const char* spec : {"free:2", "numerical:2", "numerical:3", "chain:1,1", "chain:1,2"}) {
    const auto m = build(spec);
    const auto w = m->window(3);
    for (const auto& a : w) {
      for (const auto& c : w) {
        std::optional<std::int64_t> naive;
        Element p = c;
        for (std::int64_t n = 1; n <= 32 && !naive; ++n, p = m->mul(p, c)) {
          if (m->divides(a, p)) naive = n;
        }
        const auto r = divides_some_power(m, a, c, Budget{});
        CAPTURE(std::string(spec));
        CAPTURE(m->format(a));
        CAPTURE(m->format(c));
        CHECK(r.answer.is_yes() == naive.has_value());
        if (naive) CHECK(r.n == naive);
      }
    }
  }
}

TEST_CASE("cancellativity, preorder and antisymmetry on samples") {
  for (const char* spec : {"free:2", "numerical:2", "chain:1,1", "chain:2,3", "doublechain"}) {
    const auto m = build(spec);
    auto w = m->window(3);
    std::mt19937_64 rng(7);
    std::shuffle(w.begin(), w.end(), rng);
    w.resize(std::min<std::size_t>(w.size(), 14));
    CAPTURE(std::string(spec));
    for (const auto& a : w) {
      CHECK(m->divides(a, a));
      for (const auto& b : w) {
        CHECK(m->mul(a, b) == m->mul(b, a));
        CHECK((m->divides(a, b) && m->divides(b, a)) == associates_eq(m, a, b));
        for (const auto& c : w) {
          if (m->mul(a, c) == m->mul(b, c)) CHECK(a == b);
          if (m->divides(a, b) && m->divides(b, c)) CHECK(m->divides(a, c));
        }
      }
    }
  }
}

TEST_CASE("gcd correctness on samples") {
  for (const char* spec : {"free:2", "numerical:1", "chain:1,1", "chain:1,2"}) {
    const auto m = build(spec);
    const auto w = m->window(3);
    CAPTURE(std::string(spec));
    for (const auto& a : w) {
      for (const auto& b : w) {
        const auto g = gcd(m, a, b);
        REQUIRE(g.has_value());
        CHECK(m->divides(*g, a));
        CHECK(m->divides(*g, b));
        for (const auto& d : w) {
          if (m->divides(d, a) && m->divides(d, b)) CHECK(m->divides(d, *g));
        }
      }
    }
  }
}
