#include "monoidlab/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace monoidlab {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidElement("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::operator+(const Rational& o) const {
  const std::int64_t g = std::gcd(den_, o.den_);
  const std::int64_t l = checked_mul(den_ / g, o.den_);
  return Rational(checked_add(checked_mul(num_, l / den_), checked_mul(o.num_, l / o.den_)), l);
}

Rational Rational::operator-(const Rational& o) const { return *this + Rational(-o.num_, o.den_); }

Rational Rational::scaled(std::int64_t factor) const { return Rational(checked_mul(num_, factor), den_); }

Rational Rational::divided(std::int64_t divisor) const {
  if (divisor == 0) throw std::domain_error("division by zero");
  return Rational(num_, checked_mul(den_, divisor));
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

// ---------------------------------------------------------------------------
// Element
// ---------------------------------------------------------------------------

Element Element::vector(ExponentVector v) {
  std::erase_if(v, [](const auto& kv) { return kv.second == 0; });
  for (const auto& [gen, exp] : v) {
    if (exp < 0) throw InvalidElement("negative exponent for generator " + std::to_string(gen));
  }
  return Element(std::move(v));
}

std::int64_t Element::as_integer() const {
  if (!is_integer()) throw InvalidElement("element is not an integer");
  return std::get<std::int64_t>(value_);
}

const ExponentVector& Element::as_vector() const {
  if (!is_vector()) throw InvalidElement("element is not an exponent vector");
  return std::get<ExponentVector>(value_);
}

const Rational& Element::as_rational() const {
  if (!is_rational()) throw InvalidElement("element is not a rational");
  return std::get<Rational>(value_);
}

std::strong_ordering operator<=>(const Element& a, const Element& b) {
  if (a.value_.index() != b.value_.index()) return a.value_.index() <=> b.value_.index();
  if (a.is_integer()) return a.as_integer() <=> b.as_integer();
  if (a.is_rational()) return a.as_rational() <=> b.as_rational();
  const auto& va = a.as_vector();
  const auto& vb = b.as_vector();
  // Exponent sequences compared from the highest generator down, absent
  // generators counting as 0: (1,0) < (0,1) < (1,1), and elements over early
  // generators precede those that need later ones.
  auto ia = va.rbegin();
  auto ib = vb.rbegin();
  while (ia != va.rend() || ib != vb.rend()) {
    if (ib == vb.rend() || (ia != va.rend() && ia->first > ib->first)) return std::strong_ordering::greater;
    if (ia == va.rend() || ib->first > ia->first) return std::strong_ordering::less;
    if (ia->second != ib->second) return ia->second <=> ib->second;
    ++ia;
    ++ib;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Ternary, Budget, MonoidClass
// ---------------------------------------------------------------------------

std::string_view Ternary::label() const {
  switch (value_) {
    case Value::Yes:
      return "yes";
    case Value::No:
      return "no";
    case Value::Unknown:
      break;
  }
  return "unknown";
}

void Budget::validate() const {
  if (max_factor_count <= 0 || max_power <= 0 || max_divisor_enumeration <= 0 || max_depth <= 0) {
    throw InvalidParameter("budget fields must be positive integers");
  }
}

std::string_view to_string(MonoidClass c) {
  switch (c) {
    case MonoidClass::General:
      return "general";
    case MonoidClass::Atomic:
      return "atomic";
    case MonoidClass::ACCP:
      return "accp";
    case MonoidClass::SR:
      return "sr";
    case MonoidClass::PreSchreier:
      return "preschreier";
    case MonoidClass::GCD:
      return "gcd";
    case MonoidClass::GCDs:
      break;
  }
  return "gcds";
}

std::optional<MonoidClass> parse_monoid_class(std::string_view name) {
  for (auto c : {MonoidClass::General, MonoidClass::Atomic, MonoidClass::ACCP, MonoidClass::SR,
                 MonoidClass::PreSchreier, MonoidClass::GCD, MonoidClass::GCDs}) {
    if (to_string(c) == name) return c;
  }
  if (name == "pre-schreier") return MonoidClass::PreSchreier;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Family defaults
// ---------------------------------------------------------------------------

std::optional<Element> Family::gcd(const Element& a, const Element& b) const {
  if (!capabilities().has_finite_divisor_sets) return std::nullopt;
  const Budget budget;
  const auto da = bounded_divisors(a, budget, std::nullopt).elements;
  const auto db = bounded_divisors(b, budget, std::nullopt).elements;
  std::vector<Element> common;
  std::set_intersection(da.begin(), da.end(), db.begin(), db.end(), std::back_inserter(common));
  for (const auto& g : common) {
    if (std::all_of(common.begin(), common.end(), [&](const Element& d) { return divides(d, g); })) {
      return g;
    }
  }
  return std::nullopt;
}

std::optional<Element> Family::lcm(const Element&, const Element&) const { return std::nullopt; }

PowerSearch Family::least_power(const Element& a, const Element& c, const Budget& budget) const {
  Element p = c;
  for (std::int64_t n = 1; n <= budget.max_power; ++n) {
    if (divides(a, p)) return {Ternary::yes(), n};
    if (n < budget.max_power) p = mul(p, c);
  }
  return {Ternary::unknown("no n <= max_power=" + std::to_string(budget.max_power)), std::nullopt};
}

std::optional<bool> Family::square_free_divisors_squared(const Element& a) const {
  auto rad = square_free_radical(a);
  if (!rad) return std::nullopt;
  return divides(mul(*rad, *rad), a);
}

std::vector<Element> Family::radical_probes(const Element& a, const Budget& budget) const {
  try {
    return bounded_divisors(a, budget, std::nullopt).elements;
  } catch (const DivisorSetInfinite&) {
    return {};
  } catch (const BudgetExhausted&) {
    return {};
  }
}

std::vector<Element> Family::window(std::int64_t) const {
  throw Unsupported(name() + " has no enumeration window");
}

// ---------------------------------------------------------------------------
// Core operations
// ---------------------------------------------------------------------------

Element mul(const MonoidHandle& m, const Element& a, const Element& b) {
  m->validate(a);
  m->validate(b);
  return m->mul(a, b);
}

Element power(const MonoidHandle& m, const Element& a, std::int64_t n) {
  if (n < 0) throw InvalidParameter("negative power");
  Element result = m->identity();
  Element base = a;
  while (n > 0) {
    if (n & 1) result = m->mul(result, base);
    n >>= 1;
    if (n > 0) base = m->mul(base, base);
  }
  return result;
}

bool is_unit(const MonoidHandle& m, const Element& a) { return m->is_unit(a); }

Ternary divides(const MonoidHandle& m, const Element& a, const Element& b) {
  return Ternary::from_bool(m->divides(a, b));
}

std::optional<Element> quotient(const MonoidHandle& m, const Element& b, const Element& a) {
  return m->quotient(b, a);
}

std::vector<Element> divisors(const MonoidHandle& m, const Element& a, const Budget& budget) {
  auto set = m->bounded_divisors(a, budget, std::nullopt);
  if (!set.complete) throw DivisorSetInfinite(m.name() + ": divisor set of " + m->format(a) + " is infinite");
  return std::move(set.elements);
}

bool associates_eq(const MonoidHandle& m, const Element& a, const Element& b) {
  // Every shipped family stores one canonical representative per associate
  // class, so two elements are associates iff they divide each other.
  return a == b || (m->divides(a, b) && m->divides(b, a));
}

Ternary coprime(const MonoidHandle& m, const Element& a, const Element& b, const Budget& budget) {
  if (m->is_unit(a) || m->is_unit(b)) return Ternary::yes();
  if (auto g = m->gcd(a, b)) return Ternary::from_bool(m->is_unit(*g));
  DivisorSet da;
  DivisorSet db;
  try {
    da = m->bounded_divisors(a, budget, std::nullopt);
    db = m->bounded_divisors(b, budget, std::nullopt);
  } catch (const MonoidError& e) {
    return Ternary::unknown(e.what());
  }
  std::vector<Element> common;
  std::set_intersection(da.elements.begin(), da.elements.end(), db.elements.begin(),
                        db.elements.end(), std::back_inserter(common));
  for (const auto& d : common) {
    if (!m->is_unit(d)) return Ternary::no();
  }
  if (da.complete && db.complete) return Ternary::yes();
  return Ternary::unknown("common divisors searched only within the enumeration budget");
}

std::optional<Element> gcd(const MonoidHandle& m, const Element& a, const Element& b) {
  return m->gcd(a, b);
}

std::optional<Element> lcm_of_set(const MonoidHandle& m, const std::vector<Element>& xs) {
  if (!m.capabilities().has_gcd) throw Unsupported(m.name() + " has no lcm capability");
  Element acc = m->identity();
  for (const auto& x : xs) {
    auto l = m->lcm(acc, x);
    if (!l) return std::nullopt;
    acc = *l;
  }
  return acc;
}

std::optional<Element> gcd_of_set(const MonoidHandle& m, const std::vector<Element>& xs) {
  if (xs.empty()) throw InvalidParameter("gcd of an empty set");
  if (m.capabilities().has_gcd) {
    Element acc = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i) {
      auto g = m->gcd(acc, xs[i]);
      if (!g) return std::nullopt;
      acc = *g;
    }
    return acc;
  }
  // Without a gcd capability a pairwise fold can fail on a pair even though
  // the whole set has a gcd, so work with the common divisor set directly.
  std::vector<Element> common = divisors(m, xs.front(), Budget{});
  for (const auto& x : xs) {
    std::erase_if(common, [&](const Element& d) { return !m->divides(d, x); });
  }
  for (const auto& g : common) {
    if (std::all_of(common.begin(), common.end(), [&](const Element& d) { return m->divides(d, g); })) {
      return g;
    }
  }
  return std::nullopt;
}

PowerSearch divides_some_power(const MonoidHandle& m, const Element& a, const Element& c,
                               const Budget& budget) {
  if (m->is_unit(a)) return {Ternary::yes(), 1};
  return m->least_power(a, c, budget);
}

}  // namespace monoidlab
