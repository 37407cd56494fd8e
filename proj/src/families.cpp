#include "monoidlab/families.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>

namespace monoidlab {

namespace {

// ---------------------------------------------------------------------------
// Literal parsing helpers
// ---------------------------------------------------------------------------

std::int64_t parse_int(std::string_view s, std::string_view what) {
  std::int64_t v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last) {
    throw InvalidParameter("malformed " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct GeneratorTerm {
  char letter;
  std::int64_t index;
  std::int64_t exponent;
};

/// `x2^1*y2^3`, `y1`, or `1` for the identity.
std::vector<GeneratorTerm> parse_terms(std::string_view literal, std::string_view letters) {
  std::vector<GeneratorTerm> terms;
  if (literal == "1") return terms;
  for (auto part : split(literal, '*')) {
    if (part.size() < 2 || letters.find(part.front()) == std::string_view::npos) {
      throw InvalidElement("malformed generator term '" + std::string(part) + "'");
    }
    GeneratorTerm t{part.front(), 0, 1};
    auto rest = part.substr(1);
    const auto caret = rest.find('^');
    try {
      t.index = parse_int(rest.substr(0, caret), "generator index");
      if (caret != std::string_view::npos) t.exponent = parse_int(rest.substr(caret + 1), "exponent");
    } catch (const InvalidParameter& e) {
      throw InvalidElement(e.what());
    }
    if (t.index < 1 || t.exponent < 0) {
      throw InvalidElement("generator index must be >= 1 and exponent >= 0 in '" + std::string(part) + "'");
    }
    terms.push_back(t);
  }
  return terms;
}

std::string format_power(char letter, std::int64_t index, std::int64_t exp) {
  std::string s(1, letter);
  s += std::to_string(index);
  if (exp != 1) s += "^" + std::to_string(exp);
  return s;
}

// ---------------------------------------------------------------------------
// Exponent-vector arithmetic
// ---------------------------------------------------------------------------

ExponentVector add(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector r = a;
  for (const auto& [g, e] : b) r[g] = checked_add(r[g], e);
  return r;
}

bool leq(const ExponentVector& a, const ExponentVector& b) {
  for (const auto& [g, e] : a) {
    auto it = b.find(g);
    if (it == b.end() || it->second < e) return false;
  }
  return true;
}

std::optional<ExponentVector> subtract(const ExponentVector& b, const ExponentVector& a) {
  if (!leq(a, b)) return std::nullopt;
  ExponentVector r = b;
  for (const auto& [g, e] : a) {
    r[g] -= e;
    if (r[g] == 0) r.erase(g);
  }
  return r;
}

ExponentVector pointwise_min(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector r;
  for (const auto& [g, e] : a) {
    auto it = b.find(g);
    if (it != b.end()) r[g] = std::min(e, it->second);
  }
  return r;
}

ExponentVector pointwise_max(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector r = a;
  for (const auto& [g, e] : b) r[g] = std::max(r[g], e);
  return r;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

/// Least n >= 1 with a <= n*c componentwise, or nullopt if supp(a) ⊄ supp(c).
std::optional<std::int64_t> least_multiple(const ExponentVector& a, const ExponentVector& c) {
  std::int64_t n = 1;
  for (const auto& [g, e] : a) {
    auto it = c.find(g);
    if (it == c.end()) return std::nullopt;
    n = std::max(n, ceil_div(e, it->second));
  }
  return n;
}

/// Number of sub-vectors of `v` with every coordinate capped at `cap`.
std::int64_t box_size(const ExponentVector& v, std::optional<std::int64_t> cap) {
  std::int64_t n = 1;
  for (const auto& [g, e] : v) {
    const std::int64_t top = cap ? std::min(e, *cap) : e;
    if (n > (std::int64_t{1} << 40) / (top + 1)) return std::int64_t{1} << 40;
    n *= top + 1;
  }
  return n;
}

void for_each_subvector(const ExponentVector& v, std::optional<std::int64_t> cap,
                        const std::function<void(const ExponentVector&)>& f) {
  std::vector<std::pair<int, std::int64_t>> coords(v.begin(), v.end());
  ExponentVector current;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == coords.size()) {
      f(current);
      return;
    }
    const auto [g, e] = coords[i];
    const std::int64_t top = cap ? std::min(e, *cap) : e;
    for (std::int64_t x = 0; x <= top; ++x) {
      if (x == 0) {
        current.erase(g);
      } else {
        current[g] = x;
      }
      rec(i + 1);
    }
    current.erase(g);
  };
  rec(0);
}

/// All vectors over `gens` whose coordinates sum to at most `total`.
void for_each_bounded_degree(const std::vector<int>& gens, std::int64_t total,
                             const std::function<void(const ExponentVector&)>& f) {
  ExponentVector current;
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i == gens.size()) {
      f(current);
      return;
    }
    for (std::int64_t x = 0; x <= left; ++x) {
      if (x == 0) {
        current.erase(gens[i]);
      } else {
        current[gens[i]] = x;
      }
      rec(i + 1, left - x);
    }
    current.erase(gens[i]);
  };
  rec(0, total);
}

void check_enumeration(std::int64_t count, const Budget& budget, const std::string& what) {
  if (count > budget.max_divisor_enumeration) {
    throw BudgetExhausted(what + " needs " + std::to_string(count) +
                          " candidates, above max_divisor_enumeration=" +
                          std::to_string(budget.max_divisor_enumeration));
  }
}

// ---------------------------------------------------------------------------
// Family base carrying its spec
// ---------------------------------------------------------------------------

class SpecifiedFamily : public Family {
 public:
  explicit SpecifiedFamily(FamilySpec spec) : spec_(std::move(spec)) {}
  const FamilySpec& spec() const { return spec_; }
  std::string name() const override { return to_string(spec_); }

 private:
  FamilySpec spec_;
};

// ---------------------------------------------------------------------------
// N>=k ∪ {0}, written additively
// ---------------------------------------------------------------------------

class NumericalFamily final : public SpecifiedFamily {
 public:
  explicit NumericalFamily(std::int64_t k) : SpecifiedFamily(NumericalSpec{k}), k_(k) {}

  Capabilities capabilities() const override {
    Capabilities caps;
    caps.has_finite_divisor_sets = true;
    caps.has_gcd = k_ == 1;
    caps.has_analytic_classifiers = true;
    caps.declared_classes = {MonoidClass::General, MonoidClass::Atomic, MonoidClass::ACCP};
    if (k_ == 1) {
      caps.declared_classes.insert({MonoidClass::SR, MonoidClass::PreSchreier, MonoidClass::GCD,
                                    MonoidClass::GCDs});
    }
    return caps;
  }

  void validate(const Element& a) const override {
    if (!a.is_integer() || !member(a.as_integer())) {
      throw InvalidElement("not an element of N>=" + std::to_string(k_) + " ∪ {0}");
    }
  }

  Element parse(std::string_view literal) const override {
    std::int64_t v = 0;
    try {
      v = parse_int(literal, "integer element");
    } catch (const InvalidParameter& e) {
      throw InvalidElement(e.what());
    }
    Element a = Element::integer(v);
    validate(a);
    return a;
  }

  std::string format(const Element& a) const override { return std::to_string(a.as_integer()); }

  Element identity() const override { return Element::integer(0); }

  Element mul(const Element& a, const Element& b) const override {
    return Element::integer(checked_add(a.as_integer(), b.as_integer()));
  }

  bool is_unit(const Element& a) const override { return a.as_integer() == 0; }

  bool divides(const Element& a, const Element& b) const override {
    const auto d = b.as_integer() - a.as_integer();
    return d >= 0 && member(d);
  }

  std::optional<Element> quotient(const Element& b, const Element& a) const override {
    if (!divides(a, b)) return std::nullopt;
    return Element::integer(b.as_integer() - a.as_integer());
  }

  DivisorSet bounded_divisors(const Element& a, const Budget& budget,
                              std::optional<std::int64_t>) const override {
    const auto v = a.as_integer();
    check_enumeration(v + 1, budget, "divisor scan of " + std::to_string(v));
    DivisorSet out;
    for (std::int64_t d = 0; d <= v; ++d) {
      if (member(d) && member(v - d)) out.elements.push_back(Element::integer(d));
    }
    return out;
  }

  std::optional<Element> gcd(const Element& a, const Element& b) const override {
    if (k_ == 1) return std::min(a, b);
    return Family::gcd(a, b);
  }

  std::optional<Element> lcm(const Element& a, const Element& b) const override {
    if (k_ == 1) return std::max(a, b);
    return std::nullopt;
  }

  PowerSearch least_power(const Element& a, const Element& c, const Budget&) const override {
    const auto av = a.as_integer();
    const auto cv = c.as_integer();
    if (av == 0) return {Ternary::yes(), 1};
    if (cv == 0) return {Ternary::no(), std::nullopt};
    // n*c - a lies in H once n*c >= a + k, so the scan below is exhaustive.
    const auto limit = ceil_div(av + k_, cv);
    for (std::int64_t n = 1; n <= limit; ++n) {
      const auto d = checked_mul(n, cv) - av;
      if (d >= 0 && member(d)) return {Ternary::yes(), n};
    }
    return {Ternary::yes(), limit};
  }

  std::optional<Element> square_root(const Element& a) const override {
    const auto v = a.as_integer();
    if (v % 2 != 0 || !member(v / 2)) return std::nullopt;
    return Element::integer(v / 2);
  }

  std::optional<bool> analytic_square_free(const Element& a) const override {
    const auto v = a.as_integer();
    for (std::int64_t b = k_; 2 * b <= v; ++b) {
      if (member(v - 2 * b)) return false;
    }
    return true;
  }

  std::optional<bool> analytic_radical_generator(const Element& a) const override {
    // For every non-unit b some multiple n*b is divisible by a, so a is a
    // radical generator iff a divides every non-unit b. Any b >= a + k is
    // divisible by a, hence scanning b in [k, a + k) decides it.
    const auto v = a.as_integer();
    if (v == 0) return true;
    for (std::int64_t b = k_; b < v + k_; ++b) {
      if (!divides(a, Element::integer(b))) return false;
    }
    return true;
  }

  std::optional<Element> square_free_radical(const Element& a) const override {
    if (k_ != 1) return std::nullopt;
    return Element::integer(std::min<std::int64_t>(a.as_integer(), 1));
  }

  std::vector<Element> radical_probes(const Element& a, const Budget&) const override {
    std::vector<Element> out;
    for (std::int64_t b = k_; b <= a.as_integer() + k_; ++b) out.push_back(Element::integer(b));
    return out;
  }

  std::vector<Element> window(std::int64_t bound) const override {
    std::vector<Element> out;
    for (std::int64_t v = 0; v <= bound; ++v) {
      if (member(v)) out.push_back(Element::integer(v));
    }
    return out;
  }

 private:
  bool member(std::int64_t v) const { return v == 0 || v >= k_; }

  std::int64_t k_;
};

// ---------------------------------------------------------------------------
// Families whose elements are vectors in a free commutative monoid
// ---------------------------------------------------------------------------

class LatticeFamily : public SpecifiedFamily {
 public:
  using SpecifiedFamily::SpecifiedFamily;

  Element identity() const override { return Element::vector({}); }

  Element mul(const Element& a, const Element& b) const override {
    return Element::vector(add(a.as_vector(), b.as_vector()));
  }

  bool is_unit(const Element& a) const override { return a.as_vector().empty(); }

  bool divides(const Element& a, const Element& b) const override {
    return leq(a.as_vector(), b.as_vector());
  }

  std::optional<Element> quotient(const Element& b, const Element& a) const override {
    auto r = subtract(b.as_vector(), a.as_vector());
    if (!r) return std::nullopt;
    return Element::vector(std::move(*r));
  }

  DivisorSet bounded_divisors(const Element& a, const Budget& budget,
                              std::optional<std::int64_t> cap) const override {
    check_enumeration(box_size(a.as_vector(), cap), budget, "divisor enumeration of " + format(a));
    DivisorSet out;
    for_each_subvector(a.as_vector(), cap,
                       [&](const ExponentVector& v) { out.elements.push_back(Element::vector(v)); });
    std::sort(out.elements.begin(), out.elements.end());
    return out;
  }

  std::optional<Element> gcd(const Element& a, const Element& b) const override {
    return Element::vector(pointwise_min(a.as_vector(), b.as_vector()));
  }

  std::optional<Element> lcm(const Element& a, const Element& b) const override {
    return Element::vector(pointwise_max(a.as_vector(), b.as_vector()));
  }

  PowerSearch least_power(const Element& a, const Element& c, const Budget&) const override {
    auto n = least_multiple(a.as_vector(), c.as_vector());
    if (!n) return {Ternary::no(), std::nullopt};
    return {Ternary::yes(), *n};
  }

  std::optional<Element> square_root(const Element& a) const override {
    ExponentVector half;
    for (const auto& [g, e] : a.as_vector()) {
      if (e % 2 != 0) return std::nullopt;
      half[g] = e / 2;
    }
    return Element::vector(std::move(half));
  }

  std::optional<bool> analytic_square_free(const Element& a) const override {
    return std::all_of(a.as_vector().begin(), a.as_vector().end(),
                       [](const auto& kv) { return kv.second <= 1; });
  }

  // a | b^n for some n iff supp(a) ⊆ supp(b); a | b then needs b >= a, which
  // the support vector of a violates as soon as some coordinate exceeds 1.
  std::optional<bool> analytic_radical_generator(const Element& a) const override {
    return analytic_square_free(a);
  }

  std::optional<Element> square_free_radical(const Element& a) const override {
    ExponentVector support;
    for (const auto& [g, e] : a.as_vector()) support[g] = 1;
    return Element::vector(std::move(support));
  }
};

class FreeFamily final : public LatticeFamily {
 public:
  explicit FreeFamily(int d) : LatticeFamily(FreeSpec{d}), d_(d) {}

  Capabilities capabilities() const override {
    Capabilities caps;
    caps.has_finite_divisor_sets = true;
    caps.has_gcd = true;
    caps.has_analytic_classifiers = true;
    caps.declared_classes = {MonoidClass::General, MonoidClass::Atomic, MonoidClass::ACCP,
                             MonoidClass::SR,      MonoidClass::PreSchreier, MonoidClass::GCD,
                             MonoidClass::GCDs};
    return caps;
  }

  void validate(const Element& a) const override {
    if (!a.is_vector()) throw InvalidElement("free:" + std::to_string(d_) + " expects a coordinate vector");
    for (const auto& [g, e] : a.as_vector()) {
      if (g < 0 || g >= d_ || e <= 0) throw InvalidElement("coordinate out of range for free:" + std::to_string(d_));
    }
  }

  Element parse(std::string_view literal) const override {
    if (literal.size() >= 2 && literal.front() == '(' && literal.back() == ')') {
      literal = literal.substr(1, literal.size() - 2);
    }
    const auto parts = split(literal, ',');
    if (static_cast<int>(parts.size()) != d_) {
      throw InvalidElement("free:" + std::to_string(d_) + " expects " + std::to_string(d_) + " coordinates");
    }
    ExponentVector v;
    for (int i = 0; i < d_; ++i) {
      std::int64_t x = 0;
      try {
        x = parse_int(parts[i], "coordinate");
      } catch (const InvalidParameter& e) {
        throw InvalidElement(e.what());
      }
      if (x < 0) throw InvalidElement("negative coordinate");
      if (x > 0) v[i] = x;
    }
    return Element::vector(std::move(v));
  }

  std::string format(const Element& a) const override {
    std::string s = "(";
    for (int i = 0; i < d_; ++i) {
      auto it = a.as_vector().find(i);
      if (i > 0) s += ",";
      s += std::to_string(it == a.as_vector().end() ? 0 : it->second);
    }
    return s + ")";
  }

  std::vector<Element> window(std::int64_t bound) const override {
    ExponentVector top;
    for (int i = 0; i < d_; ++i) top[i] = bound;
    check_enumeration(box_size(top, std::nullopt), Budget{}, "window of free:" + std::to_string(d_));
    std::vector<Element> out;
    for_each_subvector(top, std::nullopt, [&](const ExponentVector& v) { out.push_back(Element::vector(v)); });
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  int d_;
};

/// Free on x_1, y_1, z_1, z_2, ...: the relations define x_{i+1} and y_{i+1}
/// from earlier generators. Codes: x_1 -> 0, y_1 -> 1, z_j -> 1 + j.
class DoubleChainFamily final : public LatticeFamily {
 public:
  DoubleChainFamily() : LatticeFamily(DoubleChainSpec{}) {}

  Capabilities capabilities() const override {
    Capabilities caps;
    caps.has_finite_divisor_sets = true;
    caps.has_gcd = true;
    caps.has_analytic_classifiers = true;
    caps.declared_classes = {MonoidClass::General};
    return caps;
  }

  void validate(const Element& a) const override {
    if (!a.is_vector()) throw InvalidElement("doublechain expects a generator product");
    for (const auto& [g, e] : a.as_vector()) {
      if (g < 0 || e <= 0) throw InvalidElement("invalid doublechain generator code");
    }
  }

  Element parse(std::string_view literal) const override {
    ExponentVector v;
    for (const auto& t : parse_terms(literal, "xyz")) {
      if (t.index > 40) throw InvalidElement("doublechain generator index above 40");
      ExponentVector g = expand(t.letter, t.index);
      for (auto& [code, e] : g) e = checked_mul(e, t.exponent);
      v = add(v, g);
    }
    return Element::vector(std::move(v));
  }

  std::string format(const Element& a) const override {
    std::string s;
    for (const auto& [g, e] : a.as_vector()) {
      if (!s.empty()) s += "*";
      if (g == 0) {
        s += format_power('x', 1, e);
      } else if (g == 1) {
        s += format_power('y', 1, e);
      } else {
        s += format_power('z', g - 1, e);
      }
    }
    return s.empty() ? "1" : s;
  }

  std::vector<Element> window(std::int64_t bound) const override {
    std::vector<int> gens{0, 1};
    for (std::int64_t j = 1; j <= bound; ++j) gens.push_back(static_cast<int>(1 + j));
    std::vector<Element> out;
    for_each_bounded_degree(gens, bound, [&](const ExponentVector& v) { out.push_back(Element::vector(v)); });
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static ExponentVector expand(char letter, std::int64_t index) {
    if (letter == 'z') return {{static_cast<int>(1 + index), 1}};
    if (index == 1) return {{letter == 'x' ? 0 : 1, 1}};
    if (letter == 'y') return add(expand('y', index - 1), expand('z', index - 1));
    ExponentVector prev = expand('x', index - 1);
    for (auto& [g, e] : prev) e = checked_mul(e, 2);
    return add(prev, expand('y', index - 1));
  }
};

// ---------------------------------------------------------------------------
// Q>=0 and the dyadic rationals, written additively
// ---------------------------------------------------------------------------

class RationalFamily final : public SpecifiedFamily {
 public:
  explicit RationalFamily(bool dyadic)
      : SpecifiedFamily(dyadic ? FamilySpec{DyadicSpec{}} : FamilySpec{RationalsSpec{}}), dyadic_(dyadic) {}

  Capabilities capabilities() const override {
    Capabilities caps;
    caps.has_finite_divisor_sets = false;
    caps.has_gcd = true;
    caps.has_analytic_classifiers = true;
    caps.declared_classes = {MonoidClass::General, MonoidClass::SR, MonoidClass::PreSchreier,
                             MonoidClass::GCD};
    return caps;
  }

  void validate(const Element& a) const override {
    if (!a.is_rational()) throw InvalidElement(name() + " expects a rational");
    const auto& r = a.as_rational();
    if (r.num() < 0) throw InvalidElement(name() + " has no negative elements");
    if (dyadic_ && (r.den() & (r.den() - 1)) != 0) {
      throw InvalidElement("denominator of a dyadic element must be a power of two");
    }
  }

  Element parse(std::string_view literal) const override {
    const auto slash = literal.find('/');
    std::int64_t num = 0;
    std::int64_t den = 1;
    try {
      num = parse_int(literal.substr(0, slash), "numerator");
      if (slash != std::string_view::npos) den = parse_int(literal.substr(slash + 1), "denominator");
    } catch (const InvalidParameter& e) {
      throw InvalidElement(e.what());
    }
    if (den <= 0) throw InvalidElement("denominator must be positive");
    Element a = Element::rational(Rational(num, den));
    validate(a);
    return a;
  }

  std::string format(const Element& a) const override { return a.as_rational().to_string(); }

  Element identity() const override { return Element::rational(Rational(0)); }

  Element mul(const Element& a, const Element& b) const override {
    return Element::rational(a.as_rational() + b.as_rational());
  }

  bool is_unit(const Element& a) const override { return a.as_rational().is_zero(); }

  bool divides(const Element& a, const Element& b) const override {
    return a.as_rational() <= b.as_rational();
  }

  std::optional<Element> quotient(const Element& b, const Element& a) const override {
    if (!divides(a, b)) return std::nullopt;
    return Element::rational(b.as_rational() - a.as_rational());
  }

  DivisorSet bounded_divisors(const Element& a, const Budget&, std::optional<std::int64_t>) const override {
    if (is_unit(a)) return {{a}, true};
    throw DivisorSetInfinite(name() + ": every element of [0, " + format(a) + "] divides " + format(a));
  }

  std::optional<Element> gcd(const Element& a, const Element& b) const override { return std::min(a, b); }
  std::optional<Element> lcm(const Element& a, const Element& b) const override { return std::max(a, b); }

  PowerSearch least_power(const Element& a, const Element& c, const Budget&) const override {
    const auto& ar = a.as_rational();
    const auto& cr = c.as_rational();
    if (ar.is_zero()) return {Ternary::yes(), 1};
    if (cr.is_zero()) return {Ternary::no(), std::nullopt};
    const __int128 num = static_cast<__int128>(ar.num()) * cr.den();
    const __int128 den = static_cast<__int128>(ar.den()) * cr.num();
    const __int128 n = (num + den - 1) / den;
    return {Ternary::yes(), static_cast<std::int64_t>(std::max<__int128>(n, 1))};
  }

  std::optional<Element> square_root(const Element& a) const override {
    return Element::rational(a.as_rational().divided(2));
  }

  // Every positive a is 2*(a/4) + a/2 with a/4 a non-unit.
  std::optional<bool> analytic_square_free(const Element& a) const override { return is_unit(a); }
  std::optional<bool> analytic_radical_generator(const Element& a) const override { return is_unit(a); }

  std::optional<std::vector<Element>> closed_form_square_free_set() const override {
    return std::vector<Element>{identity()};
  }

  std::optional<Element> square_free_radical(const Element&) const override { return identity(); }

  std::vector<Element> radical_probes(const Element&, const Budget&) const override { return {}; }

  std::vector<Element> sample_elements() const override {
    std::vector<Rational> xs = dyadic_ ? std::vector<Rational>{Rational(0), Rational(1, 8), Rational(1, 2),
                                                               Rational(3, 4), Rational(1), Rational(5, 4),
                                                               Rational(2), Rational(7)}
                                       : std::vector<Rational>{Rational(0), Rational(1, 3), Rational(1, 2),
                                                               Rational(3, 4), Rational(1), Rational(5, 3),
                                                               Rational(2), Rational(7)};
    std::vector<Element> out;
    for (const auto& r : xs) out.push_back(Element::rational(r));
    return out;
  }

 private:
  bool dyadic_;
};

// ---------------------------------------------------------------------------
// <x_i, y_i | y_i = x_{i+1}^p y_{i+1}^q>
// ---------------------------------------------------------------------------

class ChainFamily final : public SpecifiedFamily {
 public:
  explicit ChainFamily(ChainSpec chain) : SpecifiedFamily(chain), chain_(chain) {}

  Capabilities capabilities() const override {
    Capabilities caps;
    caps.has_finite_divisor_sets = false;
    caps.has_gcd = true;
    caps.has_analytic_classifiers = true;
    // Declared GCD, not ACCP; GCD implies pre-Schreier implies SR.
    caps.declared_classes = {MonoidClass::General, MonoidClass::SR, MonoidClass::PreSchreier,
                             MonoidClass::GCD};
    return caps;
  }

  void validate(const Element& a) const override {
    if (!a.is_vector()) throw InvalidElement(name() + " expects a generator product");
    for (const auto& [g, e] : a.as_vector()) {
      if (g < 0 || e <= 0) throw InvalidElement("invalid chain generator code");
    }
    if (from_chain_form(chain_, to_chain_form(chain_, a)) != a) {
      throw InvalidElement("chain element is not in canonical form");
    }
  }

  Element parse(std::string_view literal) const override {
    ChainNormalForm acc;
    for (const auto& t : parse_terms(literal, "xy")) {
      if (t.index > 64) throw InvalidElement("chain generator index above 64");
      ChainNormalForm g;
      g.depth = t.index;
      if (t.letter == 'x') {
        if (t.exponent > 0) g.x[t.index] = t.exponent;
      } else {
        g.y = t.exponent;
      }
      acc = sum(acc, g);
    }
    return from_chain_form(chain_, acc);
  }

  std::string format(const Element& a) const override {
    const auto f = to_chain_form(chain_, a);
    std::string s;
    for (const auto& [i, e] : f.x) {
      if (!s.empty()) s += "*";
      s += format_power('x', i, e);
    }
    if (f.y > 0) {
      if (!s.empty()) s += "*";
      s += format_power('y', f.depth, f.y);
    }
    return s.empty() ? "1" : s;
  }

  Element identity() const override { return Element::vector({}); }

  Element mul(const Element& a, const Element& b) const override {
    return from_chain_form(chain_, sum(to_chain_form(chain_, a), to_chain_form(chain_, b)));
  }

  bool is_unit(const Element& a) const override { return a.as_vector().empty(); }

  bool divides(const Element& a, const Element& b) const override {
    return chain_divides(chain_, to_chain_form(chain_, a), to_chain_form(chain_, b));
  }

  std::optional<Element> quotient(const Element& b, const Element& a) const override {
    auto [fa, fb] = common_depth(to_chain_form(chain_, a), to_chain_form(chain_, b));
    if (fb.y < fa.y) return std::nullopt;
    ChainNormalForm r;
    r.depth = fb.depth;
    r.y = fb.y - fa.y;
    r.x = fb.x;
    for (const auto& [i, e] : fa.x) {
      auto it = r.x.find(i);
      if (it == r.x.end() || it->second < e) return std::nullopt;
      it->second -= e;
      if (it->second == 0) r.x.erase(it);
    }
    return from_chain_form(chain_, r);
  }

  // A y-free element has the same form at every depth, so its divisors are
  // the sub-vectors at its own depth. Otherwise the set is infinite and we
  // report the divisors visible at depths up to max(depth + 1, max_depth),
  // stopping early when the enumeration budget runs out.
  DivisorSet bounded_divisors(const Element& a, const Budget& budget,
                              std::optional<std::int64_t> cap) const override {
    const auto f = to_chain_form(chain_, a);
    std::set<Element> found;
    DivisorSet out;
    const std::int64_t last = f.y == 0 ? f.depth : std::max(f.depth + 1, budget.max_depth);
    std::int64_t spent = 0;
    for (std::int64_t depth = f.depth; depth <= last; ++depth) {
      const auto deep = normalize_to_depth(chain_, f, depth);
      const ExponentVector flat = flatten(deep);
      const auto size = box_size(flat, cap);
      if (spent + size > budget.max_divisor_enumeration) {
        if (f.y == 0) check_enumeration(spent + size, budget, "divisor enumeration of " + format(a));
        break;
      }
      spent += size;
      for_each_subvector(flat, cap, [&](const ExponentVector& v) { found.insert(unflatten(v, depth)); });
    }
    out.elements.assign(found.begin(), found.end());
    out.complete = f.y == 0;
    return out;
  }

  std::optional<Element> gcd(const Element& a, const Element& b) const override {
    return combine(a, b, [](std::int64_t u, std::int64_t v) { return std::min(u, v); });
  }

  std::optional<Element> lcm(const Element& a, const Element& b) const override {
    return combine(a, b, [](std::int64_t u, std::int64_t v) { return std::max(u, v); });
  }

  // Normalization is additive, so a | c^n iff a <= n*c at the common depth.
  PowerSearch least_power(const Element& a, const Element& c, const Budget&) const override {
    auto [fa, fc] = common_depth(to_chain_form(chain_, a), to_chain_form(chain_, c));
    auto n = least_multiple(flatten(fa), flatten(fc));
    if (!n) return {Ternary::no(), std::nullopt};
    return {Ternary::yes(), *n};
  }

  // If some x coordinate is odd it stays odd under deepening; an odd y
  // exponent becomes even after one step exactly when p and q are even.
  std::optional<Element> square_root(const Element& a) const override {
    const auto f = to_chain_form(chain_, a);
    for (std::int64_t depth : {f.depth, f.depth + 1}) {
      const auto deep = normalize_to_depth(chain_, f, depth);
      ExponentVector flat = flatten(deep);
      if (std::any_of(flat.begin(), flat.end(), [](const auto& kv) { return kv.second % 2 != 0; })) continue;
      for (auto& [g, e] : flat) e /= 2;
      return from_chain_form(chain_, unflatten_form(flat, depth));
    }
    return std::nullopt;
  }

  // p = q = 1: deepening keeps 0/1 exponents 0/1, so the canonical form
  // decides. Otherwise y_N^m is divisible by y_{N+1}^2 (q >= 2) or by
  // x_{N+1}^2 (p >= 2), and a y-free form is the same at every depth.
  std::optional<bool> analytic_square_free(const Element& a) const override {
    const auto f = to_chain_form(chain_, a);
    const bool x_ok = std::all_of(f.x.begin(), f.x.end(), [](const auto& kv) { return kv.second <= 1; });
    if (chain_.p == 1 && chain_.q == 1) return x_ok && f.y <= 1;
    return x_ok && f.y == 0;
  }

  // With p = q = 1 deepening copies exponents, so supports agree at every
  // depth and the support indicator is the greatest square-free divisor.
  // Otherwise square-free elements are y-free, and a y-bearing element is
  // divisible by every x_M with M beyond its depth, so no greatest one exists.
  std::optional<Element> square_free_radical(const Element& a) const override {
    auto f = to_chain_form(chain_, a);
    if (f.y > 0 && !(chain_.p == 1 && chain_.q == 1)) return std::nullopt;
    for (auto& [i, e] : f.x) e = 1;
    f.y = std::min<std::int64_t>(f.y, 1);
    return from_chain_form(chain_, f);
  }

  // The square-free divisors of a y-bearing element are the products of
  // distinct x_i with positive exponent at some depth; deepening creates
  // x_{N+j} with exponent p*q^(j-1)*y.
  std::optional<bool> square_free_divisors_squared(const Element& a) const override {
    const auto f = to_chain_form(chain_, a);
    if (f.y == 0 || (chain_.p == 1 && chain_.q == 1)) return Family::square_free_divisors_squared(a);
    const bool x_ok = std::all_of(f.x.begin(), f.x.end(), [](const auto& kv) { return kv.second >= 2; });
    return x_ok && chain_.p * f.y >= 2;
  }

  std::vector<Element> window(std::int64_t bound) const override {
    std::set<Element> found;
    for (std::int64_t depth = 1; depth <= bound; ++depth) {
      std::vector<int> gens;
      for (std::int64_t i = 1; i <= depth; ++i) gens.push_back(chain_x_code(i));
      gens.push_back(chain_y_code(depth));
      for_each_bounded_degree(gens, bound, [&](const ExponentVector& v) {
        found.insert(from_chain_form(chain_, unflatten_form(v, depth)));
      });
    }
    return {found.begin(), found.end()};
  }

 private:
  std::pair<ChainNormalForm, ChainNormalForm> common_depth(ChainNormalForm a, ChainNormalForm b) const {
    const auto d = std::max(a.depth, b.depth);
    return {normalize_to_depth(chain_, std::move(a), d), normalize_to_depth(chain_, std::move(b), d)};
  }

  ChainNormalForm sum(ChainNormalForm a, ChainNormalForm b) const {
    auto [fa, fb] = common_depth(std::move(a), std::move(b));
    for (const auto& [i, e] : fb.x) fa.x[i] = checked_add(fa.x[i], e);
    fa.y = checked_add(fa.y, fb.y);
    return fa;
  }

  template <typename Op>
  Element combine(const Element& a, const Element& b, Op op) const {
    auto [fa, fb] = common_depth(to_chain_form(chain_, a), to_chain_form(chain_, b));
    ChainNormalForm r;
    r.depth = fa.depth;
    r.y = op(fa.y, fb.y);
    std::set<std::int64_t> keys;
    for (const auto& [i, e] : fa.x) keys.insert(i);
    for (const auto& [i, e] : fb.x) keys.insert(i);
    for (auto i : keys) {
      const auto u = fa.x.contains(i) ? fa.x.at(i) : 0;
      const auto v = fb.x.contains(i) ? fb.x.at(i) : 0;
      if (auto w = op(u, v); w > 0) r.x[i] = w;
    }
    return from_chain_form(chain_, r);
  }

  static ExponentVector flatten(const ChainNormalForm& f) {
    ExponentVector v;
    for (const auto& [i, e] : f.x) v[chain_x_code(i)] = e;
    if (f.y > 0) v[chain_y_code(f.depth)] = f.y;
    return v;
  }

  static ChainNormalForm unflatten_form(const ExponentVector& v, std::int64_t depth) {
    ChainNormalForm f;
    f.depth = depth;
    for (const auto& [code, e] : v) {
      if (code % 2 == 0) {
        f.x[code / 2 + 1] = e;
      } else {
        f.y = e;
      }
    }
    return f;
  }

  Element unflatten(const ExponentVector& v, std::int64_t depth) const {
    return from_chain_form(chain_, unflatten_form(v, depth));
  }

  ChainSpec chain_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Chain normal forms
// ---------------------------------------------------------------------------

int chain_x_code(std::int64_t index) { return static_cast<int>(2 * (index - 1)); }
int chain_y_code(std::int64_t index) { return static_cast<int>(2 * (index - 1) + 1); }

ChainNormalForm normalize_to_depth(const ChainSpec& chain, ChainNormalForm e, std::int64_t target) {
  if (target < e.depth) {
    throw InvalidParameter("cannot normalize from depth " + std::to_string(e.depth) + " to shallower depth " +
                           std::to_string(target));
  }
  while (e.depth < target) {
    const auto m = e.y;
    ++e.depth;
    if (m > 0) {
      e.x[e.depth] = checked_add(e.x[e.depth], checked_mul(chain.p, m));
      e.y = checked_mul(chain.q, m);
    }
  }
  return e;
}

ChainNormalForm canonicalize(const ChainSpec& chain, ChainNormalForm e) {
  while (e.depth > 1) {
    auto it = e.x.find(e.depth);
    const std::int64_t top = it == e.x.end() ? 0 : it->second;
    if (top % chain.p != 0 || e.y % chain.q != 0 || top / chain.p != e.y / chain.q) break;
    if (it != e.x.end()) e.x.erase(it);
    e.y /= chain.q;
    --e.depth;
  }
  return e;
}

bool chain_divides(const ChainSpec& chain, const ChainNormalForm& a, const ChainNormalForm& b) {
  const auto d = std::max(a.depth, b.depth);
  const auto fa = normalize_to_depth(chain, a, d);
  const auto fb = normalize_to_depth(chain, b, d);
  if (fa.y > fb.y) return false;
  for (const auto& [i, e] : fa.x) {
    auto it = fb.x.find(i);
    if (it == fb.x.end() || it->second < e) return false;
  }
  return true;
}

ChainNormalForm to_chain_form(const ChainSpec& chain, const Element& e) {
  // Accepts any product of generators: every y_i^m is pushed down to the
  // deepest index present before the exponents are summed.
  std::int64_t depth = 1;
  for (const auto& [code, exp] : e.as_vector()) depth = std::max<std::int64_t>(depth, code / 2 + 1);
  ChainNormalForm acc;
  acc.depth = depth;
  for (const auto& [code, exp] : e.as_vector()) {
    const std::int64_t index = code / 2 + 1;
    if (code % 2 == 0) {
      acc.x[index] = checked_add(acc.x[index], exp);
      continue;
    }
    ChainNormalForm y;
    y.depth = index;
    y.y = exp;
    y = normalize_to_depth(chain, y, depth);
    for (const auto& [i, x] : y.x) acc.x[i] = checked_add(acc.x[i], x);
    acc.y = checked_add(acc.y, y.y);
  }
  return acc;
}

Element from_chain_form(const ChainSpec& chain, const ChainNormalForm& f) {
  const auto c = canonicalize(chain, f);
  ExponentVector v;
  for (const auto& [i, e] : c.x) {
    if (e > 0) v[chain_x_code(i)] = e;
  }
  if (c.y > 0) v[chain_y_code(c.depth)] = c.y;
  return Element::vector(std::move(v));
}

// ---------------------------------------------------------------------------
// Specs and construction
// ---------------------------------------------------------------------------

FamilySpec parse_family_spec(std::string_view text) {
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  const auto args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const bool has_args = colon != std::string_view::npos;
  if (head == "numerical" && has_args) return NumericalSpec{parse_int(args, "numerical parameter k")};
  if (head == "free" && has_args) return FreeSpec{static_cast<int>(parse_int(args, "free dimension d"))};
  if (head == "rationals" && !has_args) return RationalsSpec{};
  if (head == "dyadic" && !has_args) return DyadicSpec{};
  if (head == "doublechain" && !has_args) return DoubleChainSpec{};
  if (head == "chain" && has_args) {
    const auto parts = split(args, ',');
    if (parts.size() != 2) throw InvalidParameter("chain expects 'chain:p,q'");
    return ChainSpec{parse_int(parts[0], "chain parameter p"), parse_int(parts[1], "chain parameter q")};
  }
  throw InvalidParameter("unknown monoid spec '" + std::string(text) +
                         "' (expected numerical:k, free:d, rationals, dyadic, chain:p,q or doublechain)");
}

std::string to_string(const FamilySpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NumericalSpec>) {
          return "numerical:" + std::to_string(s.k);
        } else if constexpr (std::is_same_v<T, FreeSpec>) {
          return "free:" + std::to_string(s.d);
        } else if constexpr (std::is_same_v<T, RationalsSpec>) {
          return "rationals";
        } else if constexpr (std::is_same_v<T, DyadicSpec>) {
          return "dyadic";
        } else if constexpr (std::is_same_v<T, ChainSpec>) {
          return "chain:" + std::to_string(s.p) + "," + std::to_string(s.q);
        } else {
          return "doublechain";
        }
      },
      spec);
}

MonoidHandle build(const FamilySpec& spec) {
  return std::visit(
      [](const auto& s) -> MonoidHandle {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NumericalSpec>) {
          if (s.k < 1) throw InvalidParameter("numerical:k needs k >= 1");
          return MonoidHandle(std::make_shared<NumericalFamily>(s.k));
        } else if constexpr (std::is_same_v<T, FreeSpec>) {
          if (s.d < 1) throw InvalidParameter("free:d needs d >= 1");
          return MonoidHandle(std::make_shared<FreeFamily>(s.d));
        } else if constexpr (std::is_same_v<T, RationalsSpec>) {
          return MonoidHandle(std::make_shared<RationalFamily>(false));
        } else if constexpr (std::is_same_v<T, DyadicSpec>) {
          return MonoidHandle(std::make_shared<RationalFamily>(true));
        } else if constexpr (std::is_same_v<T, ChainSpec>) {
          if (s.p < 1 || s.q < 1) throw InvalidParameter("chain:p,q needs p, q >= 1");
          return MonoidHandle(std::make_shared<ChainFamily>(s));
        } else {
          return MonoidHandle(std::make_shared<DoubleChainFamily>());
        }
      },
      spec);
}

MonoidHandle build(std::string_view spec_text) { return build(parse_family_spec(spec_text)); }

FamilySpec spec_of(const MonoidHandle& m) {
  if (const auto* f = dynamic_cast<const SpecifiedFamily*>(&m.family())) return f->spec();
  throw Unsupported("family was not built from a FamilySpec");
}

std::optional<bool> analytic_square_free(const MonoidHandle& m, const Element& a) {
  m->validate(a);
  return m->analytic_square_free(a);
}

std::optional<bool> analytic_radical_generator(const MonoidHandle& m, const Element& a) {
  m->validate(a);
  return m->analytic_radical_generator(a);
}

}  // namespace monoidlab
