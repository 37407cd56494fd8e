#pragma once

// Commutative cancellative monoids: exact elements, divisibility queries and
// three-valued answers for semi-decidable predicates.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace monoidlab {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class MonoidError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an element does not belong to the monoid (e.g. 1 in N>=2 ∪ {0}).
class InvalidElement : public MonoidError {
 public:
  using MonoidError::MonoidError;
};

class InvalidParameter : public MonoidError {
 public:
  using MonoidError::MonoidError;
};

class DivisorSetInfinite : public MonoidError {
 public:
  using MonoidError::MonoidError;
};

class BudgetExhausted : public MonoidError {
 public:
  using MonoidError::MonoidError;
};

class Unsupported : public MonoidError {
 public:
  using MonoidError::MonoidError;
};

// ---------------------------------------------------------------------------
// Checked integer arithmetic
// ---------------------------------------------------------------------------

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

// ---------------------------------------------------------------------------
// Exact nonnegative-capable rationals
// ---------------------------------------------------------------------------

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational scaled(std::int64_t factor) const;
  Rational divided(std::int64_t divisor) const;

  bool is_zero() const { return num_ == 0; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string to_string() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// Finitely supported map generator index -> positive exponent.
using ExponentVector = std::map<int, std::int64_t>;

/// Canonical representative of a monoid element. Which alternative is used
/// depends on the family: integers for numerical monoids, exponent vectors
/// for free and presented monoids, rationals for Q>=0 and the dyadics.
class Element {
 public:
  Element() : value_(std::int64_t{0}) {}

  static Element integer(std::int64_t v) { return Element(v); }
  static Element vector(ExponentVector v);
  static Element rational(Rational r) { return Element(r); }

  bool is_integer() const { return std::holds_alternative<std::int64_t>(value_); }
  bool is_vector() const { return std::holds_alternative<ExponentVector>(value_); }
  bool is_rational() const { return std::holds_alternative<Rational>(value_); }

  std::int64_t as_integer() const;
  const ExponentVector& as_vector() const;
  const Rational& as_rational() const;

  friend bool operator==(const Element&, const Element&) = default;
  friend std::strong_ordering operator<=>(const Element& a, const Element& b);

 private:
  explicit Element(std::int64_t v) : value_(v) {}
  explicit Element(ExponentVector v) : value_(std::move(v)) {}
  explicit Element(Rational r) : value_(r) {}

  std::variant<std::int64_t, ExponentVector, Rational> value_;
};

// ---------------------------------------------------------------------------
// Three-valued answers and search budgets
// ---------------------------------------------------------------------------

class Ternary {
 public:
  enum class Value { Yes, No, Unknown };

  static Ternary yes() { return Ternary(Value::Yes, {}); }
  static Ternary no() { return Ternary(Value::No, {}); }
  static Ternary unknown(std::string reason) {
    return Ternary(Value::Unknown, std::move(reason));
  }
  static Ternary from_bool(bool b) { return b ? yes() : no(); }

  Value value() const { return value_; }
  bool is_yes() const { return value_ == Value::Yes; }
  bool is_no() const { return value_ == Value::No; }
  bool is_unknown() const { return value_ == Value::Unknown; }
  const std::string& reason() const { return reason_; }

  /// "yes" | "no" | "unknown"
  std::string_view label() const;

  friend bool operator==(const Ternary& a, const Ternary& b) {
    return a.value_ == b.value_;
  }

 private:
  Ternary(Value v, std::string reason) : value_(v), reason_(std::move(reason)) {}

  Value value_;
  std::string reason_;
};

struct Budget {
  std::int64_t max_factor_count = 16;
  std::int64_t max_power = 32;
  std::int64_t max_divisor_enumeration = 100000;
  std::int64_t max_depth = 6;

  /// Throws InvalidParameter unless every field is positive.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Monoid classes and capabilities
// ---------------------------------------------------------------------------

/// Listed in specialization order: General ⊇ Atomic ⊇ ACCP and
/// General ⊇ SR ⊇ PreSchreier ⊇ GCD ⊇ GCDs.
enum class MonoidClass { General, Atomic, ACCP, SR, PreSchreier, GCD, GCDs };

std::string_view to_string(MonoidClass c);
std::optional<MonoidClass> parse_monoid_class(std::string_view name);

struct Capabilities {
  bool has_finite_divisor_sets = false;
  bool has_gcd = false;
  bool has_analytic_classifiers = false;
  std::set<MonoidClass> declared_classes;

  bool declares(MonoidClass c) const { return declared_classes.contains(c); }
};

struct DivisorSet {
  std::vector<Element> elements;  // ascending canonical order, no duplicates
  bool complete = true;
};

/// Result of searching for the least n >= 1 with a | c^n.
struct PowerSearch {
  Ternary answer;
  std::optional<std::int64_t> n;
};

// ---------------------------------------------------------------------------
// Family interface
// ---------------------------------------------------------------------------

/// A concrete monoid family. Implementations are immutable after
/// construction; every method is a pure function of its arguments.
class Family {
 public:
  virtual ~Family() = default;

  virtual std::string name() const = 0;
  virtual Capabilities capabilities() const = 0;

  /// Throws InvalidElement when `a` is not a canonical element of the family.
  virtual void validate(const Element& a) const = 0;
  virtual Element parse(std::string_view literal) const = 0;
  virtual std::string format(const Element& a) const = 0;

  virtual Element identity() const = 0;
  virtual Element mul(const Element& a, const Element& b) const = 0;
  virtual bool is_unit(const Element& a) const = 0;
  virtual bool divides(const Element& a, const Element& b) const = 0;
  /// c with b = a * c, if a | b.
  virtual std::optional<Element> quotient(const Element& b, const Element& a) const = 0;

  /// Divisors of `a` up to associates. `coord_cap` bounds the per-coordinate
  /// exponent of enumerated candidates in exponent-vector families and is
  /// ignored elsewhere. Infinite sets are truncated (complete = false) or
  /// rejected with DivisorSetInfinite, depending on the family.
  virtual DivisorSet bounded_divisors(const Element& a, const Budget& budget,
                                      std::optional<std::int64_t> coord_cap) const = 0;

  virtual std::optional<Element> gcd(const Element& a, const Element& b) const;
  virtual std::optional<Element> lcm(const Element& a, const Element& b) const;

  /// Least n with a | c^n. The default searches n = 1..max_power.
  virtual PowerSearch least_power(const Element& a, const Element& c,
                                  const Budget& budget) const;

  /// t with t * t = a.
  virtual std::optional<Element> square_root(const Element& a) const = 0;

  virtual std::optional<bool> analytic_square_free(const Element&) const { return std::nullopt; }
  virtual std::optional<bool> analytic_radical_generator(const Element&) const {
    return std::nullopt;
  }

  /// Greatest square-free divisor of `a`: every square-free divisor of `a`
  /// divides it. Only families with a closed form override this.
  virtual std::optional<Element> square_free_radical(const Element&) const { return std::nullopt; }

  /// Whether d^2 | a for every square-free d | a. The default answers via
  /// square_free_radical when available.
  virtual std::optional<bool> square_free_divisors_squared(const Element& a) const;

  /// The full square-free set when it is finite and known in closed form.
  virtual std::optional<std::vector<Element>> closed_form_square_free_set() const {
    return std::nullopt;
  }

  /// Candidates b for a refutation a | b^n, a ∤ b of radicality.
  virtual std::vector<Element> radical_probes(const Element& a, const Budget& budget) const;

  /// Canonical elements inside the enumeration window of the given bound.
  virtual std::vector<Element> window(std::int64_t bound) const;
  /// Fixed sample used when the family has no enumeration window.
  virtual std::vector<Element> sample_elements() const { return {}; }
};

/// A built family plus its spec string. Cheap to copy; immutable.
class MonoidHandle {
 public:
  explicit MonoidHandle(std::shared_ptr<const Family> family) : family_(std::move(family)) {}

  const Family& family() const { return *family_; }
  const Family* operator->() const { return family_.get(); }
  std::string name() const { return family_->name(); }
  Capabilities capabilities() const { return family_->capabilities(); }

 private:
  std::shared_ptr<const Family> family_;
};

// ---------------------------------------------------------------------------
// Core operations
// ---------------------------------------------------------------------------

Element mul(const MonoidHandle& m, const Element& a, const Element& b);
Element power(const MonoidHandle& m, const Element& a, std::int64_t n);
bool is_unit(const MonoidHandle& m, const Element& a);
Ternary divides(const MonoidHandle& m, const Element& a, const Element& b);
std::optional<Element> quotient(const MonoidHandle& m, const Element& b, const Element& a);

/// Complete divisor set. Throws DivisorSetInfinite or BudgetExhausted.
std::vector<Element> divisors(const MonoidHandle& m, const Element& a, const Budget& budget);

bool associates_eq(const MonoidHandle& m, const Element& a, const Element& b);
Ternary coprime(const MonoidHandle& m, const Element& a, const Element& b, const Budget& budget);

std::optional<Element> gcd(const MonoidHandle& m, const Element& a, const Element& b);
/// Throws Unsupported when the family has no gcd capability.
std::optional<Element> lcm_of_set(const MonoidHandle& m, const std::vector<Element>& xs);
/// Greatest common divisor of a nonempty finite set, if it exists.
std::optional<Element> gcd_of_set(const MonoidHandle& m, const std::vector<Element>& xs);

PowerSearch divides_some_power(const MonoidHandle& m, const Element& a, const Element& c,
                               const Budget& budget);

}  // namespace monoidlab
