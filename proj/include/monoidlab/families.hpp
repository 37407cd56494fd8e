#pragma once

// Concrete monoid families: numerical monoids N>=k ∪ {0}, free commutative
// monoids N_0^d, the additive rationals and dyadics, and two infinitely
// presented monoids given by chains of relations.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "monoidlab/core.hpp"

namespace monoidlab {

struct NumericalSpec {
  std::int64_t k = 1;
  friend bool operator==(const NumericalSpec&, const NumericalSpec&) = default;
};
struct FreeSpec {
  int d = 1;
  friend bool operator==(const FreeSpec&, const FreeSpec&) = default;
};
struct RationalsSpec {
  friend bool operator==(const RationalsSpec&, const RationalsSpec&) = default;
};
struct DyadicSpec {
  friend bool operator==(const DyadicSpec&, const DyadicSpec&) = default;
};
/// <x_i, y_i | y_i = x_{i+1}^p y_{i+1}^q>
struct ChainSpec {
  std::int64_t p = 1;
  std::int64_t q = 1;
  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;
};
/// <x_i, y_i, z_i | x_{i+1} = x_i^2 y_i, y_{i+1} = y_i z_i>
struct DoubleChainSpec {
  friend bool operator==(const DoubleChainSpec&, const DoubleChainSpec&) = default;
};

using FamilySpec =
    std::variant<NumericalSpec, FreeSpec, RationalsSpec, DyadicSpec, ChainSpec, DoubleChainSpec>;

/// Parses `numerical:k`, `free:d`, `rationals`, `dyadic`, `chain:p,q`,
/// `doublechain`. Throws InvalidParameter on malformed input.
FamilySpec parse_family_spec(std::string_view text);
std::string to_string(const FamilySpec& spec);

/// Validates parameters (k, d, p, q >= 1) and builds the family.
MonoidHandle build(const FamilySpec& spec);
MonoidHandle build(std::string_view spec_text);

/// The spec a handle was built from. Throws Unsupported for foreign families.
FamilySpec spec_of(const MonoidHandle& m);

// ---------------------------------------------------------------------------
// Chain normal forms
// ---------------------------------------------------------------------------

/// Element of a chain monoid written over x_1..x_depth and y_depth.
struct ChainNormalForm {
  std::int64_t depth = 1;
  std::map<std::int64_t, std::int64_t> x;  // index -> positive exponent, index <= depth
  std::int64_t y = 0;                      // exponent of y_depth

  friend bool operator==(const ChainNormalForm&, const ChainNormalForm&) = default;
};

/// Rewrites y_depth^m = x_{depth+1}^{pm} y_{depth+1}^{qm} until the form sits
/// at depth `target`. Throws InvalidParameter when target < e.depth.
ChainNormalForm normalize_to_depth(const ChainSpec& chain, ChainNormalForm e, std::int64_t target);

/// Undoes rewriting steps while possible; the result is the unique shallowest form.
ChainNormalForm canonicalize(const ChainSpec& chain, ChainNormalForm e);

/// Componentwise comparison at the common depth. Deeper forms cannot repair
/// a negative coordinate: deepening scales the y-difference by p and q and
/// leaves the older coordinates alone.
bool chain_divides(const ChainSpec& chain, const ChainNormalForm& a, const ChainNormalForm& b);

/// Generator codes used by chain elements: x_i -> 2(i-1), y_i -> 2(i-1)+1.
int chain_x_code(std::int64_t index);
int chain_y_code(std::int64_t index);
ChainNormalForm to_chain_form(const ChainSpec& chain, const Element& e);
Element from_chain_form(const ChainSpec& chain, const ChainNormalForm& f);

// ---------------------------------------------------------------------------
// Analytic classifiers
// ---------------------------------------------------------------------------

std::optional<bool> analytic_square_free(const MonoidHandle& m, const Element& a);
std::optional<bool> analytic_radical_generator(const MonoidHandle& m, const Element& a);

}  // namespace monoidlab
