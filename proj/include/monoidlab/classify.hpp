#pragma once

// Element classifiers: square-free, radical generator, atom.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "monoidlab/core.hpp"

namespace monoidlab {

/// Answer plus the data certifying it. For square-free No: a = b^2 c.
/// For radical No: a | b^n and a ∤ b. For atom No: a = b c with b, c non-units.
struct Classification {
  Ternary answer = Ternary::unknown("not evaluated");
  std::optional<Element> b;
  std::optional<Element> c;
  std::optional<std::int64_t> n;
};

Classification is_square_free(const MonoidHandle& m, const Element& a, const Budget& budget);
Classification is_radical_generator(const MonoidHandle& m, const Element& a, const Budget& budget);
Classification is_atom(const MonoidHandle& m, const Element& a, const Budget& budget);

enum class Membership { SquareFree, Radical };

Ternary is_member(const MonoidHandle& m, const Element& a, Membership kind, const Budget& budget);

/// Square-free (resp. radical) divisors of `a` in ascending order. `complete`
/// is false when some divisors may be missing or a membership test was Unknown.
DivisorSet member_divisors(const MonoidHandle& m, const Element& a, Membership kind, const Budget& budget);

/// Window elements classified Yes. Throw Unsupported without a window.
std::vector<Element> sqf_set(const MonoidHandle& m, std::int64_t bound, const Budget& budget);
std::vector<Element> gpr_set(const MonoidHandle& m, std::int64_t bound, const Budget& budget);
std::vector<Element> irr_set(const MonoidHandle& m, std::int64_t bound, const Budget& budget);

struct ClassificationReport {
  Element element;
  bool unit = false;
  Classification sqf;
  Classification gpr;
  Classification atom;
};

ClassificationReport classify(const MonoidHandle& m, const Element& a, const Budget& budget);

/// {element, unit, sqf, gpr, atom, witnesses:{...}}
nlohmann::ordered_json to_json(const MonoidHandle& m, const ClassificationReport& report);

}  // namespace monoidlab
