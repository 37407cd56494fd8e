#pragma once

// Property suites over an element window. Each suite reports how many
// instances it checked, how many it skipped because an answer was Unknown,
// and every violation with a counterexample.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "monoidlab/conditions.hpp"
#include "monoidlab/core.hpp"

namespace monoidlab {

struct SuiteResult {
  std::string name;
  bool applicable = true;
  std::string note;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

/// Square-free and radical divisor closure, coprimality of square-free
/// factorizations, Gpr ⊆ Sqf, and the class-specific suites (coprime products
/// and Gpr = Sqf on pre-Schreier families, lcm of radical generators on GCD
/// families, gcd of divisor subsets on GCDs families). Subsets are sampled
/// with std::mt19937_64 seeded by `seed`.
std::vector<SuiteResult> verify_lemmas(const MonoidHandle& m, std::int64_t bound, std::uint64_t seed,
                                       const Budget& budget);

/// Per-element implications between the conditions (antecedent Yes and
/// consequent No is a violation; Unknown on either side is skipped).
SuiteResult verify_implications(const MonoidHandle& m, const std::vector<Element>& elements, const Budget& budget);

/// Every Yes witness re-validates.
SuiteResult verify_witnesses(const MonoidHandle& m, const std::vector<Element>& elements, const Budget& budget);

/// Witness uniqueness up to associates for each listed condition.
std::vector<SuiteResult> verify_uniqueness(const MonoidHandle& m, const std::vector<Element>& elements,
                                           const std::vector<ConditionId>& ids, const Budget& budget);

nlohmann::ordered_json to_json(const std::vector<SuiteResult>& suites);

}  // namespace monoidlab
