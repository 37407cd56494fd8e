#pragma once

// Decision procedures for the eighteen square-free / radical factorization
// conditions, with witnesses that re-validate under core operations.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "monoidlab/classify.hpp"
#include "monoidlab/core.hpp"

namespace monoidlab {

/// Canonical order; the underlying value is the profile bit index.
enum class ConditionId : int {
  C0s, C0r, C1s, C1r, C2s, C2r, C3s, C3r, C4s, C4r,
  C4ps, C4pr, C5s, C5r, C5ps, C5pr, C6s, C6r
};

inline constexpr std::size_t kConditionCount = 18;

const std::array<ConditionId, kConditionCount>& all_conditions();

/// "0s", "4'r", ...
std::string_view to_string(ConditionId id);
std::optional<ConditionId> parse_condition(std::string_view text);

/// The nine condition shapes shared by an s/r pair, in canonical order.
enum class Shape { Zero, One, Two, Three, Four, FourPrime, Five, FivePrime, Six };

Shape shape_of(ConditionId id);
bool is_radical_variant(ConditionId id);
/// r-twin of an s-condition and vice versa.
ConditionId twin(ConditionId id);
ConditionId make_condition(Shape shape, bool radical);
Membership membership_of(ConditionId id);

/// 0-3: `factors` in condition order (s_1..s_n, or s_0..s_n for 3).
/// 4, 4', 5, 5', 6: a = b c (a = b^2 c for 6); d and n where the condition uses them.
struct Witness {
  std::vector<Element> factors;
  std::optional<Element> b;
  std::optional<Element> c;
  std::optional<Element> d;
  std::optional<std::int64_t> n;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct ConditionResult {
  ConditionId id = ConditionId::C0s;
  Ternary answer = Ternary::unknown("not evaluated");
  std::optional<Witness> witness;
};

ConditionResult check_condition(const MonoidHandle& m, const Element& a, ConditionId id, const Budget& budget);
std::vector<ConditionResult> check_conditions(const MonoidHandle& m, const Element& a,
                                              const std::vector<ConditionId>& ids, const Budget& budget);

/// Re-checks the product and every side condition of a witness.
Ternary validate_witness(const MonoidHandle& m, const Element& a, ConditionId id, const Witness& w,
                         const Budget& budget);

struct WitnessEnumeration {
  std::vector<Witness> witnesses;
  bool complete = true;
};

/// Every witness of 1s, 2s, 3s, 6s or 5r (trailing units of sequences
/// stripped). Throws InvalidParameter for other conditions.
WitnessEnumeration all_witnesses(const MonoidHandle& m, const Element& a, ConditionId id, const Budget& budget);

struct UniquenessReport {
  ConditionId id = ConditionId::C6s;
  Element element;
  std::size_t witness_count = 0;
  bool complete = true;
  bool unique = true;
  std::optional<std::pair<Witness, Witness>> violation;
};

/// Witnesses must agree componentwise up to associates.
UniquenessReport check_uniqueness(const MonoidHandle& m, const Element& a, ConditionId id, const Budget& budget);

nlohmann::ordered_json to_json(const MonoidHandle& m, const Witness& w);
nlohmann::ordered_json to_json(const MonoidHandle& m, const ConditionResult& r);
nlohmann::ordered_json to_json(const MonoidHandle& m, const UniquenessReport& r);

}  // namespace monoidlab
