#pragma once

// Condition profiles: truth assignments to the eighteen conditions, the
// implication system of each monoid class, and exhaustive enumeration of
// the consistent assignments.

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "monoidlab/conditions.hpp"
#include "monoidlab/core.hpp"

namespace monoidlab {

/// Bit i holds condition i of the canonical order.
using Profile = std::uint32_t;

inline constexpr Profile kAllTrue = (Profile{1} << kConditionCount) - 1;

bool get(Profile p, ConditionId id);
Profile with(Profile p, ConditionId id, bool value);

/// Character i is bit i.
std::string to_bit_string(Profile p);
Profile from_bit_string(std::string_view bits);

struct Implication {
  ConditionId from;
  ConditionId to;
};

struct ConstraintSet {
  std::vector<Implication> implications;
  std::vector<std::vector<ConditionId>> merges;
  std::set<ConditionId> forced;

  bool implies(ConditionId from, ConditionId to) const;
};

ConstraintSet constraint_set(MonoidClass c);
bool is_consistent(Profile p, const ConstraintSet& c);

/// Consistent profiles in ascending integer order.
std::vector<Profile> enumerate(MonoidClass c);

/// v(Asr) = v(As) + v(Ar) for A = 0, 1, 2, 3, 4, 5, 6.
using PairValues = std::array<int, 7>;

/// Throws InvalidParameter when some Ar holds without As.
PairValues pair_values(Profile p);
/// Rebuilds the fourteen paired bits; the 4'/5' bits are copied from `rest`.
Profile decode_pair_values(const PairValues& v, Profile rest = 0);

struct TableRow {
  std::vector<int> key;
  std::size_t count = 0;
};

struct TableBreakdown {
  MonoidClass monoid_class = MonoidClass::General;
  std::vector<std::string> key_names;
  std::vector<TableRow> rows;
  std::size_t total = 0;
};

/// General, Atomic and ACCP are grouped by (v(0sr), v(2sr)); SR and
/// pre-Schreier by (0s, 2s); GCD and GCDs by 0s. Rows in descending key order.
TableBreakdown table_breakdown(MonoidClass c);

struct PairLemmaViolation {
  Profile profile;
  int a;
  int b;
};

/// For every profile and pair shapes A != B: Ar→Br, As→Bs, Ar→As and Br→Bs
/// all hold exactly when v(Asr) <= v(Bsr).
std::vector<PairLemmaViolation> verify_pair_lemma(const std::vector<Profile>& profiles);

nlohmann::ordered_json profiles_json(MonoidClass c, const std::vector<Profile>& profiles);
std::string profiles_csv(const std::vector<Profile>& profiles);
std::string profiles_markdown(MonoidClass c, const std::vector<Profile>& profiles);
nlohmann::ordered_json table_json(const TableBreakdown& t);
std::string table_csv(const TableBreakdown& t);
std::string table_markdown(const TableBreakdown& t);

}  // namespace monoidlab
