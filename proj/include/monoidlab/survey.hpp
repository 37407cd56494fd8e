#pragma once

// Monoid-level condition surveys: tallies over an element window, a
// conjectured condition vector, and comparison with the published claim for
// the family when one is registered.

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "monoidlab/conditions.hpp"
#include "monoidlab/families.hpp"

namespace monoidlab {

/// Conditions claimed to hold and to fail; conditions in neither are unstated.
struct PublishedClaim {
  std::string label;
  std::set<ConditionId> holds;
  std::set<ConditionId> fails;
};

std::optional<PublishedClaim> published_claim(const FamilySpec& spec);

enum class Verdict { Holds, Refuted, Undetermined };
std::string_view to_string(Verdict v);

struct ConditionTally {
  std::size_t yes = 0;
  std::size_t no = 0;
  std::size_t unknown = 0;
  std::optional<Element> refuting_element;
};

struct SurveyReport {
  std::string monoid;
  std::string window;
  std::size_t elements = 0;
  /// True when the sampled answers are the answers for every element; false
  /// when "holds" only means "no refutation inside the window".
  bool exact = false;
  std::array<ConditionTally, kConditionCount> tallies{};
  std::array<Verdict, kConditionCount> verdicts{};
  std::optional<PublishedClaim> claim;
  std::vector<std::string> discrepancies;
};

/// Uses window(bound) when the family has one, else its fixed sample.
/// Throws InvalidParameter when neither is available.
SurveyReport survey(const MonoidHandle& m, std::optional<std::int64_t> bound, const Budget& budget);

nlohmann::ordered_json to_json(const MonoidHandle& m, const SurveyReport& report);
std::string to_csv(const MonoidHandle& m, const SurveyReport& report);
std::string to_markdown(const MonoidHandle& m, const SurveyReport& report);

}  // namespace monoidlab
