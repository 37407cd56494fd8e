#include <doctest.h>

#include "monoidlab/profiles.hpp"
#include "monoidlab/survey.hpp"
#include "monoidlab/verify.hpp"

using namespace monoidlab;

namespace {

Profile holding(const SurveyReport& r) {
  Profile p = 0;
  for (auto id : all_conditions()) p = with(p, id, r.verdicts[static_cast<std::size_t>(id)] == Verdict::Holds);
  return p;
}

Profile make(std::initializer_list<ConditionId> ids) {
  Profile p = 0;
  for (auto id : ids) p = with(p, id, true);
  return p;
}

}  // namespace

TEST_CASE("rationals and dyadics give the exact square vector") {
  const auto expect = make({ConditionId::C4ps, ConditionId::C4pr, ConditionId::C5ps, ConditionId::C5pr,
                            ConditionId::C6s, ConditionId::C6r});
  for (const char* spec : {"rationals", "dyadic"}) {
    const auto m = build(spec);
    const auto r = survey(m, std::nullopt, Budget{});
    CAPTURE(std::string(spec));
    CHECK(r.exact);
    CHECK(holding(r) == expect);
    CHECK(r.discrepancies.empty());
    for (auto id : all_conditions()) {
      const auto& t = r.tallies[static_cast<std::size_t>(id)];
      CHECK(t.unknown == 0);
      if (!get(expect, id)) CHECK(t.refuting_element.has_value());
    }
  }
}

TEST_CASE("chain:1,1 satisfies every condition on its window") {
  const auto r = survey(build("chain:1,1"), 3, Budget{});
  CHECK(holding(r) == kAllTrue);
  CHECK(r.discrepancies.empty());
  CHECK_FALSE(r.exact);
}

TEST_CASE("chain:1,2 refutes 2s at y1") {
  const auto m = build("chain:1,2");
  const auto r = survey(m, 3, Budget{});
  const auto& t = r.tallies[static_cast<std::size_t>(ConditionId::C2s)];
  REQUIRE(t.refuting_element);
  CHECK(m->format(*t.refuting_element) == "y1");
  CHECK(check_condition(m, *t.refuting_element, ConditionId::C2s, Budget{}).answer.is_no());
  REQUIRE(r.claim);
}

TEST_CASE("surveys with claims report discrepancies instead of failing") {
  for (const char* spec : {"free:2", "numerical:2"}) {
    const auto r = survey(build(spec), 4, Budget{});
    CAPTURE(std::string(spec));
    REQUIRE(r.claim);
    CHECK_FALSE(r.discrepancies.empty());
  }
  CHECK_FALSE(survey(build("free:3"), 2, Budget{}).claim.has_value());
}

TEST_CASE("discrepancy-free survey vectors fit the declared classes") {
  for (const char* spec : {"rationals", "dyadic", "chain:1,1", "free:1", "numerical:1"}) {
    const auto m = build(spec);
    const auto r = m->sample_elements().empty() ? survey(m, 3, Budget{}) : survey(m, std::nullopt, Budget{});
    CAPTURE(std::string(spec));
    for (auto c : m->capabilities().declared_classes) {
      CAPTURE(to_string(c));
      CHECK(is_consistent(holding(r), constraint_set(c)));
    }
  }
}

TEST_CASE("survey output is stable across runs") {
  const auto m = build("numerical:3");
  const auto a = to_json(m, survey(m, 10, Budget{})).dump();
  const auto b = to_json(m, survey(m, 10, Budget{})).dump();
  CHECK(a == b);
  CHECK(to_csv(m, survey(m, 10, Budget{})).rfind("condition,yes,no,unknown", 0) == 0);
}

TEST_CASE("lemma suites pass on free:2 and numerical:2") {
  for (const auto& s : verify_lemmas(build("free:2"), 4, 1, Budget{})) {
    CAPTURE(s.name);
    CHECK(s.applicable);
    CHECK(s.passed());
    CHECK(s.checked > 0);
  }
  for (const auto& s : verify_lemmas(build("numerical:2"), 12, 1, Budget{})) {
    CAPTURE(s.name);
    CHECK(s.passed());
  }
}

TEST_CASE("implication and witness suites") {
  for (const char* spec : {"numerical:2", "free:2", "chain:1,2"}) {
    const auto m = build(spec);
    const auto w = m->window(3);
    CAPTURE(std::string(spec));
    const auto imp = verify_implications(m, w, Budget{});
    CHECK(imp.passed());
    CHECK(imp.checked > 0);
    CHECK(verify_witnesses(m, w, Budget{}).passed());
  }
}

TEST_CASE("uniqueness suites on free monoids") {
  const auto f1 = build("free:1");
  for (const auto& s : verify_uniqueness(f1, f1->window(20), {ConditionId::C6s, ConditionId::C3s}, Budget{})) {
    CHECK(s.passed());
    CHECK(s.checked == 21);
  }
}

TEST_CASE("class-specific implications are gated by declared classes") {
  // numerical:2 is not pre-Schreier, so 1s does not force 4s there; the class
  // specific implications must not be applied to it.
  const auto m = build("numerical:2");
  CHECK(verify_implications(m, m->window(12), Budget{}).passed());
  const auto j = to_json(verify_lemmas(m, 6, 1, Budget{}));
  CHECK(j.is_array());
  CHECK(j.size() > 0);
}
