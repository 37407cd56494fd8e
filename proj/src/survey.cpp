#include "monoidlab/survey.hpp"

#include <sstream>

namespace monoidlab {

namespace {

std::set<ConditionId> ids(std::initializer_list<const char*> names) {
  std::set<ConditionId> out;
  for (const auto* n : names) out.insert(*parse_condition(n));
  return out;
}

std::set<ConditionId> complement(const std::set<ConditionId>& s) {
  std::set<ConditionId> out;
  for (auto id : all_conditions()) {
    if (!s.contains(id)) out.insert(id);
  }
  return out;
}

PublishedClaim holds_exactly(std::string label, std::set<ConditionId> holds) {
  auto fails = complement(holds);
  return {std::move(label), std::move(holds), std::move(fails)};
}

std::string join(const std::set<ConditionId>& s) {
  std::string out;
  for (auto id : s) {
    if (!out.empty()) out += " ";
    out += to_string(id);
  }
  return out;
}

}  // namespace

std::optional<PublishedClaim> published_claim(const FamilySpec& spec) {
  const std::set<ConditionId> all(all_conditions().begin(), all_conditions().end());
  if (std::holds_alternative<NumericalSpec>(spec)) return holds_exactly("N>=k ∪ {0}: all conditions", all);
  if (const auto* f = std::get_if<FreeSpec>(&spec); f && f->d == 2) {
    return holds_exactly("N_0^2", ids({"0s", "1s", "2s", "3s", "4s", "4'r", "5s", "5'r", "6s"}));
  }
  if (std::holds_alternative<RationalsSpec>(spec) || std::holds_alternative<DyadicSpec>(spec)) {
    return holds_exactly("every element a square", ids({"4's", "4'r", "5's", "5'r", "6s", "6r"}));
  }
  if (const auto* c = std::get_if<ChainSpec>(&spec)) {
    if (c->p == 1 && c->q == 1) return holds_exactly("chain with p = q = 1: all conditions", all);
    if (c->q % 2 == 0) return holds_exactly("chain with even q", ids({"4s", "4's", "5s", "5's"}));
    if (c->q >= 3 && c->p != 1) {
      return holds_exactly("chain with odd q >= 3 and p != 1", ids({"4s", "4's", "5s", "5's"}));
    }
    return std::nullopt;
  }
  if (std::holds_alternative<DoubleChainSpec>(spec)) {
    return PublishedClaim{"double chain: 1s, 1r, 2s, 2r fail, others unstated", {}, ids({"1s", "1r", "2s", "2r"})};
  }
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Refuted:
      return "refuted";
    case Verdict::Undetermined:
      break;
  }
  return "undetermined";
}

SurveyReport survey(const MonoidHandle& m, std::optional<std::int64_t> bound, const Budget& budget) {
  SurveyReport report;
  report.monoid = m.name();
  std::vector<Element> elements = m->sample_elements();
  if (elements.empty()) {
    if (!bound) throw InvalidParameter(m.name() + " needs a window bound");
    elements = m->window(*bound);
    report.window = "bound " + std::to_string(*bound);
  } else {
    report.window = "fixed sample";
  }
  report.elements = elements.size();
  const auto spec = spec_of(m);
  // Both are 2-divisible with Sqf = {0}: every positive element answers
  // every condition the same way, so the sample decides the monoid.
  report.exact = std::holds_alternative<RationalsSpec>(spec) || std::holds_alternative<DyadicSpec>(spec);

  const std::vector<ConditionId> ids(all_conditions().begin(), all_conditions().end());
  for (const auto& a : elements) {
    const auto results = check_conditions(m, a, ids, budget);
    for (const auto& r : results) {
      auto& t = report.tallies[static_cast<std::size_t>(r.id)];
      if (r.answer.is_yes()) ++t.yes;
      if (r.answer.is_unknown()) ++t.unknown;
      if (r.answer.is_no()) {
        ++t.no;
        // The shortest literal is reported, ties broken by the literal text.
        if (!t.refuting_element) {
          t.refuting_element = a;
        } else {
          const auto fa = m->format(a);
          const auto fr = m->format(*t.refuting_element);
          if (std::pair(fa.size(), fa) < std::pair(fr.size(), fr)) t.refuting_element = a;
        }
      }
    }
  }
  for (auto id : all_conditions()) {
    const auto& t = report.tallies[static_cast<std::size_t>(id)];
    auto& v = report.verdicts[static_cast<std::size_t>(id)];
    v = t.no > 0 ? Verdict::Refuted : t.unknown > 0 ? Verdict::Undetermined : Verdict::Holds;
  }

  report.claim = published_claim(spec);
  if (report.claim) {
    for (auto id : all_conditions()) {
      const auto v = report.verdicts[static_cast<std::size_t>(id)];
      const auto& t = report.tallies[static_cast<std::size_t>(id)];
      const std::string name(to_string(id));
      if (report.claim->holds.contains(id) && v == Verdict::Refuted) {
        report.discrepancies.push_back(name + ": claimed to hold, refuted by " + m->format(*t.refuting_element));
      }
      if (report.claim->fails.contains(id) && v == Verdict::Holds) {
        report.discrepancies.push_back(name + ": claimed to fail, holds on all " +
                                       std::to_string(report.elements) + " surveyed elements");
      }
    }
  }
  return report;
}

nlohmann::ordered_json to_json(const MonoidHandle& m, const SurveyReport& report) {
  nlohmann::ordered_json j;
  j["monoid"] = report.monoid;
  j["window"] = report.window;
  j["elements"] = report.elements;
  j["exact"] = report.exact;
  auto& conds = j["conditions"] = nlohmann::ordered_json::object();
  std::set<ConditionId> holds;
  std::set<ConditionId> refuted;
  std::set<ConditionId> undetermined;
  for (auto id : all_conditions()) {
    const auto i = static_cast<std::size_t>(id);
    const auto& t = report.tallies[i];
    nlohmann::ordered_json c;
    c["yes"] = t.yes;
    c["no"] = t.no;
    c["unknown"] = t.unknown;
    if (t.refuting_element) c["refuting_witness"] = m->format(*t.refuting_element);
    conds[std::string(to_string(id))] = c;
    (report.verdicts[i] == Verdict::Holds       ? holds
     : report.verdicts[i] == Verdict::Refuted ? refuted
                                                : undetermined)
        .insert(id);
  }
  auto names = [](const std::set<ConditionId>& s) {
    auto arr = nlohmann::ordered_json::array();
    for (auto id : s) arr.push_back(std::string(to_string(id)));
    return arr;
  };
  j["conjecture"] = names(holds);
  j["refuted"] = names(refuted);
  j["undetermined"] = names(undetermined);
  if (report.claim) {
    j["paper_claim"] = names(report.claim->holds);
    j["paper_claim_fails"] = names(report.claim->fails);
    j["paper_claim_label"] = report.claim->label;
  } else {
    j["paper_claim"] = nullptr;
  }
  j["discrepancies"] = report.discrepancies;
  return j;
}

std::string to_csv(const MonoidHandle& m, const SurveyReport& report) {
  std::ostringstream out;
  out << "condition,yes,no,unknown,verdict,claim,refuting_witness\n";
  for (auto id : all_conditions()) {
    const auto i = static_cast<std::size_t>(id);
    const auto& t = report.tallies[i];
    std::string claim;
    if (report.claim) {
      claim = report.claim->holds.contains(id) ? "holds" : report.claim->fails.contains(id) ? "fails" : "unstated";
    }
    out << to_string(id) << ',' << t.yes << ',' << t.no << ',' << t.unknown << ',' << to_string(report.verdicts[i])
        << ',' << claim << ',';
    // Literals of free monoids contain commas.
    if (t.refuting_element) out << '"' << m->format(*t.refuting_element) << '"';
    out << '\n';
  }
  return out.str();
}

std::string to_markdown(const MonoidHandle& m, const SurveyReport& report) {
  std::ostringstream out;
  out << "# Survey of " << report.monoid << "\n\n";
  out << "Window: " << report.window << " (" << report.elements << " elements, "
      << (report.exact ? "exact" : "sample-based") << ")\n\n";
  out << "| condition | yes | no | unknown | verdict | refuting element |\n";
  out << "|---|---|---|---|---|---|\n";
  for (auto id : all_conditions()) {
    const auto i = static_cast<std::size_t>(id);
    const auto& t = report.tallies[i];
    out << "| " << to_string(id) << " | " << t.yes << " | " << t.no << " | " << t.unknown << " | "
        << to_string(report.verdicts[i]) << " | " << (t.refuting_element ? m->format(*t.refuting_element) : "")
        << " |\n";
  }
  if (report.claim) {
    std::set<ConditionId> holds(report.claim->holds);
    out << "\nClaim (" << report.claim->label << "): holds {" << join(holds) << "}, fails {"
        << join(report.claim->fails) << "}\n";
  }
  out << "\nDiscrepancies: " << report.discrepancies.size() << "\n";
  for (const auto& d : report.discrepancies) out << "- " << d << "\n";
  return out.str();
}

}  // namespace monoidlab
