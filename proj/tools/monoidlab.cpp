// monoidlab: condition profiles, element classification, surveys and
// property verification from the command line.
//
// Exit codes: 0 success, 1 I/O failure, 2 bad arguments, 3 no registered
// claim for the surveyed family, 4 property violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "monoidlab/classify.hpp"
#include "monoidlab/conditions.hpp"
#include "monoidlab/families.hpp"
#include "monoidlab/profiles.hpp"
#include "monoidlab/survey.hpp"
#include "monoidlab/verify.hpp"

namespace {

using namespace monoidlab;

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoClaim = 3;
constexpr int kExitViolation = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string monoid;
  std::string element;
  std::string monoid_class;
  std::vector<std::string> conditions;
  std::optional<std::int64_t> bound;
  std::string emit = "json";
  std::string out;
  std::uint64_t seed = 0;
  Budget budget;
};

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw IoError("cannot open " + cfg.out + " for writing");
  f << text;
  if (!f.flush()) throw IoError("failed writing " + cfg.out);
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

MonoidClass parse_class(const std::string& name) {
  auto c = parse_monoid_class(name);
  if (!c) throw InvalidParameter("unknown class '" + name + "' (general, atomic, accp, sr, preschreier, gcd, gcds)");
  return *c;
}

std::vector<ConditionId> parse_conditions(const std::vector<std::string>& names,
                                          std::vector<ConditionId> fallback) {
  if (names.empty()) return fallback;
  std::vector<ConditionId> out;
  for (const auto& n : names) {
    auto id = parse_condition(n);
    if (!id) throw InvalidParameter("unknown condition '" + n + "'");
    out.push_back(*id);
  }
  return out;
}

std::vector<Element> elements_for(const MonoidHandle& m, const RunConfig& cfg) {
  auto sample = m->sample_elements();
  if (!sample.empty()) return sample;
  if (!cfg.bound) throw InvalidParameter(m.name() + " needs --bound");
  return m->window(*cfg.bound);
}

int cmd_profiles_enumerate(const RunConfig& cfg) {
  const auto c = parse_class(cfg.monoid_class);
  const auto profiles = enumerate(c);
  if (!cfg.out.empty()) {
    if (cfg.emit == "csv") {
      write_output(cfg, profiles_csv(profiles));
    } else if (cfg.emit == "md") {
      write_output(cfg, profiles_markdown(c, profiles));
    } else {
      write_output(cfg, dump(profiles_json(c, profiles)));
    }
  }
  std::cout << profiles.size() << "\n";
  return 0;
}

int cmd_profiles_tables(RunConfig cfg) {
  const auto t = table_breakdown(parse_class(cfg.monoid_class));
  if (cfg.emit == "json") {
    write_output(cfg, dump(table_json(t)));
  } else if (cfg.emit == "md") {
    write_output(cfg, table_markdown(t));
  } else {
    write_output(cfg, table_csv(t));
  }
  if (!cfg.out.empty()) std::cout << t.total << "\n";
  return 0;
}

int cmd_element_classify(const RunConfig& cfg) {
  const auto m = build(cfg.monoid);
  const auto a = m->parse(cfg.element);
  const auto report = classify(m, a, cfg.budget);
  const auto j = to_json(m, report);
  if (cfg.emit == "md") {
    std::ostringstream out;
    out << "# " << m.name() << " element " << j["element"].get<std::string>() << "\n\n";
    for (const char* key : {"unit", "sqf", "gpr", "atom"}) out << "- " << key << ": " << j[key].dump() << "\n";
    out << "- witnesses: " << j["witnesses"].dump() << "\n";
    write_output(cfg, out.str());
  } else {
    write_output(cfg, dump(j));
  }
  return 0;
}

int cmd_element_conditions(const RunConfig& cfg) {
  const auto m = build(cfg.monoid);
  const auto a = m->parse(cfg.element);
  const auto ids = parse_conditions(cfg.conditions, {all_conditions().begin(), all_conditions().end()});
  const auto results = check_conditions(m, a, ids, cfg.budget);
  if (cfg.emit == "csv" || cfg.emit == "md") {
    std::ostringstream out;
    out << (cfg.emit == "csv" ? "condition,answer,witness\n" : "| condition | answer | witness |\n|---|---|---|\n");
    for (const auto& r : results) {
      const std::string w = r.witness ? to_json(m, *r.witness).dump() : "";
      if (cfg.emit == "csv") {
        std::string quoted;
        for (char ch : w) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        out << to_string(r.id) << ',' << r.answer.label() << ",\"" << quoted << "\"\n";
      } else {
        out << "| " << to_string(r.id) << " | " << r.answer.label() << " | " << w << " |\n";
      }
    }
    write_output(cfg, out.str());
    return 0;
  }
  nlohmann::ordered_json j;
  j["monoid"] = m.name();
  j["element"] = m->format(a);
  auto& arr = j["conditions"] = nlohmann::ordered_json::array();
  for (const auto& r : results) arr.push_back(to_json(m, r));
  write_output(cfg, dump(j));
  return 0;
}

int cmd_survey(const RunConfig& cfg) {
  const auto m = build(cfg.monoid);
  const auto report = survey(m, cfg.bound, cfg.budget);
  if (cfg.emit == "csv") {
    write_output(cfg, to_csv(m, report));
  } else if (cfg.emit == "md") {
    write_output(cfg, to_markdown(m, report));
  } else {
    write_output(cfg, dump(to_json(m, report)));
  }
  auto& summary = cfg.out.empty() ? std::cerr : std::cout;
  if (!report.claim) {
    summary << m.name() << ": no registered claim for this family\n";
    return kExitNoClaim;
  }
  summary << m.name() << ": " << report.discrepancies.size() << " discrepancies with the registered claim\n";
  for (const auto& d : report.discrepancies) summary << "  " << d << "\n";
  return 0;
}

int report_suites(const RunConfig& cfg, const std::vector<SuiteResult>& suites) {
  if (!cfg.out.empty()) write_output(cfg, dump(to_json(suites)));
  bool ok = true;
  for (const auto& s : suites) {
    if (!s.applicable) {
      std::cout << "SKIP " << s.name << " (" << s.note << ")\n";
      continue;
    }
    std::cout << (s.passed() ? "PASS " : "FAIL ") << s.name << " (checked " << s.checked << ", skipped "
              << s.skipped << ")\n";
    if (!s.passed()) {
      ok = false;
      std::cout << "  counterexample: " << s.violations.front() << "\n";
    }
  }
  return ok ? 0 : kExitViolation;
}

int cmd_verify_lemmas(const RunConfig& cfg) {
  const auto m = build(cfg.monoid);
  if (!cfg.bound && m->sample_elements().empty()) throw InvalidParameter(m.name() + " needs --bound");
  return report_suites(cfg, verify_lemmas(m, cfg.bound.value_or(0), cfg.seed, cfg.budget));
}

int cmd_verify_uniqueness(const RunConfig& cfg) {
  const auto m = build(cfg.monoid);
  const auto ids = parse_conditions(cfg.conditions, {ConditionId::C6s, ConditionId::C3s});
  return report_suites(cfg, verify_uniqueness(m, elements_for(m, cfg), ids, cfg.budget));
}

void add_budget(CLI::App* app, RunConfig& cfg) {
  app->add_option("--budget-max-factor-count", cfg.budget.max_factor_count, "Longest factorization searched")
      ->capture_default_str();
  app->add_option("--budget-max-power", cfg.budget.max_power, "Largest n in a | c^n searches")->capture_default_str();
  app->add_option("--budget-max-divisors", cfg.budget.max_divisor_enumeration, "Cap on enumerated divisor candidates")
      ->capture_default_str();
  app->add_option("--budget-max-depth", cfg.budget.max_depth, "Normalization depth for chain families")
      ->capture_default_str();
}

void add_output(CLI::App* app, RunConfig& cfg, std::vector<std::string> formats) {
  app->add_option("--emit", cfg.emit, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  app->add_option("--out", cfg.out, "Write the report to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* env = std::getenv("MONOIDLAB_BUDGET_MAX_POWER")) {
    try {
      cfg.budget.max_power = std::stoll(env);
    } catch (const std::exception&) {
      std::cerr << "MONOIDLAB_BUDGET_MAX_POWER must be a positive integer\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Square-free and radical factorization conditions in commutative monoids"};
  app.require_subcommand(1);

  auto* profiles = app.add_subcommand("profiles", "Consistent condition profiles per monoid class");
  profiles->require_subcommand(1);
  auto* p_enum = profiles->add_subcommand("enumerate", "Print the profile count; --out writes the profiles");
  auto* p_tab = profiles->add_subcommand("tables", "Profile counts grouped by pair values");
  for (auto* sub : {p_enum, p_tab}) {
    sub->add_option("--class", cfg.monoid_class, "general, atomic, accp, sr, preschreier, gcd, gcds")->required();
  }
  add_output(p_enum, cfg, {"json", "csv", "md"});
  cfg.emit = "json";
  p_tab->add_option("--emit", cfg.emit, "Output format (default csv)")->check(CLI::IsMember({"json", "csv", "md"}));
  p_tab->add_option("--out", cfg.out, "Write the table to this file instead of stdout");

  auto* element = app.add_subcommand("element", "Classify one element");
  element->require_subcommand(1);
  auto* e_cls = element->add_subcommand("classify", "Unit, square-free, radical and atom tests");
  auto* e_cond = element->add_subcommand("conditions", "The eighteen conditions with witnesses");
  for (auto* sub : {e_cls, e_cond}) {
    sub->add_option("--monoid", cfg.monoid, "numerical:k, free:d, rationals, dyadic, chain:p,q, doublechain")
        ->required();
    sub->add_option("--element", cfg.element, "Element literal")->required();
    add_budget(sub, cfg);
  }
  add_output(e_cls, cfg, {"json", "md"});
  add_output(e_cond, cfg, {"json", "csv", "md"});
  e_cond->add_option("--conditions", cfg.conditions, "Subset of conditions, e.g. 0s,4'r")->delimiter(',');

  auto* surv = app.add_subcommand("survey", "Tally the conditions over an element window");
  surv->add_option("--monoid", cfg.monoid, "Monoid spec")->required();
  surv->add_option("--bound", cfg.bound, "Window bound");
  add_budget(surv, cfg);
  add_output(surv, cfg, {"json", "csv", "md"});

  auto* verify = app.add_subcommand("verify", "Property suites");
  verify->require_subcommand(1);
  auto* v_lem = verify->add_subcommand("lemmas", "Divisor-closure, coprimality and implication suites");
  auto* v_uni = verify->add_subcommand("uniqueness", "Witness uniqueness up to associates");
  for (auto* sub : {v_lem, v_uni}) {
    sub->add_option("--monoid", cfg.monoid, "Monoid spec")->required();
    sub->add_option("--bound", cfg.bound, "Window bound");
    sub->add_option("--seed", cfg.seed, "Seed for sampled suites")->capture_default_str();
    sub->add_option("--out", cfg.out, "Write suite results as JSON");
    add_budget(sub, cfg);
  }
  v_uni->add_option("--conditions", cfg.conditions, "Conditions among 1s, 2s, 3s, 6s, 5r (default 6s,3s)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (p_tab->parsed() && cfg.emit == "json" && p_tab->count("--emit") == 0) cfg.emit = "csv";

  try {
    cfg.budget.validate();
    if (p_enum->parsed()) return cmd_profiles_enumerate(cfg);
    if (p_tab->parsed()) return cmd_profiles_tables(cfg);
    if (e_cls->parsed()) return cmd_element_classify(cfg);
    if (e_cond->parsed()) return cmd_element_conditions(cfg);
    if (surv->parsed()) return cmd_survey(cfg);
    if (v_lem->parsed()) return cmd_verify_lemmas(cfg);
    if (v_uni->parsed()) return cmd_verify_uniqueness(cfg);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const MonoidError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
