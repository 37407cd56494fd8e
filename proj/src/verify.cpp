#include "monoidlab/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "monoidlab/classify.hpp"

namespace monoidlab {

namespace {

constexpr std::size_t kMaxViolations = 20;
constexpr std::size_t kPairSamples = 4000;
constexpr std::size_t kSubsetSamples = 400;
constexpr std::size_t kFactorizationCap = 5000;

void violate(SuiteResult& s, std::string what) {
  if (s.violations.size() < kMaxViolations) s.violations.push_back(std::move(what));
}

SuiteResult not_applicable(std::string name, std::string note) {
  SuiteResult s;
  s.name = std::move(name);
  s.applicable = false;
  s.note = std::move(note);
  return s;
}

std::vector<Element> elements_of(const MonoidHandle& m, std::int64_t bound) {
  auto sample = m->sample_elements();
  return sample.empty() ? m->window(bound) : sample;
}

std::optional<std::vector<Element>> complete_divisors(const MonoidHandle& m, const Element& a, const Budget& budget) {
  try {
    auto ds = m->bounded_divisors(a, budget, std::nullopt);
    if (ds.complete) return std::move(ds.elements);
  } catch (const MonoidError&) {
  }
  return std::nullopt;
}

std::string show(const MonoidHandle& m, const std::vector<Element>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + m->format(xs[i]);
  return out + "]";
}

/// k-subsets of {0..n-1}: all of them when there are at most `cap`,
/// otherwise `cap` seeded samples.
std::vector<std::vector<std::size_t>> tuples(std::size_t n, std::size_t k, std::size_t cap, std::mt19937_64& rng) {
  std::vector<std::vector<std::size_t>> out;
  if (n < k) return out;
  double total = 1;
  for (std::size_t i = 0; i < k; ++i) total = total * static_cast<double>(n - i) / static_cast<double>(i + 1);
  if (total <= static_cast<double>(cap)) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
      if (pos == k) {
        out.push_back(idx);
        return;
      }
      for (std::size_t i = from; i < n; ++i) {
        idx[pos] = i;
        rec(pos + 1, i + 1);
      }
    };
    rec(0, 0);
    return out;
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t t = 0; t < cap; ++t) {
    std::vector<std::size_t> idx;
    while (idx.size() < k) {
      const auto i = pick(rng);
      if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
    }
    out.push_back(std::move(idx));
  }
  return out;
}

/// Ternary answer to "pairwise coprime", Unknown when any pair is Unknown.
Ternary pairwise_coprime(const MonoidHandle& m, const std::vector<Element>& xs, const Budget& budget) {
  bool unknown = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const auto t = coprime(m, xs[i], xs[j], budget);
      if (t.is_no()) return t;
      unknown = unknown || t.is_unknown();
    }
  }
  return unknown ? Ternary::unknown("coprimality undecided") : Ternary::yes();
}

SuiteResult divisor_closure(const MonoidHandle& m, const std::vector<Element>& elements, Membership kind,
                            const Budget& budget) {
  SuiteResult s;
  s.name = kind == Membership::SquareFree ? "sqf-divisor-closure" : "gpr-divisor-closure";
  for (const auto& a : elements) {
    if (!is_member(m, a, kind, budget).is_yes()) continue;
    const auto ds = complete_divisors(m, a, budget);
    if (!ds) {
      ++s.skipped;
      continue;
    }
    for (const auto& d : *ds) {
      const auto t = is_member(m, d, kind, budget);
      if (t.is_unknown()) {
        ++s.skipped;
      } else {
        ++s.checked;
        if (t.is_no()) violate(s, m->format(d) + " divides " + m->format(a) + " but is not in the set");
      }
    }
  }
  return s;
}

/// Factorizations into at least two non-units, factors in ascending order.
void factorizations(const MonoidHandle& m, const std::vector<Element>& nonunits, const Element& rest,
                    std::size_t from, std::vector<Element>& current,
                    const std::function<bool(const std::vector<Element>&)>& visit) {
  for (std::size_t i = from; i < nonunits.size(); ++i) {
    auto q = m->quotient(rest, nonunits[i]);
    if (!q) continue;
    current.push_back(nonunits[i]);
    if (m->is_unit(*q)) {
      if (current.size() >= 2 && !visit(current)) {
        current.pop_back();
        return;
      }
    } else {
      factorizations(m, nonunits, *q, i, current, visit);
    }
    current.pop_back();
  }
}

SuiteResult factor_coprimality(const MonoidHandle& m, const std::vector<Element>& elements, const Budget& budget) {
  SuiteResult s;
  s.name = "sqf-factor-coprimality";
  for (const auto& a : elements) {
    if (!is_square_free(m, a, budget).answer.is_yes()) continue;
    const auto ds = complete_divisors(m, a, budget);
    if (!ds) {
      ++s.skipped;
      continue;
    }
    std::vector<Element> nonunits;
    for (const auto& d : *ds) {
      if (!m->is_unit(d)) nonunits.push_back(d);
    }
    std::size_t seen = 0;
    std::vector<Element> current;
    factorizations(m, nonunits, a, 0, current, [&](const std::vector<Element>& fs) {
      const auto t = pairwise_coprime(m, fs, budget);
      if (t.is_unknown()) {
        ++s.skipped;
      } else {
        ++s.checked;
        if (t.is_no()) violate(s, m->format(a) + " = " + show(m, fs) + " with non-coprime factors");
      }
      return ++seen < kFactorizationCap;
    });
  }
  return s;
}

SuiteResult gpr_within_sqf(const MonoidHandle& m, const std::vector<Element>& elements, const Budget& budget,
                           bool equality) {
  SuiteResult s;
  s.name = equality ? "gpr-equals-sqf" : "gpr-subset-sqf";
  for (const auto& a : elements) {
    const auto g = is_radical_generator(m, a, budget).answer;
    const auto q = is_square_free(m, a, budget).answer;
    if (g.is_unknown() || q.is_unknown()) {
      ++s.skipped;
      continue;
    }
    ++s.checked;
    if (g.is_yes() && q.is_no()) violate(s, m->format(a) + " is a radical generator but not square-free");
    if (equality && g.is_no() && q.is_yes()) violate(s, m->format(a) + " is square-free but not a radical generator");
  }
  return s;
}

SuiteResult coprime_products(const MonoidHandle& m, const std::vector<Element>& sqf, const Budget& budget,
                             std::mt19937_64& rng) {
  SuiteResult s;
  s.name = "coprime-sqf-product";
  for (std::size_t k : {2, 3}) {
    for (const auto& idx : tuples(sqf.size(), k, kPairSamples, rng)) {
      std::vector<Element> xs;
      for (auto i : idx) xs.push_back(sqf[i]);
      const auto cp = pairwise_coprime(m, xs, budget);
      if (!cp.is_yes()) {
        if (cp.is_unknown()) ++s.skipped;
        continue;
      }
      Element prod = m->identity();
      for (const auto& x : xs) prod = m->mul(prod, x);
      const auto t = is_square_free(m, prod, budget).answer;
      if (t.is_unknown()) {
        ++s.skipped;
        continue;
      }
      ++s.checked;
      if (t.is_no()) violate(s, "coprime square-free " + show(m, xs) + " have non-square-free product");
    }
  }
  return s;
}

SuiteResult coprime_divisor_products(const MonoidHandle& m, const std::vector<Element>& elements,
                                     const Budget& budget, std::mt19937_64& rng) {
  SuiteResult s;
  s.name = "coprime-sqf-divisors-product";
  for (const auto& b : elements) {
    const auto sd = member_divisors(m, b, Membership::SquareFree, budget);
    if (!sd.complete) {
      ++s.skipped;
      continue;
    }
    std::vector<Element> ds;
    for (const auto& d : sd.elements) {
      if (!m->is_unit(d)) ds.push_back(d);
    }
    for (std::size_t k : {2, 3}) {
      for (const auto& idx : tuples(ds.size(), k, 200, rng)) {
        std::vector<Element> xs;
        for (auto i : idx) xs.push_back(ds[i]);
        const auto cp = pairwise_coprime(m, xs, budget);
        if (!cp.is_yes()) {
          if (cp.is_unknown()) ++s.skipped;
          continue;
        }
        Element prod = m->identity();
        for (const auto& x : xs) prod = m->mul(prod, x);
        ++s.checked;
        if (!m->divides(prod, b)) {
          violate(s, "coprime square-free divisors " + show(m, xs) + " of " + m->format(b) +
                         " have a product not dividing it");
        }
      }
    }
  }
  return s;
}

SuiteResult lcm_of_radicals(const MonoidHandle& m, const std::vector<Element>& gpr, const Budget& budget,
                            std::mt19937_64& rng) {
  SuiteResult s;
  s.name = "lcm-of-radicals";
  if (gpr.empty()) return s;
  std::uniform_int_distribution<std::size_t> pick(0, gpr.size() - 1);
  std::uniform_int_distribution<std::size_t> size(1, 4);
  for (std::size_t t = 0; t < kSubsetSamples; ++t) {
    std::vector<Element> xs;
    for (auto n = size(rng); n > 0; --n) xs.push_back(gpr[pick(rng)]);
    const auto l = lcm_of_set(m, xs);
    if (!l) {
      ++s.skipped;
      continue;
    }
    const auto r = is_radical_generator(m, *l, budget).answer;
    if (r.is_unknown()) {
      ++s.skipped;
      continue;
    }
    ++s.checked;
    if (r.is_no()) violate(s, "lcm of " + show(m, xs) + " = " + m->format(*l) + " is not a radical generator");
  }
  return s;
}

SuiteResult gcd_of_divisor_subsets(const MonoidHandle& m, const std::vector<Element>& elements, const Budget& budget,
                                   std::mt19937_64& rng) {
  SuiteResult s;
  s.name = "gcd-of-divisor-subsets";
  if (elements.empty()) return s;
  std::uniform_int_distribution<std::size_t> pick_a(0, elements.size() - 1);
  std::uniform_int_distribution<std::size_t> size(1, 4);
  for (std::size_t t = 0; t < kSubsetSamples; ++t) {
    const auto& a = elements[pick_a(rng)];
    const auto ds = complete_divisors(m, a, budget);
    if (!ds) {
      ++s.skipped;
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick(0, ds->size() - 1);
    std::vector<Element> xs;
    for (auto n = size(rng); n > 0; --n) xs.push_back((*ds)[pick(rng)]);
    ++s.checked;
    if (!gcd_of_set(m, xs)) violate(s, "divisors " + show(m, xs) + " of " + m->format(a) + " have no gcd");
  }
  return s;
}

struct Rule {
  ConditionId from;
  ConditionId to;
};

std::vector<Rule> implication_rules(const MonoidHandle& m) {
  using C = ConditionId;
  std::vector<Rule> rules;
  for (bool radical : {false, true}) {
    auto c = [&](Shape shape) { return make_condition(shape, radical); };
    rules.push_back({c(Shape::Two), c(Shape::One)});
    rules.push_back({c(Shape::Two), c(Shape::Three)});
    rules.push_back({c(Shape::Three), c(Shape::Six)});
    rules.push_back({c(Shape::Two), c(Shape::Five)});
  }
  rules.push_back({C::C4r, C::C4pr});
  rules.push_back({C::C5r, C::C5pr});
  for (auto shape : {Shape::Zero, Shape::One, Shape::Two, Shape::Three, Shape::Four, Shape::Five, Shape::Six}) {
    rules.push_back({make_condition(shape, true), make_condition(shape, false)});
  }
  if (m.capabilities().declares(MonoidClass::PreSchreier)) {
    rules.push_back({C::C1s, C::C2s});
    rules.push_back({C::C1s, C::C4s});
    rules.push_back({C::C4s, C::C5s});
  }
  return rules;
}

}  // namespace

std::vector<SuiteResult> verify_lemmas(const MonoidHandle& m, std::int64_t bound, std::uint64_t seed,
                                       const Budget& budget) {
  std::mt19937_64 rng(seed);
  const auto elements = elements_of(m, bound);
  const auto caps = m.capabilities();
  std::vector<Element> sqf;
  std::vector<Element> gpr;
  for (const auto& a : elements) {
    if (is_square_free(m, a, budget).answer.is_yes()) sqf.push_back(a);
    if (is_radical_generator(m, a, budget).answer.is_yes()) gpr.push_back(a);
  }

  std::vector<SuiteResult> out;
  out.push_back(divisor_closure(m, elements, Membership::SquareFree, budget));
  out.push_back(divisor_closure(m, elements, Membership::Radical, budget));
  out.push_back(factor_coprimality(m, elements, budget));
  out.push_back(gpr_within_sqf(m, elements, budget, false));
  if (caps.declares(MonoidClass::PreSchreier)) {
    out.push_back(coprime_products(m, sqf, budget, rng));
    out.push_back(coprime_divisor_products(m, elements, budget, rng));
    out.push_back(gpr_within_sqf(m, elements, budget, true));
  } else {
    for (const char* name : {"coprime-sqf-product", "coprime-sqf-divisors-product", "gpr-equals-sqf"}) {
      out.push_back(not_applicable(name, "family is not declared pre-Schreier"));
    }
  }
  if (caps.declares(MonoidClass::GCD)) {
    out.push_back(lcm_of_radicals(m, gpr, budget, rng));
  } else {
    out.push_back(not_applicable("lcm-of-radicals", "family is not declared GCD"));
  }
  if (caps.declares(MonoidClass::GCDs)) {
    out.push_back(gcd_of_divisor_subsets(m, elements, budget, rng));
  } else {
    out.push_back(not_applicable("gcd-of-divisor-subsets", "family is not declared GCDs"));
  }
  out.push_back(verify_implications(m, elements, budget));
  out.push_back(verify_witnesses(m, elements, budget));
  return out;
}

SuiteResult verify_implications(const MonoidHandle& m, const std::vector<Element>& elements, const Budget& budget) {
  SuiteResult s;
  s.name = "element-implications";
  const auto rules = implication_rules(m);
  std::vector<ConditionId> ids(all_conditions().begin(), all_conditions().end());
  for (const auto& a : elements) {
    const auto results = check_conditions(m, a, ids, budget);
    auto answer = [&](ConditionId id) { return results[static_cast<std::size_t>(id)].answer; };
    for (const auto& rule : rules) {
      const auto lhs = answer(rule.from);
      const auto rhs = answer(rule.to);
      if (lhs.is_unknown() || (lhs.is_yes() && rhs.is_unknown())) {
        ++s.skipped;
        continue;
      }
      ++s.checked;
      if (lhs.is_yes() && rhs.is_no()) {
        violate(s, std::string(to_string(rule.from)) + " holds but " + std::string(to_string(rule.to)) +
                       " fails at " + m->format(a));
      }
    }
  }
  s.note = std::to_string(rules.size()) + " rules per element";
  return s;
}

SuiteResult verify_witnesses(const MonoidHandle& m, const std::vector<Element>& elements, const Budget& budget) {
  SuiteResult s;
  s.name = "witness-validity";
  for (const auto& a : elements) {
    for (auto id : all_conditions()) {
      const auto r = check_condition(m, a, id, budget);
      if (!r.answer.is_yes()) continue;
      const auto t = validate_witness(m, a, id, *r.witness, budget);
      if (t.is_unknown()) {
        ++s.skipped;
        continue;
      }
      ++s.checked;
      if (t.is_no()) violate(s, std::string(to_string(id)) + " witness for " + m->format(a) + " does not validate");
    }
  }
  return s;
}

std::vector<SuiteResult> verify_uniqueness(const MonoidHandle& m, const std::vector<Element>& elements,
                                           const std::vector<ConditionId>& ids, const Budget& budget) {
  std::vector<SuiteResult> out;
  for (auto id : ids) {
    SuiteResult s;
    s.name = "unique-" + std::string(to_string(id));
    for (const auto& a : elements) {
      const auto r = check_uniqueness(m, a, id, budget);
      if (!r.complete) {
        ++s.skipped;
        continue;
      }
      ++s.checked;
      if (!r.unique) {
        violate(s, m->format(a) + ": " + to_json(m, r.violation->first).dump() + " vs " +
                       to_json(m, r.violation->second).dump());
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

nlohmann::ordered_json to_json(const std::vector<SuiteResult>& suites) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : suites) {
    nlohmann::ordered_json j;
    j["suite"] = s.name;
    j["applicable"] = s.applicable;
    j["passed"] = s.passed();
    j["checked"] = s.checked;
    j["skipped"] = s.skipped;
    j["violations"] = s.violations;
    if (!s.note.empty()) j["note"] = s.note;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace monoidlab
