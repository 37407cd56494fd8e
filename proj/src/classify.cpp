#include "monoidlab/classify.hpp"

#include <functional>

namespace monoidlab {

namespace {

/// Least non-unit b with b^2 | a among the enumerable divisors, then the
/// square-root shortcut a = t^2 * 1.
std::optional<std::pair<Element, Element>> square_witness(const MonoidHandle& m, const Element& a,
                                                          const Budget& budget, bool& complete) {
  complete = false;
  try {
    const auto ds = m->bounded_divisors(a, budget, std::nullopt);
    for (const auto& b : ds.elements) {
      if (m->is_unit(b)) continue;
      if (auto c = m->quotient(a, m->mul(b, b))) return std::make_pair(b, *c);
    }
    complete = ds.complete;
  } catch (const DivisorSetInfinite&) {
  } catch (const BudgetExhausted&) {
  }
  if (auto t = m->square_root(a); t && !m->is_unit(*t)) return std::make_pair(*t, m->identity());
  return std::nullopt;
}

std::optional<std::pair<Element, std::int64_t>> radical_refutation(const MonoidHandle& m, const Element& a,
                                                                   const Budget& budget) {
  for (const auto& b : m->radical_probes(a, budget)) {
    if (m->divides(a, b)) continue;
    const auto ps = m->least_power(a, b, budget);
    if (ps.answer.is_yes()) return std::make_pair(b, *ps.n);
  }
  // a = t^2 with a ∤ t refutes via n = 2.
  if (auto t = m->square_root(a); t && !m->divides(a, *t)) return std::make_pair(*t, std::int64_t{2});
  return std::nullopt;
}

Classification from_square_free(const MonoidHandle& m, const Classification& sq) {
  // a = b^2 c divides (bc)^2 but not bc, since b is not a unit.
  if (!sq.answer.is_no()) return {sq.answer, std::nullopt, std::nullopt, std::nullopt};
  Classification out{Ternary::no(), std::nullopt, std::nullopt, std::nullopt};
  if (sq.b && sq.c) {
    out.b = m->mul(*sq.b, *sq.c);
    out.n = 2;
  }
  return out;
}

std::vector<Element> filter_window(const MonoidHandle& m, std::int64_t bound,
                                   const std::function<bool(const Element&)>& keep) {
  std::vector<Element> out;
  for (const auto& a : m->window(bound)) {
    if (keep(a)) out.push_back(a);
  }
  return out;
}

}  // namespace

Classification is_square_free(const MonoidHandle& m, const Element& a, const Budget& budget) {
  m->validate(a);
  if (m->is_unit(a)) return {Ternary::yes(), std::nullopt, std::nullopt, std::nullopt};
  const auto analytic = m->analytic_square_free(a);
  if (analytic && *analytic) return {Ternary::yes(), std::nullopt, std::nullopt, std::nullopt};
  bool complete = false;
  if (auto w = square_witness(m, a, budget, complete)) {
    return {Ternary::no(), w->first, w->second, std::nullopt};
  }
  if (analytic || complete) {
    return {Ternary::from_bool(!analytic), std::nullopt, std::nullopt, std::nullopt};
  }
  return {Ternary::unknown("no b with b^2 | a among divisors within max_divisor_enumeration=" +
                           std::to_string(budget.max_divisor_enumeration)),
          std::nullopt, std::nullopt, std::nullopt};
}

Classification is_radical_generator(const MonoidHandle& m, const Element& a, const Budget& budget) {
  m->validate(a);
  if (m->is_unit(a)) return {Ternary::yes(), std::nullopt, std::nullopt, std::nullopt};
  if (const auto analytic = m->analytic_radical_generator(a)) {
    if (*analytic) return {Ternary::yes(), std::nullopt, std::nullopt, std::nullopt};
    if (auto w = radical_refutation(m, a, budget)) return {Ternary::no(), w->first, std::nullopt, w->second};
    return from_square_free(m, is_square_free(m, a, budget));
  }
  if (m.capabilities().declares(MonoidClass::SR)) {
    return from_square_free(m, is_square_free(m, a, budget));
  }
  if (auto w = radical_refutation(m, a, budget)) return {Ternary::no(), w->first, std::nullopt, w->second};
  return {Ternary::unknown("no refuting b among radical probes"), std::nullopt, std::nullopt, std::nullopt};
}

Classification is_atom(const MonoidHandle& m, const Element& a, const Budget& budget) {
  m->validate(a);
  if (m->is_unit(a)) return {Ternary::no(), std::nullopt, std::nullopt, std::nullopt};
  bool complete = false;
  try {
    const auto ds = m->bounded_divisors(a, budget, std::nullopt);
    for (const auto& b : ds.elements) {
      if (m->is_unit(b)) continue;
      auto c = m->quotient(a, b);
      if (c && !m->is_unit(*c)) return {Ternary::no(), b, *c, std::nullopt};
    }
    complete = ds.complete;
  } catch (const DivisorSetInfinite&) {
  } catch (const BudgetExhausted&) {
  }
  if (complete) return {Ternary::yes(), std::nullopt, std::nullopt, std::nullopt};
  if (auto t = m->square_root(a); t && !m->is_unit(*t)) return {Ternary::no(), *t, *t, std::nullopt};
  return {Ternary::unknown("divisor set not exhausted"), std::nullopt, std::nullopt, std::nullopt};
}

Ternary is_member(const MonoidHandle& m, const Element& a, Membership kind, const Budget& budget) {
  // Answer only: skip the witness search when an analytic classifier decides.
  if (m->is_unit(a)) return Ternary::yes();
  const bool via_sqf = kind == Membership::SquareFree || m.capabilities().declares(MonoidClass::SR);
  const auto analytic = via_sqf ? m->analytic_square_free(a) : m->analytic_radical_generator(a);
  if (analytic) return Ternary::from_bool(*analytic);
  return kind == Membership::SquareFree ? is_square_free(m, a, budget).answer
                                        : is_radical_generator(m, a, budget).answer;
}

DivisorSet member_divisors(const MonoidHandle& m, const Element& a, Membership kind, const Budget& budget) {
  DivisorSet candidates;
  if (auto closed = m->closed_form_square_free_set()) {
    // Radical generators are square-free, so the closed form bounds both sets.
    for (const auto& d : *closed) {
      if (m->divides(d, a)) candidates.elements.push_back(d);
    }
  } else {
    // Square-free elements of exponent-vector families have every exponent
    // at most 1 at every depth, so larger candidates are skipped.
    const auto cap = a.is_vector() ? std::optional<std::int64_t>{1} : std::nullopt;
    try {
      candidates = m->bounded_divisors(a, budget, cap);
    } catch (const BudgetExhausted&) {
      return {{}, false};
    }
  }
  DivisorSet out;
  out.complete = candidates.complete;
  for (const auto& d : candidates.elements) {
    const auto t = is_member(m, d, kind, budget);
    if (t.is_yes()) out.elements.push_back(d);
    if (t.is_unknown()) out.complete = false;
  }
  return out;
}

std::vector<Element> sqf_set(const MonoidHandle& m, std::int64_t bound, const Budget& budget) {
  return filter_window(m, bound, [&](const Element& a) { return is_square_free(m, a, budget).answer.is_yes(); });
}

std::vector<Element> gpr_set(const MonoidHandle& m, std::int64_t bound, const Budget& budget) {
  return filter_window(m, bound,
                       [&](const Element& a) { return is_radical_generator(m, a, budget).answer.is_yes(); });
}

std::vector<Element> irr_set(const MonoidHandle& m, std::int64_t bound, const Budget& budget) {
  return filter_window(m, bound, [&](const Element& a) { return is_atom(m, a, budget).answer.is_yes(); });
}

ClassificationReport classify(const MonoidHandle& m, const Element& a, const Budget& budget) {
  m->validate(a);
  return {a, m->is_unit(a), is_square_free(m, a, budget), is_radical_generator(m, a, budget),
          is_atom(m, a, budget)};
}

nlohmann::ordered_json to_json(const MonoidHandle& m, const ClassificationReport& report) {
  nlohmann::ordered_json j;
  j["element"] = m->format(report.element);
  j["unit"] = report.unit;
  j["sqf"] = std::string(report.sqf.answer.label());
  j["gpr"] = std::string(report.gpr.answer.label());
  j["atom"] = std::string(report.atom.answer.label());
  auto witness = [&](const Classification& c, const char* b_key, const char* c_key) {
    nlohmann::ordered_json w = nlohmann::ordered_json::object();
    if (c.b) w[b_key] = m->format(*c.b);
    if (c.c) w[c_key] = m->format(*c.c);
    if (c.n) w["n"] = *c.n;
    if (c.answer.is_unknown()) w["reason"] = c.answer.reason();
    return w;
  };
  nlohmann::ordered_json ws = nlohmann::ordered_json::object();
  if (auto w = witness(report.sqf, "b", "c"); !w.empty()) ws["sqf"] = w;
  if (auto w = witness(report.gpr, "b", "c"); !w.empty()) ws["gpr"] = w;
  if (auto w = witness(report.atom, "b", "c"); !w.empty()) ws["atom"] = w;
  j["witnesses"] = ws;
  return j;
}

}  // namespace monoidlab
