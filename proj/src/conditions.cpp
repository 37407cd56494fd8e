#include "monoidlab/conditions.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "monoidlab/families.hpp"

namespace monoidlab {

namespace {

constexpr std::array<std::string_view, kConditionCount> kNames = {
    "0s", "0r", "1s", "1r", "2s", "2r", "3s", "3r", "4s", "4r",
    "4's", "4'r", "5s", "5r", "5's", "5'r", "6s", "6r"};

using Factors = std::vector<Element>;

/// In Chain(p, q) with p >= 2 or q >= 2 every square-free element is y-free,
/// y-freeness survives products and passes to divisors, and a y-bearing
/// element is divisible by x_M for every M beyond its depth. Such an
/// element therefore fails 0-5 and 5' (both variants, Gpr ⊆ Sqf). For 6,
/// a = b^2 c with c y-free needs an even y exponent at some depth, and the
/// exponent m * q^k stays odd when m and q are odd.
bool chain_y_refutes(const MonoidHandle& m, const Element& a, Shape shape) {
  if (shape == Shape::FourPrime) return false;
  FamilySpec spec;
  try {
    spec = spec_of(m);
  } catch (const Unsupported&) {
    return false;
  }
  const auto* chain = std::get_if<ChainSpec>(&spec);
  if (chain == nullptr || (chain->p == 1 && chain->q == 1)) return false;
  const auto y = to_chain_form(*chain, a).y;
  if (shape == Shape::Six) return y % 2 == 1 && chain->q % 2 == 1;
  return y > 0;
}

class Engine {
 public:
  /// `cache` may be shared between engines for the same element and kind.
  Engine(const MonoidHandle& m, const Element& a, ConditionId id, const Budget& budget,
         std::optional<DivisorSet>* cache = nullptr)
      : m_(m), a_(a), id_(id), budget_(budget), kind_(membership_of(id)),
        closed_forms_(kind_ == Membership::SquareFree || m.capabilities().declares(MonoidClass::SR)),
        cache_(cache ? cache : &own_) {}

  ConditionResult run() {
    // With only units in S, every product of shape 0-5 is a unit.
    if (shape_of(id_) <= Shape::Five && shape_of(id_) != Shape::FourPrime && !m_->is_unit(a_) && S().complete &&
        std::all_of(S().elements.begin(), S().elements.end(), [&](const Element& x) { return m_->is_unit(x); })) {
      return {id_, Ternary::no(), std::nullopt};
    }
    std::optional<Witness> w;
    switch (shape_of(id_)) {
      case Shape::Zero:
        w = to_factors(peel(a_, 0));
        break;
      case Shape::One:
        w = to_factors(powers(1, a_, {}));
        break;
      case Shape::Two:
        w = to_factors(chain());
        break;
      case Shape::Three:
        w = to_factors(binary(a_, 0));
        break;
      case Shape::Four:
        w = four();
        break;
      case Shape::FourPrime:
        w = four_prime();
        break;
      case Shape::Five:
        w = five();
        break;
      case Shape::FivePrime:
        w = five_prime();
        break;
      case Shape::Six:
        w = six();
        break;
    }
    if (w) return {id_, Ternary::yes(), w};
    if (exhaustive_) return {id_, Ternary::no(), std::nullopt};
    return {id_, Ternary::unknown(reason_), std::nullopt};
  }

  // Enumerate every witness instead of stopping at the first.
  WitnessEnumeration run_all() {
    collect_ = true;
    WitnessEnumeration out;
    switch (id_) {
      case ConditionId::C1s:
        powers(1, a_, {});
        break;
      case ConditionId::C2s:
        chain();
        break;
      case ConditionId::C3s:
        binary(a_, 0);
        break;
      case ConditionId::C6s:
        six();
        break;
      case ConditionId::C5r:
        five();
        break;
      default:
        throw InvalidParameter("witness enumeration supports 1s, 2s, 3s, 6s and 5r, not " +
                               std::string(to_string(id_)));
    }
    out.witnesses = std::move(all_);
    out.complete = exhaustive_;
    return out;
  }

  Ternary squares_divide(const Element& b) {
    if (closed_forms_) {
      if (auto h = m_->square_free_divisors_squared(b)) return Ternary::from_bool(*h);
    }
    if (!S().complete) return Ternary::unknown("square-free/radical divisors not exhausted");
    for (const auto& d : S().elements) {
      if (m_->divides(d, b) && !m_->divides(m_->mul(d, d), b)) return Ternary::no();
    }
    return Ternary::yes();
  }

  Ternary all_divide(const Element& c) {
    if (closed_forms_) {
      if (auto rad = m_->square_free_radical(a_)) return Ternary::from_bool(m_->divides(*rad, c));
    }
    if (!S().complete) return Ternary::unknown("square-free/radical divisors not exhausted");
    for (const auto& d : S().elements) {
      if (!m_->divides(d, c)) return Ternary::no();
    }
    return Ternary::yes();
  }

 private:
  void lose(const std::string& why) {
    if (exhaustive_) reason_ = why;
    exhaustive_ = false;
  }

  const DivisorSet& S() {
    if (!*cache_) *cache_ = member_divisors(m_, a_, kind_, budget_);
    if (!(*cache_)->complete) lose("square-free/radical divisors of the element not exhausted");
    return **cache_;
  }

  bool depth_ok(std::size_t depth) {
    if (static_cast<std::int64_t>(depth) < budget_.max_factor_count) return true;
    lose("max_factor_count=" + std::to_string(budget_.max_factor_count) + " reached");
    return false;
  }

  bool member(const Element& x) {
    if (std::binary_search(S().elements.begin(), S().elements.end(), x)) return true;
    const auto t = is_member(m_, x, kind_, budget_);
    if (t.is_unknown()) lose(t.reason());
    return t.is_yes();
  }

  Ternary coprime_to(const Element& x, const Element& y) {
    auto t = coprime(m_, x, y, budget_);
    if (t.is_unknown()) lose(t.reason());
    return t;
  }

  /// Records a witness; returns true when the search should stop.
  bool found(std::optional<Factors>& slot, Factors f) {
    if (collect_) {
      all_.push_back(Witness{std::move(f), std::nullopt, std::nullopt, std::nullopt, std::nullopt});
      return false;
    }
    slot = std::move(f);
    return true;
  }

  bool found(std::optional<Witness>& slot, Witness w) {
    if (collect_) {
      all_.push_back(std::move(w));
      return false;
    }
    slot = std::move(w);
    return true;
  }

  static std::optional<Witness> to_factors(std::optional<Factors> f) {
    if (!f) return std::nullopt;
    return Witness{std::move(*f), std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  }

  // a = s_1 ... s_n: peel one non-unit factor at a time, memoizing dead ends.
  std::optional<Factors> peel(const Element& rest, std::size_t depth) {
    if (member(rest)) return Factors{rest};
    if (dead_.contains(rest) || !depth_ok(depth)) return std::nullopt;
    for (const auto& s : S().elements) {
      if (m_->is_unit(s)) continue;
      auto r = m_->quotient(rest, s);
      if (!r || m_->is_unit(*r)) continue;
      if (auto tail = peel(*r, depth + 1)) {
        tail->insert(tail->begin(), s);
        return tail;
      }
    }
    dead_.insert(rest);
    return std::nullopt;
  }

  // a = s_1 s_2^2 ... s_n^n, pairwise coprime. If no non-unit s has s^i | rest
  // then none has s^j | rest for j > i, so the branch is dead.
  std::optional<Factors> powers(std::size_t i, const Element& rest, Factors chosen) {
    if (m_->is_unit(rest)) {
      if (chosen.empty()) chosen.push_back(rest);
      std::optional<Factors> slot;
      found(slot, std::move(chosen));
      return slot;
    }
    if (!depth_ok(i - 1)) return std::nullopt;
    std::vector<std::pair<Element, Element>> options;
    // In pre-Schreier monoids s_i ⊥ s_j for all j > i gives s_i ⊥ rest / s_i^i.
    const bool schreier = m_.capabilities().declares(MonoidClass::PreSchreier);
    bool any = false;
    for (const auto& s : S().elements) {
      if (m_->is_unit(s)) continue;
      auto r = m_->quotient(rest, power(m_, s, static_cast<std::int64_t>(i)));
      if (!r) continue;
      any = true;
      if (!schreier || !coprime(m_, s, *r, budget_).is_no()) options.emplace_back(s, *r);
    }
    if (!any) return std::nullopt;
    {
      Factors next = chosen;
      next.push_back(m_->identity());
      if (auto w = powers(i + 1, rest, std::move(next))) return w;
    }
    for (const auto& [s, r] : options) {
      const bool ok = std::all_of(chosen.begin(), chosen.end(),
                                  [&](const Element& t) { return coprime_to(s, t).is_yes(); });
      if (!ok) continue;
      Factors next = chosen;
      next.push_back(s);
      if (auto w = powers(i + 1, r, std::move(next))) return w;
    }
    return std::nullopt;
  }

  // a = s_1 ... s_n with s_i | s_{i+1}, built from the top factor down.
  std::optional<Factors> chain() {
    if (m_->is_unit(a_)) {
      std::optional<Factors> slot;
      found(slot, Factors{a_});
      return slot;
    }
    return chain_from(a_, std::nullopt, {});
  }

  std::optional<Factors> chain_from(const Element& rest, const std::optional<Element>& cap, Factors top_down) {
    if (m_->is_unit(rest)) {
      std::reverse(top_down.begin(), top_down.end());
      std::optional<Factors> slot;
      found(slot, std::move(top_down));
      return slot;
    }
    if (!collect_ && dead_pairs_.contains({rest, cap.value_or(rest)})) return std::nullopt;
    if (!depth_ok(top_down.size())) return std::nullopt;
    for (const auto& s : S().elements) {
      if (m_->is_unit(s) || (cap && !m_->divides(s, *cap))) continue;
      auto r = m_->quotient(rest, s);
      if (!r) continue;
      Factors next = top_down;
      next.push_back(s);
      if (auto w = chain_from(*r, s, std::move(next))) return w;
    }
    if (!collect_) dead_pairs_.insert({rest, cap.value_or(rest)});
    return std::nullopt;
  }

  // a = s_0 t^2 with t of the same shape.
  std::optional<Factors> binary(const Element& x, std::size_t depth) {
    if (!collect_ && dead_.contains(x)) return std::nullopt;
    for (const auto& s0 : S().elements) {
      auto q = m_->quotient(x, s0);
      if (!q) continue;
      if (m_->is_unit(*q)) {
        std::optional<Factors> slot;
        if (found(slot, Factors{s0})) return slot;
        continue;
      }
      auto t = m_->square_root(*q);
      if (!t || !depth_ok(depth + 1)) continue;
      if (collect_) {
        const auto before = all_.size();
        binary(*t, depth + 1);
        for (auto i = before; i < all_.size(); ++i) all_[i].factors.insert(all_[i].factors.begin(), s0);
        continue;
      }
      if (auto tail = binary(*t, depth + 1)) {
        tail->insert(tail->begin(), s0);
        return tail;
      }
    }
    if (!collect_) dead_.insert(x);
    return std::nullopt;
  }

  // a = b c, c ∈ S, b ⊥ c, d ∈ S with d^2 | b | d^n. A unit b takes d = 1.
  std::optional<Witness> four() {
    std::optional<Witness> slot;
    for (const auto& c : S().elements) {
      const auto b = *m_->quotient(a_, c);
      if (!coprime_to(b, c).is_yes()) continue;
      if (m_->is_unit(b)) {
        if (found(slot, Witness{{}, b, c, m_->identity(), 1})) return slot;
        continue;
      }
      for (const auto& d : S().elements) {
        if (m_->is_unit(d) || !m_->divides(m_->mul(d, d), b)) continue;
        const auto ps = divides_some_power(m_, b, d, budget_);
        if (ps.answer.is_unknown()) lose(ps.answer.reason());
        if (ps.answer.is_yes() && found(slot, Witness{{}, b, c, d, ps.n})) return slot;
      }
    }
    return slot;
  }

  // c = 1 is tried first: it often succeeds without enumerating S.
  std::optional<Witness> four_prime() {
    std::optional<Witness> slot;
    if (!collect_ && squares_divide(a_).is_yes()) return Witness{{}, a_, m_->identity(), std::nullopt, std::nullopt};
    for (const auto& c : S().elements) {
      const auto b = *m_->quotient(a_, c);
      if (!coprime_to(b, c).is_yes()) continue;
      const auto t = squares_divide(b);
      if (t.is_unknown()) lose(t.reason());
      if (t.is_yes() && found(slot, Witness{{}, b, c, std::nullopt, std::nullopt})) return slot;
    }
    return slot;
  }

  std::optional<Witness> five() {
    std::optional<Witness> slot;
    for (const auto& c : S().elements) {
      const auto ps = divides_some_power(m_, a_, c, budget_);
      if (ps.answer.is_unknown()) lose(ps.answer.reason());
      if (ps.answer.is_yes() && found(slot, Witness{{}, *m_->quotient(a_, c), c, std::nullopt, ps.n})) return slot;
    }
    return slot;
  }

  std::optional<Witness> five_prime() {
    std::optional<Witness> slot;
    for (const auto& c : S().elements) {
      const auto t = all_divide(c);
      if (t.is_unknown()) lose(t.reason());
      if (t.is_yes() && found(slot, Witness{{}, *m_->quotient(a_, c), c, std::nullopt, std::nullopt})) {
        return slot;
      }
    }
    return slot;
  }

  // a = b^2 c, c ∈ S. Square roots are unique in these torsion-free monoids.
  std::optional<Witness> six() {
    std::optional<Witness> slot;
    if (!collect_) {
      if (auto b = m_->square_root(a_)) return Witness{{}, *b, m_->identity(), std::nullopt, std::nullopt};
    }
    for (const auto& c : S().elements) {
      auto b = m_->square_root(*m_->quotient(a_, c));
      if (b && found(slot, Witness{{}, *b, c, std::nullopt, std::nullopt})) return slot;
    }
    return slot;
  }

  const MonoidHandle& m_;
  Element a_;
  ConditionId id_;
  const Budget& budget_;
  Membership kind_;
  bool closed_forms_;
  std::optional<DivisorSet> own_;
  std::optional<DivisorSet>* cache_;
  bool exhaustive_ = true;
  std::string reason_;
  bool collect_ = false;
  std::vector<Witness> all_;
  std::set<Element> dead_;
  std::set<std::pair<Element, Element>> dead_pairs_;
};

Element product(const MonoidHandle& m, const Factors& fs, const std::function<std::int64_t(std::size_t)>& exp) {
  Element acc = m->identity();
  for (std::size_t i = 0; i < fs.size(); ++i) acc = m->mul(acc, power(m, fs[i], exp(i)));
  return acc;
}

Ternary conjunction(std::initializer_list<Ternary> ts) {
  for (const auto& t : ts) {
    if (t.is_no()) return t;
  }
  for (const auto& t : ts) {
    if (t.is_unknown()) return t;
  }
  return Ternary::yes();
}

/// Strips trailing units so equal witnesses compare equal.
Witness normalized(const MonoidHandle& m, Witness w) {
  while (w.factors.size() > 1 && m->is_unit(w.factors.back())) w.factors.pop_back();
  return w;
}

bool associated(const MonoidHandle& m, const Witness& x, const Witness& y) {
  if (x.factors.size() != y.factors.size()) return false;
  for (std::size_t i = 0; i < x.factors.size(); ++i) {
    if (!associates_eq(m, x.factors[i], y.factors[i])) return false;
  }
  auto same = [&](const std::optional<Element>& u, const std::optional<Element>& v) {
    return u.has_value() == v.has_value() && (!u || associates_eq(m, *u, *v));
  };
  return same(x.b, y.b) && same(x.c, y.c);
}

}  // namespace

const std::array<ConditionId, kConditionCount>& all_conditions() {
  static const std::array<ConditionId, kConditionCount> ids = [] {
    std::array<ConditionId, kConditionCount> out{};
    for (std::size_t i = 0; i < kConditionCount; ++i) out[i] = static_cast<ConditionId>(i);
    return out;
  }();
  return ids;
}

std::string_view to_string(ConditionId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<ConditionId> parse_condition(std::string_view text) {
  for (std::size_t i = 0; i < kConditionCount; ++i) {
    if (kNames[i] == text) return static_cast<ConditionId>(i);
  }
  return std::nullopt;
}

Shape shape_of(ConditionId id) { return static_cast<Shape>(static_cast<int>(id) / 2); }
bool is_radical_variant(ConditionId id) { return static_cast<int>(id) % 2 == 1; }
ConditionId twin(ConditionId id) { return static_cast<ConditionId>(static_cast<int>(id) ^ 1); }

ConditionId make_condition(Shape shape, bool radical) {
  return static_cast<ConditionId>(2 * static_cast<int>(shape) + (radical ? 1 : 0));
}

Membership membership_of(ConditionId id) {
  return is_radical_variant(id) ? Membership::Radical : Membership::SquareFree;
}

ConditionResult check_condition(const MonoidHandle& m, const Element& a, ConditionId id, const Budget& budget) {
  m->validate(a);
  if (!m->is_unit(a) && chain_y_refutes(m, a, shape_of(id))) return {id, Ternary::no(), std::nullopt};
  return Engine(m, a, id, budget).run();
}

std::vector<ConditionResult> check_conditions(const MonoidHandle& m, const Element& a,
                                              const std::vector<ConditionId>& ids, const Budget& budget) {
  m->validate(a);
  std::optional<DivisorSet> cache[2];
  std::vector<ConditionResult> out;
  out.reserve(ids.size());
  for (auto id : ids) {
    if (!m->is_unit(a) && chain_y_refutes(m, a, shape_of(id))) {
      out.push_back({id, Ternary::no(), std::nullopt});
      continue;
    }
    out.push_back(Engine(m, a, id, budget, &cache[is_radical_variant(id) ? 1 : 0]).run());
  }
  return out;
}

Ternary validate_witness(const MonoidHandle& m, const Element& a, ConditionId id, const Witness& w,
                         const Budget& budget) {
  const auto kind = membership_of(id);
  auto in_s = [&](const Element& x) { return is_member(m, x, kind, budget); };
  auto equals_a = [&](const Element& x) { return Ternary::from_bool(associates_eq(m, x, a)); };
  auto members = [&](const Factors& fs) {
    for (const auto& f : fs) {
      if (auto t = in_s(f); !t.is_yes()) return t;
    }
    return Ternary::yes();
  };
  const auto shape = shape_of(id);
  if (shape <= Shape::Three) {
    if (w.factors.empty()) return Ternary::no();
    const Ternary mem = members(w.factors);
    switch (shape) {
      case Shape::Zero:
        return conjunction({mem, equals_a(product(m, w.factors, [](std::size_t) { return 1; }))});
      case Shape::One: {
        Ternary cp = Ternary::yes();
        for (std::size_t i = 0; i < w.factors.size(); ++i) {
          for (std::size_t j = i + 1; j < w.factors.size(); ++j) {
            cp = conjunction({cp, coprime(m, w.factors[i], w.factors[j], budget)});
          }
        }
        const auto prod = product(m, w.factors, [](std::size_t i) { return static_cast<std::int64_t>(i + 1); });
        return conjunction({mem, cp, equals_a(prod)});
      }
      case Shape::Two: {
        bool chained = true;
        for (std::size_t i = 0; i + 1 < w.factors.size(); ++i) {
          chained = chained && m->divides(w.factors[i], w.factors[i + 1]);
        }
        return conjunction({mem, Ternary::from_bool(chained),
                       equals_a(product(m, w.factors, [](std::size_t) { return 1; }))});
      }
      default: {
        const auto prod = product(m, w.factors, [](std::size_t i) { return std::int64_t{1} << i; });
        return conjunction({mem, equals_a(prod)});
      }
    }
  }
  if (!w.b || !w.c) return Ternary::no();
  const auto& b = *w.b;
  const auto& c = *w.c;
  const Ternary c_in = in_s(c);
  if (shape == Shape::Six) return conjunction({c_in, equals_a(m->mul(m->mul(b, b), c))});
  const Ternary split = equals_a(m->mul(b, c));
  Engine engine(m, a, id, budget);
  switch (shape) {
    case Shape::Four: {
      if (!w.d || !w.n) return Ternary::no();
      const auto& d = *w.d;
      const bool powers = m->divides(m->mul(d, d), b) && m->divides(b, power(m, d, *w.n));
      return conjunction({c_in, split, coprime(m, b, c, budget), in_s(d), Ternary::from_bool(powers)});
    }
    case Shape::FourPrime:
      return conjunction({c_in, split, coprime(m, b, c, budget), engine.squares_divide(b)});
    case Shape::Five:
      if (!w.n) return Ternary::no();
      return conjunction({c_in, split, Ternary::from_bool(m->divides(a, power(m, c, *w.n)))});
    default:
      return conjunction({c_in, split, engine.all_divide(c)});
  }
}

WitnessEnumeration all_witnesses(const MonoidHandle& m, const Element& a, ConditionId id, const Budget& budget) {
  m->validate(a);
  auto out = Engine(m, a, id, budget).run_all();
  for (auto& w : out.witnesses) w = normalized(m, std::move(w));
  return out;
}

UniquenessReport check_uniqueness(const MonoidHandle& m, const Element& a, ConditionId id, const Budget& budget) {
  const auto all = all_witnesses(m, a, id, budget);
  UniquenessReport report;
  report.id = id;
  report.element = a;
  report.witness_count = all.witnesses.size();
  report.complete = all.complete;
  for (std::size_t i = 1; i < all.witnesses.size() && report.unique; ++i) {
    if (!associated(m, all.witnesses.front(), all.witnesses[i])) {
      report.unique = false;
      report.violation = std::make_pair(all.witnesses.front(), all.witnesses[i]);
    }
  }
  return report;
}

nlohmann::ordered_json to_json(const MonoidHandle& m, const Witness& w) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  if (!w.factors.empty()) {
    auto& fs = j["factors"] = nlohmann::ordered_json::array();
    for (const auto& f : w.factors) fs.push_back(m->format(f));
  }
  if (w.b) j["b"] = m->format(*w.b);
  if (w.c) j["c"] = m->format(*w.c);
  if (w.d) j["d"] = m->format(*w.d);
  if (w.n) j["n"] = *w.n;
  return j;
}

nlohmann::ordered_json to_json(const MonoidHandle& m, const ConditionResult& r) {
  nlohmann::ordered_json j;
  j["condition"] = std::string(to_string(r.id));
  j["answer"] = std::string(r.answer.label());
  if (r.witness) j["witness"] = to_json(m, *r.witness);
  if (r.answer.is_unknown()) j["reason"] = r.answer.reason();
  return j;
}

nlohmann::ordered_json to_json(const MonoidHandle& m, const UniquenessReport& r) {
  nlohmann::ordered_json j;
  j["condition"] = std::string(to_string(r.id));
  j["element"] = m->format(r.element);
  j["witnesses"] = r.witness_count;
  j["complete"] = r.complete;
  j["unique"] = r.unique;
  if (r.violation) {
    j["violation"] = {to_json(m, r.violation->first), to_json(m, r.violation->second)};
  }
  return j;
}

}  // namespace monoidlab
