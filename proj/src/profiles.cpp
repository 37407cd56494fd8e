#include "monoidlab/profiles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace monoidlab {

namespace {

ConditionId s(Shape shape) { return make_condition(shape, false); }
ConditionId r(Shape shape) { return make_condition(shape, true); }

constexpr std::array<Shape, 9> kShapes = {Shape::Zero, Shape::One,  Shape::Two,       Shape::Three, Shape::Four,
                                         Shape::FourPrime, Shape::Five, Shape::FivePrime, Shape::Six};
/// Shapes carrying a pair value, in pair order 0..6.
constexpr std::array<Shape, 7> kPairShapes = {Shape::Zero, Shape::One,  Shape::Two, Shape::Three,
                                             Shape::Four, Shape::Five, Shape::Six};

void add_both(ConstraintSet& c, Shape from, Shape to) {
  c.implications.push_back({s(from), s(to)});
  c.implications.push_back({r(from), r(to)});
}

ConstraintSet general() {
  ConstraintSet c;
  for (auto [from, to] : std::initializer_list<std::pair<Shape, Shape>>{{Shape::Two, Shape::One},
                                                                       {Shape::Two, Shape::Three},
                                                                       {Shape::One, Shape::Zero},
                                                                       {Shape::Three, Shape::Zero},
                                                                       {Shape::Two, Shape::Five},
                                                                       {Shape::Three, Shape::Six}}) {
    add_both(c, from, to);
  }
  c.implications.push_back({r(Shape::Five), r(Shape::Four)});
  c.implications.push_back({r(Shape::Four), r(Shape::FourPrime)});
  c.implications.push_back({r(Shape::Five), r(Shape::FivePrime)});
  for (auto shape : kPairShapes) c.implications.push_back({r(shape), s(shape)});
  return c;
}

ConstraintSet square_free_radical() {
  ConstraintSet c = general();
  for (auto shape : kShapes) c.merges.push_back({s(shape), r(shape)});
  for (auto [from, to] : std::initializer_list<std::pair<Shape, Shape>>{{Shape::Two, Shape::Zero},
                                                                       {Shape::Five, Shape::Four},
                                                                       {Shape::Four, Shape::FourPrime},
                                                                       {Shape::Five, Shape::FivePrime}}) {
    add_both(c, from, to);
  }
  return c;
}

/// Union-find over the 18 conditions; returns the representative of each.
std::array<int, kConditionCount> components(const ConstraintSet& c) {
  std::array<int, kConditionCount> parent{};
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& group : c.merges) {
    for (std::size_t i = 1; i < group.size(); ++i) {
      const int a = find(static_cast<int>(group[0]));
      const int b = find(static_cast<int>(group[i]));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  for (std::size_t i = 0; i < kConditionCount; ++i) parent[i] = find(static_cast<int>(i));
  return parent;
}

std::vector<int> group_key(MonoidClass c, Profile p) {
  switch (c) {
    case MonoidClass::General:
    case MonoidClass::Atomic:
    case MonoidClass::ACCP: {
      const auto v = pair_values(p);
      return {v[0], v[2]};
    }
    case MonoidClass::SR:
    case MonoidClass::PreSchreier:
      return {get(p, ConditionId::C0s) ? 1 : 0, get(p, ConditionId::C2s) ? 1 : 0};
    case MonoidClass::GCD:
    case MonoidClass::GCDs:
      break;
  }
  return {get(p, ConditionId::C0s) ? 1 : 0};
}

std::vector<std::string> group_names(MonoidClass c) {
  switch (c) {
    case MonoidClass::General:
    case MonoidClass::Atomic:
    case MonoidClass::ACCP:
      return {"v(0sr)", "v(2sr)"};
    case MonoidClass::SR:
    case MonoidClass::PreSchreier:
      return {"0s", "2s"};
    case MonoidClass::GCD:
    case MonoidClass::GCDs:
      break;
  }
  return {"0s"};
}

}  // namespace

bool get(Profile p, ConditionId id) { return (p >> static_cast<int>(id)) & 1U; }

Profile with(Profile p, ConditionId id, bool value) {
  const Profile bit = Profile{1} << static_cast<int>(id);
  return value ? (p | bit) : (p & ~bit);
}

std::string to_bit_string(Profile p) {
  std::string out(kConditionCount, '0');
  for (std::size_t i = 0; i < kConditionCount; ++i) {
    if ((p >> i) & 1U) out[i] = '1';
  }
  return out;
}

Profile from_bit_string(std::string_view bits) {
  if (bits.size() != kConditionCount) throw InvalidParameter("profile bit string must have 18 characters");
  Profile p = 0;
  for (std::size_t i = 0; i < kConditionCount; ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw InvalidParameter("profile bit string must contain only 0 and 1");
    if (bits[i] == '1') p |= Profile{1} << i;
  }
  return p;
}

bool ConstraintSet::implies(ConditionId from, ConditionId to) const {
  return std::any_of(implications.begin(), implications.end(),
                     [&](const Implication& i) { return i.from == from && i.to == to; });
}

ConstraintSet constraint_set(MonoidClass c) {
  switch (c) {
    case MonoidClass::General:
      return general();
    case MonoidClass::Atomic: {
      auto out = general();
      out.forced = {ConditionId::C0s};
      return out;
    }
    case MonoidClass::ACCP: {
      auto out = general();
      out.forced = {ConditionId::C0s, ConditionId::C3s, ConditionId::C6s};
      out.implications.push_back({ConditionId::C5ps, ConditionId::C2s});
      out.implications.push_back({ConditionId::C6s, ConditionId::C3s});
      out.merges.push_back({ConditionId::C2r, ConditionId::C3r, ConditionId::C5r, ConditionId::C6r});
      return out;
    }
    case MonoidClass::SR:
      return square_free_radical();
    case MonoidClass::PreSchreier:
    case MonoidClass::GCD:
    case MonoidClass::GCDs: {
      auto out = square_free_radical();
      out.merges.push_back({s(Shape::One), s(Shape::Two)});
      out.merges.push_back({s(Shape::Four), s(Shape::Five)});
      add_both(out, Shape::One, Shape::Four);
      if (c == MonoidClass::PreSchreier) return out;
      out.merges.push_back({s(Shape::Zero), s(Shape::One), s(Shape::Two), s(Shape::Three)});
      if (c == MonoidClass::GCDs) out.forced = {ConditionId::C5ps};
      return out;
    }
  }
  throw InvalidParameter("unknown monoid class");
}

bool is_consistent(Profile p, const ConstraintSet& c) {
  for (const auto& i : c.implications) {
    if (get(p, i.from) && !get(p, i.to)) return false;
  }
  for (const auto& group : c.merges) {
    for (auto id : group) {
      if (get(p, id) != get(p, group.front())) return false;
    }
  }
  return std::all_of(c.forced.begin(), c.forced.end(), [&](ConditionId id) { return get(p, id); });
}

std::vector<Profile> enumerate(MonoidClass c) {
  const auto constraints = constraint_set(c);
  const auto rep = components(constraints);
  std::vector<int> reps;
  for (std::size_t i = 0; i < kConditionCount; ++i) {
    if (rep[i] == static_cast<int>(i)) reps.push_back(static_cast<int>(i));
  }
  std::vector<Profile> out;
  for (std::uint32_t assignment = 0; assignment < (1U << reps.size()); ++assignment) {
    Profile p = 0;
    for (std::size_t i = 0; i < kConditionCount; ++i) {
      const auto slot = std::find(reps.begin(), reps.end(), rep[i]) - reps.begin();
      if ((assignment >> slot) & 1U) p |= Profile{1} << i;
    }
    if (is_consistent(p, constraints)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PairValues pair_values(Profile p) {
  PairValues v{};
  for (std::size_t i = 0; i < kPairShapes.size(); ++i) {
    const bool vs = get(p, s(kPairShapes[i]));
    const bool vr = get(p, r(kPairShapes[i]));
    if (vr && !vs) {
      throw InvalidParameter("condition " + std::string(to_string(r(kPairShapes[i]))) + " holds without " +
                             std::string(to_string(s(kPairShapes[i]))));
    }
    v[i] = int{vs} + int{vr};
  }
  return v;
}

Profile decode_pair_values(const PairValues& v, Profile rest) {
  Profile p = rest;
  for (std::size_t i = 0; i < kPairShapes.size(); ++i) {
    if (v[i] < 0 || v[i] > 2) throw InvalidParameter("pair value must be 0, 1 or 2");
    p = with(p, s(kPairShapes[i]), v[i] >= 1);
    p = with(p, r(kPairShapes[i]), v[i] == 2);
  }
  return p;
}

TableBreakdown table_breakdown(MonoidClass c) {
  std::map<std::vector<int>, std::size_t, std::greater<>> groups;
  const auto profiles = enumerate(c);
  for (auto p : profiles) ++groups[group_key(c, p)];
  TableBreakdown t;
  t.monoid_class = c;
  t.key_names = group_names(c);
  for (const auto& [key, count] : groups) t.rows.push_back({key, count});
  t.total = profiles.size();
  return t;
}

std::vector<PairLemmaViolation> verify_pair_lemma(const std::vector<Profile>& profiles) {
  std::vector<PairLemmaViolation> out;
  for (auto p : profiles) {
    const auto v = pair_values(p);
    for (int a = 0; a < 7; ++a) {
      for (int b = 0; b < 7; ++b) {
        if (a == b) continue;
        auto imp = [&](ConditionId x, ConditionId y) { return !get(p, x) || get(p, y); };
        const auto sa = s(kPairShapes[a]);
        const auto ra = r(kPairShapes[a]);
        const auto sb = s(kPairShapes[b]);
        const auto rb = r(kPairShapes[b]);
        const bool lhs = imp(ra, rb) && imp(sa, sb) && imp(ra, sa) && imp(rb, sb);
        if (lhs != (v[a] <= v[b])) out.push_back({p, a, b});
      }
    }
  }
  return out;
}

nlohmann::ordered_json profiles_json(MonoidClass c, const std::vector<Profile>& profiles) {
  nlohmann::ordered_json j;
  j["class"] = std::string(to_string(c));
  j["count"] = profiles.size();
  auto& order = j["bit_order"] = nlohmann::ordered_json::array();
  for (auto id : all_conditions()) order.push_back(std::string(to_string(id)));
  auto& ps = j["profiles"] = nlohmann::ordered_json::array();
  for (auto p : profiles) ps.push_back(to_bit_string(p));
  return j;
}

std::string profiles_csv(const std::vector<Profile>& profiles) {
  std::ostringstream out;
  for (auto id : all_conditions()) out << to_string(id) << ',';
  out << "v(0sr),v(1sr),v(2sr),v(3sr),v(4sr),v(5sr),v(6sr)\n";
  for (auto p : profiles) {
    for (auto id : all_conditions()) out << (get(p, id) ? 1 : 0) << ',';
    const auto v = pair_values(p);
    for (std::size_t i = 0; i < v.size(); ++i) out << v[i] << (i + 1 < v.size() ? "," : "\n");
  }
  return out.str();
}

std::string profiles_markdown(MonoidClass c, const std::vector<Profile>& profiles) {
  std::ostringstream out;
  out << "# Consistent profiles: " << to_string(c) << "\n\nCount: " << profiles.size() << "\n\n";
  out << "Bit order:";
  for (auto id : all_conditions()) out << ' ' << to_string(id);
  out << "\n\n";
  for (auto p : profiles) out << "- `" << to_bit_string(p) << "`\n";
  return out.str();
}

nlohmann::ordered_json table_json(const TableBreakdown& t) {
  nlohmann::ordered_json j;
  j["class"] = std::string(to_string(t.monoid_class));
  j["key"] = t.key_names;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < t.key_names.size(); ++i) r[t.key_names[i]] = row.key[i];
    r["count"] = row.count;
    rows.push_back(r);
  }
  j["total"] = t.total;
  return j;
}

std::string table_csv(const TableBreakdown& t) {
  std::ostringstream out;
  for (const auto& k : t.key_names) out << k << ',';
  out << "count\n";
  for (const auto& row : t.rows) {
    for (auto k : row.key) out << k << ',';
    out << row.count << '\n';
  }
  return out.str();
}

std::string table_markdown(const TableBreakdown& t) {
  std::ostringstream out;
  out << "# Profile counts: " << to_string(t.monoid_class) << "\n\n|";
  for (const auto& k : t.key_names) out << ' ' << k << " |";
  out << " count |\n|";
  for (std::size_t i = 0; i <= t.key_names.size(); ++i) out << "---|";
  out << '\n';
  for (const auto& row : t.rows) {
    out << '|';
    for (auto k : row.key) out << ' ' << k << " |";
    out << ' ' << row.count << " |\n";
  }
  out << "\nTotal: " << t.total << '\n';
  return out.str();
}

}  // namespace monoidlab
