#include "gsla/abgroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <set>

namespace gsla {

std::string group_elem_string(const GroupElem& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

FinAbGroup::FinAbGroup(std::vector<long> moduli) : moduli_(std::move(moduli)) {
  for (long m : moduli_) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "group modulus must be >= 1");
    order_ *= static_cast<std::size_t>(m);
    exponent_ = std::lcm(exponent_, m);
  }
}

GroupElem FinAbGroup::normalize(GroupElem a) const {
  if (a.size() != moduli_.size()) throw Error(ErrorCode::InvalidArgument, "element " + group_elem_string(a) + " has wrong rank");
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] %= moduli_[i];
    if (a[i] < 0) a[i] += moduli_[i];
  }
  return a;
}

bool FinAbGroup::is_element(const GroupElem& a) const {
  if (a.size() != moduli_.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < 0 || a[i] >= moduli_[i]) return false;
  return true;
}

GroupElem FinAbGroup::add(const GroupElem& a, const GroupElem& b) const {
  GroupElem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % moduli_[i];
  return r;
}

GroupElem FinAbGroup::neg(const GroupElem& a) const {
  GroupElem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (moduli_[i] - a[i]) % moduli_[i];
  return r;
}

GroupElem FinAbGroup::sub(const GroupElem& a, const GroupElem& b) const { return add(a, neg(b)); }

GroupElem FinAbGroup::scale(long k, const GroupElem& a) const {
  GroupElem r = a;
  for (auto& x : r) x *= k;
  return normalize(r);
}

long FinAbGroup::order_of(const GroupElem& a) const {
  long o = 1;
  for (std::size_t i = 0; i < a.size(); ++i) o = std::lcm(o, moduli_[i] / std::gcd(moduli_[i], a[i]));
  return o;
}

std::size_t FinAbGroup::index(const GroupElem& a) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) idx = idx * static_cast<std::size_t>(moduli_[i]) + static_cast<std::size_t>(a[i]);
  return idx;
}

GroupElem FinAbGroup::element(std::size_t idx) const {
  GroupElem a(moduli_.size());
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    a[i] = static_cast<long>(idx % static_cast<std::size_t>(moduli_[i]));
    idx /= static_cast<std::size_t>(moduli_[i]);
  }
  return a;
}

std::vector<GroupElem> FinAbGroup::elements() const {
  std::vector<GroupElem> out;
  out.reserve(order_);
  for (std::size_t i = 0; i < order_; ++i) out.push_back(element(i));
  return out;
}

std::string FinAbGroup::to_string() const {
  if (moduli_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i) s += "x";
    s += "Z" + std::to_string(moduli_[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------

Subgroup Subgroup::generate(const FinAbGroup& q, const std::vector<GroupElem>& gens) {
  Subgroup s;
  s.parent_ = q;
  std::set<GroupElem> seen{q.zero()};
  // add generators one at a time, dropping those already in the closure
  for (const auto& g : gens) {
    GroupElem n = q.normalize(g);
    if (seen.count(n)) continue;
    s.generators_.push_back(n);
    std::deque<GroupElem> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
      GroupElem x = frontier.front();
      frontier.pop_front();
      for (const auto& h : s.generators_) {
        GroupElem y = q.add(x, h);
        if (seen.insert(y).second) frontier.push_back(y);
      }
    }
  }
  s.elements_.assign(seen.begin(), seen.end());
  return s;
}

Subgroup Subgroup::whole(const FinAbGroup& q) {
  std::vector<GroupElem> gens;
  for (std::size_t i = 0; i < q.rank(); ++i) {
    GroupElem g = q.zero();
    g[i] = 1 % q.moduli()[i];
    gens.push_back(g);
  }
  return generate(q, gens);
}

bool Subgroup::contains(const GroupElem& a) const { return std::binary_search(elements_.begin(), elements_.end(), a); }

bool Subgroup::contains(const Subgroup& s) const {
  return std::all_of(s.elements_.begin(), s.elements_.end(), [&](const GroupElem& a) { return contains(a); });
}

std::vector<GroupElem> Subgroup::direct_sum_basis() const {
  // Peel off a cyclic summand of maximal order together with a complement.
  std::vector<GroupElem> basis;
  Subgroup rest = *this;
  while (!rest.is_trivial()) {
    GroupElem best = rest.elements_.front();
    long best_order = 1;
    for (const auto& a : rest.elements_) {
      long o = parent_.order_of(a);
      if (o > best_order) {
        best_order = o;
        best = a;
      }
    }
    Subgroup cyc = generate(parent_, {best});
    std::optional<Subgroup> complement;
    for (const auto& c : all_subgroups(parent_)) {
      if (c.order() * cyc.order() != rest.order() || !rest.contains(c)) continue;
      bool meets = std::any_of(c.elements_.begin(), c.elements_.end(),
                               [&](const GroupElem& a) { return a != parent_.zero() && cyc.contains(a); });
      if (!meets) {
        complement = c;
        break;
      }
    }
    if (!complement) throw Error(ErrorCode::DecompositionFailure, "no complement for a maximal cyclic summand");
    basis.push_back(best);
    rest = *complement;
  }
  return basis;
}

std::string Subgroup::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) s += ",";
    s += group_elem_string(generators_[i]);
  }
  return s + ">";
}

std::vector<Subgroup> all_subgroups(const FinAbGroup& q) {
  std::set<std::vector<GroupElem>> seen;
  std::vector<Subgroup> found;
  std::deque<Subgroup> frontier{Subgroup::trivial(q)};
  seen.insert(frontier.front().elements());
  auto elems = q.elements();
  while (!frontier.empty()) {
    Subgroup s = frontier.front();
    frontier.pop_front();
    found.push_back(s);
    for (const auto& g : elems) {
      if (s.contains(g)) continue;
      auto gens = s.generators();
      gens.push_back(g);
      Subgroup t = Subgroup::generate(q, gens);
      if (seen.insert(t.elements()).second) frontier.push_back(t);
    }
  }
  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return found;
}

// ---------------------------------------------------------------------------

QuotientGroup::QuotientGroup(Subgroup p) : p_(std::move(p)) {
  const FinAbGroup& q = p_.parent();
  rep_of_.assign(q.order(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < q.order(); ++i) {
    if (rep_of_[i] != static_cast<std::size_t>(-1)) continue;
    GroupElem a = q.element(i);  // lexicographically least in its coset
    std::size_t c = reps_.size();
    reps_.push_back(a);
    for (const auto& b : p_.elements()) rep_of_[q.index(q.add(a, b))] = c;
  }
}

std::size_t QuotientGroup::coset_index(const GroupElem& a) const { return rep_of_[ambient().index(ambient().normalize(a))]; }

GroupElem QuotientGroup::rep(const GroupElem& a) const { return reps_[coset_index(a)]; }

bool QuotientGroup::same_coset(const GroupElem& a, const GroupElem& b) const { return coset_index(a) == coset_index(b); }

std::string QuotientGroup::to_string() const {
  if (p_.is_trivial()) return ambient().to_string();
  return ambient().to_string() + "/" + p_.to_string();
}

// ---------------------------------------------------------------------------

CharacterGroup::CharacterGroup(const FinAbGroup& q, const FieldSpec& spec) : q_(q), field_(&Field::get(spec)) {
  long e = q.exponent();
  if (!field_->has_primitive_root_of_unity(static_cast<std::uint64_t>(e)))
    throw Error(ErrorCode::NoSuchRoot, spec.name() + " has no primitive root of unity of order " + std::to_string(e));
  FieldElem w = field_->primitive_root_of_unity(static_cast<std::uint64_t>(e));
  FieldElem x = field_->one();
  for (long k = 0; k < e; ++k) {
    pow_.push_back(x);
    x *= w;
  }
}

long CharacterGroup::pairing(const GroupElem& e, const GroupElem& a) const {
  long ex = q_.exponent(), s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s = (s + e[i] * a[i] % q_.moduli()[i] * (ex / q_.moduli()[i])) % ex;
  return s;
}

const FieldElem& CharacterGroup::omega_pow(long k) const {
  long e = static_cast<long>(pow_.size());
  k %= e;
  if (k < 0) k += e;
  return pow_[static_cast<std::size_t>(k)];
}

bool Character::is_trivial() const {
  return std::all_of(exps.begin(), exps.end(), [](long x) { return x == 0; });
}

Character Character::operator*(const Character& o) const { return {table, table->group().add(exps, o.exps)}; }

Character Character::inverse() const { return {table, table->group().neg(exps)}; }

std::vector<Character> characters(const FinAbGroup& q, const FieldSpec& spec) {
  auto table = std::make_shared<const CharacterGroup>(q, spec);
  std::vector<Character> out;
  for (auto& e : q.elements()) out.push_back({table, e});
  return out;
}

namespace {
long dual_pairing(const FinAbGroup& q, const GroupElem& e, const GroupElem& a) {
  long ex = q.exponent(), s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s = (s + e[i] * a[i] % q.moduli()[i] * (ex / q.moduli()[i])) % ex;
  return s;
}
}  // namespace

std::vector<Character> annihilator(const Subgroup& p, const std::vector<Character>& chars) {
  std::vector<Character> out;
  for (const auto& f : chars) {
    bool kills = std::all_of(p.elements().begin(), p.elements().end(),
                             [&](const GroupElem& a) { return dual_pairing(p.parent(), f.exps, a) == 0; });
    if (kills) out.push_back(f);
  }
  return out;
}

Subgroup annihilator_exponents(const Subgroup& p) {
  const FinAbGroup& q = p.parent();
  std::vector<GroupElem> gens;
  for (const auto& e : q.elements()) {
    bool kills = std::all_of(p.elements().begin(), p.elements().end(),
                             [&](const GroupElem& a) { return dual_pairing(q, e, a) == 0; });
    if (kills) gens.push_back(e);
  }
  return Subgroup::generate(q, gens);
}

Subgroup fixed_subgroup(const FinAbGroup& q, const std::vector<GroupElem>& exps) {
  std::vector<GroupElem> gens;
  for (const auto& a : q.elements()) {
    bool fixed = std::all_of(exps.begin(), exps.end(), [&](const GroupElem& e) { return dual_pairing(q, e, a) == 0; });
    if (fixed) gens.push_back(a);
  }
  return Subgroup::generate(q, gens);
}

Matrix character_matrix(const GroupElem& alpha, const std::vector<GroupElem>& betas, const std::vector<Character>& chars) {
  if (chars.empty()) throw Error(ErrorCode::InvalidArgument, "character matrix needs at least one character");
  const auto& t = *chars.front().table;
  Matrix m(t.field(), chars.size(), betas.size());
  for (std::size_t i = 0; i < chars.size(); ++i)
    for (std::size_t j = 0; j < betas.size(); ++j) m(i, j) = chars[i](t.group().add(alpha, betas[j]));
  return m;
}

}  // namespace gsla
