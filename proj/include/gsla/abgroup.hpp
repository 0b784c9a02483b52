#pragma once

// Finite abelian groups Z_n1 x ... x Z_nk, their subgroups, quotients and
// character groups.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gsla/linalg.hpp"

namespace gsla {

/// Coordinates reduced modulo the group's moduli. Lexicographic order on
/// these vectors is the canonical element order.
using GroupElem = std::vector<long>;

std::string group_elem_string(const GroupElem& a);

class FinAbGroup {
 public:
  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<long> moduli);

  const std::vector<long>& moduli() const noexcept { return moduli_; }
  std::size_t rank() const noexcept { return moduli_.size(); }
  std::size_t order() const noexcept { return order_; }
  long exponent() const noexcept { return exponent_; }

  GroupElem zero() const { return GroupElem(moduli_.size(), 0); }
  GroupElem normalize(GroupElem a) const;
  bool is_element(const GroupElem& a) const;
  GroupElem add(const GroupElem& a, const GroupElem& b) const;
  GroupElem sub(const GroupElem& a, const GroupElem& b) const;
  GroupElem neg(const GroupElem& a) const;
  GroupElem scale(long k, const GroupElem& a) const;
  long order_of(const GroupElem& a) const;

  /// Mixed-radix index, first coordinate most significant.
  std::size_t index(const GroupElem& a) const;
  GroupElem element(std::size_t index) const;
  std::vector<GroupElem> elements() const;

  std::string to_string() const;
  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.moduli_ == b.moduli_; }

 private:
  std::vector<long> moduli_;
  std::size_t order_ = 1;
  long exponent_ = 1;
};

class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup generate(const FinAbGroup& q, const std::vector<GroupElem>& gens);
  static Subgroup trivial(const FinAbGroup& q) { return generate(q, {}); }
  static Subgroup whole(const FinAbGroup& q);

  const FinAbGroup& parent() const noexcept { return parent_; }
  const std::vector<GroupElem>& elements() const noexcept { return elements_; }
  const std::vector<GroupElem>& generators() const noexcept { return generators_; }
  std::size_t order() const noexcept { return elements_.size(); }
  bool is_trivial() const noexcept { return elements_.size() == 1; }
  bool contains(const GroupElem& a) const;
  bool contains(const Subgroup& s) const;
  /// Generators g_1..g_r with the subgroup the internal direct sum of <g_i>.
  std::vector<GroupElem> direct_sum_basis() const;

  std::string to_string() const;
  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.elements_ == b.elements_;
  }

 private:
  FinAbGroup parent_;
  std::vector<GroupElem> elements_;  // sorted
  std::vector<GroupElem> generators_;
};

/// Subgroup generated by gens (breadth-first closure).
inline Subgroup subgroup_generate(const FinAbGroup& q, const std::vector<GroupElem>& gens) {
  return Subgroup::generate(q, gens);
}

/// Every subgroup, ordered by size and then by element list.
std::vector<Subgroup> all_subgroups(const FinAbGroup& q);

/// Q/P with canonical coset representatives (lexicographically least). Also
/// the grading group of a Q/P-graded object; P trivial gives Q itself.
class QuotientGroup {
 public:
  QuotientGroup() = default;
  explicit QuotientGroup(const FinAbGroup& q) : QuotientGroup(Subgroup::trivial(q)) {}
  explicit QuotientGroup(Subgroup p);

  const FinAbGroup& ambient() const noexcept { return p_.parent(); }
  const Subgroup& subgroup() const noexcept { return p_; }
  std::size_t order() const noexcept { return reps_.size(); }
  bool is_full() const noexcept { return p_.is_trivial(); }

  /// Canonical representative of a + P.
  GroupElem rep(const GroupElem& a) const;
  bool same_coset(const GroupElem& a, const GroupElem& b) const;
  const std::vector<GroupElem>& reps() const noexcept { return reps_; }
  std::size_t coset_index(const GroupElem& a) const;
  GroupElem add(const GroupElem& a, const GroupElem& b) const { return rep(ambient().add(a, b)); }
  GroupElem neg(const GroupElem& a) const { return rep(ambient().neg(a)); }
  GroupElem zero() const { return rep(ambient().zero()); }

  std::string to_string() const;
  friend bool operator==(const QuotientGroup& a, const QuotientGroup& b) { return a.p_ == b.p_; }

 private:
  Subgroup p_;
  std::vector<GroupElem> reps_;
  std::vector<std::size_t> rep_of_;  // element index -> coset index
};

using GradingGroup = QuotientGroup;

/// Character table data shared by all characters of one (Q, field) pair.
class CharacterGroup {
 public:
  /// Throws NoSuchRoot unless the field has a primitive exp(Q)-th root.
  CharacterGroup(const FinAbGroup& q, const FieldSpec& spec);

  const FinAbGroup& group() const noexcept { return q_; }
  const Field& field() const noexcept { return *field_; }
  const FieldElem& omega() const noexcept { return pow_[1 % pow_.size()]; }
  /// Exponent k with f_e(a) = omega^k.
  long pairing(const GroupElem& e, const GroupElem& a) const;
  FieldElem eval(const GroupElem& e, const GroupElem& a) const { return pow_[static_cast<std::size_t>(pairing(e, a))]; }
  const FieldElem& omega_pow(long k) const;

 private:
  FinAbGroup q_;
  const Field* field_;
  std::vector<FieldElem> pow_;
};

/// f_e(a) = omega^(sum e_i a_i exp(Q)/n_i). Exponent tuples live in a copy
/// of Q, so products of characters are sums of exponents.
struct Character {
  std::shared_ptr<const CharacterGroup> table;
  GroupElem exps;

  FieldElem operator()(const GroupElem& a) const { return table->eval(exps, a); }
  bool is_trivial() const;
  Character operator*(const Character& o) const;
  Character inverse() const;
  std::string to_string() const { return group_elem_string(exps); }
  friend bool operator==(const Character& a, const Character& b) { return a.exps == b.exps; }
};

/// All |Q| characters in exponent (mixed-radix) order.
std::vector<Character> characters(const FinAbGroup& q, const FieldSpec& spec);

/// P^perp = {f : f(a) = 1 for all a in P}.
std::vector<Character> annihilator(const Subgroup& p, const std::vector<Character>& chars);
/// Exponent tuples of P^perp as a subgroup of the dual copy of Q.
Subgroup annihilator_exponents(const Subgroup& p);
/// {a in Q : f(a) = 1 for all f with exponent in s}.
Subgroup fixed_subgroup(const FinAbGroup& q, const std::vector<GroupElem>& exps);

/// Entry (f, beta) = f(alpha + beta).
Matrix character_matrix(const GroupElem& alpha, const std::vector<GroupElem>& betas,
                        const std::vector<Character>& chars);

}  // namespace gsla
