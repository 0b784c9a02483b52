#pragma once

// Loop algebras g(Q,P,a), character automorphisms tau_f, and recognition of
// a graded simple algebra as a loop algebra.

#include <optional>
#include <string>
#include <vector>

#include "gsla/lie.hpp"

namespace gsla {

/// g(Q,P,a): basis x_i (x) t^alpha for alpha in the coset of deg(x_i).
struct LoopAlgebra {
  GradedLieAlgebra underlying;
  GradedLieAlgebra base;
  Subgroup p;
  std::vector<std::pair<std::size_t, GroupElem>> labels;  // basis k -> (base index, alpha)

  std::optional<std::size_t> index_of(std::size_t i, const GroupElem& alpha) const;
};

/// Throws GradingMismatch unless a is graded by q/p.
LoopAlgebra loop_algebra(const FinAbGroup& q, const Subgroup& p, const GradedLieAlgebra& a);

/// True iff m (target.dim x source.dim) maps brackets to brackets.
bool is_homomorphism(const GradedLieAlgebra& source, const GradedLieAlgebra& target, const Matrix& m);

struct GradedAutomorphism {
  Matrix matrix;
  Character character;
};
/// Diagonal automorphism x_a -> f(a) x_a. Throws FieldMismatch or
/// GradingMismatch when f does not belong to g, KernelMismatch when f is not
/// trivial on the subgroup g is graded modulo.
GradedAutomorphism tau_f(const GradedLieAlgebra& g, const Character& f);

/// Characters of g's group over g's field (NoSuchRoot if unavailable).
std::vector<Character> algebra_characters(const GradedLieAlgebra& g);

/// Inv(I) = {f : tau_f(I) = I}.
std::vector<Character> inv_subgroup(const GradedLieAlgebra& g, const Subspace& i, const std::vector<Character>& chars);

struct IdealOrbit {
  Subspace ideal;
  std::vector<Character> inv;
  std::vector<Subspace> orbit;      // distinct tau_f(I), in character order
  std::vector<Character> reps;      // f producing each orbit member
};
IdealOrbit ideal_orbit(const GradedLieAlgebra& g, const Subspace& i, const std::vector<Character>& chars);

struct LoopDecomposition {
  std::vector<Subspace> ideals;
  std::vector<Matrix> isos;  // a -> ideal, columns are images of a's basis
  std::vector<Character> chars;
};
/// The |P| ideals tau_f(I), I = sum a_abar (x) t^alpha sum_{beta in P} t^beta.
/// Throws NoSuchRoot or DecompositionFailure.
LoopDecomposition loop_ideal_decomposition(const LoopAlgebra& l);

/// Shrinks a non-graded proper ideal until its orbit is pairwise disjoint.
/// Throws NotAnIdeal, NotProper, AlreadyGraded, SearchCapExceeded.
Subspace refine_ideal(const GradedLieAlgebra& g, const Subspace& i, const std::vector<Character>& chars,
                      const ProbeOptions& opts = {});

/// Proper nonzero ideal (not necessarily graded) or nullopt.
std::optional<Subspace> find_proper_ideal(const GradedLieAlgebra& g, const ProbeOptions& opts = {});

struct Certificate {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Recognition {
  Subgroup p;
  GradedLieAlgebra a;
  Subspace ideal;        // image of a inside g (whole when P trivial)
  LoopAlgebra loop;      // g(Q,P,a)
  Matrix phi;            // loop.underlying -> g
  GradedVerdict graded;
  std::vector<Certificate> certificates;
  bool untwisted() const { return p.order() == p.parent().order(); }
};

/// Throws NotGradedSimple, NoSuchRoot, NonSplit, VerificationFailure.
Recognition recognize(const GradedLieAlgebra& g, const ProbeOptions& opts = {});

/// Group homomorphism Q -> Q' given by images of the standard generators.
struct GroupHom {
  FinAbGroup source, target;
  std::vector<GroupElem> images;
  GroupElem operator()(const GroupElem& a) const;
};

struct IsoVerdict {
  bool ok = false;
  std::string reason;
};
/// sigma: g -> h. Throws DimensionMismatch, NotHomomorphism.
IsoVerdict verify_graded_iso(const GradedLieAlgebra& g, const GradedLieAlgebra& h, const GroupHom& tau,
                             const Matrix& sigma);
/// Loop inputs: also requires tau(P) = P', first from the construction data,
/// then against the subgroups recognize() recovers.
IsoVerdict verify_graded_iso(const LoopAlgebra& g, const LoopAlgebra& h, const GroupHom& tau, const Matrix& sigma);

}  // namespace gsla
