#pragma once

// Graded modules over graded Lie algebras: verification, submodules, loop
// modules M(Q,P,V), homomorphism spaces and reconstruction of W as M(Q,P,V).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsla/loop.hpp"

namespace gsla {

/// Action x_i . v_j stored sparsely for every algebra basis index i and module
/// basis index j. Module degrees live in the algebra's grading group.
class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(const GradedLieAlgebra& g, std::vector<GroupElem> degrees);

  const GradedLieAlgebra& algebra() const { return *algebra_; }
  const Field& field() const { return algebra_->field(); }
  const GradingGroup& grading() const { return algebra_->grading(); }
  std::size_t dim() const noexcept { return degrees_.size(); }
  const GroupElem& degree(std::size_t j) const { return degrees_[j]; }
  const std::vector<GroupElem>& degrees() const noexcept { return degrees_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  void set_names(std::vector<std::string> n) { names_ = std::move(n); }

  void set_action(std::size_t i, std::size_t j, SparseVec v);
  const SparseVec& action_basis(std::size_t i, std::size_t j) const { return act_[i * dim() + j]; }
  /// x_i . v
  Vec act(std::size_t i, std::span<const FieldElem> v) const;
  /// x . v for x in the algebra
  Vec act(std::span<const FieldElem> x, std::span<const FieldElem> v) const;
  Matrix action_matrix(std::size_t i) const;
  bool is_trivial_action() const;

  std::vector<GroupElem> support() const;
  const std::vector<std::size_t>& component(const GroupElem& a) const;

 private:
  std::shared_ptr<const GradedLieAlgebra> algebra_;
  std::vector<GroupElem> degrees_;
  std::vector<std::string> names_;
  std::vector<SparseVec> act_;
  std::map<GroupElem, std::vector<std::size_t>> components_;
};

struct ModuleReport {
  std::vector<std::array<std::size_t, 3>> action;          // (i, i', j) violating the action law
  std::vector<std::pair<std::size_t, std::size_t>> grading;  // (i, j) leaving deg x_i + deg v_j
  bool nontrivial = false;                                   // gW != 0
  bool ok() const { return action.empty() && grading.empty(); }
};
ModuleReport verify_module(const GradedModule& w);

Subspace submodule_closure(const GradedModule& w, const std::vector<Vec>& s);
Subspace submodule_closure(const GradedModule& w, const Subspace& s);
bool is_submodule(const GradedModule& w, const Subspace& s);
bool is_graded_subspace(const GradedModule& w, const Subspace& s);

/// Module on a basis of a submodule (homogeneous vectors with given degrees).
GradedModule restrict_module(const GradedModule& w, const std::vector<Vec>& basis, std::vector<GroupElem> degrees);

/// True iff m (target.dim x source.dim) intertwines the actions; when degree
/// is given also checks m(W_b) in W'_{b+degree}.
bool is_module_hom(const GradedModule& source, const GradedModule& target, const Matrix& m,
                   const std::optional<GroupElem>& degree = std::nullopt);

struct LoopModule {
  GradedModule underlying;  // over g, Q-graded
  GradedModule base;        // over g regraded by Q/P
  Subgroup p;
  std::vector<std::pair<std::size_t, GroupElem>> labels;  // basis k -> (base index, alpha)
  std::optional<std::size_t> index_of(std::size_t j, const GroupElem& alpha) const;
};
/// M(Q,P,V) over g, where V is a module over g regraded by Q/P.
/// Throws GradingMismatch.
LoopModule loop_module(const GradedLieAlgebra& g, const Subgroup& p, const GradedModule& v);

/// Graded simplicity of W. With require_nontrivial = false the gW != 0
/// condition is dropped (graded irreducibility).
GradedVerdict graded_simple_module_check(const GradedModule& w, const ProbeOptions& opts = {},
                                         bool require_nontrivial = true);
SimplicityVerdict simple_module_check(const GradedModule& w, const ProbeOptions& opts = {});

/// Basis of Hom(W, W') (degree-alpha block structure when graded).
std::vector<Matrix> hom_space(const GradedModule& w, const GradedModule& w2, const GroupElem& alpha, bool graded);

/// Degree-0 graded hom phi: W -> S with phi(section_k) = e_k, or nullopt.
std::optional<Matrix> graded_retraction(const GradedModule& w, const GradedModule& s, const std::vector<Vec>& section);

struct SchurReport {
  std::size_t end0_dim = 0;
  bool scalar_only = false;
  std::vector<std::pair<GroupElem, std::size_t>> per_degree;
};
/// Throws NotGradedSimple unless W is (probably) graded simple.
SchurReport schur_report(const GradedModule& w, const ProbeOptions& opts = {});

/// V^f: x_a o v = f(a) x_a v, using the algebra's finer Q-degrees when it was
/// regraded by a quotient. Throws KernelMismatch otherwise unless f is
/// trivial on the grading kernel.
GradedModule twist(const GradedModule& v, const Character& f);
/// w_a -> f(a) w_a as a verified degree-0 iso W -> W^f (Q-graded W only).
Matrix twist_iso(const GradedModule& w, const Character& f);

/// Psi: M^f -> M, v -> f(a)^-1 v on degree a; verified.
Matrix psi_iso(const LoopModule& m, const Character& f);

struct PPrime {
  std::vector<GroupElem> elements;  // P', lexicographic
  std::vector<Matrix> lambdas;      // an invertible degree-a endomorphism per element
  std::vector<std::size_t> dims;    // dim of the degree-a graded hom space
};
PPrime pprime(const GradedModule& w, const ProbeOptions& opts = {});

struct CommutativeChoice {
  std::vector<GroupElem> kept;  // greedy choice
  Subgroup p;                   // generated by kept
  std::vector<Matrix> lambdas;  // aligned with p.elements()
  bool normalized = false;      // Lambda_a Lambda_b = Lambda_(a+b) on P
};
/// Greedy over P' in the given order (indices into the lexicographic list;
/// empty means identity order).
CommutativeChoice max_commutative_D(const GradedModule& w, const PPrime& d, const std::vector<std::size_t>& order = {});

/// V' = span{v - Lambda_a v}; throws NotProper.
Subspace vprime(const GradedModule& w, const CommutativeChoice& c);

/// W/V' on the non-pivot coordinates of V', graded by Q/P.
struct QuotientModule {
  GradedModule module;
  std::vector<std::size_t> coords;  // W coordinates kept
  Matrix projection;                // W -> quotient
};
QuotientModule quotient_module(const GradedModule& w, const Subspace& sub, const GradedLieAlgebra& algebra);

struct ModuleReconstruction {
  PPrime d;
  CommutativeChoice choice;
  Subspace vprime;
  GradedModule v;
  LoopModule loop;
  Matrix canonical;  // W -> M(Q,P,V)
  GradedVerdict v_graded;
  SimplicityVerdict v_simple;
  std::vector<Certificate> certificates;
};
/// Throws NotGradedSimple, NonSplit, VerificationFailure.
ModuleReconstruction reconstruct_module(const GradedModule& w, const ProbeOptions& opts = {},
                                        const std::vector<std::size_t>& order = {});

/// tau: v_j (x) t^b -> f(b) mu(v_j) (x) t^(b+alpha). Throws WitnessInvalid
/// unless mu is a degree-alpha-bar iso V^f -> V.
Matrix automorphism_from_twist(const LoopModule& m, const Character& f, const Matrix& mu, const GroupElem& alpha);

struct TwistSummand {
  Character f;
  Subspace sub;
  Matrix iso;  // V^f -> sub, columns are images of V's basis
};
/// The |P| submodules of M(Q,P,V) isomorphic to the twists V^f.
std::vector<TwistSummand> loop_module_decomposition(const LoopModule& m);

/// Graded-irreducible summands of W over a semisimple g in characteristic 0.
/// Throws NotSemisimple, NoProjectionFound, DecompositionFailure.
std::vector<Subspace> weyl_decompose(const GradedModule& w, const ProbeOptions& opts = {});

GradedModule adjoint_module(const GradedLieAlgebra& g);
GradedModule shift_module(const GradedModule& w, const GroupElem& gamma);
GradedModule direct_sum(const GradedModule& a, const GradedModule& b);
GradedModule trivial_module(const GradedLieAlgebra& g, const GroupElem& degree, std::size_t dim = 1);

}  // namespace gsla
