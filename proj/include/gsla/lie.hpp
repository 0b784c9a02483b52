#pragma once

// Graded Lie algebras given by structure constants.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gsla/abgroup.hpp"
#include "gsla/idempotents.hpp"
#include "gsla/linalg.hpp"

namespace gsla {

using SparseVec = std::vector<std::pair<std::size_t, FieldElem>>;

Vec dense(const Field& f, std::size_t n, const SparseVec& s);
SparseVec sparse(std::span<const FieldElem> v);

/// Basis b_0..b_{d-1}, each homogeneous of the stated degree (a canonical
/// coset representative of the grading group). Brackets are stored for every
/// ordered pair; set_bracket fills in the antisymmetric partner.
class GradedLieAlgebra {
 public:
  GradedLieAlgebra() = default;
  GradedLieAlgebra(const Field& f, GradingGroup grading, std::vector<GroupElem> degrees);

  void set_bracket(std::size_t i, std::size_t j, SparseVec v);
  /// Sets the (i, j) entry alone; used to build deliberately broken tables.
  void set_bracket_raw(std::size_t i, std::size_t j, SparseVec v);

  const Field& field() const { return *field_; }
  const GradingGroup& grading() const noexcept { return grading_; }
  const FinAbGroup& group() const noexcept { return grading_.ambient(); }
  std::size_t dim() const noexcept { return degrees_.size(); }
  const GroupElem& degree(std::size_t i) const { return degrees_[i]; }
  const std::vector<GroupElem>& degrees() const noexcept { return degrees_; }

  /// Finer Q-degrees retained after regrading by a quotient (empty if none).
  const std::vector<GroupElem>& fine_degrees() const noexcept { return fine_degrees_; }
  void set_fine_degrees(std::vector<GroupElem> d) { fine_degrees_ = std::move(d); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  void set_names(std::vector<std::string> n) { names_ = std::move(n); }

  const SparseVec& bracket_basis(std::size_t i, std::size_t j) const { return sc_[i * dim() + j]; }
  /// [b_i, v]
  Vec bracket_with(std::size_t i, std::span<const FieldElem> v) const;
  Vec bracket(std::span<const FieldElem> u, std::span<const FieldElem> v) const;
  /// Matrix of ad x acting on column vectors.
  Matrix ad(std::span<const FieldElem> x) const;
  bool is_abelian() const;

  /// Degrees with a nonzero component, in canonical order.
  std::vector<GroupElem> support() const;
  /// Basis indices of degree a (empty if a is outside the support).
  const std::vector<std::size_t>& component(const GroupElem& a) const;
  Subspace component_space(const GroupElem& a) const;
  /// A set of homogeneous basis indices generating the algebra.
  const std::vector<std::size_t>& lie_generators() const;

 private:
  void index_components();

  const Field* field_ = nullptr;
  GradingGroup grading_;
  std::vector<GroupElem> degrees_;
  std::vector<GroupElem> fine_degrees_;
  std::vector<std::string> names_;
  std::vector<SparseVec> sc_;
  std::map<GroupElem, std::vector<std::size_t>> components_;
  mutable std::optional<std::vector<std::size_t>> generators_;
};

struct AlgebraReport {
  std::vector<std::pair<std::size_t, std::size_t>> antisymmetry;  // witness pairs
  std::vector<std::array<std::size_t, 3>> jacobi;                  // witness triples
  std::vector<std::pair<std::size_t, std::size_t>> grading;         // pairs leaving a_{i}+a_{j}
  bool minimal = false;  // support generates the grading group
  bool ok() const { return antisymmetry.empty() && jacobi.empty() && grading.empty(); }
};

AlgebraReport verify_algebra(const GradedLieAlgebra& g);

Subspace ideal_closure(const GradedLieAlgebra& g, const Subspace& s);
Subspace ideal_closure(const GradedLieAlgebra& g, const std::vector<Vec>& s);
/// span [U, V]
Subspace bracket_space(const GradedLieAlgebra& g, const Subspace& u, const Subspace& v);
bool is_ideal(const GradedLieAlgebra& g, const Subspace& s);
Subspace center(const GradedLieAlgebra& g);

struct KillingResult {
  Matrix gram;
  bool nondegenerate = false;
};
KillingResult killing_gram(const GradedLieAlgebra& g);

/// Maps commuting with every ad operator, split by degree.
struct Centroid {
  std::vector<Matrix> maps;         // each acts on column vectors
  std::vector<GroupElem> degrees;   // degree of each map
  CommAlgebra algebra;              // multiplication table in the basis `maps`
  bool commutative = true;
  std::size_t dim() const { return maps.size(); }
  std::vector<std::size_t> of_degree(const GroupElem& a) const;
};
/// Degree-a part only: phi(g_b) in g_{a+b}.
std::vector<Matrix> centroid_component(const GradedLieAlgebra& g, const GroupElem& a);
Centroid centroid(const GradedLieAlgebra& g);

struct ProbeOptions {
  std::uint64_t seed = 0;
  int probes = 8;
  std::size_t max_subsets = 65536;
};

/// Deterministic stream for probe k on component c.
std::mt19937_64 probe_rng(std::uint64_t seed, std::uint64_t component, std::uint64_t probe);
/// Nonzero vector supported on idx with coordinates in {-2..2}.
Vec random_supported(const Field& f, std::size_t n, const std::vector<std::size_t>& idx, std::mt19937_64& rng);

/// 0, +-1, +-2, the exponent-th roots of unity present, and +-1/2 in char 0.
std::vector<FieldElem> shift_scalars(const Field& f, long exponent);
/// Nonzero vectors of F_p^k supported on idx with leading coordinate 1.
std::vector<Vec> projective_points(const Field& f, std::size_t n, const std::vector<std::size_t>& idx);
/// Number of such vectors summed over the index sets, saturating at cap + 1.
std::uint64_t projective_count(const Field& f, const std::vector<std::size_t>& sizes, std::uint64_t cap);

enum class SimplicityKind { SimpleCertified, NotSimple, Unknown };
struct SimplicityVerdict {
  SimplicityKind kind = SimplicityKind::Unknown;
  std::optional<Subspace> witness;
  std::string reason;
};
SimplicityVerdict simplicity_certificate(const GradedLieAlgebra& g, const ProbeOptions& opts = {});

/// Proper nonzero ideal found from centroid data (idempotent images and
/// images/kernels of c - lambda), or nullopt.
std::optional<Subspace> centroid_ideal(const GradedLieAlgebra& g, const Centroid& c, bool degree_zero_only);

std::vector<GroupElem> support(const GradedLieAlgebra& g, const Subspace& u);
std::vector<GroupElem> support(const GradedLieAlgebra& g, std::span<const FieldElem> x);

struct MinSupport {
  std::size_t size = 0;
  /// Span of all elements of U supported on some size-minimal degree set.
  Subspace minimal_span;
  std::vector<std::vector<GroupElem>> subsets;  // every minimal degree set hit
};
/// Throws EmptySubspace for U = 0 and SearchCapExceeded past the cap.
MinSupport min_support(const GradedLieAlgebra& g, const Subspace& u, std::size_t max_subsets = 65536);
std::size_t size(const GradedLieAlgebra& g, const Subspace& u, std::size_t max_subsets = 65536);

enum class GradedKind { GradedSimple, NotGradedSimple, ProbablyGradedSimple, Inconclusive };
std::string_view graded_kind_name(GradedKind k);
struct GradedVerdict {
  GradedKind kind = GradedKind::Inconclusive;
  std::optional<Subspace> witness;
  std::string tier;      // "A", "B", "C" or "probe"
  std::string evidence;
};
GradedVerdict graded_simple_check(const GradedLieAlgebra& g, const ProbeOptions& opts = {});

/// Degrees pushed through Q -> Q/(P0 + P); fine degrees are retained.
GradedLieAlgebra regrade_by_quotient(const GradedLieAlgebra& g, const Subgroup& p);
/// Same algebra with new degrees (validated as coset representatives).
GradedLieAlgebra with_grading(const GradedLieAlgebra& g, GradingGroup grading, std::vector<GroupElem> degrees);

/// Algebra on the given basis of a subalgebra, homogeneous of the given
/// degrees. Throws NotAnIdeal if the span is not closed under brackets.
GradedLieAlgebra restrict_algebra(const GradedLieAlgebra& g, const std::vector<Vec>& basis, GradingGroup grading,
                                  std::vector<GroupElem> degrees);

bool is_graded_subspace(const GradedLieAlgebra& g, const Subspace& u);
/// Homogeneous pieces U ∩ g_a for every a in the support.
std::vector<std::pair<GroupElem, Subspace>> graded_pieces(const GradedLieAlgebra& g, const Subspace& u);
/// Components a_(a) = U ∩ sum_{b in P} g_(a+b) per coset of P.
std::vector<std::pair<GroupElem, Subspace>> coset_pieces(const GradedLieAlgebra& g, const Subspace& u, const Subgroup& p);

/// tau_f: x_a -> f(a) x_a.
Vec apply_character(const GradedLieAlgebra& g, const Character& f, std::span<const FieldElem> x);
Subspace apply_character(const GradedLieAlgebra& g, const Character& f, const Subspace& u);
Matrix character_matrix_of(const GradedLieAlgebra& g, const Character& f);

/// Direct sum g1 ⊕ g2 over the same grading group.
GradedLieAlgebra direct_sum(const GradedLieAlgebra& a, const GradedLieAlgebra& b);

}  // namespace gsla
