#pragma once

// Splitting commutative algebras (centroids, End spaces) into primitive
// idempotents by modular eigen-analysis, Hensel lifting and rational
// reconstruction.

#include <cstddef>
#include <vector>

#include "gsla/linalg.hpp"

namespace gsla {

/// Finite-dimensional commutative unital algebra given by structure
/// constants: b_i * b_j = sum_k mult[i][j][k] b_k.
struct CommAlgebra {
  const Field* field = nullptr;
  std::size_t dim = 0;
  std::vector<std::vector<Vec>> mult;
  Vec unit;

  Vec multiply(std::span<const FieldElem> a, std::span<const FieldElem> b) const;
  /// Throws NotCommutative when the table is not symmetric or the unit does
  /// not act as the identity. Associativity is the caller's responsibility.
  void check() const;
};

struct IdempotentOptions {
  Integer bound = Integer(1) << 64;  // bound on reconstructed numerators/denominators
  int attempts = 3;                   // primes tried before NonSplit
};

/// Primitive pairwise-orthogonal idempotents summing to the unit, each
/// verified exactly. A local algebra yields just {unit}.
/// Throws NotCommutative, NonSplit.
std::vector<Vec> idempotents_commutative(const CommAlgebra& a, const IdempotentOptions& opts = {});

}  // namespace gsla
