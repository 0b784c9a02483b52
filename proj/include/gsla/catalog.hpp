#pragma once

// Named algebras and modules used by the examples and the acceptance runs.

#include <map>
#include <string>
#include <vector>

#include "gsla/module.hpp"

namespace gsla {

/// sl_n with basis E_ij (i < j), H_k = E_kk - E_(k+1)(k+1), E_ij (i > j); for
/// n = 2 this is (e, h, f). Every degree is zero in q (trivial group by
/// default). Throws BadCharacteristic when char divides n.
GradedLieAlgebra sl_n(const Field& f, int n, const FinAbGroup& q = FinAbGroup(std::vector<long>{}));

/// sl_2 in the basis (e, h, f) with the given degrees in a grading group.
GradedLieAlgebra sl2_graded(const Field& f, const GradingGroup& grading, const GroupElem& deg_e, const GroupElem& deg_h,
                            const GroupElem& deg_f);
/// sl_2 in the basis (h, e+f, e-f) with degrees a, b, a+b.
GradedLieAlgebra pauli_graded(const Field& f, const GradingGroup& grading, const GroupElem& a, const GroupElem& b);
/// Pauli sl_2 over Z2 x Z2: h (1,0), e+f (0,1), e-f (1,1).
GradedLieAlgebra pauli_sl2(const Field& f);
/// Every grading of sl_2 by the group used here: trivial, Cartan (e in
/// degree g, f in -g, one g per pair {g, -g}) and Pauli (a < b of order 2).
std::vector<GradedLieAlgebra> sl2_gradings(const Field& f, const GradingGroup& grading);

/// 2x2 matrices I (0,0), D (1,0), X (0,1), Y (1,1) under left multiplication
/// by Pauli sl_2.
GradedModule matrix2_module(const Field& f);

/// V(m): h v_k = (m-2k) v_k, f v_k = v_(k+1), e v_k = k(m-k+1) v_(k-1) over
/// an algebra with basis (e, h, f); all degrees zero.
GradedModule sl2_irrep(const GradedLieAlgebra& sl2, int m);

/// sl_2 + sl_2 over Z2: (x, x) in degree 0 and (x, -x) in degree 1, x = e, h, f.
GradedLieAlgebra sl2_pair(const Field& f);
/// L(h1,h2) + L(h2,h1) with W_0 = {(u, su)}, W_1 = {(u, -su)}, s the swap;
/// for h1 = h2 the single L(h,h) graded by symmetric/antisymmetric tensors.
GradedModule pair_module(const Field& f, int h1, int h2);

struct Ex1 {
  GradedLieAlgebra g;  // abelian, degrees (0,0), (1,0), (0,1)
  GradedModule w;      // w00, w10 with g_a . w00 = w_a
  GradedModule v;      // kv over g regraded by P
  Subgroup p;          // Z2 x {0}
};
Ex1 ex1_module(const Field& f);

/// Finite abelian groups of order 2..max_order in invariant-factor form
/// n_1 | n_2 | ... , ordered by order.
std::vector<FinAbGroup> abelian_groups(long max_order);

struct LoopEntry {
  std::string name;
  FinAbGroup q;
  Subgroup p;
  GradedLieAlgebra a;  // sl_2 graded by q/p
};
/// Every (Q, P, sl_2 with a grading from sl2_gradings(Q/P)) for the given
/// groups, over Q(z_e) with e the exponent of Q.
std::vector<LoopEntry> sl2_loop_catalog(const std::vector<FinAbGroup>& groups);

struct CatalogEntry {
  std::string name;
  std::string params;                            // builder parameters
  std::map<std::string, std::string> expected;  // property -> value, asserted by the tests
};
/// The named examples with the properties they are expected to show.
std::vector<CatalogEntry> catalog_entries();

/// g(Z_p, Z_p, sl_2) over F_p. Throws BadCharacteristic for p = 2.
LoopAlgebra example0_algebra(std::uint64_t p);

}  // namespace gsla
