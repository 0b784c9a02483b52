#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "gsla/catalog.hpp"

#include "oracles.hpp"

using namespace gsla;
using namespace gsla::oracle;

namespace {

const Field& QQ() { return Field::get(FieldSpec::rationals()); }
const Field& QI() { return Field::get(FieldSpec::cyclotomic(4)); }

Vec vec(const Field& f, std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(f.from_int(x));
  return v;
}

// 2x2 matrices in the basis I, D, X, Y, flattened row-major for arithmetic
std::vector<Vec> m2_basis(const Field& f) {
  return {vec(f, {1, 0, 0, 1}), vec(f, {1, 0, 0, -1}), vec(f, {0, 1, 1, 0}), vec(f, {0, 1, -1, 0})};
}

Vec m2_mul(const Vec& a, const Vec& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

// Right multiplication by basis element r, in the basis I, D, X, Y.
Matrix right_mult(const Field& f, std::size_t r) {
  auto b = m2_basis(f);
  std::vector<Vec> cols;
  CoordinateSolver solver(f, 4, b);
  for (const auto& x : b) cols.push_back(*solver.solve(m2_mul(x, b[r])));
  return Matrix::from_columns(f, 4, cols);
}

bool invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

bool has_iso(const GradedModule& a, const GradedModule& b, const GroupElem& degree) {
  for (const auto& m : hom_space(a, b, degree, true))
    if (invertible(m)) return true;
  return false;
}

std::set<std::vector<GroupElem>> matrix2_subgroups(const Field& f) {
  GradedModule w = matrix2_module(f);
  PPrime d = pprime(w);
  std::set<std::vector<GroupElem>> out;
  std::vector<std::size_t> order(d.elements.size());
  std::iota(order.begin(), order.end(), 0);
  do {
    out.insert(max_commutative_D(w, d, order).p.elements());
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

}  // namespace

TEST(VerifyModule, Examples) {
  EXPECT_TRUE(verify_module(ex1_module(QQ()).w).ok());
  auto r = verify_module(matrix2_module(QQ()));
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.nontrivial);
  GradedModule bad = matrix2_module(QQ());
  auto sv = bad.action_basis(0, 0);
  for (auto& e : sv) e.second = e.second + e.second;
  bad.set_action(0, 0, sv);
  EXPECT_FALSE(verify_module(bad).action.empty());
}

TEST(VerifyModule, Irreps) {
  GradedLieAlgebra s = sl_n(QQ(), 2);
  for (int m = 0; m <= 4; ++m) {
    GradedModule v = sl2_irrep(s, m);
    EXPECT_EQ(v.dim(), static_cast<std::size_t>(m + 1));
    EXPECT_TRUE(verify_module(v).ok());
  }
}

TEST(SubmoduleClosure, Examples) {
  const Field& f = QQ();
  GradedModule w = matrix2_module(f);
  EXPECT_TRUE(submodule_closure(w, Subspace(f, 4)).is_zero());
  // E11 = (I + D)/2; first column = span{E11, E21}, E21 = (X - Y)/2
  Subspace c = submodule_closure(w, {vec(f, {1, 1, 0, 0})});
  EXPECT_EQ(c.dim(), 2u);
  EXPECT_EQ(c, Subspace::span(f, 4, {vec(f, {1, 1, 0, 0}), vec(f, {0, 0, 1, -1})}));
  GradedModule v3 = sl2_irrep(sl_n(f, 2), 3);
  EXPECT_TRUE(submodule_closure(v3, {unit_vec(f, 4, 0)}).is_whole());
}

TEST(LoopModule, TrivialSubgroup) {
  Ex1 e = ex1_module(QQ());
  LoopModule m = loop_module(e.g, Subgroup::trivial(e.g.group()), e.w);
  EXPECT_EQ(m.underlying.dim(), 2u);
  EXPECT_EQ(m.underlying.degrees(), e.w.degrees());
}

TEST(LoopModule, Ex1MatchesW) {
  Ex1 e = ex1_module(QQ());
  LoopModule m = loop_module(e.g, e.p, e.v);
  EXPECT_EQ(m.underlying.dim(), 2u);
  EXPECT_TRUE(verify_module(m.underlying).ok());
  EXPECT_TRUE(has_iso(e.w, m.underlying, {0, 0}));
}

TEST(LoopModule, PairFromL10) {
  const Field& f = QQ();
  GradedModule v = l10_over_pair(f);
  ASSERT_TRUE(verify_module(v).ok());
  FinAbGroup q({2});
  LoopModule m = loop_module(sl2_pair(f), Subgroup::whole(q), v);
  EXPECT_EQ(m.underlying.dim(), 4u);
  EXPECT_TRUE(verify_module(m.underlying).ok());
  EXPECT_EQ(graded_simple_module_check(m.underlying).kind, GradedKind::GradedSimple);
  EXPECT_TRUE(has_iso(pair_module(f, 1, 0), m.underlying, {0}));
}

TEST(LoopModule, DimensionLaw) {
  const Field& f = QQ();
  GradedLieAlgebra g = pauli_sl2(f);
  GradedModule a = adjoint_module(g);
  for (const auto& p : all_subgroups(g.group())) {
    GradedLieAlgebra gp = regrade_by_quotient(g, p);
    GradedModule v(gp, std::vector<GroupElem>(gp.degrees()));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) v.set_action(i, j, g.bracket_basis(i, j));
    LoopModule m = loop_module(g, p, v);
    EXPECT_EQ(m.underlying.dim(), 3 * p.order());
    EXPECT_TRUE(verify_module(m.underlying).ok());
  }
}

TEST(GradedSimpleModule, Examples) {
  const Field& f = QQ();
  auto v = graded_simple_module_check(matrix2_module(f));
  EXPECT_EQ(v.kind, GradedKind::GradedSimple);
  EXPECT_EQ(v.tier, "A");
  EXPECT_EQ(graded_simple_module_check(pair_module(f, 1, 0)).kind, GradedKind::GradedSimple);
  GradedModule w = matrix2_module(f);
  auto ww = graded_simple_module_check(direct_sum(w, w));
  ASSERT_EQ(ww.kind, GradedKind::NotGradedSimple);
  ASSERT_TRUE(ww.witness);
  EXPECT_EQ(ww.witness->dim(), 4u);
  EXPECT_EQ(graded_simple_module_check(ex1_module(f).w).kind, GradedKind::GradedSimple);
}

TEST(GradedSimpleModule, PairIsNotSimpleUngraded) {
  const Field& f = QQ();
  GradedModule w = pair_module(f, 1, 0);
  auto s = simple_module_check(w);
  ASSERT_EQ(s.kind, SimplicityKind::NotSimple);
  ASSERT_TRUE(s.witness);
  EXPECT_EQ(s.witness->dim(), 2u);
  EXPECT_FALSE(is_graded_subspace(w, *s.witness));
  // every proper submodule projects onto each component
  for (const auto& a : w.support()) {
    EchelonBuilder proj(f, w.dim());
    for (const auto& x : s.witness->basis()) {
      Vec p = zero_vec(f, w.dim());
      for (auto k : w.component(a)) p[k] = x[k];
      proj.insert(p);
    }
    EXPECT_EQ(proj.finish(), Subspace::coordinate(f, w.dim(), w.component(a)));
  }
}

TEST(GradedSimpleModule, CharacterCriterion) {
  const Field& f = QQ();
  GradedModule w = direct_sum(pair_module(f, 1, 0), pair_module(f, 1, 0));
  auto chars = characters(w.grading().ambient(), f.spec());
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int t = 0; t < 20; ++t) {
    Vec x = zero_vec(f, w.dim());
    for (std::size_t k = 0; k < w.dim(); ++k)
      if (t % 2 == 0 || w.degree(k) == GroupElem{0}) x[k] = f.from_int(d(rng));
    Subspace n = submodule_closure(w, {x});
    bool invariant = true;
    for (const auto& ch : chars) {
      Matrix tf = twist_iso(w, ch);
      std::vector<Vec> img;
      for (const auto& b : n.basis()) img.push_back(tf.apply(b));
      invariant = invariant && Subspace::span(f, w.dim(), img) == n;
    }
    EXPECT_EQ(invariant, is_graded_subspace(w, n));
  }
}

TEST(HomSpace, Examples) {
  const Field& f = QQ();
  GradedModule w = matrix2_module(f);
  auto end0 = hom_space(w, w, {0, 0}, true);
  ASSERT_EQ(end0.size(), 1u);
  EXPECT_EQ(rank(end0[0]), 4u);
  auto h10 = hom_space(w, w, {1, 0}, true);
  ASSERT_EQ(h10.size(), 1u);
  Matrix rd = right_mult(f, 1);
  EXPECT_EQ(Subspace::span(f, 16, {[&] {
              Vec v;
              for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c) v.push_back(h10[0](r, c));
              return v;
            }()}),
            Subspace::span(f, 16, {[&] {
              Vec v;
              for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c) v.push_back(rd(r, c));
              return v;
            }()}));
  GradedLieAlgebra s = sl_n(f, 2);
  EXPECT_TRUE(hom_space(sl2_irrep(s, 1), sl2_irrep(s, 3), {}, false).empty());
  EXPECT_EQ(hom_space(sl2_irrep(s, 3), sl2_irrep(s, 3), {}, false).size(), 1u);
}

TEST(Schur, Examples) {
  const Field& f = QI();
  SchurReport m = schur_report(matrix2_module(f));
  EXPECT_EQ(m.end0_dim, 1u);
  EXPECT_TRUE(m.scalar_only);
  EXPECT_EQ(m.per_degree.size(), 4u);
  for (const auto& [a, n] : m.per_degree) EXPECT_EQ(n, 1u) << group_elem_string(a);
  SchurReport p = schur_report(pair_module(f, 1, 0));
  EXPECT_EQ(p.end0_dim, 1u);
  for (const auto& [a, n] : p.per_degree)
    if (a == GroupElem{1}) EXPECT_EQ(n, 1u);
  EXPECT_EQ(schur_report(ex1_module(f).w).end0_dim, 1u);
  GradedModule w = matrix2_module(f);
  try {
    schur_report(direct_sum(w, w));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotGradedSimple);
  }
}

TEST(Twist, Examples) {
  const Field& f = QQ();
  Ex1 e = ex1_module(f);
  auto chars = characters(e.g.group(), f.spec());
  GradedModule same = twist(e.v, chars[0]);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(same.action_basis(i, 0), e.v.action_basis(i, 0));
  Character f10 = chars[0];
  for (const auto& c : chars)
    if (c({1, 0}) == f.from_int(-1) && c({0, 1}).is_one()) f10 = c;
  GradedModule t = twist(e.v, f10);
  EXPECT_EQ(t.act(1, vec(f, {1})), vec(f, {-1}));
  EXPECT_EQ(t.act(0, vec(f, {1})), vec(f, {1}));
  for (const auto& c : chars) {
    GradedModule back = twist(twist(e.v, c), c.inverse());
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(back.action_basis(i, 0), e.v.action_basis(i, 0));
    Matrix ti = twist_iso(e.w, c);
    EXPECT_TRUE(is_module_hom(e.w, twist(e.w, c), ti, GroupElem{0, 0}));
  }
}

TEST(Psi, AllCharactersOnEx1) {
  const Field& f = QI();
  Ex1 e = ex1_module(f);
  LoopModule m = loop_module(e.g, e.p, e.v);
  auto chars = characters(e.g.group(), f.spec());
  ASSERT_EQ(chars.size(), 4u);
  for (const auto& c : chars) {
    Matrix psi = psi_iso(m, c);
    EXPECT_TRUE(invertible(psi));
    EXPECT_TRUE(is_module_hom(twist(m.underlying, c), m.underlying, psi, GroupElem{0, 0}));
    for (std::size_t k = 0; k < m.underlying.dim(); ++k) {
      EXPECT_EQ(psi(k, k), c(m.underlying.degree(k)).inverse());
      if (c.is_trivial()) EXPECT_TRUE(psi(k, k).is_one());
    }
  }
}

TEST(PPrime, Examples) {
  const Field& f = QQ();
  PPrime m = pprime(matrix2_module(f));
  EXPECT_EQ(m.elements, (std::vector<GroupElem>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  PPrime e = pprime(ex1_module(f).w);
  EXPECT_EQ(e.elements, (std::vector<GroupElem>{{0, 0}, {1, 0}}));
  for (const auto& d : {m, e, pprime(pair_module(f, 1, 0)), pprime(pair_module(f, 1, 1))}) {
    EXPECT_EQ(d.elements.front(), (GroupElem(d.elements.front().size(), 0)));
    for (const auto& a : d.elements)
      for (const auto& b : d.elements) {
        GroupElem s(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) s[k] = (a[k] + b[k]) % 2;
        EXPECT_NE(std::find(d.elements.begin(), d.elements.end(), s), d.elements.end());
      }
    for (std::size_t k = 0; k < d.elements.size(); ++k) EXPECT_TRUE(invertible(d.lambdas[k]));
  }
}

TEST(CommutativeChoice, Examples) {
  const Field& f = QI();
  GradedModule e = ex1_module(f).w;
  CommutativeChoice c = max_commutative_D(e, pprime(e));
  EXPECT_EQ(c.kept.size(), 2u);
  EXPECT_EQ(c.p.order(), 2u);
  EXPECT_TRUE(c.normalized);
  GradedModule l11 = pair_module(f, 1, 1);
  EXPECT_EQ(max_commutative_D(l11, pprime(l11)).p.order(), 1u);
  auto subs = matrix2_subgroups(f);
  EXPECT_EQ(subs.size(), 3u);
  for (const auto& s : subs) EXPECT_EQ(s.size(), 2u);
}

TEST(CommutativeChoice, BadOrder) {
  GradedModule w = matrix2_module(QI());
  EXPECT_THROW(max_commutative_D(w, pprime(w), {0, 0, 1, 2}), Error);
}

TEST(VPrime, Examples) {
  const Field& f = QI();
  GradedModule l11 = pair_module(f, 1, 1);
  EXPECT_TRUE(vprime(l11, max_commutative_D(l11, pprime(l11))).is_zero());
  GradedModule e = ex1_module(f).w;
  Subspace v = vprime(e, max_commutative_D(e, pprime(e)));
  EXPECT_EQ(v, Subspace::span(f, 2, {vec(f, {1, -1})}));
  GradedModule w = matrix2_module(f);
  PPrime d = pprime(w);
  // order starting with (1,1) keeps {(0,0),(1,1)}
  CommutativeChoice c = max_commutative_D(w, d, {3, 0, 1, 2});
  EXPECT_EQ(c.p.elements(), (std::vector<GroupElem>{{0, 0}, {1, 1}}));
  Subspace vp = vprime(w, c);
  EXPECT_EQ(vp.dim(), 2u);
  EXPECT_TRUE(is_submodule(w, vp));
}

TEST(Reconstruct, Ex1) {
  const Field& f = QQ();
  Ex1 e = ex1_module(f);
  ModuleReconstruction r = reconstruct_module(e.w);
  EXPECT_EQ(r.choice.p, e.p);
  ASSERT_EQ(r.v.dim(), 1u);
  EXPECT_EQ(r.v.act(0, vec(f, {1})), vec(f, {1}));
  EXPECT_EQ(r.v.act(1, vec(f, {1})), vec(f, {1}));
  EXPECT_EQ(r.v.act(2, vec(f, {1})), vec(f, {0}));
  for (const auto& c : r.certificates) EXPECT_TRUE(c.passed) << c.name;
}

TEST(Reconstruct, Matrix2ThreeChoices) {
  const Field& f = QI();
  GradedModule w = matrix2_module(f);
  std::set<std::vector<GroupElem>> seen;
  for (std::vector<std::size_t> order : {std::vector<std::size_t>{1, 0, 2, 3}, {2, 0, 1, 3}, {3, 0, 1, 2}}) {
    ModuleReconstruction r = reconstruct_module(w, {}, order);
    EXPECT_EQ(r.choice.p.order(), 2u);
    EXPECT_EQ(r.v.dim(), 2u);
    EXPECT_TRUE(is_module_hom(w, r.loop.underlying, r.canonical, GroupElem{0, 0}));
    EXPECT_TRUE(invertible(r.canonical));
    for (const auto& c : r.certificates) EXPECT_TRUE(c.passed) << c.name;
    seen.insert(r.choice.p.elements());
  }
  EXPECT_EQ(seen.size(), 3u);
}

TEST(Reconstruct, PairModules) {
  const Field& f = QI();
  ModuleReconstruction r = reconstruct_module(pair_module(f, 1, 0));
  EXPECT_EQ(r.choice.p.order(), 2u);
  EXPECT_EQ(r.v.dim(), 2u);
  for (const auto& c : r.certificates) EXPECT_TRUE(c.passed) << c.name;
  ModuleReconstruction r11 = reconstruct_module(pair_module(f, 1, 1));
  EXPECT_EQ(r11.choice.p.order(), 1u);
  EXPECT_EQ(r11.v.dim(), 4u);
}

TEST(AutomorphismFromTwist, Examples) {
  const Field& f = QI();
  Ex1 e = ex1_module(f);
  LoopModule m = loop_module(e.g, e.p, e.v);
  auto chars = characters(e.g.group(), f.spec());
  Matrix id = automorphism_from_twist(m, chars[0], Matrix::identity(f, 1), {0, 0});
  EXPECT_EQ(id, Matrix::identity(f, 2));
  std::size_t built = 0;
  for (const auto& c : chars)
    for (const auto& a : e.g.group().elements()) {
      GroupElem abar = e.v.grading().rep(a);
      for (const auto& mu : hom_space(twist(e.v, c), e.v, abar, true)) {
        if (!invertible(mu)) continue;
        Matrix t = automorphism_from_twist(m, c, mu, a);
        EXPECT_TRUE(invertible(t));
        EXPECT_TRUE(is_module_hom(m.underlying, m.underlying, t, a));
        ++built;
        // V is one-dimensional: every nonzero scalar is valid, so corrupt by zero and by shape
        for (const Matrix& bad : {Matrix(f, 1, 1), Matrix::identity(f, 2)}) {
          try {
            automorphism_from_twist(m, c, bad, a);
            ADD_FAILURE();
          } catch (const Error& err) {
            EXPECT_EQ(err.code(), ErrorCode::WitnessInvalid);
          }
        }
      }
    }
  EXPECT_GE(built, 4u);
}

TEST(LoopModuleDecomposition, Ex1) {
  const Field& f = QI();
  Ex1 e = ex1_module(f);
  LoopModule m = loop_module(e.g, e.p, e.v);
  auto parts = loop_module_decomposition(m);
  ASSERT_EQ(parts.size(), 2u);
  Subspace sum(f, 2);
  for (const auto& p : parts) {
    EXPECT_EQ(p.sub.dim(), 1u);
    EXPECT_TRUE(is_submodule(m.underlying, p.sub));
    sum = subspace_sum(sum, p.sub);
  }
  EXPECT_TRUE(sum.is_whole());
  EXPECT_TRUE(subspace_intersect(parts[0].sub, parts[1].sub).is_zero());
}

TEST(Weyl, Examples) {
  const Field& f = QQ();
  GradedLieAlgebra g = pauli_sl2(f);
  GradedModule ad = adjoint_module(g);
  auto two = weyl_decompose(direct_sum(ad, shift_module(ad, {1, 1})));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].dim() + two[1].dim(), 6u);
  EXPECT_TRUE(subspace_intersect(two[0], two[1]).is_zero());
  auto mt = weyl_decompose(direct_sum(matrix2_module(f), trivial_module(g, {0, 0})));
  std::vector<std::size_t> dims;
  for (const auto& s : mt) dims.push_back(s.dim());
  std::sort(dims.begin(), dims.end());
  EXPECT_EQ(dims, (std::vector<std::size_t>{1, 4}));
  EXPECT_EQ(weyl_decompose(matrix2_module(f)).size(), 1u);
  try {
    weyl_decompose(ex1_module(f).w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSemisimple);
  }
}

TEST(AutomorphismFromTwist, NonCommutingWitness) {
  const Field& f = QQ();
  LoopModule m = loop_module(sl2_pair(f), Subgroup::whole(FinAbGroup({2})), l10_over_pair(f));
  auto chars = characters(FinAbGroup({2}), f.spec());
  Matrix id = automorphism_from_twist(m, chars[0], Matrix::identity(f, 2), {0});
  EXPECT_EQ(id, Matrix::identity(f, 4));
  Matrix bad = Matrix::identity(f, 2);
  bad(1, 1) = f.from_int(2);
  try {
    automorphism_from_twist(m, chars[0], bad, {0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WitnessInvalid);
  }
}
