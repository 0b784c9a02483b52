#include <gtest/gtest.h>

#include <random>

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

// g(Z2, Z2, sl2) over f.
LoopAlgebra loop_z2_sl2(const Field& f) {
  FinAbGroup q({2});
  Subgroup p = Subgroup::whole(q);
  QuotientGroup qp(p);
  return loop_algebra(q, p, sl2_graded(f, qp, qp.zero(), qp.zero(), qp.zero()));
}

// sl2 (x) (t^0 + t^1) inside g(Z2, Z2, sl2).
Subspace diagonal_ideal(const LoopAlgebra& l) {
  std::vector<Vec> b;
  for (std::size_t i = 0; i < 3; ++i) {
    Vec v = zero_vec(l.underlying.field(), l.underlying.dim());
    v[*l.index_of(i, {0})] = v.front().field().one();
    v[*l.index_of(i, {1})] = v.front().field().one();
    b.push_back(v);
  }
  return Subspace::span(l.underlying.field(), l.underlying.dim(), b);
}

Vec random_vec(const Field& f, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(f.from_int(d(rng)));
  return v;
}

// Dense oracle: trace(ad x ad y) from explicit matrices.
FieldElem killing_dense(const GradedLieAlgebra& g, std::size_t i, std::size_t j) {
  const Field& f = g.field();
  Matrix a = g.ad(unit_vec(f, g.dim(), i)), b = g.ad(unit_vec(f, g.dim(), j));
  Matrix p = a * b;
  FieldElem t = f.zero();
  for (std::size_t k = 0; k < g.dim(); ++k) t += p(k, k);
  return t;
}

}  // namespace

TEST(Verify, PauliPasses) {
  auto r = verify_algebra(pauli_sl2(QQ()));
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.minimal);
}

TEST(Verify, BrokenAntisymmetry) {
  GradedLieAlgebra g = pauli_sl2(QQ());
  auto b = g.bracket_basis(0, 1);
  for (auto& e : b) e.second = -e.second;
  g.set_bracket_raw(0, 1, b);
  auto r = verify_algebra(g);
  ASSERT_FALSE(r.antisymmetry.empty());
  EXPECT_EQ(r.antisymmetry.front(), (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(Verify, JacobiAndGradingFailures) {
  const Field& f = QQ();
  QuotientGroup z2(FinAbGroup({2}));
  GradedLieAlgebra g(f, z2, {{0}, {0}, {0}});
  g.set_bracket(0, 1, {{1, f.one()}});
  g.set_bracket(0, 2, {{2, f.one()}});
  g.set_bracket(1, 2, {{0, f.one()}});
  EXPECT_FALSE(verify_algebra(g).jacobi.empty());
  GradedLieAlgebra h(f, z2, {{0}, {1}});
  h.set_bracket(0, 1, {{0, f.one()}});
  EXPECT_FALSE(verify_algebra(h).grading.empty());
}

TEST(Verify, Ex1AbelianMinimal) {
  auto r = verify_algebra(ex1_module(QQ()).g);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.minimal);
}

TEST(Bracket, Examples) {
  const Field& f = QQ();
  GradedLieAlgebra g = pauli_sl2(f);
  EXPECT_EQ(g.bracket(vec(f, {1, 0, 0}), vec(f, {0, 1, 0})), vec(f, {0, 0, 2}));
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    Vec u = random_vec(f, 3, rng), v = random_vec(f, 3, rng);
    EXPECT_TRUE(is_zero_vec(g.bracket(u, u)));
    EXPECT_EQ(g.bracket(u, v), scaled(g.bracket(v, u), f.from_int(-1)));
  }
}

TEST(IdealClosure, Examples) {
  const Field& f = QQ();
  GradedLieAlgebra p = pauli_sl2(f);
  EXPECT_TRUE(ideal_closure(p, Subspace(f, 3)).is_zero());
  EXPECT_TRUE(ideal_closure(p, {vec(f, {1, 0, 0})}).is_whole());
  LoopAlgebra l = loop_z2_sl2(f);
  Subspace i = diagonal_ideal(l);
  Subspace c = ideal_closure(l.underlying, {i.basis()[1]});
  EXPECT_EQ(c.dim(), 3u);
  EXPECT_EQ(c, i);
}

TEST(IdealClosure, ClosureLaws) {
  const Field& f = QI();
  LoopAlgebra l = loop_z2_sl2(f);
  const GradedLieAlgebra& g = l.underlying;
  auto chars = characters(g.group(), f.spec());
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    Vec x = random_vec(f, g.dim(), rng), y = random_vec(f, g.dim(), rng);
    Subspace s = Subspace::span(f, g.dim(), {x});
    Subspace cs = ideal_closure(g, s);
    EXPECT_TRUE(cs.contains(s));
    EXPECT_EQ(ideal_closure(g, cs), cs);
    EXPECT_TRUE(ideal_closure(g, {x, y}).contains(cs));
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (const auto& v : cs.basis()) EXPECT_TRUE(cs.contains(g.bracket_with(i, v)));
    for (const auto& ch : chars)
      EXPECT_EQ(ideal_closure(g, apply_character(g, ch, s)), apply_character(g, ch, cs));
  }
}

TEST(Center, Examples) {
  const Field& f = QQ();
  EXPECT_TRUE(center(pauli_sl2(f)).is_zero());
  QuotientGroup z1(FinAbGroup(std::vector<long>{}));
  GradedLieAlgebra one(f, z1, {{}});
  EXPECT_TRUE(center(one).is_whole());
  EXPECT_TRUE(center(ex1_module(f).g).is_whole());
}

TEST(Killing, Sl2Values) {
  const Field& f = QQ();
  GradedLieAlgebra s = sl_n(f, 2);  // e, h, f
  auto k = killing_gram(s);
  EXPECT_TRUE(k.nondegenerate);
  EXPECT_EQ(k.gram(1, 1), f.from_int(8));
  EXPECT_EQ(k.gram(0, 2), f.from_int(4));
  EXPECT_TRUE(k.gram(0, 0).is_zero());
  EXPECT_TRUE(k.gram(2, 2).is_zero());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(k.gram(i, j), killing_dense(s, i, j));
}

TEST(Killing, MatchesDenseOracle) {
  for (const auto& g : {sl_n(QQ(), 3), pauli_sl2(QQ()), loop_z2_sl2(QI()).underlying, sl2_pair(QQ())}) {
    auto k = killing_gram(g);
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) EXPECT_EQ(k.gram(i, j), killing_dense(g, i, j));
  }
}

TEST(Killing, Degenerate) {
  EXPECT_FALSE(killing_gram(ex1_module(QQ()).g).nondegenerate);
  EXPECT_TRUE(killing_gram(ex1_module(QQ()).g).gram.is_zero());
  EXPECT_FALSE(killing_gram(example0_algebra(3).underlying).nondegenerate);
}

TEST(Centroid, Examples) {
  const Field& f = QQ();
  EXPECT_EQ(centroid(sl_n(f, 2)).dim(), 1u);
  LoopAlgebra l = loop_z2_sl2(f);
  Centroid c = centroid(l.underlying);
  EXPECT_EQ(c.dim(), 2u);
  EXPECT_EQ(c.of_degree({0}).size(), 1u);
  EXPECT_EQ(c.of_degree({1}).size(), 1u);
  EXPECT_TRUE(c.commutative);
  // the degree-1 map sends x (x) t^a to a multiple of x (x) t^(a+1)
  const Matrix& shift = c.maps[c.of_degree({1}).front()];
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t from = *l.index_of(i, {0}), to = *l.index_of(i, {1});
    EXPECT_FALSE(shift(to, from).is_zero());
  }
  GradedLieAlgebra s = sl_n(f, 2);
  Centroid c2 = centroid(direct_sum(s, s));
  EXPECT_EQ(c2.dim(), 2u);
  EXPECT_EQ(c2.of_degree({}).size(), 2u);
}

TEST(Centroid, MapsCommuteWithAd) {
  LoopAlgebra l = loop_z2_sl2(QQ());
  const GradedLieAlgebra& g = l.underlying;
  Centroid c = centroid(g);
  for (const auto& m : c.maps)
    for (std::size_t i = 0; i < g.dim(); ++i) {
      Matrix a = g.ad(unit_vec(g.field(), g.dim(), i));
      EXPECT_EQ(m * a, a * m);
    }
}

TEST(Simplicity, Examples) {
  const Field& f = QQ();
  EXPECT_EQ(simplicity_certificate(sl_n(f, 2)).kind, SimplicityKind::SimpleCertified);
  GradedLieAlgebra s = sl_n(f, 2);
  GradedLieAlgebra ss = direct_sum(s, s);
  auto v = simplicity_certificate(ss);
  ASSERT_EQ(v.kind, SimplicityKind::NotSimple);
  ASSERT_TRUE(v.witness);
  Subspace first = Subspace::coordinate(f, 6, std::vector<std::size_t>{0, 1, 2});
  Subspace second = Subspace::coordinate(f, 6, std::vector<std::size_t>{3, 4, 5});
  EXPECT_TRUE(*v.witness == first || *v.witness == second);
  auto e0 = simplicity_certificate(example0_algebra(3).underlying);
  ASSERT_EQ(e0.kind, SimplicityKind::NotSimple);
  EXPECT_EQ(e0.witness->dim(), 6u);
}

TEST(Size, Examples) {
  const Field& f = QQ();
  LoopAlgebra l = loop_z2_sl2(f);
  const GradedLieAlgebra& g = l.underlying;
  EXPECT_EQ(size(g, g.component_space({0})), 1u);
  Subspace i = diagonal_ideal(l);
  EXPECT_EQ(size(g, i), 2u);
  EXPECT_EQ(support(g, i), (std::vector<GroupElem>{{0}, {1}}));
  try {
    size(g, Subspace(f, g.dim()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySubspace);
  }
  try {
    size(g, i, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SearchCapExceeded);
  }
}

TEST(GradedSimple, Examples) {
  const Field& f = QQ();
  auto p = graded_simple_check(pauli_sl2(f));
  EXPECT_EQ(p.kind, GradedKind::GradedSimple);
  EXPECT_EQ(p.tier, "A");
  EXPECT_EQ(graded_simple_check(loop_z2_sl2(f).underlying).kind, GradedKind::GradedSimple);
  GradedLieAlgebra s = sl_n(f, 2, FinAbGroup({2}));
  auto v = graded_simple_check(direct_sum(s, s));
  ASSERT_EQ(v.kind, GradedKind::NotGradedSimple);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->dim(), 3u);
}

TEST(GradedSimple, TierAAgreesWithBruteForce) {
  auto corpus = tier_a_corpus();
  EXPECT_GE(corpus.size(), 8u);
  for (const auto& g : corpus) {
    auto v = graded_simple_check(g);
    EXPECT_EQ(v.tier, "A");
    EXPECT_EQ(v.kind == GradedKind::GradedSimple, brute_graded_simple(g)) << g.dim();
    if (v.kind == GradedKind::GradedSimple) EXPECT_TRUE(center(g).is_zero());
  }
}

TEST(GradedSimple, ProjectionsOfIdealsFillComponents) {
  LoopAlgebra l = loop_z2_sl2(QQ());
  const GradedLieAlgebra& g = l.underlying;
  Subspace i = diagonal_ideal(l);
  EchelonBuilder sum(g.field(), g.dim());
  for (const auto& a : g.support())
    for (const auto& v : i.basis()) {
      Vec p = zero_vec(g.field(), g.dim());
      for (auto k : g.component(a)) p[k] = v[k];
      sum.insert(p);
    }
  Subspace s = sum.finish();
  EXPECT_TRUE(is_ideal(g, s));
  EXPECT_TRUE(s.is_whole());
}

TEST(GradedSubspace, CharacterCriterion) {
  const Field& f = QI();
  GradedLieAlgebra g = loop_algebra(FinAbGroup({2, 2}), Subgroup::whole(FinAbGroup({2, 2})),
                                    sl2_graded(f, QuotientGroup(Subgroup::whole(FinAbGroup({2, 2}))), {0, 0}, {0, 0}, {0, 0}))
                           .underlying;
  auto chars = characters(g.group(), f.spec());
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    std::vector<Vec> vs;
    bool make_graded = t % 2 == 0;
    for (int k = 0; k < 2; ++k) {
      Vec v = random_vec(f, g.dim(), rng);
      if (make_graded) {
        auto supp = g.support();
        const auto& keep = g.component(supp[static_cast<std::size_t>(t / 2 + k) % supp.size()]);
        for (std::size_t i = 0; i < g.dim(); ++i)
          if (std::find(keep.begin(), keep.end(), i) == keep.end()) v[i] = f.zero();
      }
      vs.push_back(v);
    }
    Subspace u = Subspace::span(f, g.dim(), vs);
    bool invariant = true;
    for (const auto& ch : chars) invariant = invariant && apply_character(g, ch, u) == u;
    EXPECT_EQ(invariant, is_graded_subspace(g, u));
    if (make_graded) EXPECT_TRUE(invariant);
  }
}

TEST(Regrade, Examples) {
  const Field& f = QQ();
  GradedLieAlgebra p = pauli_sl2(f);
  FinAbGroup q({2, 2});
  GradedLieAlgebra same = regrade_by_quotient(p, Subgroup::trivial(q));
  EXPECT_EQ(same.degrees(), p.degrees());
  GradedLieAlgebra all = regrade_by_quotient(p, Subgroup::whole(q));
  for (const auto& d : all.degrees()) EXPECT_EQ(d, (GroupElem{0, 0}));
  GradedLieAlgebra r = regrade_by_quotient(p, Subgroup::generate(q, {{1, 1}}));
  EXPECT_EQ(r.degree(0), r.degree(1));  // h and e+f share a coset
  EXPECT_NE(r.degree(0), r.degree(2));
  EXPECT_EQ(r.degree(2), (GroupElem{0, 0}));
  EXPECT_EQ(r.fine_degrees(), p.degrees());
  EXPECT_TRUE(verify_algebra(r).ok());
}
