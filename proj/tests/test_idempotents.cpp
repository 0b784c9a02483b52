#include <gtest/gtest.h>

#include <algorithm>

#include "gsla/idempotents.hpp"

#include "oracles.hpp"

using namespace gsla;
using namespace gsla::oracle;

namespace {

CommAlgebra two_dim(const Field& f, long square) {  // span{1,u}, u^2 = square
  CommAlgebra a{&f, 2, {}, unit_vec(f, 2, 0)};
  Vec u2 = zero_vec(f, 2);
  u2[0] = f.from_int(square);
  a.mult = {{unit_vec(f, 2, 0), unit_vec(f, 2, 1)}, {unit_vec(f, 2, 1), u2}};
  return a;
}

void expect_complete_system(const CommAlgebra& a, const std::vector<Vec>& ids) {
  Vec sum = zero_vec(*a.field, a.dim);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    EXPECT_EQ(a.multiply(ids[i], ids[i]), ids[i]);
    for (std::size_t j = i + 1; j < ids.size(); ++j) EXPECT_TRUE(is_zero_vec(a.multiply(ids[i], ids[j])));
    axpy(sum, a.field->one(), ids[i]);
  }
  EXPECT_EQ(sum, a.unit);
}

bool same_set(std::vector<Vec> a, std::vector<Vec> b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  return true;
}

}  // namespace

TEST(Idempotents, GroupAlgebraZ2) {
  const Field& q = Field::get(FieldSpec::rationals());
  auto a = two_dim(q, 1);
  auto ids = idempotents_commutative(a);
  Vec plus{q.from_rational(Rational(1, 2)), q.from_rational(Rational(1, 2))};
  Vec minus{q.from_rational(Rational(1, 2)), q.from_rational(Rational(-1, 2))};
  EXPECT_TRUE(same_set(ids, {plus, minus}));
}

TEST(Idempotents, LocalAlgebraGivesUnit) {
  const Field& q = Field::get(FieldSpec::rationals());
  auto ids = idempotents_commutative(two_dim(q, 0));
  ASSERT_EQ(ids.size(), 1u);
  EXPECT_EQ(ids[0], unit_vec(q, 2, 0));
}

TEST(Idempotents, GroupAlgebraZ4OverQi) {
  const Field& f = Field::get(FieldSpec::cyclotomic(4));
  auto a = group_algebra(f, {4});
  auto ids = idempotents_commutative(a);
  // oracle: the character idempotents (1/4) sum_k z^(-jk) u^k
  std::vector<Vec> expect;
  FieldElem z = f.generator();
  for (int j = 0; j < 4; ++j) {
    Vec e;
    for (int k = 0; k < 4; ++k) e.push_back(z.pow(-j * k) * f.from_rational(Rational(1, 4)));
    expect.push_back(e);
  }
  EXPECT_TRUE(same_set(ids, expect));
  expect_complete_system(a, ids);
}

TEST(Idempotents, SplitGroupAlgebras) {
  struct Case {
    FieldSpec spec;
    std::vector<int> moduli;
  };
  for (const auto& c : std::vector<Case>{{FieldSpec::rationals(), {2, 2}},
                                         {FieldSpec::cyclotomic(3), {3}},
                                         {FieldSpec::cyclotomic(4), {2, 4}},
                                         {FieldSpec::prime(5), {4}},
                                         {FieldSpec::prime(7), {3, 2}}}) {
    const Field& f = Field::get(c.spec);
    auto a = group_algebra(f, c.moduli);
    auto ids = idempotents_commutative(a);
    EXPECT_EQ(ids.size(), a.dim) << c.spec.name();
    expect_complete_system(a, ids);
  }
}

TEST(Idempotents, PartialSplitOverQ) {
  // Q[Z3] = Q x Q(z3): two primitive idempotents over Q would need the
  // p-adic pieces to be regrouped; only the full split is attempted.
  const Field& q = Field::get(FieldSpec::rationals());
  try {
    idempotents_commutative(group_algebra(q, {3}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonSplit);
  }
}

TEST(Idempotents, NonSplitOverRationals) {
  const Field& q = Field::get(FieldSpec::rationals());
  try {
    idempotents_commutative(two_dim(q, -1));  // Q(i)
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonSplit);
  }
}

TEST(Idempotents, NotCommutative) {
  const Field& q = Field::get(FieldSpec::rationals());
  auto a = two_dim(q, 1);
  a.mult[0][1] = zero_vec(q, 2);
  try {
    idempotents_commutative(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCommutative);
  }
}
