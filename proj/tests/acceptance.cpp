// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "gsla/catalog.hpp"
#include "gsla/idempotents.hpp"

#include "oracles.hpp"

using namespace gsla;
using namespace gsla::oracle;

namespace {

const Field& QQ() { return Field::get(FieldSpec::rationals()); }
const Field& QI() { return Field::get(FieldSpec::cyclotomic(4)); }

// Collects failures; a criterion passes when none were recorded.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream o;
    o << count_ - failed_ << "/" << count_ << " checks";
    for (const auto& n : notes_) o << "; " << n;
    for (const auto& f : failures_) o << "; failed: " << f;
    return o.str();
  }

 private:
  std::size_t count_ = 0, failed_ = 0;
  std::vector<std::string> failures_, notes_;
};

bool invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

bool all_passed(const std::vector<Certificate>& certs) {
  return std::all_of(certs.begin(), certs.end(), [](const auto& c) { return c.passed; });
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;  // sentinel: nothing thrown
}

std::vector<FinAbGroup> dual_groups() { return {FinAbGroup({2, 2}), FinAbGroup({4}), FinAbGroup({6}), FinAbGroup({2, 4})}; }

void c1(Check& c) {
  auto cat = sl2_loop_catalog({FinAbGroup({2}), FinAbGroup({4}), FinAbGroup({2, 2})});
  for (const auto& e : cat) c.expect(loop_algebra(e.q, e.p, e.a).underlying.dim() == 3 * e.p.order(), e.name);
  c.note(std::to_string(cat.size()) + " triples");
}

void c2(Check& c) {
  FinAbGroup q({2, 2});
  std::size_t subgroups = 0;
  for (const auto& p : all_subgroups(q)) {
    ++subgroups;
    QuotientGroup qp(p);
    for (const auto& a : sl2_gradings(QI(), qp)) {
      LoopAlgebra l = loop_algebra(q, p, a);
      const GradedLieAlgebra& g = l.underlying;
      LoopDecomposition d = loop_ideal_decomposition(l);
      std::string tag = p.to_string();
      c.expect(d.ideals.size() == p.order(), tag + " count");
      Subspace sum(g.field(), g.dim());
      std::size_t dims = 0;
      for (std::size_t i = 0; i < d.ideals.size(); ++i) {
        c.expect(is_ideal(g, d.ideals[i]), tag + " ideal");
        for (std::size_t j = i + 1; j < d.ideals.size(); ++j)
          c.expect(bracket_space(g, d.ideals[i], d.ideals[j]).is_zero(), tag + " brackets");
        sum = subspace_sum(sum, d.ideals[i]);
        dims += d.ideals[i].dim();
        // iso a -> ideal: bracket-preserving, bijective onto the ideal, degree
        // i of a lands in the coset deg_a(i)
        const Matrix& m = d.isos[i];
        c.expect(is_homomorphism(a, g, m) && rank(m) == a.dim() && column_space(m) == d.ideals[i], tag + " iso");
        for (std::size_t k = 0; k < a.dim(); ++k)
          for (const auto& beta : support(g, m.col_vec(k)))
            c.expect(qp.same_coset(beta, a.degree(k)), tag + " iso degree");
      }
      c.expect(sum.is_whole() && dims == g.dim(), tag + " direct sum");
    }
  }
  c.note(std::to_string(subgroups) + " subgroups");
}

void c3(Check& c) {
  std::size_t cases = 0, nontrivial = 0;
  for (const auto& q : dual_groups()) {
    auto chars = characters(q, FieldSpec::cyclotomic(static_cast<std::uint64_t>(q.exponent())));
    for (const auto& p : all_subgroups(q)) {
      auto perp = annihilator(p, chars);
      c.expect(chars.size() % perp.size() == 0 && chars.size() / perp.size() == p.order(), q.to_string() + " " + p.to_string());
      ++cases;
      if (!p.is_trivial()) ++nontrivial;
    }
  }
  c.note(std::to_string(cases) + " subgroups, " + std::to_string(nontrivial) + " nontrivial");
}

void c4(Check& c) {
  for (const auto& q : dual_groups()) {
    auto chars = characters(q, FieldSpec::cyclotomic(static_cast<std::uint64_t>(q.exponent())));
    for (const auto& p : all_subgroups(q)) {
      QuotientGroup dual(annihilator_exponents(p));
      std::vector<Character> reps;
      for (const auto& e : dual.reps()) reps.push_back({chars.front().table, e});
      for (const auto& alpha : q.elements())
        c.expect(rank(character_matrix(alpha, p.elements(), reps)) == p.order(), q.to_string() + " " + p.to_string());
    }
  }
  std::size_t loops = 0;
  for (const auto& e : sl2_loop_catalog(abelian_groups(8))) {
    LoopAlgebra l = loop_algebra(e.q, e.p, e.a);
    if (l.underlying.support().size() > 8) continue;
    ++loops;
    Subspace canon = loop_ideal_decomposition(l).ideals.front();
    c.expect(size(l.underlying, canon) == e.p.order(), e.name);
  }
  c.note(std::to_string(loops) + " loop algebras with |supp| <= 8");
}

void c5(Check& c) {
  auto cat = sl2_loop_catalog(abelian_groups(8));
  for (const auto& e : cat) {
    LoopAlgebra l = loop_algebra(e.q, e.p, e.a);
    Recognition r = recognize(l.underlying);
    c.expect(r.p.order() == e.p.order(), e.name + " |P|");
    c.expect(all_passed(r.certificates), e.name + " certificates");
    auto w = recognized_witness(l, r);
    c.expect(w && verify_graded_iso(r.a, l.base, identity_hom(e.q), *w).ok, e.name + " a' ~ a");
  }
  c.note(std::to_string(cat.size()) + " catalog triples");
}

void c6(Check& c) {
  LoopAlgebra l = example0_algebra(3);
  const GradedLieAlgebra& g = l.underlying;
  c.expect(code_of([&] { loop_ideal_decomposition(l); }) == ErrorCode::NoSuchRoot, "NoSuchRoot");
  auto j = find_proper_ideal(g);
  c.expect(j && j->dim() == 6 && is_ideal(g, *j), "6-dim ideal");
  if (!j) return;
  Subspace j2 = bracket_space(g, *j, *j), j3 = bracket_space(g, *j, j2);
  c.expect(j->contains(j2) && j2.dim() < j->dim() && !j2.is_zero(), "J > [J,J]");
  c.expect(j3.is_zero(), "[J,[J,J]] = 0");
  c.expect(j2.dim() == 3 && is_ideal(g, j2) && bracket_space(g, j2, j2).is_zero(), "abelian 3-dim ideal");
  c.expect(!killing_gram(g).nondegenerate, "Killing degenerate");
}

void c7(Check& c) {
  GradedModule w = matrix2_module(QI());
  auto v = graded_simple_module_check(w);
  c.expect(v.kind == GradedKind::GradedSimple && v.tier == "A", "GradedSimple tier A");
  std::set<std::vector<GroupElem>> seen;
  for (std::vector<std::size_t> order : {std::vector<std::size_t>{1, 0, 2, 3}, {2, 0, 1, 3}, {3, 0, 1, 2}}) {
    ModuleReconstruction r = reconstruct_module(w, {}, order);
    c.expect(r.choice.p.order() == 2, "|P| = 2");
    c.expect(all_passed(r.certificates), "certificates");
    c.expect(invertible(r.canonical) && is_module_hom(w, r.loop.underlying, r.canonical, GroupElem{0, 0}), "iso to M(Q,P,V)");
    seen.insert(r.choice.p.elements());
  }
  c.expect(seen.size() == 3, "three distinct P");
}

void c8(Check& c) {
  GradedModule w = pair_module(QI(), 1, 0);
  c.expect(graded_simple_module_check(w).kind == GradedKind::GradedSimple, "L(1,0) graded simple");
  auto s = simple_module_check(w);
  c.expect(s.kind == SimplicityKind::NotSimple && s.witness && is_submodule(w, *s.witness) && !s.witness->is_zero() &&
               !s.witness->is_whole(),
           "ungraded witness");
  ModuleReconstruction r = reconstruct_module(w);
  c.expect(r.choice.p.order() == 2 && r.v.dim() == 2 && all_passed(r.certificates), "P = Z2, dim V = 2");
  ModuleReconstruction r11 = reconstruct_module(pair_module(QI(), 1, 1));
  c.expect(r11.choice.p.order() == 1 && all_passed(r11.certificates), "L(1,1): P = 0");
}

void c9(Check& c) {
  const Field& f = QQ();
  Ex1 e = ex1_module(f);
  ModuleReconstruction r = reconstruct_module(e.w);
  c.expect(r.choice.p == Subgroup::generate(e.g.group(), {{1, 0}}), "P = Z2 x 0");
  c.expect(r.v.dim() == 1, "dim V = 1");
  if (r.v.dim() != 1) return;
  Vec one{f.one()}, zero{f.zero()};
  c.expect(r.v.act(0, one) == one && r.v.act(1, one) == one && r.v.act(2, one) == zero, "action on v");
  c.expect(all_passed(r.certificates), "certificates");
}

void c10(Check& c) {
  Ex1 e = ex1_module(QI());
  for (const auto& [name, w] : std::vector<std::pair<std::string, GradedModule>>{
           {"matrix2", matrix2_module(QI())}, {"Ex1 W", e.w}, {"L(1,0)", pair_module(QI(), 1, 0)}}) {
    SchurReport s = schur_report(w);
    c.expect(s.end0_dim == 1 && s.scalar_only, name);
  }
}

void c11(Check& c) {
  const Field& f = QQ();
  GradedLieAlgebra g = pauli_sl2(f);
  GradedModule ad = adjoint_module(g);
  GradedModule two = direct_sum(ad, shift_module(ad, {1, 1}));
  auto parts = weyl_decompose(two);
  c.expect(parts.size() == 2, "two summands");
  Subspace sum(f, two.dim());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    c.expect(is_submodule(two, parts[i]) && is_graded_subspace(two, parts[i]), "graded submodule");
    for (std::size_t j = i + 1; j < parts.size(); ++j) c.expect(subspace_intersect(parts[i], parts[j]).is_zero(), "disjoint");
    sum = subspace_sum(sum, parts[i]);
  }
  c.expect(sum.is_whole(), "sum is whole");
  GradedModule mt = direct_sum(matrix2_module(f), trivial_module(g, {0, 0}));
  std::vector<std::size_t> dims;
  for (const auto& s : weyl_decompose(mt)) dims.push_back(s.dim());
  std::sort(dims.begin(), dims.end());
  c.expect(dims == std::vector<std::size_t>{1, 4}, "matrix2 + trivial dims {4,1}");
}

void c12(Check& c) {
  const Field& f = QI();
  Ex1 e = ex1_module(f);
  LoopModule m = loop_module(e.g, e.p, e.v);
  auto parts = loop_module_decomposition(m);
  c.expect(parts.size() == 2, "two summands");
  Subspace sum(f, m.underlying.dim());
  std::set<GroupElem> restricted;  // f restricted to P
  for (const auto& p : parts) {
    c.expect(is_submodule(m.underlying, p.sub), "submodule");
    c.expect(rank(p.iso) == e.v.dim() && column_space(p.iso) == p.sub, "iso onto summand");
    c.expect(is_module_hom(twist(m.base, p.f), m.underlying, p.iso), "V^f -> M intertwines");
    // the summand carries the Q/P-grading: V_a lands in the sum of M_b, b in a + P
    QuotientGroup qp(m.p);
    for (std::size_t j = 0; j < m.base.dim(); ++j)
      for (std::size_t k = 0; k < m.underlying.dim(); ++k)
        if (!p.iso(k, j).is_zero())
          c.expect(qp.same_coset(m.underlying.degree(k), m.base.degree(j)), "coset degrees");
    GroupElem r;
    for (const auto& a : m.p.elements()) r.push_back(p.f(a).is_one() ? 0 : 1);
    restricted.insert(r);
    sum = subspace_sum(sum, p.sub);
  }
  c.expect(sum.is_whole() && (parts.size() < 2 || subspace_intersect(parts[0].sub, parts[1].sub).is_zero()), "direct sum");
  c.expect(restricted.size() == parts.size(), "characters distinct on P");
}

void c13(Check& c) {
  auto corpus = tier_a_corpus();
  for (const auto& g : corpus) {
    auto v = graded_simple_check(g);
    c.expect(v.tier == "A" && (v.kind == GradedKind::GradedSimple) == brute_graded_simple(g), "Tier A vs brute force");
  }
  c.note(std::to_string(corpus.size()) + " Tier-A algebras");

  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    const Field& f = t % 2 ? QI() : QQ();
    std::size_t n = 3 + rng() % 4;
    Subspace u = Subspace::span(f, n, random_vectors(f, 1 + rng() % n, n, rng));
    Subspace v = Subspace::span(f, n, random_vectors(f, 1 + rng() % n, n, rng));
    Subspace i = subspace_intersect(u, v), s = subspace_sum(u, v);
    c.expect(u.dim() + v.dim() == s.dim() + i.dim() && i == intersect_by_kernel(u, v), "dimension formula");
  }

  for (int t = 0; t < 1000; ++t) {
    Integer p = Integer(2000000) + Integer(static_cast<unsigned long>(rng() % 1000000000));
    do mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    while (p % 4 != 1);
    Integer bound = sqrt(Integer((p - 1) / 2));
    if (2 * bound * bound >= p) bound -= 1;
    long b_max = bound.fits_slong_p() ? bound.get_si() : 0;
    std::uniform_int_distribution<long> num(-b_max, b_max), den(1, b_max);
    Integer a = num(rng), b = den(rng), binv;
    mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), p.get_mpz_t());
    Integer res = (a * binv) % p;
    if (res < 0) res += p;
    Rational want(a, b);
    want.canonicalize();
    auto got = rational_reconstruct(res, p, bound);
    c.expect(got && *got == want, "rational_reconstruct");
  }

  struct Case {
    FieldSpec spec;
    std::vector<int> moduli;
  };
  for (const auto& k : std::vector<Case>{{FieldSpec::rationals(), {2}},
                                         {FieldSpec::rationals(), {2, 2}},
                                         {FieldSpec::cyclotomic(3), {3}},
                                         {FieldSpec::cyclotomic(4), {4}},
                                         {FieldSpec::cyclotomic(4), {2, 4}},
                                         {FieldSpec::cyclotomic(6), {6}},
                                         {FieldSpec::prime(5), {4}},
                                         {FieldSpec::prime(7), {3, 2}}}) {
    CommAlgebra a = group_algebra(Field::get(k.spec), k.moduli);
    auto ids = idempotents_commutative(a);
    c.expect(ids.size() == a.dim && complete_orthogonal(a, ids), "idempotents over " + k.spec.name());
  }
}

void c14(Check& c) {
  const Field& f = QI();
  Ex1 e = ex1_module(f);
  LoopModule m = loop_module(e.g, e.p, e.v);
  auto chars = characters(e.g.group(), f.spec());
  c.expect(chars.size() == 4, "4 characters");
  for (const auto& ch : chars) {
    Matrix psi = psi_iso(m, ch);
    c.expect(invertible(psi) && is_module_hom(twist(m.underlying, ch), m.underlying, psi, GroupElem{0, 0}), "psi");
  }
  std::size_t built = 0, absent = 0, rejected = 0;
  for (const auto& ch : chars)
    for (const auto& a : e.g.group().elements()) {
      GroupElem abar = e.v.grading().rep(a);
      bool found = false;
      for (const auto& mu : hom_space(twist(e.v, ch), e.v, abar, true)) {
        if (!invertible(mu)) continue;
        found = true;
        Matrix t = automorphism_from_twist(m, ch, mu, a);
        c.expect(invertible(t) && is_module_hom(m.underlying, m.underlying, t, a), "automorphism");
        ++built;
        for (const Matrix& bad : {Matrix(f, 1, 1), Matrix::identity(f, 2)}) {
          bool ok = code_of([&] { automorphism_from_twist(m, ch, bad, a); }) == ErrorCode::WitnessInvalid;
          c.expect(ok, "corrupted witness rejected");
          rejected += ok;
        }
      }
      if (!found) ++absent;
    }
  // 2-dim V: a non-scalar mu fails to intertwine
  LoopModule pm = loop_module(sl2_pair(QQ()), Subgroup::whole(FinAbGroup({2})), l10_over_pair(QQ()));
  Matrix bad = Matrix::identity(QQ(), 2);
  bad(1, 1) = QQ().from_int(2);
  auto z2 = characters(FinAbGroup({2}), QQ().spec());
  c.expect(code_of([&] { automorphism_from_twist(pm, z2[0], bad, {0}); }) == ErrorCode::WitnessInvalid, "non-intertwining mu rejected");
  c.expect(built > 0, "some mu exists");
  c.note(std::to_string(built) + " automorphisms, " + std::to_string(absent) + " (f, alpha) without mu, " +
         std::to_string(rejected) + " corruptions rejected");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    void (*run)(Check&);
  };
  const std::vector<Criterion> criteria{
      {1, "dimension law dim g(Q,P,a) = 3|P|", c1},
      {2, "|P| commuting ideals of g(Z2xZ2, P, sl2) over Q(z4)", c2},
      {3, "|Q^|/|P^perp| = |P|", c3},
      {4, "character matrices invertible; canonical ideal has size |P|", c4},
      {5, "recognize round-trip for |Q| <= 8", c5},
      {6, "example0 (p = 3)", c6},
      {7, "matrix2: three choices of P", c7},
      {8, "pair modules L(1,0), L(1,1)", c8},
      {9, "Ex1 reconstruction", c9},
      {10, "graded Schur: dim End_0 = 1", c10},
      {11, "graded Weyl decompositions", c11},
      {12, "M(Z2xZ2, Z2x0, V) = V + V^f", c12},
      {13, "property suites against brute-force oracles", c13},
      {14, "psi and automorphisms from twists", c14},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& ex) {
      c.expect(false, std::string("exception: ") + ex.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << "criterion " << cr.id << ": " << (c.ok() ? "PASS" : "FAIL") << "  " << cr.title << " (" << c.summary()
              << ", " << t.str() << " s)" << std::endl;
    if (!c.ok()) ++failed;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
