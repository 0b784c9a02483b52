#include "gsla/catalog.hpp"

#include <functional>

namespace gsla {

namespace {

void require_char(const Field& f, std::uint64_t bad_divisor_of, const std::string& what) {
  std::uint64_t p = f.characteristic();
  if (p != 0 && bad_divisor_of % p == 0)
    throw Error(ErrorCode::BadCharacteristic, what + " needs characteristic not dividing " + std::to_string(bad_divisor_of));
}

using SquareMatrix = std::vector<std::vector<FieldElem>>;

SquareMatrix mat_zero(const Field& f, int n) { return SquareMatrix(n, std::vector<FieldElem>(n, f.zero())); }

SquareMatrix mat_mul(const SquareMatrix& a, const SquareMatrix& b) {
  std::size_t n = a.size();
  SquareMatrix c(n, std::vector<FieldElem>(n, a[0][0] - a[0][0]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (!a[i][k].is_zero())
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

SquareMatrix mat_sub(SquareMatrix a, const SquareMatrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) a[i][j] -= b[i][j];
  return a;
}

// Module on chosen ambient vectors; act(i, v) gives x_i . v in the ambient.
GradedModule module_on_basis(const GradedLieAlgebra& g, std::size_t ambient, const std::vector<Vec>& basis,
                             const std::vector<GroupElem>& degrees, const std::function<Vec(std::size_t, const Vec&)>& act) {
  CoordinateSolver cs(g.field(), ambient, basis);
  GradedModule m(g, degrees);
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto c = cs.solve(act(i, basis[j]));
      if (!c) throw Error(ErrorCode::VerificationFailure, "basis does not span a submodule");
      m.set_action(i, j, sparse(*c));
    }
  return m;
}

}  // namespace

GradedLieAlgebra sl_n(const Field& f, int n, const FinAbGroup& q) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "sl_n needs n >= 2");
  require_char(f, static_cast<std::uint64_t>(n), "sl_" + std::to_string(n));
  std::vector<SquareMatrix> basis;
  std::vector<std::string> names;
  auto unit = [&](int i, int j) {
    SquareMatrix m = mat_zero(f, n);
    m[i][j] = f.one();
    return m;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      basis.push_back(unit(i, j));
      names.push_back(n == 2 ? "e" : "E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  for (int k = 0; k + 1 < n; ++k) {
    basis.push_back(mat_sub(unit(k, k), unit(k + 1, k + 1)));
    names.push_back(n == 2 ? "h" : "H" + std::to_string(k + 1));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      basis.push_back(unit(i, j));
      names.push_back(n == 2 ? "f" : "E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  // coordinates of a traceless matrix in this basis
  auto coords = [&](const SquareMatrix& m) {
    SparseVec v;
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++idx)
        if (!m[i][j].is_zero()) v.emplace_back(idx, m[i][j]);
    FieldElem run = f.zero();
    for (int k = 0; k + 1 < n; ++k, ++idx) {
      run += m[k][k];
      if (!run.is_zero()) v.emplace_back(idx, run);
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j, ++idx)
        if (!m[i][j].is_zero()) v.emplace_back(idx, m[i][j]);
    return v;
  };
  QuotientGroup grading(q);
  GradedLieAlgebra g(f, grading, std::vector<GroupElem>(basis.size(), q.zero()));
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b)
      g.set_bracket(a, b, coords(mat_sub(mat_mul(basis[a], basis[b]), mat_mul(basis[b], basis[a]))));
  g.set_names(names);
  return g;
}

GradedLieAlgebra sl2_graded(const Field& f, const GradingGroup& grading, const GroupElem& deg_e, const GroupElem& deg_h,
                            const GroupElem& deg_f) {
  require_char(f, 2, "sl_2");
  GradedLieAlgebra g(f, grading, {deg_e, deg_h, deg_f});
  g.set_bracket(0, 2, {{1, f.one()}});          // [e,f] = h
  g.set_bracket(1, 0, {{0, f.from_int(2)}});    // [h,e] = 2e
  g.set_bracket(1, 2, {{2, f.from_int(-2)}});   // [h,f] = -2f
  g.set_names({"e", "h", "f"});
  return g;
}

GradedLieAlgebra pauli_graded(const Field& f, const GradingGroup& grading, const GroupElem& a, const GroupElem& b) {
  require_char(f, 2, "Pauli sl_2");
  GroupElem ab = grading.add(a, b);
  GradedLieAlgebra g(f, grading, {a, b, ab});
  g.set_bracket(0, 1, {{2, f.from_int(2)}});    // [h,u] = 2w
  g.set_bracket(0, 2, {{1, f.from_int(2)}});    // [h,w] = 2u
  g.set_bracket(1, 2, {{0, f.from_int(-2)}});   // [u,w] = -2h
  g.set_names({"h", "e+f", "e-f"});
  return g;
}

GradedLieAlgebra pauli_sl2(const Field& f) {
  return pauli_graded(f, QuotientGroup(FinAbGroup({2, 2})), {1, 0}, {0, 1});
}

std::vector<GradedLieAlgebra> sl2_gradings(const Field& f, const GradingGroup& grading) {
  std::vector<GradedLieAlgebra> out;
  GroupElem z = grading.zero();
  out.push_back(sl2_graded(f, grading, z, z, z));
  const auto& reps = grading.reps();
  for (const auto& g : reps) {
    if (g == z) continue;
    GroupElem ng = grading.neg(g);
    if (ng < g) continue;  // one of each pair {g, -g}
    out.push_back(sl2_graded(f, grading, g, z, ng));
  }
  for (const auto& a : reps)
    for (const auto& b : reps) {
      if (!(a < b) || a == z || b == z) continue;
      if (grading.add(a, a) != z || grading.add(b, b) != z) continue;
      if (grading.add(a, b) == z) continue;
      out.push_back(pauli_graded(f, grading, a, b));
    }
  return out;
}

GradedModule matrix2_module(const Field& f) {
  GradedLieAlgebra g = pauli_sl2(f);
  // 2x2 matrices flattened row-major; basis I, D, X, Y
  auto m2 = [&](long a, long b, long c, long d) { return Vec{f.from_int(a), f.from_int(b), f.from_int(c), f.from_int(d)}; };
  std::vector<Vec> basis{m2(1, 0, 0, 1), m2(1, 0, 0, -1), m2(0, 1, 1, 0), m2(0, 1, -1, 0)};
  std::vector<Vec> gens{basis[1], basis[2], basis[3]};  // h = D, e+f = X, e-f = Y
  auto mul = [&](const Vec& a, const Vec& b) {
    return Vec{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
  };
  GradedModule m = module_on_basis(g, 4, basis, {{0, 0}, {1, 0}, {0, 1}, {1, 1}},
                                   [&](std::size_t i, const Vec& v) { return mul(gens[i], v); });
  m.set_names({"I", "D", "X", "Y"});
  return m;
}

GradedModule sl2_irrep(const GradedLieAlgebra& sl2, int m) {
  const Field& f = sl2.field();
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "highest weight must be nonnegative");
  if (f.characteristic() != 0 && f.characteristic() <= static_cast<std::uint64_t>(m))
    throw Error(ErrorCode::BadCharacteristic, "V(" + std::to_string(m) + ") needs characteristic 0 or p > m");
  if (sl2.dim() != 3) throw Error(ErrorCode::InvalidArgument, "algebra must have basis (e, h, f)");
  std::size_t n = static_cast<std::size_t>(m) + 1;
  GradedModule v(sl2, std::vector<GroupElem>(n, sl2.grading().zero()));
  for (std::size_t k = 0; k < n; ++k) {
    long kk = static_cast<long>(k);
    if (k > 0) v.set_action(0, k, {{k - 1, f.from_int(kk * (m - kk + 1))}});
    v.set_action(1, k, {{k, f.from_int(m - 2 * kk)}});
    if (k + 1 < n) v.set_action(2, k, {{k + 1, f.one()}});
  }
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back("v" + std::to_string(k));
  v.set_names(names);
  return v;
}

GradedLieAlgebra sl2_pair(const Field& f) {
  require_char(f, 2, "sl_2 + sl_2");
  QuotientGroup z2(FinAbGroup({2}));
  GradedLieAlgebra s = sl_n(f, 2);
  GradedLieAlgebra g(f, z2, {{0}, {0}, {0}, {1}, {1}, {1}});
  // (x,x) = index x, (x,-x) = index x + 3
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = a + 1; b < 6; ++b) {
      bool odd = (a >= 3) != (b >= 3);
      SparseVec out;
      for (const auto& [k, c] : s.bracket_basis(a % 3, b % 3)) out.emplace_back(k + (odd ? 3 : 0), c);
      g.set_bracket(a, b, out);
    }
  g.set_names({"e0", "h0", "f0", "e1", "h1", "f1"});
  return g;
}

GradedModule pair_module(const Field& f, int h1, int h2) {
  GradedLieAlgebra g = sl2_pair(f);
  GradedLieAlgebra s = sl_n(f, 2);
  GradedModule v1 = sl2_irrep(s, h1), v2 = sl2_irrep(s, h2);
  std::size_t n1 = v1.dim(), n2 = v2.dim(), nl = n1 * n2;
  // L(a,b) = V(a) (x) V(b); (x,y) acts by x (x) 1 + 1 (x) y
  auto act_tensor = [&](const GradedModule& va, const GradedModule& vb, std::size_t x, std::size_t y, const FieldElem& cx,
                        const FieldElem& cy, std::span<const FieldElem> u) {
    std::size_t nb = vb.dim();
    Vec out = zero_vec(f, va.dim() * nb);
    for (std::size_t a = 0; a < va.dim(); ++a)
      for (std::size_t b = 0; b < nb; ++b) {
        const FieldElem& c = u[a * nb + b];
        if (c.is_zero()) continue;
        for (const auto& [k, d] : va.action_basis(x, a)) out[k * nb + b] += cx * c * d;
        for (const auto& [k, d] : vb.action_basis(y, b)) out[a * nb + k] += cy * c * d;
      }
    return out;
  };
  auto sign_of = [&](std::size_t i) { return i >= 3 ? f.from_int(-1) : f.one(); };
  std::vector<Vec> basis;
  std::vector<GroupElem> degs;
  if (h1 == h2) {
    // L(h,h) with s(v (x) w) = w (x) v
    for (std::size_t a = 0; a < n1; ++a)
      for (std::size_t b = a; b < n1; ++b) {
        Vec sym = zero_vec(f, nl);
        sym[a * n1 + b] += f.one();
        sym[b * n1 + a] += f.one();
        basis.push_back(sym);
        degs.push_back({0});
      }
    for (std::size_t a = 0; a < n1; ++a)
      for (std::size_t b = a + 1; b < n1; ++b) {
        Vec alt = zero_vec(f, nl);
        alt[a * n1 + b] = f.one();
        alt[b * n1 + a] = f.from_int(-1);
        basis.push_back(alt);
        degs.push_back({1});
      }
    return module_on_basis(g, nl, basis, degs, [&](std::size_t i, const Vec& u) {
      return act_tensor(v1, v1, i % 3, i % 3, f.one(), sign_of(i), u);
    });
  }
  // W = L(h1,h2) + L(h2,h1); the swap sends index a*n2+b to b*n1+a
  for (int sign : {1, -1})
    for (std::size_t a = 0; a < n1; ++a)
      for (std::size_t b = 0; b < n2; ++b) {
        Vec x = zero_vec(f, 2 * nl);
        x[a * n2 + b] = f.one();
        x[nl + b * n1 + a] = f.from_int(sign);
        basis.push_back(x);
        degs.push_back({sign == 1 ? 0 : 1});
      }
  return module_on_basis(g, 2 * nl, basis, degs, [&](std::size_t i, const Vec& u) {
    std::span<const FieldElem> first(u.data(), nl), second(u.data() + nl, nl);
    Vec p = act_tensor(v1, v2, i % 3, i % 3, f.one(), sign_of(i), first);
    Vec q = act_tensor(v2, v1, i % 3, i % 3, f.one(), sign_of(i), second);
    p.insert(p.end(), q.begin(), q.end());
    return p;
  });
}

Ex1 ex1_module(const Field& f) {
  FinAbGroup q({2, 2});
  Ex1 e;
  e.g = GradedLieAlgebra(f, QuotientGroup(q), {{0, 0}, {1, 0}, {0, 1}});
  e.g.set_names({"g00", "g10", "g01"});
  e.p = Subgroup::generate(q, {{1, 0}});
  e.w = GradedModule(e.g, {{0, 0}, {1, 0}});
  e.w.set_action(0, 0, {{0, f.one()}});
  e.w.set_action(0, 1, {{1, f.one()}});
  e.w.set_action(1, 0, {{1, f.one()}});
  e.w.set_action(1, 1, {{0, f.one()}});
  e.w.set_names({"w00", "w10"});
  e.v = GradedModule(regrade_by_quotient(e.g, e.p), {{0, 0}});
  e.v.set_action(0, 0, {{0, f.one()}});
  e.v.set_action(1, 0, {{0, f.one()}});
  e.v.set_names({"v"});
  return e;
}

LoopAlgebra example0_algebra(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  if (p == 2) throw Error(ErrorCode::BadCharacteristic, "example0 needs p odd");
  const Field& f = Field::get(FieldSpec::prime(p));
  FinAbGroup q({static_cast<long>(p)});
  Subgroup whole = Subgroup::whole(q);
  QuotientGroup grading(whole);
  GroupElem z = grading.zero();
  return loop_algebra(q, whole, sl2_graded(f, grading, z, z, z));
}

std::vector<FinAbGroup> abelian_groups(long max_order) {
  std::vector<FinAbGroup> out;
  for (long n = 2; n <= max_order; ++n) {
    // factor lists n_1 | n_2 | ... with product n, built from the top factor down
    std::function<void(long, std::vector<long>)> grow = [&](long rest, std::vector<long> tail) {
      if (rest == 1) {
        out.emplace_back(std::vector<long>(tail.rbegin(), tail.rend()));
        return;
      }
      for (long d = 2; d <= rest; ++d) {
        if (rest % d != 0) continue;
        if (!tail.empty() && tail.back() % d != 0) continue;
        auto next = tail;
        next.push_back(d);
        grow(rest / d, next);
      }
    };
    for (long top = 2; top <= n; ++top)
      if (n % top == 0) grow(n / top, {top});
  }
  return out;
}

std::vector<LoopEntry> sl2_loop_catalog(const std::vector<FinAbGroup>& groups) {
  std::vector<LoopEntry> out;
  for (const auto& q : groups) {
    auto e = static_cast<std::uint64_t>(q.exponent());
    const Field& f = Field::get(e <= 2 ? FieldSpec::rationals() : FieldSpec::cyclotomic(e));
    for (const auto& p : all_subgroups(q)) {
      QuotientGroup grading(p);
      for (auto& a : sl2_gradings(f, grading)) {
        std::string degs;
        for (std::size_t i = 0; i < a.dim(); ++i) degs += (i ? "," : "") + group_elem_string(a.degree(i));
        out.push_back({q.to_string() + " P=" + p.to_string() + " a=" + degs, q, p, std::move(a)});
      }
    }
  }
  return out;
}

std::vector<CatalogEntry> catalog_entries() {
  return {
      {"sl2", "field=Q", {{"dim", "3"}, {"simplicity", "SimpleCertified"}, {"killing", "nondegenerate"}}},
      {"sl2-F3", "field=F3", {{"dim", "3"}, {"verify", "ok"}}},
      {"sl2-F2", "field=F2", {{"error", "BadCharacteristic"}}},
      {"sl3", "field=Q", {{"dim", "8"}, {"simplicity", "SimpleCertified"}}},
      {"pauli", "field=Q", {{"dim", "3"}, {"graded", "GradedSimple"}, {"tier", "A"}, {"minimal", "true"}}},
      {"matrix2", "field=Q(z4)",
       {{"dim", "4"}, {"graded", "GradedSimple"}, {"tier", "A"}, {"pprime", "4"}, {"end0", "1"}, {"choices", "3"}}},
      {"pair(1,0)", "field=Q(z4)",
       {{"dim", "4"}, {"graded", "GradedSimple"}, {"simple", "NotSimple"}, {"P", "2"}, {"V", "2"}, {"end0", "1"}}},
      {"pair(1,1)", "field=Q(z4)", {{"dim", "4"}, {"graded", "GradedSimple"}, {"P", "1"}, {"V", "4"}}},
      {"ex1", "field=Q", {{"W", "2"}, {"graded", "GradedSimple"}, {"P", "<(1,0)>"}, {"V", "1"}, {"end0", "1"}}},
      {"example0", "p=3",
       {{"dim", "9"}, {"ideal", "6"}, {"killing", "degenerate"}, {"decomposition", "NoSuchRoot"}}},
  };
}

}  // namespace gsla
