#include "gsla/loop.hpp"

#include <algorithm>

namespace gsla {

namespace {

bool proper_nonzero(const Subspace& s) { return !s.is_zero() && !s.is_whole(); }

Subgroup whole_subgroup(const FinAbGroup& q) { return Subgroup::whole(q); }

// Same algebra viewed with every degree zero.
GradedLieAlgebra ungraded_restriction(const GradedLieAlgebra& g, const std::vector<Vec>& basis) {
  QuotientGroup trivial(whole_subgroup(g.group()));
  std::vector<GroupElem> degs(basis.size(), trivial.zero());
  return restrict_algebra(g, basis, trivial, degs);
}

}  // namespace

std::optional<std::size_t> LoopAlgebra::index_of(std::size_t i, const GroupElem& alpha) const {
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k].first == i && labels[k].second == alpha) return k;
  return std::nullopt;
}

LoopAlgebra loop_algebra(const FinAbGroup& q, const Subgroup& p, const GradedLieAlgebra& a) {
  if (!(a.group() == q) || !(a.grading().subgroup() == p))
    throw Error(ErrorCode::GradingMismatch,
                "base algebra is graded by " + a.grading().to_string() + ", expected " + QuotientGroup(p).to_string());
  LoopAlgebra l;
  l.base = a;
  l.p = p;
  std::vector<GroupElem> degs;
  std::vector<std::string> names;
  std::map<std::pair<std::size_t, GroupElem>, std::size_t> where;
  for (const auto& alpha : q.elements()) {
    GroupElem r = a.grading().rep(alpha);
    for (auto i : a.component(r)) {
      where[{i, alpha}] = l.labels.size();
      l.labels.emplace_back(i, alpha);
      degs.push_back(alpha);
      std::string base = a.names().empty() ? "x" + std::to_string(i) : a.names()[i];
      names.push_back(base + "t" + group_elem_string(alpha));
    }
  }
  GradedLieAlgebra g(a.field(), QuotientGroup(q), degs);
  for (std::size_t u = 0; u < l.labels.size(); ++u)
    for (std::size_t v = u + 1; v < l.labels.size(); ++v) {
      const auto& [i, al] = l.labels[u];
      const auto& [j, be] = l.labels[v];
      GroupElem s = q.add(al, be);
      SparseVec out;
      for (const auto& [k, c] : a.bracket_basis(i, j)) out.emplace_back(where.at({k, s}), c);
      g.set_bracket(u, v, out);
    }
  g.set_names(names);
  l.underlying = std::move(g);
  return l;
}

bool is_homomorphism(const GradedLieAlgebra& source, const GradedLieAlgebra& target, const Matrix& m) {
  if (m.rows() != target.dim() || m.cols() != source.dim()) return false;
  std::vector<Vec> img;
  for (std::size_t i = 0; i < source.dim(); ++i) img.push_back(m.col_vec(i));
  const Field& f = source.field();
  for (std::size_t i = 0; i < source.dim(); ++i)
    for (std::size_t j = i + 1; j < source.dim(); ++j) {
      Vec lhs = m.apply(dense(f, source.dim(), source.bracket_basis(i, j)));
      if (lhs != target.bracket(img[i], img[j])) return false;
    }
  return true;
}

GradedAutomorphism tau_f(const GradedLieAlgebra& g, const Character& f) {
  if (&f.table->field() != &g.field())
    throw Error(ErrorCode::FieldMismatch, "character over " + f.table->field().spec().name() + ", algebra over " +
                                              g.field().spec().name());
  if (!(f.table->group() == g.group())) throw Error(ErrorCode::GradingMismatch, "character of another group");
  for (const auto& b : g.grading().subgroup().elements())
    if (!f(b).is_one()) throw Error(ErrorCode::KernelMismatch, "character is not trivial on the grading kernel");
  GradedAutomorphism t{character_matrix_of(g, f), f};
  if (!is_homomorphism(g, g, t.matrix)) throw Error(ErrorCode::VerificationFailure, "tau_f does not preserve brackets");
  return t;
}

std::vector<Character> algebra_characters(const GradedLieAlgebra& g) {
  return characters(g.group(), g.field().spec());
}

std::vector<Character> inv_subgroup(const GradedLieAlgebra& g, const Subspace& i, const std::vector<Character>& chars) {
  std::vector<Character> out;
  for (const auto& f : chars)
    if (apply_character(g, f, i) == i) out.push_back(f);
  return out;
}

IdealOrbit ideal_orbit(const GradedLieAlgebra& g, const Subspace& i, const std::vector<Character>& chars) {
  IdealOrbit o;
  o.ideal = i;
  for (const auto& f : chars) {
    Subspace t = apply_character(g, f, i);
    if (t == i) o.inv.push_back(f);
    if (std::find(o.orbit.begin(), o.orbit.end(), t) == o.orbit.end()) {
      o.orbit.push_back(std::move(t));
      o.reps.push_back(f);
    }
  }
  return o;
}

LoopDecomposition loop_ideal_decomposition(const LoopAlgebra& l) {
  const GradedLieAlgebra& g = l.underlying;
  const GradedLieAlgebra& a = l.base;
  const Field& f = g.field();
  auto chars = algebra_characters(g);
  long np = static_cast<long>(l.p.order());
  if (f.characteristic() != 0 && np % static_cast<long>(f.characteristic()) == 0)
    throw Error(ErrorCode::DecompositionFailure, "characteristic divides |P|");
  FieldElem inv_p = f.from_int(np).inverse();
  // psi(x_i) = |P|^-1 x_i (x) t^alpha_i sum_{beta in P} t^beta
  Matrix psi(f, g.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (const auto& b : l.p.elements()) {
      auto k = l.index_of(i, a.group().add(a.degree(i), b));
      if (!k) throw Error(ErrorCode::DecompositionFailure, "missing loop basis label");
      psi(*k, i) = inv_p;
    }
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < a.dim(); ++i) cols.push_back(psi.col_vec(i));
  IdealOrbit orbit = ideal_orbit(g, Subspace::span(f, g.dim(), cols), chars);

  LoopDecomposition d;
  for (std::size_t k = 0; k < orbit.orbit.size(); ++k) {
    d.ideals.push_back(orbit.orbit[k]);
    d.isos.push_back(character_matrix_of(g, orbit.reps[k]) * psi);
    d.chars.push_back(orbit.reps[k]);
  }
  auto fail = [](const std::string& why) { throw Error(ErrorCode::DecompositionFailure, why); };
  if (d.ideals.size() != l.p.order()) fail("orbit has " + std::to_string(d.ideals.size()) + " members, expected |P|");
  std::size_t total = 0;
  EchelonBuilder sum(f, g.dim());
  for (std::size_t k = 0; k < d.ideals.size(); ++k) {
    total += d.ideals[k].dim();
    for (const auto& v : d.ideals[k].basis()) sum.insert(v);
    if (!is_ideal(g, d.ideals[k])) fail("orbit member is not an ideal");
    for (std::size_t m = k + 1; m < d.ideals.size(); ++m)
      if (!bracket_space(g, d.ideals[k], d.ideals[m]).is_zero()) fail("orbit members do not commute");
    if (!is_homomorphism(a, g, d.isos[k]) || rank(d.isos[k]) != a.dim()) fail("orbit member is not isomorphic to a");
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t r = 0; r < g.dim(); ++r)
        if (!d.isos[k](r, i).is_zero() && a.grading().rep(g.degree(r)) != a.degree(i)) fail("iso does not preserve degree");
  }
  if (total != g.dim() || sum.dim() != g.dim()) fail("orbit does not sum directly to g");
  return d;
}

Subspace refine_ideal(const GradedLieAlgebra& g, const Subspace& start, const std::vector<Character>& chars,
                      const ProbeOptions& opts) {
  if (!is_ideal(g, start)) throw Error(ErrorCode::NotAnIdeal, "input subspace is not an ideal");
  if (!proper_nonzero(start)) throw Error(ErrorCode::NotProper, "ideal must be proper and nonzero");
  Subspace i = start;
  if (inv_subgroup(g, i, chars).size() == chars.size()) throw Error(ErrorCode::AlreadyGraded, "ideal is graded");
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& f : chars) {
      Subspace t = apply_character(g, f, i);
      if (t == i) continue;
      Subspace i1 = subspace_intersect(i, t);
      if (i1.is_zero()) continue;
      MinSupport ms = min_support(g, i1, opts.max_subsets);
      i = ideal_closure(g, ms.minimal_span);
      if (inv_subgroup(g, i, chars).size() == chars.size())
        throw Error(ErrorCode::NotGradedSimple, "refinement produced a proper graded ideal");
      changed = true;
      break;
    }
  }
  return i;
}

std::optional<Subspace> find_proper_ideal(const GradedLieAlgebra& g, const ProbeOptions& opts) {
  const Field& f = g.field();
  std::size_t d = g.dim();
  if (d < 2) return std::nullopt;
  // route 1: centroid idempotents and images of c - lambda
  Centroid c = centroid(g);
  if (auto s = centroid_ideal(g, c, false)) return s;
  // route 2: homogeneous vectors shifted by centroid elements of nonzero degree
  std::vector<FieldElem> scalars{f.one(), f.from_int(-1)};
  long e = g.group().exponent();
  if (f.has_primitive_root_of_unity(static_cast<std::uint64_t>(e))) {
    FieldElem w = f.primitive_root_of_unity(static_cast<std::uint64_t>(e));
    FieldElem x = w;
    for (long k = 1; k < e; ++k, x *= w)
      if (std::find(scalars.begin(), scalars.end(), x) == scalars.end()) scalars.push_back(x);
  }
  for (std::size_t k = 0; k < c.dim(); ++k) {
    if (c.degrees[k] == g.grading().zero()) continue;
    for (std::size_t i = 0; i < d; ++i) {
      Vec ci = c.maps[k].col_vec(i);
      if (is_zero_vec(ci)) continue;
      for (const auto& lam : scalars) {
        Vec v = ci;
        v[i] -= lam;
        Subspace s = ideal_closure(g, {v});
        if (proper_nonzero(s)) return s;
      }
    }
  }
  // route 3: random full-support probes
  std::vector<std::size_t> all(d);
  for (std::size_t i = 0; i < d; ++i) all[i] = i;
  for (int p = 0; p < opts.probes; ++p) {
    auto rng = probe_rng(opts.seed, 0xfffe, static_cast<std::uint64_t>(p));
    Subspace s = ideal_closure(g, {random_supported(f, d, all, rng)});
    if (proper_nonzero(s)) return s;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

void require(std::vector<Certificate>& certs, const std::string& name, bool ok, const std::string& detail = {}) {
  certs.push_back({name, ok, detail});
  if (!ok) throw Error(ErrorCode::VerificationFailure, "certificate " + name + " failed" + (detail.empty() ? "" : ": " + detail));
}

}  // namespace

Recognition recognize(const GradedLieAlgebra& g, const ProbeOptions& opts) {
  Recognition r;
  const Field& f = g.field();
  std::size_t d = g.dim();
  const FinAbGroup& q = g.group();
  if (!g.grading().is_full()) throw Error(ErrorCode::GradingMismatch, "recognition needs a grading by the full group");
  require(r.certificates, "algebra", verify_algebra(g).ok());
  r.graded = graded_simple_check(g, opts);
  if (r.graded.kind == GradedKind::NotGradedSimple)
    throw Error(ErrorCode::NotGradedSimple, "algebra has a proper graded ideal (" + r.graded.evidence + ")");
  if (r.graded.kind == GradedKind::Inconclusive)
    throw Error(ErrorCode::NotGradedSimple, "graded simplicity inconclusive");
  r.certificates.push_back({"graded-simple", true, std::string(graded_kind_name(r.graded.kind)) + " tier " + r.graded.tier});
  auto chars = algebra_characters(g);

  Subspace ideal = Subspace::whole(f, d);
  if (auto found = find_proper_ideal(g, opts)) {
    try {
      ideal = refine_ideal(g, *found, chars, opts);
      // descend while the ideal itself is visibly not simple
      for (std::size_t step = 0; step < d; ++step) {
        GradedLieAlgebra ia = ungraded_restriction(g, ideal.basis());
        SimplicityVerdict sv = simplicity_certificate(ia, opts);
        if (sv.kind != SimplicityKind::NotSimple || !sv.witness) break;
        std::vector<Vec> w;
        for (const auto& v : sv.witness->basis()) {
          Vec x = zero_vec(f, d);
          for (std::size_t k = 0; k < v.size(); ++k) axpy(x, v[k], ideal.basis()[k]);
          w.push_back(std::move(x));
        }
        Subspace j = ideal_closure(g, w);
        if (j.dim() >= ideal.dim() || j.is_zero()) break;
        ideal = refine_ideal(g, j, chars, opts);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::AlreadyGraded)
        throw Error(ErrorCode::NotGradedSimple, "found a proper graded ideal");
      throw;
    }
  }
  r.ideal = ideal;

  auto inv = inv_subgroup(g, ideal, chars);
  std::vector<GroupElem> inv_exps;
  for (const auto& x : inv) inv_exps.push_back(x.exps);
  r.p = fixed_subgroup(q, inv_exps);
  r.certificates.push_back({"inv", true, "|Inv(I)| = " + std::to_string(inv.size())});
  bool disjoint = true;
  for (const auto& x : chars) {
    Subspace t = apply_character(g, x, ideal);
    if (t != ideal && !subspace_intersect(t, ideal).is_zero()) disjoint = false;
  }
  require(r.certificates, "orbit-disjoint", disjoint);

  QuotientGroup qp(r.p);
  std::vector<Vec> basis;
  std::vector<GroupElem> degs;
  for (const auto& [rep, piece] : coset_pieces(g, ideal, r.p))
    for (const auto& v : piece.basis()) {
      basis.push_back(v);
      degs.push_back(rep);
    }
  require(r.certificates, "ideal-graded-mod-P", basis.size() == ideal.dim());
  r.a = restrict_algebra(g, basis, qp, degs);
  if (!g.names().empty() && r.p.is_trivial()) {
    std::vector<std::string> names;
    for (const auto& v : basis)
      for (std::size_t k = 0; k < d; ++k)
        if (!v[k].is_zero()) {
          names.push_back(g.names()[k]);
          break;
        }
    r.a.set_names(names);
  }
  require(r.certificates, "a-verify", verify_algebra(r.a).ok());
  require(r.certificates, "dimension", r.a.dim() * r.p.order() == d,
          std::to_string(r.a.dim()) + " * " + std::to_string(r.p.order()) + " vs " + std::to_string(d));

  r.loop = loop_algebra(q, r.p, r.a);
  // Phi(x_i (x) t^gamma) = |P| pi_gamma(x_i)
  FieldElem np = f.from_int(static_cast<long long>(r.p.order()));
  r.phi = Matrix(f, d, d);
  for (std::size_t k = 0; k < r.loop.labels.size(); ++k) {
    const auto& [i, gamma] = r.loop.labels[k];
    for (auto t : g.component(gamma)) r.phi(t, k) = np * basis[i][t];
  }
  require(r.certificates, "phi-bijective", rank(r.phi) == d);
  require(r.certificates, "phi-bracket", is_homomorphism(r.loop.underlying, g, r.phi));
  bool degree_ok = true;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t t = 0; t < d; ++t)
      if (!r.phi(t, k).is_zero() && g.degree(t) != r.loop.underlying.degree(k)) degree_ok = false;
  require(r.certificates, "phi-degree", degree_ok);
  return r;
}

// ---------------------------------------------------------------------------

GroupElem GroupHom::operator()(const GroupElem& a) const {
  GroupElem out = target.zero();
  for (std::size_t k = 0; k < a.size(); ++k) out = target.add(out, target.scale(a[k], images[k]));
  return out;
}

IsoVerdict verify_graded_iso(const GradedLieAlgebra& g, const GradedLieAlgebra& h, const GroupHom& tau,
                             const Matrix& sigma) {
  if (g.dim() != h.dim() || sigma.rows() != h.dim() || sigma.cols() != g.dim())
    throw Error(ErrorCode::DimensionMismatch, "witness matrix does not match the algebra dimensions");
  if (!(tau.source == g.group()) || !(tau.target == h.group()) || tau.images.size() != g.group().rank())
    throw Error(ErrorCode::NotHomomorphism, "group map does not match the grading groups");
  for (std::size_t k = 0; k < tau.images.size(); ++k) {
    if (!tau.target.is_element(tau.images[k]))
      throw Error(ErrorCode::NotHomomorphism, "image " + group_elem_string(tau.images[k]) + " is not a group element");
    if (tau.target.scale(tau.source.moduli()[k], tau.images[k]) != tau.target.zero())
      throw Error(ErrorCode::NotHomomorphism, "image of generator " + std::to_string(k) + " has the wrong order");
  }
  if (tau.source.order() != tau.target.order())
    throw Error(ErrorCode::NotHomomorphism, "group map is not bijective");
  for (const auto& a : tau.source.elements())
    if (a != tau.source.zero() && tau(a) == tau.target.zero())
      throw Error(ErrorCode::NotHomomorphism, "group map is not bijective");
  std::vector<GroupElem> img;
  for (const auto& b : g.grading().subgroup().elements()) img.push_back(tau(b));
  if (!(Subgroup::generate(h.group(), img) == h.grading().subgroup())) return {false, "tau(P) != P'"};
  if (rank(sigma) != g.dim()) return {false, "witness is not invertible"};
  if (!is_homomorphism(g, h, sigma)) return {false, "witness does not preserve brackets"};
  for (std::size_t i = 0; i < g.dim(); ++i) {
    GroupElem want = h.grading().rep(tau(g.degree(i)));
    for (std::size_t t = 0; t < h.dim(); ++t)
      if (!sigma(t, i).is_zero() && h.degree(t) != want)
        return {false, "basis vector " + std::to_string(i) + " leaves component " + group_elem_string(want)};
  }
  return {true, "invertible, bracket-preserving and degree-preserving"};
}

IsoVerdict verify_graded_iso(const LoopAlgebra& g, const LoopAlgebra& h, const GroupHom& tau, const Matrix& sigma) {
  auto maps_onto = [&](const Subgroup& p, const Subgroup& p2) {
    std::vector<GroupElem> img;
    for (const auto& b : p.elements()) img.push_back(tau(b));
    return Subgroup::generate(p2.parent(), img) == p2;
  };
  IsoVerdict v = verify_graded_iso(g.underlying, h.underlying, tau, sigma);
  if (!maps_onto(g.p, h.p)) return {false, "tau(P) != P'"};
  if (!v.ok) return v;
  if (!maps_onto(recognize(g.underlying).p, recognize(h.underlying).p)) return {false, "tau(P) != P' for recognized subgroups"};
  return v;
}

}  // namespace gsla
