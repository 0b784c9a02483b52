#include <algorithm>

#include "gsla/module.hpp"

namespace gsla {

namespace {

bool is_scalar_matrix(const Matrix& m, FieldElem* value) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r != c ? !m(r, c).is_zero() : !(m(r, c) == m(0, 0))) return false;
  if (value && m.rows() > 0) *value = m(0, 0);
  return true;
}

Matrix matrix_pow(const Matrix& m, long e) {
  Matrix r = Matrix::identity(m.field(), m.rows());
  for (long k = 0; k < e; ++k) r = r * m;
  return r;
}

// s with s^n = target from {q z^j}, or every residue for small prime fields.
std::optional<FieldElem> find_root(const Field& f, const FieldElem& target, long n) {
  if (f.is_prime()) {
    std::uint64_t p = f.characteristic();
    if (p > 200000) return std::nullopt;
    for (std::uint64_t x = 1; x < p; ++x) {
      FieldElem s = f.from_int(static_cast<long long>(x));
      if (s.pow(n) == target) return s;
    }
    return std::nullopt;
  }
  FieldElem z = f.generator();
  long ord = static_cast<long>(f.spec().n);
  if (ord % 2 == 1) {
    z = -z;
    ord *= 2;
  }
  std::vector<Rational> qs{1, -1, 2, -2, Rational(1, 2), Rational(-1, 2)};
  for (const auto& q : qs) {
    FieldElem s = f.from_rational(q);
    for (long j = 0; j < ord; ++j, s *= z)
      if (s.pow(n) == target) return s;
  }
  return std::nullopt;
}

bool proper_nonzero(const Subspace& s) { return !s.is_zero() && !s.is_whole(); }

// Homogeneous basis of a graded subspace, with degrees.
std::pair<std::vector<Vec>, std::vector<GroupElem>> homogeneous_basis(const GradedModule& w, const Subspace& s) {
  std::pair<std::vector<Vec>, std::vector<GroupElem>> out;
  for (const auto& a : w.support()) {
    Subspace piece = subspace_intersect(s, Subspace::coordinate(w.field(), w.dim(), w.component(a)));
    for (const auto& v : piece.basis()) {
      out.first.push_back(v);
      out.second.push_back(a);
    }
  }
  return out;
}

Vec combine(const Field& f, std::size_t n, std::span<const FieldElem> coeffs, const std::vector<Vec>& basis) {
  Vec x = zero_vec(f, n);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) axpy(x, coeffs[k], basis[k]);
  return x;
}

void require(std::vector<Certificate>& certs, const std::string& name, bool ok, const std::string& detail = {}) {
  certs.push_back({name, ok, detail});
  if (!ok) throw Error(ErrorCode::VerificationFailure, "certificate " + name + " failed" + (detail.empty() ? "" : ": " + detail));
}

}  // namespace

SchurReport schur_report(const GradedModule& w, const ProbeOptions& opts) {
  GradedVerdict v = graded_simple_module_check(w, opts);
  if (v.kind == GradedKind::NotGradedSimple || v.kind == GradedKind::Inconclusive)
    throw Error(ErrorCode::NotGradedSimple, "module is not graded simple (" + v.evidence + ")");
  SchurReport r;
  r.end0_dim = hom_space(w, w, w.grading().zero(), true).size();
  r.scalar_only = r.end0_dim == 1;
  for (const auto& a : w.grading().reps()) r.per_degree.emplace_back(a, hom_space(w, w, a, true).size());
  return r;
}

GradedModule twist(const GradedModule& v, const Character& f) {
  const GradedLieAlgebra& g = v.algebra();
  if (&f.table->field() != &g.field()) throw Error(ErrorCode::FieldMismatch, "character over another field");
  if (!(f.table->group() == g.group())) throw Error(ErrorCode::GradingMismatch, "character of another group");
  const std::vector<GroupElem>& fine = g.fine_degrees().empty() ? g.degrees() : g.fine_degrees();
  if (g.fine_degrees().empty())
    for (const auto& b : g.grading().subgroup().elements())
      if (!f(b).is_one()) throw Error(ErrorCode::KernelMismatch, "character does not factor through the grading group");
  GradedModule out(g, v.degrees());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    FieldElem s = f(fine[i]);
    for (std::size_t j = 0; j < v.dim(); ++j) {
      SparseVec a = v.action_basis(i, j);
      for (auto& e : a) e.second *= s;
      out.set_action(i, j, a);
    }
  }
  out.set_names(v.names());
  return out;
}

Matrix twist_iso(const GradedModule& w, const Character& f) {
  if (!w.grading().is_full()) throw Error(ErrorCode::GradingMismatch, "twist isomorphism needs a Q-graded module");
  Matrix m(w.field(), w.dim(), w.dim());
  for (std::size_t j = 0; j < w.dim(); ++j) m(j, j) = f(w.degree(j));
  if (!is_module_hom(w, twist(w, f), m, w.grading().zero()))
    throw Error(ErrorCode::VerificationFailure, "tau_f is not a module isomorphism W -> W^f");
  return m;
}

Matrix psi_iso(const LoopModule& lm, const Character& f) {
  const GradedModule& m = lm.underlying;
  Matrix psi(m.field(), m.dim(), m.dim());
  for (std::size_t j = 0; j < m.dim(); ++j) psi(j, j) = f(m.degree(j)).inverse();
  if (!is_module_hom(twist(m, f), m, psi, m.grading().zero()) || rank(psi) != m.dim())
    throw Error(ErrorCode::VerificationFailure, "Psi is not a degree-0 isomorphism M^f -> M");
  return psi;
}

// ---------------------------------------------------------------------------

PPrime pprime(const GradedModule& w, const ProbeOptions& opts) {
  PPrime d;
  const Field& f = w.field();
  const auto& reps = w.grading().reps();
  for (std::size_t ai = 0; ai < reps.size(); ++ai) {
    auto hs = hom_space(w, w, reps[ai], true);
    if (hs.empty()) continue;
    std::optional<Matrix> inv;
    for (const auto& m : hs)
      if (rank(m) == w.dim()) {
        inv = m;
        break;
      }
    for (int t = 0; !inv && hs.size() > 1 && t < opts.probes; ++t) {
      auto rng = probe_rng(opts.seed, 0x7000 + ai, static_cast<std::uint64_t>(t));
      std::vector<std::size_t> idx(hs.size());
      for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
      Vec c = random_supported(f, hs.size(), idx, rng);
      Matrix m(f, w.dim(), w.dim());
      for (std::size_t k = 0; k < hs.size(); ++k) m = m + hs[k].scaled(c[k]);
      if (rank(m) == w.dim()) inv = m;
    }
    if (!inv) continue;
    d.elements.push_back(reps[ai]);
    d.lambdas.push_back(*inv);
    d.dims.push_back(hs.size());
  }
  return d;
}

CommutativeChoice max_commutative_D(const GradedModule& w, const PPrime& d, const std::vector<std::size_t>& order) {
  std::size_t n = d.elements.size();
  std::vector<std::size_t> seq = order;
  if (seq.empty())
    for (std::size_t k = 0; k < n; ++k) seq.push_back(k);
  {
    std::vector<std::size_t> sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k)
      if (sorted.size() != n || sorted[k] != k)
        throw Error(ErrorCode::InvalidArgument, "commute order must be a permutation of 0.." + std::to_string(n - 1));
  }
  const Field& f = w.field();
  const QuotientGroup& q = w.grading();
  CommutativeChoice c;
  std::vector<const Matrix*> kept;
  for (auto k : seq) {
    const Matrix& m = d.lambdas[k];
    bool ok = std::all_of(kept.begin(), kept.end(), [&](const Matrix* x) { return m * *x == *x * m; });
    if (!ok) continue;
    kept.push_back(&m);
    c.kept.push_back(d.elements[k]);
  }
  std::sort(c.kept.begin(), c.kept.end());
  c.p = Subgroup::generate(q.ambient(), c.kept);
  auto lambda_of = [&](const GroupElem& a) -> const Matrix& {
    auto it = std::find(d.elements.begin(), d.elements.end(), a);
    if (it == d.elements.end()) throw Error(ErrorCode::VerificationFailure, "degree " + group_elem_string(a) + " not in P'");
    return d.lambdas[static_cast<std::size_t>(it - d.elements.begin())];
  };
  // rescale the cyclic generators so that Lambda_g^order = 1
  auto basis = c.p.direct_sum_basis();
  std::vector<Matrix> gens;
  c.normalized = true;
  for (const auto& b : basis) {
    Matrix m = lambda_of(b);
    long ord = q.ambient().order_of(b);
    FieldElem scalar = f.one();
    if (is_scalar_matrix(matrix_pow(m, ord), &scalar)) {
      if (auto s = find_root(f, scalar.inverse(), ord)) m = m.scaled(*s);
      else c.normalized = false;
    } else {
      c.normalized = false;
    }
    gens.push_back(std::move(m));
  }
  for (const auto& a : c.p.elements()) {
    // write a = sum m_k b_k by search over the cyclic factors
    std::vector<long> coeff(basis.size(), 0);
    std::vector<long> ords;
    for (const auto& b : basis) ords.push_back(q.ambient().order_of(b));
    bool found = false;
    while (!found) {
      GroupElem s = q.ambient().zero();
      for (std::size_t k = 0; k < basis.size(); ++k) s = q.ambient().add(s, q.ambient().scale(coeff[k], basis[k]));
      if (s == a) {
        found = true;
        break;
      }
      std::size_t k = 0;
      while (k < coeff.size() && ++coeff[k] == ords[k]) coeff[k++] = 0;
      if (k == coeff.size()) break;
    }
    if (!found) throw Error(ErrorCode::VerificationFailure, "direct-sum basis does not generate P");
    Matrix m = Matrix::identity(f, w.dim());
    for (std::size_t k = 0; k < basis.size(); ++k) m = m * matrix_pow(gens[k], coeff[k]);
    c.lambdas.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < c.lambdas.size(); ++i)
    for (std::size_t j = i + 1; j < c.lambdas.size(); ++j)
      if (!(c.lambdas[i] * c.lambdas[j] == c.lambdas[j] * c.lambdas[i]))
        throw Error(ErrorCode::VerificationFailure, "chosen endomorphisms do not commute");
  return c;
}

Subspace vprime(const GradedModule& w, const CommutativeChoice& c) {
  const Field& f = w.field();
  EchelonBuilder b(f, w.dim());
  for (const auto& m : c.lambdas)
    for (std::size_t j = 0; j < w.dim(); ++j) {
      Vec v = unit_vec(f, w.dim(), j);
      axpy(v, -f.one(), m.col_vec(j));
      b.insert(v);
    }
  Subspace s = b.finish();
  if (!is_submodule(w, s) || s.is_whole()) throw Error(ErrorCode::NotProper, "V' is not a proper submodule");
  return s;
}

QuotientModule quotient_module(const GradedModule& w, const Subspace& sub, const GradedLieAlgebra& algebra) {
  const Field& f = w.field();
  QuotientModule qm;
  std::vector<bool> pivot(w.dim(), false);
  for (auto p : sub.pivots()) pivot[p] = true;
  for (std::size_t j = 0; j < w.dim(); ++j)
    if (!pivot[j]) qm.coords.push_back(j);
  qm.projection = Matrix(f, qm.coords.size(), w.dim());
  for (std::size_t j = 0; j < w.dim(); ++j) {
    Vec r = sub.reduce(unit_vec(f, w.dim(), j));
    for (std::size_t k = 0; k < qm.coords.size(); ++k) qm.projection(k, j) = r[qm.coords[k]];
  }
  std::vector<GroupElem> degs;
  for (auto j : qm.coords) degs.push_back(algebra.grading().rep(w.degree(j)));
  GradedModule m(algebra, degs);
  for (std::size_t i = 0; i < algebra.dim(); ++i)
    for (std::size_t k = 0; k < qm.coords.size(); ++k)
      m.set_action(i, k, sparse(qm.projection.apply(w.act(i, unit_vec(f, w.dim(), qm.coords[k])))));
  if (!w.names().empty()) {
    std::vector<std::string> names;
    for (auto j : qm.coords) names.push_back(w.names()[j]);
    m.set_names(names);
  }
  qm.module = std::move(m);
  return qm;
}

ModuleReconstruction reconstruct_module(const GradedModule& w, const ProbeOptions& opts,
                                        const std::vector<std::size_t>& order) {
  if (!w.grading().is_full()) throw Error(ErrorCode::GradingMismatch, "reconstruction needs a Q-graded module");
  GradedVerdict gv = graded_simple_module_check(w, opts);
  if (gv.kind == GradedKind::NotGradedSimple || gv.kind == GradedKind::Inconclusive)
    throw Error(ErrorCode::NotGradedSimple, "module is not graded simple (" + gv.evidence + ")");
  ModuleReconstruction r;
  const Field& f = w.field();
  r.certificates.push_back({"graded-simple", true, std::string(graded_kind_name(gv.kind)) + " tier " + gv.tier});
  require(r.certificates, "module", verify_module(w).ok());
  r.d = pprime(w, opts);
  r.choice = max_commutative_D(w, r.d, order);
  if (!r.choice.normalized)
    throw Error(ErrorCode::NonSplit, "normalizing the commuting endomorphisms needs roots not in " + f.spec().name());
  r.vprime = vprime(w, r.choice);
  require(r.certificates, "vprime-proper", proper_nonzero(r.vprime) || r.choice.p.is_trivial(),
          "dim V' = " + std::to_string(r.vprime.dim()));
  GradedLieAlgebra alg = regrade_by_quotient(w.algebra(), r.choice.p);
  QuotientModule qm = quotient_module(w, r.vprime, alg);
  r.v = qm.module;
  require(r.certificates, "v-verify", verify_module(r.v).ok());
  r.loop = loop_module(w.algebra(), r.choice.p, r.v);
  std::size_t big = r.loop.underlying.dim();
  r.canonical = Matrix(f, big, w.dim());
  bool labels_ok = true;
  for (std::size_t j = 0; j < w.dim(); ++j)
    for (std::size_t k = 0; k < qm.coords.size(); ++k) {
      if (qm.projection(k, j).is_zero()) continue;
      auto idx = r.loop.index_of(k, w.degree(j));
      if (!idx) {
        labels_ok = false;
        continue;
      }
      r.canonical(*idx, j) = qm.projection(k, j);
    }
  require(r.certificates, "kappa-degrees", labels_ok);
  require(r.certificates, "dimension", big == w.dim(),
          "dim M = " + std::to_string(big) + ", dim W = " + std::to_string(w.dim()));
  require(r.certificates, "kappa-hom", is_module_hom(w, r.loop.underlying, r.canonical, w.grading().zero()));
  require(r.certificates, "kappa-injective", rank(r.canonical) == w.dim());
  r.v_graded = graded_simple_module_check(r.v, opts);
  r.v_simple = simple_module_check(r.v, opts);
  r.certificates.push_back({"v-graded-simple", r.v_graded.kind != GradedKind::NotGradedSimple,
                            std::string(graded_kind_name(r.v_graded.kind))});
  return r;
}

Matrix automorphism_from_twist(const LoopModule& lm, const Character& f, const Matrix& mu, const GroupElem& alpha) {
  const GradedModule& v = lm.base;
  const GradedModule& m = lm.underlying;
  const FinAbGroup& q = m.grading().ambient();
  GroupElem abar = v.grading().rep(alpha);
  if (mu.rows() != v.dim() || mu.cols() != v.dim() || rank(mu) != v.dim() ||
      !is_module_hom(twist(v, f), v, mu, abar))
    throw Error(ErrorCode::WitnessInvalid, "mu is not a graded isomorphism V^f -> V of degree " + group_elem_string(abar));
  Matrix tau(m.field(), m.dim(), m.dim());
  for (std::size_t k = 0; k < m.dim(); ++k) {
    const auto& [j, beta] = lm.labels[k];
    FieldElem s = f(beta);
    for (std::size_t l = 0; l < v.dim(); ++l) {
      if (mu(l, j).is_zero()) continue;
      auto idx = lm.index_of(l, q.add(beta, alpha));
      if (!idx) throw Error(ErrorCode::WitnessInvalid, "mu leaves the expected component");
      tau(*idx, k) = s * mu(l, j);
    }
  }
  if (!is_module_hom(m, m, tau, m.grading().rep(alpha)) || rank(tau) != m.dim())
    throw Error(ErrorCode::VerificationFailure, "twisted map is not a graded automorphism");
  return tau;
}

std::vector<TwistSummand> loop_module_decomposition(const LoopModule& lm) {
  const GradedModule& m = lm.underlying;
  const GradedModule& v = lm.base;
  const Field& f = m.field();
  const FinAbGroup& q = m.grading().ambient();
  auto chars = characters(q, f.spec());
  std::vector<std::vector<FieldElem>> seen;
  std::vector<TwistSummand> out;
  EchelonBuilder total(f, m.dim());
  for (const auto& ch : chars) {
    std::vector<FieldElem> restr;
    for (const auto& b : lm.p.elements()) restr.push_back(ch(b));
    if (std::find(seen.begin(), seen.end(), restr) != seen.end()) continue;
    seen.push_back(restr);
    Matrix iso(f, m.dim(), v.dim());
    for (std::size_t j = 0; j < v.dim(); ++j)
      for (const auto& b : lm.p.elements()) {
        GroupElem a = q.add(v.degree(j), b);
        auto idx = lm.index_of(j, a);
        if (!idx) throw Error(ErrorCode::DecompositionFailure, "missing loop module label");
        iso(*idx, j) = ch(a).inverse();
      }
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < v.dim(); ++j) cols.push_back(iso.col_vec(j));
    Subspace sub = Subspace::span(f, m.dim(), cols);
    if (!is_submodule(m, sub) || rank(iso) != v.dim() || !is_module_hom(twist(v, ch), m, iso))
      throw Error(ErrorCode::DecompositionFailure, "summand for character " + ch.to_string() + " does not verify");
    for (const auto& c : cols) total.insert(c);
    out.push_back({ch, sub, iso});
  }
  if (out.size() != lm.p.order() || total.dim() != m.dim())
    throw Error(ErrorCode::DecompositionFailure, "summands do not give a direct sum decomposition");
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Subspace> weyl_decompose(const GradedModule& w, const ProbeOptions& opts) {
  const GradedLieAlgebra& g = w.algebra();
  const Field& f = w.field();
  if (f.characteristic() != 0 || !killing_gram(g).nondegenerate)
    throw Error(ErrorCode::NotSemisimple, "Killing form is degenerate");
  if (!verify_module(w).ok()) throw Error(ErrorCode::VerificationFailure, "module fails verification");
  std::vector<Subspace> summands;
  auto [cur, cur_deg] = homogeneous_basis(w, Subspace::whole(f, w.dim()));
  while (!cur.empty()) {
    GradedModule wc = restrict_module(w, cur, cur_deg);
    std::size_t m = wc.dim();
    Subspace s;
    for (std::size_t j = 0; j < m; ++j) {
      Subspace c = submodule_closure(wc, {unit_vec(f, m, j)});
      if (j == 0 || c.dim() < s.dim()) s = c;
    }
    GradedModule sm;
    std::vector<Vec> sb;
    for (std::size_t step = 0;; ++step) {
      auto [basis, degs] = homogeneous_basis(wc, s);
      sm = restrict_module(wc, basis, degs);
      sb = basis;
      GradedVerdict v = graded_simple_module_check(sm, opts, false);
      if (v.kind != GradedKind::NotGradedSimple || !v.witness || step > m) break;
      std::vector<Vec> w2;
      for (const auto& x : v.witness->basis()) w2.push_back(combine(f, m, x, sb));
      s = submodule_closure(wc, w2);
    }
    auto phi = graded_retraction(wc, sm, sb);
    if (!phi) throw Error(ErrorCode::NoProjectionFound, "no graded projection onto a summand");
    std::vector<Vec> amb;
    for (const auto& x : sb) amb.push_back(combine(f, w.dim(), x, cur));
    summands.push_back(Subspace::span(f, w.dim(), amb));
    auto [kb, kd] = homogeneous_basis(wc, kernel(*phi));
    std::vector<Vec> next;
    for (const auto& x : kb) next.push_back(combine(f, w.dim(), x, cur));
    if (next.size() + sb.size() != m) throw Error(ErrorCode::DecompositionFailure, "kernel of the projection has the wrong dimension");
    cur = std::move(next);
    cur_deg = std::move(kd);
  }
  EchelonBuilder total(f, w.dim());
  std::size_t dims = 0;
  for (const auto& s : summands) {
    dims += s.dim();
    for (const auto& v : s.basis()) total.insert(v);
  }
  if (dims != w.dim() || total.dim() != w.dim())
    throw Error(ErrorCode::DecompositionFailure, "summands do not span the module directly");
  return summands;
}

GradedModule adjoint_module(const GradedLieAlgebra& g) {
  GradedModule m(g, g.degrees());
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) m.set_action(i, j, g.bracket_basis(i, j));
  m.set_names(g.names());
  return m;
}

GradedModule shift_module(const GradedModule& w, const GroupElem& gamma) {
  std::vector<GroupElem> degs;
  for (const auto& d : w.degrees()) degs.push_back(w.grading().add(d, gamma));
  GradedModule m(w.algebra(), degs);
  for (std::size_t i = 0; i < w.algebra().dim(); ++i)
    for (std::size_t j = 0; j < w.dim(); ++j) m.set_action(i, j, w.action_basis(i, j));
  m.set_names(w.names());
  return m;
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
  if (a.algebra().dim() != b.algebra().dim() || !(a.grading() == b.grading()))
    throw Error(ErrorCode::GradingMismatch, "direct sum needs modules over one algebra");
  std::vector<GroupElem> degs = a.degrees();
  degs.insert(degs.end(), b.degrees().begin(), b.degrees().end());
  GradedModule m(a.algebra(), degs);
  std::size_t n = a.dim();
  for (std::size_t i = 0; i < a.algebra().dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) m.set_action(i, j, a.action_basis(i, j));
    for (std::size_t j = 0; j < b.dim(); ++j) {
      SparseVec s;
      for (const auto& [k, c] : b.action_basis(i, j)) s.emplace_back(k + n, c);
      m.set_action(i, j + n, s);
    }
  }
  return m;
}

GradedModule trivial_module(const GradedLieAlgebra& g, const GroupElem& degree, std::size_t dim) {
  return GradedModule(g, std::vector<GroupElem>(dim, degree));
}

}  // namespace gsla
