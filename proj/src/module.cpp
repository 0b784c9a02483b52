#include "gsla/module.hpp"

#include <algorithm>

namespace gsla {

namespace {

bool proper_nonzero(const Subspace& s) { return !s.is_zero() && !s.is_whole(); }

SparseVec normalized(SparseVec v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  for (auto& e : v) {
    if (!out.empty() && out.back().first == e.first) out.back().second += e.second;
    else out.push_back(e);
  }
  std::erase_if(out, [](const auto& e) { return e.second.is_zero(); });
  return out;
}

Vec flatten(const Matrix& m) {
  Vec v;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& x : m.row(r)) v.push_back(x);
  return v;
}

// Structure table of the span of square matrices, if closed and commutative.
std::optional<CommAlgebra> matrix_comm_algebra(const Field& f, const std::vector<Matrix>& maps) {
  if (maps.empty()) return std::nullopt;
  std::size_t n = maps.front().rows();
  std::vector<Vec> flat;
  for (const auto& m : maps) flat.push_back(flatten(m));
  CoordinateSolver cs(f, n * n, flat);
  CommAlgebra a{&f, maps.size(), {}, {}};
  a.mult.assign(maps.size(), std::vector<Vec>(maps.size()));
  for (std::size_t i = 0; i < maps.size(); ++i)
    for (std::size_t j = 0; j < maps.size(); ++j) {
      auto c = cs.solve(flatten(maps[i] * maps[j]));
      if (!c) return std::nullopt;
      a.mult[i][j] = *c;
    }
  for (std::size_t i = 0; i < maps.size(); ++i)
    for (std::size_t j = i + 1; j < maps.size(); ++j)
      if (a.mult[i][j] != a.mult[j][i]) return std::nullopt;
  auto u = cs.solve(flatten(Matrix::identity(f, n)));
  if (!u) return std::nullopt;
  a.unit = *u;
  return a;
}

// Proper nonzero invariant subspace from an endomorphism algebra: images of
// nontrivial idempotents, then images and kernels of c - lambda.
std::optional<Subspace> endomorphism_split(const Field& f, const std::vector<Matrix>& maps, long exponent,
                                           bool* field_certificate) {
  if (field_certificate) *field_certificate = false;
  if (maps.empty()) return std::nullopt;
  std::size_t n = maps.front().rows();
  if (auto a = matrix_comm_algebra(f, maps)) {
    try {
      auto ids = idempotents_commutative(*a);
      for (const auto& e : ids) {
        if (e == a->unit) continue;
        Matrix m(f, n, n);
        for (std::size_t t = 0; t < maps.size(); ++t) m = m + maps[t].scaled(e[t]);
        Subspace img = column_space(m);
        if (proper_nonzero(img)) return img;
      }
      if (field_certificate && ids.size() == 1) *field_certificate = true;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NonSplit) throw;
    }
  }
  for (const auto& c : maps)
    for (const auto& lam : shift_scalars(f, exponent)) {
      Matrix m = c - Matrix::identity(f, n).scaled(lam);
      Subspace img = column_space(m);
      if (proper_nonzero(img)) {
        if (field_certificate) *field_certificate = false;
        return img;
      }
      Subspace ker = kernel(m);
      if (proper_nonzero(ker)) {
        if (field_certificate) *field_certificate = false;
        return ker;
      }
    }
  return std::nullopt;
}

bool semisimple_char0(const GradedLieAlgebra& g) {
  return g.field().characteristic() == 0 && g.dim() > 0 && killing_gram(g).nondegenerate;
}

}  // namespace

// ---------------------------------------------------------------------------

GradedModule::GradedModule(const GradedLieAlgebra& g, std::vector<GroupElem> degrees)
    : algebra_(std::make_shared<const GradedLieAlgebra>(g)), degrees_(std::move(degrees)) {
  for (auto& d : degrees_) {
    if (d.size() != g.group().rank())
      throw Error(ErrorCode::GradingMismatch, "degree " + group_elem_string(d) + " is not in " + g.grading().to_string());
    d = g.grading().rep(d);
  }
  act_.assign(g.dim() * degrees_.size(), {});
  for (std::size_t j = 0; j < degrees_.size(); ++j) components_[degrees_[j]].push_back(j);
}

void GradedModule::set_action(std::size_t i, std::size_t j, SparseVec v) {
  if (i >= algebra_->dim() || j >= dim()) throw Error(ErrorCode::InvalidArgument, "action index out of range");
  v = normalized(std::move(v));
  for (const auto& e : v)
    if (e.first >= dim()) throw Error(ErrorCode::InvalidArgument, "action coefficient index out of range");
  act_[i * dim() + j] = std::move(v);
}

Vec GradedModule::act(std::size_t i, std::span<const FieldElem> v) const {
  Vec out = zero_vec(field(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    if (v[j].is_zero()) continue;
    for (const auto& [k, c] : act_[i * dim() + j]) out[k] += v[j] * c;
  }
  return out;
}

Vec GradedModule::act(std::span<const FieldElem> x, std::span<const FieldElem> v) const {
  Vec out = zero_vec(field(), dim());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) axpy(out, x[i], act(i, v));
  return out;
}

Matrix GradedModule::action_matrix(std::size_t i) const {
  Matrix m(field(), dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j)
    for (const auto& [k, c] : act_[i * dim() + j]) m(k, j) = c;
  return m;
}

bool GradedModule::is_trivial_action() const {
  return std::all_of(act_.begin(), act_.end(), [](const SparseVec& s) { return s.empty(); });
}

std::vector<GroupElem> GradedModule::support() const {
  std::vector<GroupElem> s;
  for (const auto& [a, idx] : components_) s.push_back(a);
  return s;
}

const std::vector<std::size_t>& GradedModule::component(const GroupElem& a) const {
  static const std::vector<std::size_t> empty;
  auto it = components_.find(grading().rep(a));
  return it == components_.end() ? empty : it->second;
}

// ---------------------------------------------------------------------------

ModuleReport verify_module(const GradedModule& w) {
  ModuleReport r;
  const GradedLieAlgebra& g = w.algebra();
  const Field& f = w.field();
  std::size_t n = w.dim();
  r.nontrivial = !w.is_trivial_action();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      GroupElem target = w.grading().add(g.degree(i), w.degree(j));
      for (const auto& [k, c] : w.action_basis(i, j))
        if (w.degree(k) != target) {
          r.grading.emplace_back(i, j);
          break;
        }
    }
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t i2 = i + 1; i2 < g.dim(); ++i2)
      for (std::size_t j = 0; j < n; ++j) {
        Vec vj = unit_vec(f, n, j);
        Vec lhs = w.act(i, w.act(i2, vj));
        axpy(lhs, -f.one(), w.act(i2, w.act(i, vj)));
        Vec rhs = w.act(dense(f, g.dim(), g.bracket_basis(i, i2)), vj);
        if (lhs != rhs) r.action.push_back({i, i2, j});
      }
  return r;
}

Subspace submodule_closure(const GradedModule& w, const std::vector<Vec>& s) {
  const auto& gens = w.algebra().lie_generators();
  return operator_closure(w.field(), w.dim(), gens.size(), [&](std::size_t k, const Vec& v) { return w.act(gens[k], v); },
                          s);
}

Subspace submodule_closure(const GradedModule& w, const Subspace& s) { return submodule_closure(w, s.basis()); }

bool is_submodule(const GradedModule& w, const Subspace& s) {
  for (std::size_t i = 0; i < w.algebra().dim(); ++i)
    for (const auto& v : s.basis())
      if (!s.contains(w.act(i, v))) return false;
  return true;
}

bool is_graded_subspace(const GradedModule& w, const Subspace& s) {
  std::size_t total = 0;
  for (const auto& a : w.support())
    total += subspace_intersect(s, Subspace::coordinate(w.field(), w.dim(), w.component(a))).dim();
  return total == s.dim();
}

GradedModule restrict_module(const GradedModule& w, const std::vector<Vec>& basis, std::vector<GroupElem> degrees) {
  CoordinateSolver cs(w.field(), w.dim(), basis);
  GradedModule r(w.algebra(), std::move(degrees));
  for (std::size_t i = 0; i < w.algebra().dim(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto c = cs.solve(w.act(i, basis[j]));
      if (!c) throw Error(ErrorCode::InvalidArgument, "span is not a submodule");
      r.set_action(i, j, sparse(*c));
    }
  return r;
}

bool is_module_hom(const GradedModule& source, const GradedModule& target, const Matrix& m,
                   const std::optional<GroupElem>& degree) {
  if (m.rows() != target.dim() || m.cols() != source.dim()) return false;
  if (source.algebra().dim() != target.algebra().dim()) return false;
  for (std::size_t i = 0; i < source.algebra().dim(); ++i)
    if (!(m * source.action_matrix(i) == target.action_matrix(i) * m)) return false;
  if (degree)
    for (std::size_t j = 0; j < source.dim(); ++j) {
      GroupElem want = target.grading().rep(target.grading().ambient().add(source.degree(j), *degree));
      for (std::size_t t = 0; t < target.dim(); ++t)
        if (!m(t, j).is_zero() && target.degree(t) != want) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> LoopModule::index_of(std::size_t j, const GroupElem& alpha) const {
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k].first == j && labels[k].second == alpha) return k;
  return std::nullopt;
}

LoopModule loop_module(const GradedLieAlgebra& g, const Subgroup& p, const GradedModule& v) {
  const GradedLieAlgebra& a = v.algebra();
  if (!g.grading().is_full()) throw Error(ErrorCode::GradingMismatch, "loop module needs a Q-graded algebra");
  if (!(a.group() == g.group()) || !(a.grading().subgroup() == p) || a.dim() != g.dim())
    throw Error(ErrorCode::GradingMismatch, "module is not over the algebra regraded by " + QuotientGroup(p).to_string());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (a.grading().rep(g.degree(i)) != a.degree(i))
      throw Error(ErrorCode::GradingMismatch, "algebra degrees do not reduce to the module algebra's degrees");
    for (std::size_t j = 0; j < g.dim(); ++j)
      if (g.bracket_basis(i, j) != a.bracket_basis(i, j))
        throw Error(ErrorCode::GradingMismatch, "module algebra has different structure constants");
  }
  const FinAbGroup& q = g.group();
  LoopModule m;
  m.base = v;
  m.p = p;
  std::vector<GroupElem> degs;
  std::vector<std::string> names;
  std::map<std::pair<std::size_t, GroupElem>, std::size_t> where;
  for (const auto& alpha : q.elements())
    for (auto j : v.component(a.grading().rep(alpha))) {
      where[{j, alpha}] = m.labels.size();
      m.labels.emplace_back(j, alpha);
      degs.push_back(alpha);
      std::string base = v.names().empty() ? "v" + std::to_string(j) : v.names()[j];
      names.push_back(base + "t" + group_elem_string(alpha));
    }
  GradedModule w(g, degs);
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t k = 0; k < m.labels.size(); ++k) {
      const auto& [j, beta] = m.labels[k];
      GroupElem s = q.add(g.degree(i), beta);
      SparseVec out;
      for (const auto& [l, c] : v.action_basis(i, j)) out.emplace_back(where.at({l, s}), c);
      w.set_action(i, k, out);
    }
  w.set_names(names);
  m.underlying = std::move(w);
  return m;
}

// ---------------------------------------------------------------------------

namespace {

// Unknown phi(t, j) for target index t and source index j.
struct HomUnknowns {
  std::size_t rows = 0, cols = 0, count = 0;
  std::vector<long> var;  // t * cols + j -> unknown or -1

  long at(std::size_t t, std::size_t j) const { return var[t * cols + j]; }
};

HomUnknowns hom_unknowns(const GradedModule& w, const GradedModule& w2, const GroupElem& alpha, bool graded) {
  HomUnknowns h;
  h.rows = w2.dim();
  h.cols = w.dim();
  h.var.assign(h.rows * h.cols, -1);
  for (std::size_t t = 0; t < h.rows; ++t)
    for (std::size_t j = 0; j < h.cols; ++j)
      if (!graded || w2.grading().rep(w2.grading().ambient().add(w.degree(j), alpha)) == w2.degree(t))
        h.var[t * h.cols + j] = static_cast<long>(h.count++);
  return h;
}

// phi A_i - A'_i phi = 0 for the Lie generators.
void add_commutation(SparseSystem& sys, const HomUnknowns& h, const GradedModule& w, const GradedModule& w2) {
  for (auto i : w.algebra().lie_generators())
    for (std::size_t j = 0; j < h.cols; ++j) {
      std::map<std::size_t, std::map<std::size_t, FieldElem>> rows;  // t -> unknown -> coeff
      auto add = [&](std::size_t t, long u, const FieldElem& c) {
        if (u < 0) return;
        auto& row = rows[t];
        auto [it, fresh] = row.emplace(static_cast<std::size_t>(u), c);
        if (!fresh) it->second += c;
      };
      for (const auto& [l, c] : w.action_basis(i, j))
        for (std::size_t t = 0; t < h.rows; ++t) add(t, h.at(t, l), c);
      for (std::size_t m = 0; m < h.rows; ++m) {
        long u = h.at(m, j);
        if (u < 0) continue;
        for (const auto& [t, c] : w2.action_basis(i, m)) add(t, u, -c);
      }
      for (auto& [t, row] : rows) {
        SparseSystem::Row r;
        for (auto& [u, c] : row)
          if (!c.is_zero()) r.emplace_back(u, c);
        if (!r.empty()) sys.add_equation(std::move(r));
      }
    }
}

Matrix unknowns_to_matrix(const Field& f, const HomUnknowns& h, std::span<const FieldElem> sol) {
  Matrix m(f, h.rows, h.cols);
  for (std::size_t t = 0; t < h.rows; ++t)
    for (std::size_t j = 0; j < h.cols; ++j)
      if (h.at(t, j) >= 0) m(t, j) = sol[static_cast<std::size_t>(h.at(t, j))];
  return m;
}

}  // namespace

std::vector<Matrix> hom_space(const GradedModule& w, const GradedModule& w2, const GroupElem& alpha, bool graded) {
  HomUnknowns h = hom_unknowns(w, w2, alpha, graded);
  if (h.count == 0) return {};
  SparseSystem sys(w.field(), h.count);
  add_commutation(sys, h, w, w2);
  std::vector<Matrix> out;
  Subspace sols = sys.solutions();
  for (const auto& sol : sols.basis()) out.push_back(unknowns_to_matrix(w.field(), h, sol));
  return out;
}

/// Degree-0 graded hom phi: W -> S with phi(s_k) = e_k for the columns of
/// `section` (S basis vectors in W coordinates).
std::optional<Matrix> graded_retraction(const GradedModule& w, const GradedModule& s, const std::vector<Vec>& section) {
  HomUnknowns h = hom_unknowns(w, s, w.grading().zero(), true);
  const Field& f = w.field();
  SparseSystem sys(f, h.count + 1);
  add_commutation(sys, h, w, s);
  for (std::size_t k = 0; k < section.size(); ++k)
    for (std::size_t t = 0; t < h.rows; ++t) {
      std::map<std::size_t, FieldElem> row;
      for (std::size_t j = 0; j < h.cols; ++j) {
        long u = h.at(t, j);
        if (u >= 0 && !section[k][j].is_zero()) row.emplace(static_cast<std::size_t>(u), section[k][j]);
      }
      if (t == k) row.emplace(h.count, -f.one());
      SparseSystem::Row r(row.begin(), row.end());
      if (!r.empty()) sys.add_equation(std::move(r));
    }
  auto sol = sys.affine_solution();
  if (!sol) return std::nullopt;
  return unknowns_to_matrix(f, h, *sol);
}

// ---------------------------------------------------------------------------

GradedVerdict graded_simple_module_check(const GradedModule& w, const ProbeOptions& opts, bool require_nontrivial) {
  GradedVerdict v;
  const Field& f = w.field();
  std::size_t n = w.dim();
  if (n == 0 || (require_nontrivial && w.is_trivial_action())) {
    v.kind = GradedKind::NotGradedSimple;
    v.tier = "A";
    v.evidence = n == 0 ? "zero module" : "trivial action";
    if (n > 1) v.witness = Subspace::span(f, n, {unit_vec(f, n, 0)});
    return v;
  }
  bool tier_a = true;
  for (const auto& a : w.support()) tier_a = tier_a && w.component(a).size() == 1;
  for (std::size_t j = 0; j < n; ++j) {
    Subspace s = submodule_closure(w, {unit_vec(f, n, j)});
    if (!s.is_whole()) {
      v.kind = GradedKind::NotGradedSimple;
      v.tier = tier_a ? "A" : "B";
      v.witness = s;
      v.evidence = "graded submodule generated by basis vector " + std::to_string(j);
      return v;
    }
  }
  if (tier_a) {
    v.kind = GradedKind::GradedSimple;
    v.tier = "A";
    v.evidence = "every homogeneous basis vector generates the module";
    return v;
  }
  auto end0 = hom_space(w, w, w.grading().zero(), true);
  bool semisimple = semisimple_char0(w.algebra());
  bool is_field = false;
  if (auto s = endomorphism_split(f, end0, w.algebra().group().exponent(), &is_field)) {
    v.kind = GradedKind::NotGradedSimple;
    v.tier = "B";
    v.witness = *s;
    v.evidence = "image of a degree-0 graded endomorphism";
    return v;
  }
  if (semisimple && (end0.size() == 1 || is_field)) {
    v.kind = GradedKind::GradedSimple;
    v.tier = "B";
    v.evidence = "semisimple algebra and degree-0 endomorphisms form a field";
    return v;
  }
  if (f.is_prime()) {
    std::vector<std::size_t> sizes;
    for (const auto& a : w.support()) sizes.push_back(w.component(a).size());
    if (projective_count(f, sizes, 4096) <= 4096) {
      for (const auto& a : w.support())
        for (const auto& x : projective_points(f, n, w.component(a))) {
          Subspace s = submodule_closure(w, {x});
          if (!s.is_whole()) {
            v.kind = GradedKind::NotGradedSimple;
            v.tier = "C";
            v.witness = s;
            v.evidence = "exhaustive homogeneous search";
            return v;
          }
        }
      v.kind = GradedKind::GradedSimple;
      v.tier = "C";
      v.evidence = "every nonzero homogeneous vector generates the module";
      return v;
    }
  }
  if (opts.probes <= 0) {
    v.kind = GradedKind::Inconclusive;
    v.tier = "probe";
    v.evidence = "no probes requested";
    return v;
  }
  auto supp = w.support();
  for (std::size_t ci = 0; ci < supp.size(); ++ci)
    for (int p = 0; p < opts.probes; ++p) {
      auto rng = probe_rng(opts.seed, ci, static_cast<std::uint64_t>(p));
      Subspace s = submodule_closure(w, {random_supported(f, n, w.component(supp[ci]), rng)});
      if (!s.is_whole()) {
        v.kind = GradedKind::NotGradedSimple;
        v.tier = "probe";
        v.witness = s;
        v.evidence = "homogeneous probe in degree " + group_elem_string(supp[ci]);
        return v;
      }
    }
  v.kind = GradedKind::ProbablyGradedSimple;
  v.tier = "probe";
  v.evidence = std::to_string(opts.probes) + " homogeneous probes per component generate the module";
  return v;
}

SimplicityVerdict simple_module_check(const GradedModule& w, const ProbeOptions& opts) {
  SimplicityVerdict v;
  const Field& f = w.field();
  std::size_t n = w.dim();
  if (n == 0 || w.is_trivial_action()) {
    v.kind = SimplicityKind::NotSimple;
    v.reason = n == 0 ? "zero module" : "trivial action";
    if (n > 1) v.witness = Subspace::span(f, n, {unit_vec(f, n, 0)});
    return v;
  }
  for (std::size_t j = 0; j < n; ++j) {
    Subspace s = submodule_closure(w, {unit_vec(f, n, j)});
    if (!s.is_whole()) {
      v.kind = SimplicityKind::NotSimple;
      v.witness = s;
      v.reason = "submodule generated by basis vector " + std::to_string(j);
      return v;
    }
  }
  auto end = hom_space(w, w, w.grading().zero(), false);
  bool is_field = false;
  if (auto s = endomorphism_split(f, end, w.algebra().group().exponent(), &is_field)) {
    v.kind = SimplicityKind::NotSimple;
    v.witness = *s;
    v.reason = "image of an endomorphism";
    return v;
  }
  if (semisimple_char0(w.algebra()) && (end.size() == 1 || is_field)) {
    v.kind = SimplicityKind::SimpleCertified;
    v.reason = "semisimple algebra and endomorphisms form a field";
    return v;
  }
  std::vector<std::size_t> all(n);
  for (std::size_t j = 0; j < n; ++j) all[j] = j;
  for (int p = 0; p < opts.probes; ++p) {
    auto rng = probe_rng(opts.seed, 0xfffd, static_cast<std::uint64_t>(p));
    Subspace s = submodule_closure(w, {random_supported(f, n, all, rng)});
    if (!s.is_whole()) {
      v.kind = SimplicityKind::NotSimple;
      v.witness = s;
      v.reason = "random probe " + std::to_string(p);
      return v;
    }
  }
  v.reason = "no proper submodule found";
  return v;
}

}  // namespace gsla
