#include "gsla/lie.hpp"

#include <algorithm>
#include <set>

namespace gsla {

Vec dense(const Field& f, std::size_t n, const SparseVec& s) {
  Vec v = zero_vec(f, n);
  for (const auto& [k, c] : s) v[k] += c;
  return v;
}

SparseVec sparse(std::span<const FieldElem> v) {
  SparseVec s;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) s.emplace_back(k, v[k]);
  return s;
}

namespace {

const FieldElem* sparse_find(const SparseVec& s, std::size_t k) {
  auto it = std::lower_bound(s.begin(), s.end(), k, [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != s.end() && it->first == k) ? &it->second : nullptr;
}

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

SparseVec negated(const SparseVec& v) {
  SparseVec out = v;
  for (auto& e : out) e.second = -e.second;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

GradedLieAlgebra::GradedLieAlgebra(const Field& f, GradingGroup grading, std::vector<GroupElem> degrees)
    : field_(&f), grading_(std::move(grading)), degrees_(std::move(degrees)) {
  for (auto& d : degrees_) {
    if (!grading_.ambient().is_element(grading_.ambient().normalize(d)))
      throw Error(ErrorCode::GradingMismatch, "degree " + group_elem_string(d) + " is not in " + grading_.to_string());
    d = grading_.rep(d);
  }
  sc_.assign(degrees_.size() * degrees_.size(), {});
  index_components();
}

void GradedLieAlgebra::index_components() {
  components_.clear();
  for (std::size_t i = 0; i < degrees_.size(); ++i) components_[degrees_[i]].push_back(i);
}

void GradedLieAlgebra::set_bracket(std::size_t i, std::size_t j, SparseVec v) {
  if (i >= dim() || j >= dim()) throw Error(ErrorCode::InvalidArgument, "bracket index out of range");
  v = normalized(std::move(v));
  for (const auto& e : v)
    if (e.first >= dim()) throw Error(ErrorCode::InvalidArgument, "bracket coefficient index out of range");
  sc_[j * dim() + i] = negated(v);
  sc_[i * dim() + j] = std::move(v);
  generators_.reset();
}

void GradedLieAlgebra::set_bracket_raw(std::size_t i, std::size_t j, SparseVec v) {
  sc_[i * dim() + j] = normalized(std::move(v));
  generators_.reset();
}

Vec GradedLieAlgebra::bracket_with(std::size_t i, std::span<const FieldElem> v) const {
  Vec out = zero_vec(*field_, dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    if (v[j].is_zero()) continue;
    for (const auto& [k, c] : sc_[i * dim() + j]) out[k] += v[j] * c;
  }
  return out;
}

Vec GradedLieAlgebra::bracket(std::span<const FieldElem> u, std::span<const FieldElem> v) const {
  Vec out = zero_vec(*field_, dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (v[j].is_zero()) continue;
      const auto& s = sc_[i * dim() + j];
      if (s.empty()) continue;
      FieldElem uv = u[i] * v[j];
      for (const auto& [k, c] : s) out[k] += uv * c;
    }
  }
  return out;
}

Matrix GradedLieAlgebra::ad(std::span<const FieldElem> x) const {
  Matrix m(*field_, dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j)
      for (const auto& [k, c] : sc_[i * dim() + j]) m(k, j) += x[i] * c;
  }
  return m;
}

bool GradedLieAlgebra::is_abelian() const {
  return std::all_of(sc_.begin(), sc_.end(), [](const SparseVec& s) { return s.empty(); });
}

std::vector<GroupElem> GradedLieAlgebra::support() const {
  std::vector<GroupElem> s;
  for (const auto& [a, idx] : components_) s.push_back(a);
  return s;
}

const std::vector<std::size_t>& GradedLieAlgebra::component(const GroupElem& a) const {
  static const std::vector<std::size_t> empty;
  auto it = components_.find(grading_.rep(a));
  return it == components_.end() ? empty : it->second;
}

Subspace GradedLieAlgebra::component_space(const GroupElem& a) const {
  return Subspace::coordinate(*field_, dim(), component(a));
}

const std::vector<std::size_t>& GradedLieAlgebra::lie_generators() const {
  if (generators_) return *generators_;
  std::vector<std::size_t> gens;
  EchelonBuilder span(*field_, dim());
  std::vector<Vec> members;  // vectors spanning the generated subalgebra
  auto absorb = [&](Vec v) {
    std::vector<Vec> queue;
    if (span.insert(v)) queue.push_back(std::move(v));
    for (std::size_t q = 0; q < queue.size() && span.dim() < dim(); ++q) {
      Vec cur = queue[q];
      members.push_back(cur);
      for (std::size_t m = 0; m + 1 < members.size() && span.dim() < dim(); ++m) {
        Vec w = bracket(members[m], cur);
        if (span.insert(w)) queue.push_back(std::move(w));
      }
    }
  };
  for (std::size_t i = 0; i < dim() && span.dim() < dim(); ++i) {
    Vec b = unit_vec(*field_, dim(), i);
    if (!is_zero_vec(span.reduce(b))) {
      gens.push_back(i);
      absorb(std::move(b));
    }
  }
  generators_ = std::move(gens);
  return *generators_;
}

// ---------------------------------------------------------------------------

AlgebraReport verify_algebra(const GradedLieAlgebra& g) {
  AlgebraReport r;
  const Field& f = g.field();
  std::size_t d = g.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const auto& a = g.bracket_basis(i, j);
      const auto& b = g.bracket_basis(j, i);
      if (i == j ? !a.empty() : a != negated(b)) r.antisymmetry.emplace_back(i, j);
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      GroupElem target = g.grading().add(g.degree(i), g.degree(j));
      for (const auto& [k, c] : g.bracket_basis(i, j))
        if (g.degree(k) != target) {
          r.grading.emplace_back(i, j);
          break;
        }
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        Vec s = g.bracket_with(i, dense(f, d, g.bracket_basis(j, k)));
        Vec t = g.bracket_with(j, dense(f, d, g.bracket_basis(k, i)));
        Vec u = g.bracket_with(k, dense(f, d, g.bracket_basis(i, j)));
        axpy(s, f.one(), t);
        axpy(s, f.one(), u);
        if (!is_zero_vec(s)) r.jacobi.push_back({i, j, k});
      }
  std::vector<GroupElem> gens = g.support();
  for (const auto& p : g.grading().subgroup().generators()) gens.push_back(p);
  r.minimal = Subgroup::generate(g.group(), gens).order() == g.group().order();
  return r;
}

Subspace ideal_closure(const GradedLieAlgebra& g, const std::vector<Vec>& s) {
  const auto& gens = g.lie_generators();
  return operator_closure(g.field(), g.dim(), gens.size(),
                          [&](std::size_t k, const Vec& v) { return g.bracket_with(gens[k], v); }, s);
}

Subspace ideal_closure(const GradedLieAlgebra& g, const Subspace& s) { return ideal_closure(g, s.basis()); }

Subspace bracket_space(const GradedLieAlgebra& g, const Subspace& u, const Subspace& v) {
  EchelonBuilder b(g.field(), g.dim());
  for (const auto& x : u.basis())
    for (const auto& y : v.basis()) b.insert(g.bracket(x, y));
  return b.finish();
}

bool is_ideal(const GradedLieAlgebra& g, const Subspace& s) {
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (const auto& v : s.basis())
      if (!s.contains(g.bracket_with(i, v))) return false;
  return true;
}

Subspace center(const GradedLieAlgebra& g) {
  SparseSystem sys(g.field(), g.dim());
  for (auto i : g.lie_generators()) {
    std::map<std::size_t, SparseSystem::Row> rows;
    for (std::size_t j = 0; j < g.dim(); ++j)
      for (const auto& [m, c] : g.bracket_basis(i, j)) rows[m].emplace_back(j, c);
    for (auto& [m, row] : rows) sys.add_equation(std::move(row));
  }
  return sys.solutions();
}

KillingResult killing_gram(const GradedLieAlgebra& g) {
  std::size_t d = g.dim();
  const Field& f = g.field();
  Matrix m(f, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      if (g.grading().add(g.degree(i), g.degree(j)) != g.grading().zero()) continue;
      FieldElem t = f.zero();
      // tr(ad_i ad_j) = sum_{l,m} [b_i,b_l]_m [b_j,b_m]_l
      for (std::size_t l = 0; l < d; ++l)
        for (const auto& [mm, c] : g.bracket_basis(i, l)) {
          const FieldElem* x = sparse_find(g.bracket_basis(j, mm), l);
          if (x) t += c * *x;
        }
      m(i, j) = t;
      m(j, i) = t;
    }
  KillingResult r{m, rank(m) == d};
  return r;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> Centroid::of_degree(const GroupElem& a) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < degrees.size(); ++k)
    if (degrees[k] == a) out.push_back(k);
  return out;
}

std::vector<Matrix> centroid_component(const GradedLieAlgebra& g, const GroupElem& a) {
  std::size_t d = g.dim();
  const Field& f = g.field();
  // unknown (j, t): coefficient of b_t in phi(b_j), t of degree deg(j) + a
  std::vector<std::size_t> offset(d + 1, 0);
  std::vector<const std::vector<std::size_t>*> target(d);
  for (std::size_t j = 0; j < d; ++j) {
    target[j] = &g.component(g.grading().add(g.degree(j), a));
    offset[j + 1] = offset[j] + target[j]->size();
  }
  std::size_t n = offset[d];
  if (n == 0) return {};
  auto unknown = [&](std::size_t j, std::size_t t) -> std::optional<std::size_t> {
    const auto& tg = *target[j];
    auto it = std::lower_bound(tg.begin(), tg.end(), t);
    if (it == tg.end() || *it != t) return std::nullopt;
    return offset[j] + static_cast<std::size_t>(it - tg.begin());
  };
  SparseSystem sys(f, n);
  for (auto i : g.lie_generators())
    for (std::size_t j = 0; j < d; ++j) {
      // phi([b_i,b_j]) - [b_i, phi(b_j)] = 0, coordinate by coordinate
      std::map<std::size_t, std::map<std::size_t, FieldElem>> rows;
      auto add = [&](std::size_t m, std::size_t u, const FieldElem& c) {
        auto& row = rows[m];
        auto [it, fresh] = row.emplace(u, c);
        if (!fresh) it->second += c;
      };
      for (const auto& [l, c] : g.bracket_basis(i, j))
        for (auto t : *target[l]) add(t, *unknown(l, t), c);
      for (auto t : *target[j])
        for (const auto& [m, c] : g.bracket_basis(i, t)) add(m, *unknown(j, t), -c);
      for (auto& [m, row] : rows) {
        SparseSystem::Row r;
        for (auto& [u, c] : row)
          if (!c.is_zero()) r.emplace_back(u, c);
        if (!r.empty()) sys.add_equation(std::move(r));
      }
    }
  std::vector<Matrix> maps;
  Subspace sols = sys.solutions();
  for (const auto& sol : sols.basis()) {
    Matrix phi(f, d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < target[j]->size(); ++k) phi((*target[j])[k], j) = sol[offset[j] + k];
    maps.push_back(std::move(phi));
  }
  return maps;
}

namespace {
Vec flatten(const Matrix& m) {
  Vec v;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& x : m.row(r)) v.push_back(x);
  return v;
}
}  // namespace

Centroid centroid(const GradedLieAlgebra& g) {
  Centroid c;
  const Field& f = g.field();
  for (const auto& a : g.grading().reps())
    for (auto& m : centroid_component(g, a)) {
      c.maps.push_back(std::move(m));
      c.degrees.push_back(a);
    }
  std::size_t k = c.maps.size(), d = g.dim();
  std::map<GroupElem, CoordinateSolver> solvers;
  std::map<GroupElem, std::vector<std::size_t>> index;
  for (const auto& a : g.grading().reps()) {
    auto idx = c.of_degree(a);
    std::vector<Vec> flat;
    for (auto i : idx) flat.push_back(flatten(c.maps[i]));
    solvers.emplace(a, CoordinateSolver(f, d * d, flat));
    index[a] = idx;
  }
  auto coords = [&](const Matrix& m, const GroupElem& a) {
    Vec out = zero_vec(f, k);
    auto sol = solvers.at(a).solve(flatten(m));
    if (!sol) throw Error(ErrorCode::VerificationFailure, "centroid not closed under composition");
    for (std::size_t t = 0; t < sol->size(); ++t) out[index[a][t]] = (*sol)[t];
    return out;
  };
  c.algebra.field = &f;
  c.algebra.dim = k;
  c.algebra.mult.assign(k, std::vector<Vec>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Matrix p = c.maps[i] * c.maps[j];
      c.algebra.mult[i][j] = coords(p, g.grading().add(c.degrees[i], c.degrees[j]));
    }
  for (std::size_t i = 0; i < k && c.commutative; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (c.algebra.mult[i][j] != c.algebra.mult[j][i]) {
        c.commutative = false;
        break;
      }
  if (k > 0) c.algebra.unit = coords(Matrix::identity(f, d), g.grading().zero());
  return c;
}

// ---------------------------------------------------------------------------

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

std::mt19937_64 probe_rng(std::uint64_t seed, std::uint64_t component, std::uint64_t probe) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ component);
  s = splitmix64(s ^ (probe * 0x2545f4914f6cdd1dULL));
  return std::mt19937_64(s);
}

Vec random_supported(const Field& f, std::size_t n, const std::vector<std::size_t>& idx, std::mt19937_64& rng) {
  Vec v = zero_vec(f, n);
  if (idx.empty()) return v;
  std::uniform_int_distribution<int> dist(-2, 2);
  do {
    for (auto i : idx) v[i] = f.from_int(dist(rng));
  } while (is_zero_vec(v));
  return v;
}

std::vector<FieldElem> shift_scalars(const Field& f, long e) {
  std::vector<FieldElem> out{f.zero(), f.one(), f.from_int(-1), f.from_int(2), f.from_int(-2)};
  if (f.has_primitive_root_of_unity(static_cast<std::uint64_t>(e))) {
    FieldElem w = f.primitive_root_of_unity(static_cast<std::uint64_t>(e));
    FieldElem x = w;
    for (long k = 1; k < e; ++k, x *= w) out.push_back(x);
  }
  if (!f.is_prime()) {
    out.push_back(f.from_rational(Rational(1, 2)));
    out.push_back(f.from_rational(Rational(-1, 2)));
  }
  std::vector<FieldElem> uniq;
  for (auto& x : out)
    if (std::find(uniq.begin(), uniq.end(), x) == uniq.end()) uniq.push_back(x);
  return uniq;
}

namespace {
bool proper_nonzero(const Subspace& s) { return !s.is_zero() && !s.is_whole(); }
}  // namespace

std::optional<Subspace> centroid_ideal(const GradedLieAlgebra& g, const Centroid& c, bool degree_zero_only) {
  const Field& f = g.field();
  std::size_t d = g.dim();
  std::vector<std::size_t> use;
  for (std::size_t k = 0; k < c.dim(); ++k)
    if (!degree_zero_only || c.degrees[k] == g.grading().zero()) use.push_back(k);
  if (use.empty()) return std::nullopt;
  // route 1: idempotents of the (degree-zero part of the) centroid
  if (c.commutative) {
    CommAlgebra sub{&f, use.size(), {}, {}};
    sub.mult.assign(use.size(), std::vector<Vec>(use.size()));
    bool closed = true;
    for (std::size_t a = 0; a < use.size() && closed; ++a)
      for (std::size_t b = 0; b < use.size() && closed; ++b) {
        Vec v;
        const Vec& full = c.algebra.mult[use[a]][use[b]];
        for (auto u : use) v.push_back(full[u]);
        Vec check = zero_vec(f, c.dim());
        for (std::size_t t = 0; t < use.size(); ++t) check[use[t]] = v[t];
        if (check != full) closed = false;
        sub.mult[a][b] = v;
      }
    for (auto u : use) sub.unit.push_back(c.algebra.unit[u]);
    if (closed) {
      try {
        for (const auto& e : idempotents_commutative(sub)) {
          if (e == sub.unit) continue;
          Matrix m(f, d, d);
          for (std::size_t t = 0; t < use.size(); ++t) m = m + c.maps[use[t]].scaled(e[t]);
          Subspace img = column_space(m);
          if (proper_nonzero(img)) return img;
        }
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NonSplit && err.code() != ErrorCode::NotCommutative) throw;
      }
    }
  }
  // route 1b: images and kernels of c - lambda
  auto scalars = shift_scalars(f, g.group().exponent());
  for (auto k : use) {
    for (const auto& lam : scalars) {
      Matrix m = c.maps[k] - Matrix::identity(f, d).scaled(lam);
      Subspace img = column_space(m);
      if (proper_nonzero(img)) return img;
      Subspace ker = kernel(m);
      if (proper_nonzero(ker)) return ker;
    }
  }
  return std::nullopt;
}

SimplicityVerdict simplicity_certificate(const GradedLieAlgebra& g, const ProbeOptions& opts) {
  SimplicityVerdict v;
  const Field& f = g.field();
  std::size_t d = g.dim();
  if (d == 0) {
    v.reason = "zero algebra";
    return v;
  }
  if (g.is_abelian()) {
    v.kind = SimplicityKind::NotSimple;
    v.reason = "abelian";
    if (d > 1) v.witness = Subspace::span(f, d, {unit_vec(f, d, 0)});
    return v;
  }
  Centroid c = centroid(g);
  bool char0 = f.characteristic() == 0;
  bool killing = char0 && killing_gram(g).nondegenerate;
  if (killing && c.dim() == 1) {
    v.kind = SimplicityKind::SimpleCertified;
    v.reason = "Killing form nondegenerate and centroid one-dimensional";
    return v;
  }
  for (std::size_t i = 0; i < d; ++i) {
    Subspace s = ideal_closure(g, {unit_vec(f, d, i)});
    if (proper_nonzero(s)) {
      v.kind = SimplicityKind::NotSimple;
      v.witness = s;
      v.reason = "ideal generated by basis vector " + std::to_string(i);
      return v;
    }
  }
  if (auto s = centroid_ideal(g, c, false)) {
    v.kind = SimplicityKind::NotSimple;
    v.witness = *s;
    v.reason = "centroid element image";
    return v;
  }
  if (killing && c.commutative) {
    try {
      if (idempotents_commutative(c.algebra).size() == 1) {
        v.kind = SimplicityKind::SimpleCertified;
        v.reason = "semisimple with centroid a field";
        return v;
      }
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NonSplit) throw;
    }
  }
  std::vector<std::size_t> all(d);
  for (std::size_t i = 0; i < d; ++i) all[i] = i;
  for (int p = 0; p < opts.probes; ++p) {
    auto rng = probe_rng(opts.seed, 0xffff, static_cast<std::uint64_t>(p));
    Subspace s = ideal_closure(g, {random_supported(f, d, all, rng)});
    if (proper_nonzero(s)) {
      v.kind = SimplicityKind::NotSimple;
      v.witness = s;
      v.reason = "random probe " + std::to_string(p);
      return v;
    }
  }
  v.reason = "no proper ideal found";
  return v;
}

// ---------------------------------------------------------------------------

std::vector<GroupElem> support(const GradedLieAlgebra& g, std::span<const FieldElem> x) {
  std::vector<GroupElem> out;
  for (const auto& a : g.support())
    for (auto i : g.component(a))
      if (!x[i].is_zero()) {
        out.push_back(a);
        break;
      }
  return out;
}

std::vector<GroupElem> support(const GradedLieAlgebra& g, const Subspace& u) {
  std::vector<GroupElem> out;
  for (const auto& a : g.support()) {
    bool hit = false;
    for (const auto& v : u.basis()) {
      for (auto i : g.component(a))
        if (!v[i].is_zero()) {
          hit = true;
          break;
        }
      if (hit) break;
    }
    if (hit) out.push_back(a);
  }
  return out;
}

MinSupport min_support(const GradedLieAlgebra& g, const Subspace& u, std::size_t max_subsets) {
  if (u.is_zero()) throw Error(ErrorCode::EmptySubspace, "size of the zero subspace");
  auto supp = support(g, u);
  std::size_t n = supp.size(), tested = 0;
  for (std::size_t r = 1; r <= n; ++r) {
    EchelonBuilder found(g.field(), g.dim());
    MinSupport res;
    std::vector<std::size_t> pick(r);
    for (std::size_t i = 0; i < r; ++i) pick[i] = i;
    while (true) {
      if (++tested > max_subsets)
        throw Error(ErrorCode::SearchCapExceeded, "support search exceeded " + std::to_string(max_subsets) + " subsets");
      std::vector<std::size_t> idx;
      std::vector<GroupElem> degs;
      for (auto p : pick) {
        degs.push_back(supp[p]);
        for (auto i : g.component(supp[p])) idx.push_back(i);
      }
      Subspace inter = subspace_intersect(u, Subspace::coordinate(g.field(), g.dim(), idx));
      if (!inter.is_zero()) {
        res.subsets.push_back(degs);
        for (const auto& v : inter.basis()) found.insert(v);
      }
      // next r-combination
      std::size_t i = r;
      while (i > 0 && pick[i - 1] == n - r + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!res.subsets.empty()) {
      res.size = r;
      res.minimal_span = found.finish();
      return res;
    }
  }
  throw Error(ErrorCode::EmptySubspace, "no nonzero element found");
}

std::size_t size(const GradedLieAlgebra& g, const Subspace& u, std::size_t max_subsets) {
  return min_support(g, u, max_subsets).size;
}

// ---------------------------------------------------------------------------

std::string_view graded_kind_name(GradedKind k) {
  switch (k) {
    case GradedKind::GradedSimple: return "GradedSimple";
    case GradedKind::NotGradedSimple: return "NotGradedSimple";
    case GradedKind::ProbablyGradedSimple: return "ProbablyGradedSimple";
    case GradedKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::uint64_t projective_count(const Field& f, const std::vector<std::size_t>& sizes, std::uint64_t cap) {
  std::uint64_t p = f.characteristic(), total = 0;
  for (auto k : sizes) {
    std::uint64_t pw = 1;
    for (std::size_t t = 0; t < k; ++t) {
      total += pw;
      if (total > cap) return cap + 1;
      pw *= p;
    }
  }
  return total;
}

std::vector<Vec> projective_points(const Field& f, std::size_t n, const std::vector<std::size_t>& idx) {
  std::uint64_t p = f.characteristic();
  std::vector<Vec> out;
  std::size_t k = idx.size();
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::size_t free = k - lead - 1;
    std::uint64_t count = 1;
    for (std::size_t t = 0; t < free; ++t) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Vec v = zero_vec(f, n);
      v[idx[lead]] = f.one();
      std::uint64_t x = c;
      for (std::size_t t = 0; t < free; ++t) {
        v[idx[lead + 1 + t]] = f.from_int(static_cast<long long>(x % p));
        x /= p;
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

GradedVerdict graded_simple_check(const GradedLieAlgebra& g, const ProbeOptions& opts) {
  GradedVerdict v;
  const Field& f = g.field();
  std::size_t d = g.dim();
  if (d == 0 || g.is_abelian()) {
    v.kind = GradedKind::NotGradedSimple;
    v.tier = "A";
    v.evidence = "abelian";
    if (d > 1) v.witness = Subspace::span(f, d, {unit_vec(f, d, 0)});
    return v;
  }
  bool tier_a = true;
  for (const auto& a : g.support()) tier_a = tier_a && g.component(a).size() == 1;
  for (std::size_t i = 0; i < d; ++i) {
    Subspace s = ideal_closure(g, {unit_vec(f, d, i)});
    if (!s.is_whole()) {
      v.kind = GradedKind::NotGradedSimple;
      v.tier = tier_a ? "A" : "B";
      v.witness = s;
      v.evidence = "graded ideal generated by basis vector " + std::to_string(i);
      return v;
    }
  }
  if (tier_a) {
    v.kind = GradedKind::GradedSimple;
    v.tier = "A";
    v.evidence = "every homogeneous basis vector generates the algebra";
    return v;
  }
  // Tier B: degree-zero centroid
  Centroid c;
  c.maps = centroid_component(g, g.grading().zero());
  c.degrees.assign(c.maps.size(), g.grading().zero());
  bool killing = f.characteristic() == 0 && killing_gram(g).nondegenerate;
  if (killing && c.maps.size() == 1) {
    v.kind = GradedKind::GradedSimple;
    v.tier = "B";
    v.evidence = "Killing form nondegenerate and degree-0 centroid one-dimensional";
    return v;
  }
  if (!c.maps.empty()) {
    Centroid full = centroid(g);
    if (auto s = centroid_ideal(g, full, true)) {
      v.kind = GradedKind::NotGradedSimple;
      v.tier = "B";
      v.witness = *s;
      v.evidence = "image of a degree-0 centroid element";
      return v;
    }
    if (killing && full.commutative) {
      // degree-0 part is a field: no graded direct summands
      auto use = full.of_degree(g.grading().zero());
      CommAlgebra sub{&f, use.size(), {}, {}};
      sub.mult.assign(use.size(), std::vector<Vec>(use.size()));
      for (std::size_t a = 0; a < use.size(); ++a)
        for (std::size_t b = 0; b < use.size(); ++b)
          for (auto u : use) sub.mult[a][b].push_back(full.algebra.mult[use[a]][use[b]][u]);
      for (auto u : use) sub.unit.push_back(full.algebra.unit[u]);
      try {
        if (idempotents_commutative(sub).size() == 1) {
          v.kind = GradedKind::GradedSimple;
          v.tier = "B";
          v.evidence = "Killing form nondegenerate and degree-0 centroid has no nontrivial idempotent";
          return v;
        }
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NonSplit) throw;
      }
    }
  }
  // Tier C: exhaustive homogeneous vectors over a small prime field
  if (f.is_prime()) {
    std::vector<std::size_t> sizes;
    for (const auto& a : g.support()) sizes.push_back(g.component(a).size());
    std::uint64_t total = projective_count(f, sizes, 4096);
    if (total <= 4096) {
      for (const auto& a : g.support())
        for (const auto& x : projective_points(f, d, g.component(a))) {
          Subspace s = ideal_closure(g, {x});
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
      v.evidence = "every nonzero homogeneous vector generates the algebra";
      return v;
    }
  }
  if (opts.probes <= 0) {
    v.kind = GradedKind::Inconclusive;
    v.tier = "probe";
    v.evidence = "no probes requested";
    return v;
  }
  auto supp = g.support();
  for (std::size_t ci = 0; ci < supp.size(); ++ci)
    for (int p = 0; p < opts.probes; ++p) {
      auto rng = probe_rng(opts.seed, ci, static_cast<std::uint64_t>(p));
      Subspace s = ideal_closure(g, {random_supported(f, d, g.component(supp[ci]), rng)});
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
  v.evidence = std::to_string(opts.probes) + " homogeneous probes per component generate the algebra";
  return v;
}

// ---------------------------------------------------------------------------

GradedLieAlgebra with_grading(const GradedLieAlgebra& g, GradingGroup grading, std::vector<GroupElem> degrees) {
  GradedLieAlgebra h(g.field(), std::move(grading), std::move(degrees));
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) h.set_bracket_raw(i, j, g.bracket_basis(i, j));
  h.set_names(g.names());
  return h;
}

GradedLieAlgebra regrade_by_quotient(const GradedLieAlgebra& g, const Subgroup& p) {
  std::vector<GroupElem> gens = g.grading().subgroup().generators();
  for (const auto& x : p.generators()) gens.push_back(x);
  QuotientGroup qp(Subgroup::generate(g.group(), gens));
  std::vector<GroupElem> degs;
  for (const auto& a : g.degrees()) degs.push_back(qp.rep(a));
  GradedLieAlgebra h = with_grading(g, qp, degs);
  if (!g.fine_degrees().empty()) h.set_fine_degrees(g.fine_degrees());
  else if (g.grading().is_full()) h.set_fine_degrees(g.degrees());
  return h;
}

GradedLieAlgebra restrict_algebra(const GradedLieAlgebra& g, const std::vector<Vec>& basis, GradingGroup grading,
                                  std::vector<GroupElem> degrees) {
  const Field& f = g.field();
  CoordinateSolver cs(f, g.dim(), basis);
  GradedLieAlgebra h(f, std::move(grading), std::move(degrees));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      auto c = cs.solve(g.bracket(basis[i], basis[j]));
      if (!c) throw Error(ErrorCode::NotAnIdeal, "span is not closed under the bracket");
      h.set_bracket(i, j, sparse(*c));
    }
  return h;
}

bool is_graded_subspace(const GradedLieAlgebra& g, const Subspace& u) {
  std::size_t total = 0;
  for (const auto& [a, s] : graded_pieces(g, u)) total += s.dim();
  return total == u.dim();
}

std::vector<std::pair<GroupElem, Subspace>> graded_pieces(const GradedLieAlgebra& g, const Subspace& u) {
  std::vector<std::pair<GroupElem, Subspace>> out;
  for (const auto& a : g.support()) out.emplace_back(a, subspace_intersect(u, g.component_space(a)));
  return out;
}

std::vector<std::pair<GroupElem, Subspace>> coset_pieces(const GradedLieAlgebra& g, const Subspace& u, const Subgroup& p) {
  std::vector<GroupElem> gens = g.grading().subgroup().generators();
  for (const auto& x : p.generators()) gens.push_back(x);
  QuotientGroup qp(Subgroup::generate(g.group(), gens));
  std::map<GroupElem, std::vector<std::size_t>> idx;
  for (std::size_t i = 0; i < g.dim(); ++i) idx[qp.rep(g.degree(i))].push_back(i);
  std::vector<std::pair<GroupElem, Subspace>> out;
  for (const auto& [a, ids] : idx)
    out.emplace_back(a, subspace_intersect(u, Subspace::coordinate(g.field(), g.dim(), ids)));
  return out;
}

Vec apply_character(const GradedLieAlgebra& g, const Character& f, std::span<const FieldElem> x) {
  Vec out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!out[i].is_zero()) out[i] *= f(g.degree(i));
  return out;
}

Subspace apply_character(const GradedLieAlgebra& g, const Character& f, const Subspace& u) {
  std::vector<Vec> imgs;
  for (const auto& v : u.basis()) imgs.push_back(apply_character(g, f, v));
  return Subspace::span(g.field(), g.dim(), imgs);
}

Matrix character_matrix_of(const GradedLieAlgebra& g, const Character& f) {
  Matrix m(g.field(), g.dim(), g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) m(i, i) = f(g.degree(i));
  return m;
}

GradedLieAlgebra direct_sum(const GradedLieAlgebra& a, const GradedLieAlgebra& b) {
  if (!(a.grading() == b.grading())) throw Error(ErrorCode::GradingMismatch, "direct sum needs one grading group");
  std::vector<GroupElem> degs = a.degrees();
  degs.insert(degs.end(), b.degrees().begin(), b.degrees().end());
  GradedLieAlgebra h(a.field(), a.grading(), degs);
  std::size_t n = a.dim();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) h.set_bracket_raw(i, j, a.bracket_basis(i, j));
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      SparseVec s;
      for (const auto& [k, c] : b.bracket_basis(i, j)) s.emplace_back(k + n, c);
      h.set_bracket_raw(i + n, j + n, s);
    }
  std::vector<std::string> names;
  if (!a.names().empty() && !b.names().empty()) {
    for (const auto& s : a.names()) names.push_back(s + "_1");
    for (const auto& s : b.names()) names.push_back(s + "_2");
  }
  h.set_names(names);
  return h;
}

}  // namespace gsla
