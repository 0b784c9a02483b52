#include "gsla/linalg.hpp"

#include <algorithm>
#include <map>

namespace gsla {

Vec zero_vec(const Field& f, std::size_t n) { return Vec(n, f.zero()); }

Vec unit_vec(const Field& f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v[i] = f.one();
  return v;
}

bool is_zero_vec(std::span<const FieldElem> v) {
  return std::all_of(v.begin(), v.end(), [](const FieldElem& x) { return x.is_zero(); });
}

void axpy(Vec& y, const FieldElem& a, std::span<const FieldElem> x) {
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
}

Vec scaled(std::span<const FieldElem> x, const FieldElem& a) {
  Vec r(x.begin(), x.end());
  for (auto& e : r)
    if (!e.is_zero()) e *= a;
  return r;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(&f), rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Matrix Matrix::from_rows(const Field& f, std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  return m;
}

Matrix Matrix::from_columns(const Field& f, std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(f, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  return m;
}

Vec Matrix::row_vec(std::size_t r) const { return Vec(row(r).begin(), row(r).end()); }

Vec Matrix::col_vec(std::size_t c) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(*field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vec Matrix::apply(std::span<const FieldElem> v) const {
  Vec out = zero_vec(*field_, rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const FieldElem& a = (*this)(r, c);
      if (!a.is_zero()) out[r] += a * v[c];
    }
  }
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const FieldElem& x) { return x.is_zero(); });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const FieldElem& a = (*this)(r, c);
      if (r == c ? !a.is_one() : !a.is_zero()) return false;
    }
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape");
  Matrix m(*a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const FieldElem& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const FieldElem& y = b(k, j);
        if (!y.is_zero()) m(i, j) += x * y;
      }
    }
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum shape");
  Matrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix difference shape");
  Matrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix Matrix::scaled(const FieldElem& s) const {
  Matrix m = *this;
  for (auto& x : m.data_)
    if (!x.is_zero()) x *= s;
  return m;
}

// ---------------------------------------------------------------------------
// RREF

namespace {

// In-place Gauss-Jordan on a list of rows; returns pivots, drops zero rows.
std::vector<std::size_t> reduce_rows(std::vector<Vec>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    FieldElem inv = rows[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j)
      if (!rows[r][j].is_zero()) rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      FieldElem f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::vector<Vec> rows_of(const Matrix& m) {
  std::vector<Vec> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row_vec(r));
  return rows;
}

}  // namespace

RrefResult rref(const Matrix& m) {
  auto rows = rows_of(m);
  auto piv = reduce_rows(rows, m.cols());
  RrefResult res;
  res.rank = rows.size();
  res.pivots = std::move(piv);
  res.matrix = Matrix::from_rows(m.field(), m.cols(), rows);
  return res;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  std::size_t n = m.rows();
  const Field& f = m.field();
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < n; ++r) {
    Vec row = m.row_vec(r);
    for (std::size_t c = 0; c < n; ++c) row.push_back(r == c ? f.one() : f.zero());
    rows.push_back(std::move(row));
  }
  auto piv = reduce_rows(rows, 2 * n);
  if (rows.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix inv(f, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = rows[r][n + c];
  return inv;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(const Field& f, std::size_t ambient) : field_(&f), ambient_(ambient) {}

Subspace Subspace::span(const Field& f, std::size_t ambient, const std::vector<Vec>& vectors) {
  Subspace s(f, ambient);
  std::vector<Vec> rows = vectors;
  for (const auto& v : rows)
    if (v.size() != ambient) throw Error(ErrorCode::AmbientMismatch, "vector length differs from ambient dimension");
  s.pivots_ = reduce_rows(rows, ambient);
  s.basis_ = std::move(rows);
  return s;
}

Subspace Subspace::whole(const Field& f, std::size_t ambient) {
  Subspace s(f, ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    s.basis_.push_back(unit_vec(f, ambient, i));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::coordinate(const Field& f, std::size_t ambient, std::span<const std::size_t> indices) {
  std::vector<std::size_t> idx(indices.begin(), indices.end());
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  Subspace s(f, ambient);
  for (auto i : idx) {
    s.basis_.push_back(unit_vec(f, ambient, i));
    s.pivots_.push_back(i);
  }
  return s;
}

Matrix Subspace::basis_matrix() const { return Matrix::from_rows(*field_, ambient_, basis_); }

Vec Subspace::reduce(std::span<const FieldElem> v) const {
  Vec r(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (r[pivots_[i]].is_zero()) continue;
    FieldElem c = r[pivots_[i]];
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!basis_[i][j].is_zero()) r[j] -= c * basis_[i][j];
  }
  return r;
}

bool Subspace::contains(std::span<const FieldElem> v) const { return is_zero_vec(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw Error(ErrorCode::AmbientMismatch, "subspace containment");
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Vec& v) { return contains(v); });
}

std::optional<Vec> Subspace::coordinates(std::span<const FieldElem> v) const {
  if (!contains(v)) return std::nullopt;
  Vec c;
  c.reserve(basis_.size());
  for (auto p : pivots_) c.push_back(v[p]);
  return c;
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
}

// ---------------------------------------------------------------------------
// EchelonBuilder

EchelonBuilder::EchelonBuilder(const Field& f, std::size_t ambient) : field_(&f), ambient_(ambient) {}

EchelonBuilder::EchelonBuilder(const Subspace& start)
    : field_(&start.field()), ambient_(start.ambient_dim()), rows_(start.basis()), pivots_(start.pivots()) {}

Vec EchelonBuilder::reduce(std::span<const FieldElem> v) const {
  Vec r(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (r[pivots_[i]].is_zero()) continue;
    FieldElem c = r[pivots_[i]];
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!rows_[i][j].is_zero()) r[j] -= c * rows_[i][j];
  }
  return r;
}

std::optional<Vec> EchelonBuilder::insert(std::span<const FieldElem> v) {
  Vec r = reduce(v);
  std::size_t p = 0;
  while (p < ambient_ && r[p].is_zero()) ++p;
  if (p == ambient_) return std::nullopt;
  FieldElem inv = r[p].inverse();
  for (auto& x : r)
    if (!x.is_zero()) x *= inv;
  for (auto& row : rows_) {
    if (row[p].is_zero()) continue;
    FieldElem c = row[p];
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!r[j].is_zero()) row[j] -= c * r[j];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, r);
  return r;
}

Subspace EchelonBuilder::finish() const {
  Subspace s(*field_, ambient_);
  s.basis_ = rows_;
  s.pivots_ = pivots_;
  return s;
}

// ---------------------------------------------------------------------------

Subspace kernel(const Matrix& m) {
  auto rows = rows_of(m);
  auto piv = reduce_rows(rows, m.cols());
  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = zero_vec(f, m.cols());
    v[free] = f.one();
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -rows[i][free];
    basis.push_back(std::move(v));
  }
  return Subspace::span(f, m.cols(), basis);
}

Subspace row_space(const Matrix& m) { return Subspace::span(m.field(), m.cols(), rows_of(m)); }

Subspace column_space(const Matrix& m) { return row_space(m.transpose()); }

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw Error(ErrorCode::AmbientMismatch, "subspace sum");
  EchelonBuilder b(u);
  for (const auto& x : v.basis()) b.insert(x);
  return b.finish();
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim())
    throw Error(ErrorCode::AmbientMismatch,
                "ambient dimensions " + std::to_string(u.ambient_dim()) + " and " + std::to_string(v.ambient_dim()));
  const Field& f = u.field();
  std::size_t n = u.ambient_dim();
  if (u.is_zero() || v.is_zero()) return Subspace(f, n);
  // Zassenhaus: rows (u | u) and (v | 0); rows with zero left half carry U ∩ V.
  std::vector<Vec> rows;
  for (const auto& x : u.basis()) {
    Vec r = x;
    r.insert(r.end(), x.begin(), x.end());
    rows.push_back(std::move(r));
  }
  for (const auto& x : v.basis()) {
    Vec r = x;
    r.resize(2 * n, f.zero());
    rows.push_back(std::move(r));
  }
  auto piv = reduce_rows(rows, 2 * n);
  std::vector<Vec> inter;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (piv[i] < n) continue;
    inter.emplace_back(rows[i].begin() + static_cast<std::ptrdiff_t>(n), rows[i].end());
  }
  return Subspace::span(f, n, inter);
}

Subspace image(const Matrix& m, const Subspace& u) {
  std::vector<Vec> imgs;
  for (const auto& x : u.basis()) imgs.push_back(m.apply(x));
  return Subspace::span(m.field(), m.rows(), imgs);
}

Subspace operator_closure(const Field& f, std::size_t ambient, std::size_t count,
                          const std::function<Vec(std::size_t, const Vec&)>& op, const std::vector<Vec>& seed) {
  EchelonBuilder b(f, ambient);
  std::vector<Vec> queue;
  for (const auto& v : seed)
    if (b.insert(v)) queue.push_back(v);
  for (std::size_t q = 0; q < queue.size() && b.dim() < ambient; ++q)
    for (std::size_t k = 0; k < count && b.dim() < ambient; ++k) {
      Vec w = op(k, queue[q]);
      if (b.insert(w)) queue.push_back(std::move(w));
    }
  if (b.dim() == ambient) return Subspace::whole(f, ambient);
  return b.finish();
}

// ---------------------------------------------------------------------------
// CoordinateSolver

CoordinateSolver::CoordinateSolver(const Field& f, std::size_t ambient, std::vector<Vec> basis)
    : basis_(std::move(basis)) {
  std::size_t k = basis_.size();
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < k; ++i) {
    Vec r = basis_[i];
    for (std::size_t j = 0; j < k; ++j) r.push_back(i == j ? f.one() : f.zero());
    rows.push_back(std::move(r));
  }
  auto piv = reduce_rows(rows, ambient + k);
  if (rows.size() < k || (k > 0 && piv[k - 1] >= ambient))
    throw Error(ErrorCode::InvalidArgument, "coordinate basis is linearly dependent");
  std::vector<Vec> ech;
  transform_ = Matrix(f, k, k);
  for (std::size_t i = 0; i < k; ++i) {
    ech.emplace_back(rows[i].begin(), rows[i].begin() + static_cast<std::ptrdiff_t>(ambient));
    for (std::size_t j = 0; j < k; ++j) transform_(i, j) = rows[i][ambient + j];
  }
  echelon_ = Subspace::span(f, ambient, ech);
}

std::optional<Vec> CoordinateSolver::solve(std::span<const FieldElem> v) const {
  auto c = echelon_.coordinates(v);
  if (!c) return std::nullopt;
  std::size_t k = basis_.size();
  const Field& f = v.empty() ? Field::get(FieldSpec::rationals()) : v[0].field();
  Vec out = zero_vec(f, k);
  for (std::size_t i = 0; i < k; ++i) {
    if ((*c)[i].is_zero()) continue;
    for (std::size_t j = 0; j < k; ++j)
      if (!transform_(i, j).is_zero()) out[j] += (*c)[i] * transform_(i, j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// SparseSystem

namespace {
constexpr std::size_t kNoRow = static_cast<std::size_t>(-1);

const FieldElem* find_entry(const SparseSystem::Row& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const SparseSystem::Entry& e, std::size_t c) { return e.first < c; });
  if (it == row.end() || it->first != col) return nullptr;
  return &it->second;
}
}  // namespace

SparseSystem::SparseSystem(const Field& f, std::size_t unknowns)
    : field_(&f), n_(unknowns), pivot_row_(unknowns, kNoRow) {}

void SparseSystem::add_equation(Row row) {
  if (saturated()) return;
  std::map<std::size_t, FieldElem> acc;
  for (auto& [c, v] : row)
    if (!v.is_zero()) {
      auto [it, fresh] = acc.emplace(c, v);
      if (!fresh) it->second += v;
    }
  // rows contain no foreign pivot columns, so one pass suffices
  std::vector<std::pair<std::size_t, FieldElem>> pivots_hit;
  for (auto& [c, v] : acc)
    if (pivot_row_[c] != kNoRow && !v.is_zero()) pivots_hit.emplace_back(c, v);
  for (auto& [c, v] : pivots_hit) {
    for (const auto& [cc, rv] : rows_[pivot_row_[c]]) {
      auto [it, fresh] = acc.emplace(cc, -(v * rv));
      if (!fresh) it->second -= v * rv;
    }
  }
  Row r;
  for (auto& [c, v] : acc)
    if (!v.is_zero()) r.emplace_back(c, v);
  if (r.empty()) return;
  FieldElem inv = r.front().second.inverse();
  for (auto& e : r) e.second *= inv;
  std::size_t p = r.front().first;
  for (auto& other : rows_) {
    const FieldElem* hit = find_entry(other, p);
    if (!hit) continue;
    FieldElem c = *hit;
    std::map<std::size_t, FieldElem> m(other.begin(), other.end());
    for (const auto& [cc, v] : r) {
      auto [it, fresh] = m.emplace(cc, -(c * v));
      if (!fresh) it->second -= c * v;
    }
    other.clear();
    for (auto& [cc, v] : m)
      if (!v.is_zero()) other.emplace_back(cc, v);
  }
  pivot_row_[p] = rows_.size();
  rows_.push_back(std::move(r));
}

Subspace SparseSystem::solutions() const {
  const Field& f = *field_;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < n_; ++free) {
    if (pivot_row_[free] != kNoRow) continue;
    Vec v = zero_vec(f, n_);
    v[free] = f.one();
    for (const auto& row : rows_) {
      const FieldElem* x = find_entry(row, free);
      if (x) v[row.front().first] = -*x;
    }
    basis.push_back(std::move(v));
  }
  return Subspace::span(f, n_, basis);
}

std::optional<Vec> SparseSystem::affine_solution() const {
  const Field& f = *field_;
  std::size_t last = n_ - 1;
  if (pivot_row_[last] != kNoRow) return std::nullopt;
  Vec v = zero_vec(f, n_);
  v[last] = f.one();
  for (const auto& row : rows_) {
    const FieldElem* x = find_entry(row, last);
    if (x) v[row.front().first] = -*x;
  }
  return v;
}

// ---------------------------------------------------------------------------

std::optional<Rational> rational_reconstruct(const Integer& residue, const Integer& modulus, const Integer& bound) {
  Integer r0 = modulus, r1 = residue % modulus;
  if (r1 < 0) r1 += modulus;
  Integer s0 = 0, s1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), s1.get_mpz_t(), modulus.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rational q(r1, s1);
  q.canonicalize();
  return q;
}

}  // namespace gsla
