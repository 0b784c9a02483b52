#pragma once

// Dense exact linear algebra over a gsla::Field.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gsla/field.hpp"

namespace gsla {

using Vec = std::vector<FieldElem>;

Vec zero_vec(const Field& f, std::size_t n);
Vec unit_vec(const Field& f, std::size_t n, std::size_t i);
bool is_zero_vec(std::span<const FieldElem> v);
void axpy(Vec& y, const FieldElem& a, std::span<const FieldElem> x);  // y += a*x
Vec scaled(std::span<const FieldElem> x, const FieldElem& a);

class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& f, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& f, std::size_t n);
  static Matrix from_rows(const Field& f, std::size_t cols, const std::vector<Vec>& rows);
  static Matrix from_columns(const Field& f, std::size_t rows, const std::vector<Vec>& cols);

  const Field& field() const { return *field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  FieldElem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const FieldElem& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<FieldElem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const FieldElem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vec row_vec(std::size_t r) const;
  Vec col_vec(std::size_t c) const;

  Matrix transpose() const;
  Vec apply(std::span<const FieldElem> v) const;  // M v
  bool is_zero() const;
  bool is_identity() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);
  Matrix scaled(const FieldElem& s) const;

 private:
  const Field* field_ = nullptr;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<FieldElem> data_;
};

struct RrefResult {
  Matrix matrix;  // reduced rows only (rank x cols)
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Canonical reduced row echelon form: leading entries 1, pivot columns
/// otherwise zero, pivots strictly increasing. Zero rows are dropped.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// Finite-dimensional subspace of K^n held by its canonical RREF basis, so
/// equality of subspaces is equality of bases.
class Subspace {
 public:
  Subspace() = default;
  Subspace(const Field& f, std::size_t ambient);  // zero subspace

  static Subspace span(const Field& f, std::size_t ambient, const std::vector<Vec>& vectors);
  static Subspace whole(const Field& f, std::size_t ambient);
  /// Span of the coordinate vectors e_i, i in indices.
  static Subspace coordinate(const Field& f, std::size_t ambient, std::span<const std::size_t> indices);

  const Field& field() const { return *field_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  bool is_zero() const noexcept { return basis_.empty(); }
  bool is_whole() const noexcept { return basis_.size() == ambient_; }

  const std::vector<Vec>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  Matrix basis_matrix() const;

  bool contains(std::span<const FieldElem> v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in the RREF basis, or nullopt if v is not in the span.
  std::optional<Vec> coordinates(std::span<const FieldElem> v) const;
  /// v reduced modulo this subspace: zero at every pivot column.
  Vec reduce(std::span<const FieldElem> v) const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  friend class EchelonBuilder;
  const Field* field_ = nullptr;
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

/// Incrementally maintained reduced echelon basis.
class EchelonBuilder {
 public:
  EchelonBuilder(const Field& f, std::size_t ambient);
  explicit EchelonBuilder(const Subspace& start);

  /// Adds v; returns the reduced new basis vector when v was independent.
  std::optional<Vec> insert(std::span<const FieldElem> v);
  std::size_t dim() const noexcept { return rows_.size(); }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  Vec reduce(std::span<const FieldElem> v) const;
  Subspace finish() const;

 private:
  const Field* field_;
  std::size_t ambient_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Right null space {x : M x = 0}.
Subspace kernel(const Matrix& m);
Subspace row_space(const Matrix& m);
Subspace column_space(const Matrix& m);

Subspace subspace_sum(const Subspace& u, const Subspace& v);
/// Zassenhaus intersection; throws AmbientMismatch.
Subspace subspace_intersect(const Subspace& u, const Subspace& v);
/// Image of a subspace under a linear map.
Subspace image(const Matrix& m, const Subspace& u);

/// Least subspace containing seed and stable under ops[0..count): the
/// callback returns op k applied to a vector. Stops early once whole.
Subspace operator_closure(const Field& f, std::size_t ambient, std::size_t count,
                          const std::function<Vec(std::size_t, const Vec&)>& op, const std::vector<Vec>& seed);

/// Solves coordinates against an arbitrary (not necessarily echelon) basis.
class CoordinateSolver {
 public:
  CoordinateSolver() = default;
  CoordinateSolver(const Field& f, std::size_t ambient, std::vector<Vec> basis);
  std::size_t size() const noexcept { return basis_.size(); }
  const std::vector<Vec>& basis() const noexcept { return basis_; }
  std::optional<Vec> solve(std::span<const FieldElem> v) const;

 private:
  std::vector<Vec> basis_;
  Subspace echelon_;
  Matrix transform_;  // echelon row i = sum_j transform(i,j) basis_j
};

/// Sparse homogeneous linear system builder: rows are (column, value) lists.
/// Keeps its rows fully reduced so insertion is a single pass.
class SparseSystem {
 public:
  using Entry = std::pair<std::size_t, FieldElem>;
  using Row = std::vector<Entry>;  // sorted by column, no zeros

  SparseSystem(const Field& f, std::size_t unknowns);
  void add_equation(Row row);
  std::size_t unknowns() const noexcept { return n_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  bool saturated() const noexcept { return rows_.size() == n_; }
  /// Basis of the solution space in canonical RREF.
  Subspace solutions() const;
  /// Treats the last unknown as the constant term: returns a solution with
  /// last coordinate 1, or nullopt when the affine system is inconsistent.
  std::optional<Vec> affine_solution() const;

 private:
  const Field* field_;
  std::size_t n_;
  std::vector<Row> rows_;
  std::vector<std::size_t> pivot_row_;  // column -> row index, or npos
};

/// Unique a/b with |a| <= bound, 0 < b <= bound, gcd(b, m) = 1 and
/// a = b * residue (mod m), found by half-extended Euclid.
std::optional<Rational> rational_reconstruct(const Integer& residue, const Integer& modulus, const Integer& bound);

}  // namespace gsla
