#pragma once

// Exact scalar fields: the rationals, cyclotomic fields Q(z_n) and prime
// fields F_p. Elements are small value types that point at an interned
// field context, so copying an element never copies field data.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gsla/error.hpp"

namespace gsla {

using Rational = mpq_class;
using Integer = mpz_class;

struct FieldSpec {
  enum class Kind { Rational, Cyclotomic, Prime };

  Kind kind = Kind::Rational;
  std::uint64_t n = 1;  // cyclotomic order, or the prime

  static FieldSpec rationals() { return {Kind::Rational, 1}; }
  static FieldSpec cyclotomic(std::uint64_t order);
  static FieldSpec prime(std::uint64_t p);

  /// Parses "Q", "Q(z4)" / "Qz4" / "cyclotomic:4", "F7" / "prime:7".
  static FieldSpec parse(std::string_view text);

  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<Integer> cyclotomic_polynomial(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);
bool is_prime(std::uint64_t n);

class FieldElem;

/// Interned per-field data. Obtain through Field::get; the reference stays
/// valid for the lifetime of the process.
class Field {
 public:
  static const Field& get(const FieldSpec& spec);

  const FieldSpec& spec() const noexcept { return spec_; }
  bool is_prime() const noexcept { return spec_.kind == FieldSpec::Kind::Prime; }
  std::uint64_t characteristic() const noexcept { return is_prime() ? spec_.n : 0; }
  /// Number of rational coordinates per element (phi(n) for cyclotomics).
  std::size_t degree() const noexcept { return degree_; }
  /// Monic reduction polynomial, lowest degree first (cyclotomic only).
  const std::vector<Rational>& modulus() const noexcept { return modulus_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(long long v) const;
  FieldElem from_rational(const Rational& q) const;
  /// Coordinates in the basis 1, z, ..., z^(degree-1).
  FieldElem from_coords(std::vector<Rational> coords) const;
  /// The distinguished generator z (a primitive n-th root for Q(z_n)).
  FieldElem generator() const;

  /// Element of multiplicative order exactly m; throws NoSuchRoot.
  FieldElem primitive_root_of_unity(std::uint64_t m) const;
  bool has_primitive_root_of_unity(std::uint64_t m) const noexcept;

  /// Scalar literal: polynomial in `z` with rational coefficients, or a
  /// decimal integer for prime fields.
  FieldElem parse(std::string_view literal) const;

 private:
  explicit Field(const FieldSpec& spec);

  FieldSpec spec_;
  std::size_t degree_ = 1;
  std::vector<Rational> modulus_;
};

class FieldElem {
 public:
  FieldElem() = default;

  const Field& field() const { return *field_; }
  const FieldSpec& spec() const { return field_->spec(); }
  bool valid() const noexcept { return field_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;

  /// Rational coordinates (rationals / cyclotomic).
  const std::vector<Rational>& coords() const { return coords_; }
  /// Canonical residue in [0, p) (prime fields).
  std::uint64_t residue() const { return residue_; }
  /// True when the element lies in the prime subfield Q (or is any F_p element).
  bool is_rational() const;
  Rational to_rational() const;

  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o) { return *this *= o.inverse(); }

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }
  FieldElem operator-() const;

  /// Throws DivisionByZero for zero.
  FieldElem inverse() const;
  FieldElem pow(long long e) const;

  std::string to_string() const;

  friend bool operator==(const FieldElem& a, const FieldElem& b);

 private:
  friend class Field;
  void check_same(const FieldElem& o) const;
  void reduce_poly(std::vector<Rational>& poly) const;

  const Field* field_ = nullptr;
  std::vector<Rational> coords_;
  std::uint64_t residue_ = 0;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& a);

inline FieldElem field_inv(const FieldElem& a) { return a.inverse(); }

inline FieldElem primitive_root_of_unity(const FieldSpec& spec, std::uint64_t m) {
  return Field::get(spec).primitive_root_of_unity(m);
}

}  // namespace gsla
