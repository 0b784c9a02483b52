#include "gsla/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace gsla {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NoSuchRoot: return "NoSuchRoot";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::NotCommutative: return "NotCommutative";
    case ErrorCode::NonSplit: return "NonSplit";
    case ErrorCode::EmptySubspace: return "EmptySubspace";
    case ErrorCode::SearchCapExceeded: return "SearchCapExceeded";
    case ErrorCode::GradingMismatch: return "GradingMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DecompositionFailure: return "DecompositionFailure";
    case ErrorCode::NotAnIdeal: return "NotAnIdeal";
    case ErrorCode::NotProper: return "NotProper";
    case ErrorCode::AlreadyGraded: return "AlreadyGraded";
    case ErrorCode::NotGradedSimple: return "NotGradedSimple";
    case ErrorCode::VerificationFailure: return "VerificationFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHomomorphism: return "NotHomomorphism";
    case ErrorCode::KernelMismatch: return "KernelMismatch";
    case ErrorCode::WitnessInvalid: return "WitnessInvalid";
    case ErrorCode::NotSemisimple: return "NotSemisimple";
    case ErrorCode::NoProjectionFound: return "NoProjectionFound";
    case ErrorCode::BadCharacteristic: return "BadCharacteristic";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Integer helpers

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  // extended Euclid on signed 128-bit values
  __int128 r0 = p, r1 = a % p, s0 = 0, s1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw Error(ErrorCode::DivisionByZero, "element not invertible modulo p");
  __int128 res = s0 % static_cast<__int128>(p);
  if (res < 0) res += p;
  return static_cast<std::uint64_t>(res);
}

std::uint64_t residue_of(const Rational& q, std::uint64_t p) {
  Integer num = q.get_num() % Integer(static_cast<unsigned long>(p));
  if (num < 0) num += static_cast<unsigned long>(p);
  Integer den = q.get_den() % Integer(static_cast<unsigned long>(p));
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "denominator divisible by the characteristic");
  return mulmod(num.get_ui(), invmod(den.get_ui(), p), p);
}

std::vector<Integer> poly_divexact(std::vector<Integer> num, const std::vector<Integer>& den) {
  // both lowest-degree first, den monic
  std::size_t dn = den.size() - 1;
  std::vector<Integer> quot(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    Integer c = num[k];
    quot[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  return quot;
}

using QPoly = std::vector<Rational>;

void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b, b nonzero; returns quotient through q
QPoly poly_divmod(QPoly a, const QPoly& b, QPoly* q) {
  trim(a);
  std::size_t db = b.size() - 1;
  QPoly quot;
  if (a.size() >= b.size()) quot.assign(a.size() - db, 0);
  while (a.size() >= b.size()) {
    Rational c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    quot[shift] = c;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  if (q) *q = std::move(quot);
  return a;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

QPoly poly_sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be positive");
  std::vector<Integer> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (std::uint64_t d = 1; d < n; ++d) {
    if (n % d == 0) poly = poly_divexact(std::move(poly), cyclotomic_polynomial(d));
  }
  return poly;
}

// ---------------------------------------------------------------------------
// FieldSpec

FieldSpec FieldSpec::cyclotomic(std::uint64_t order) {
  if (order == 0) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be >= 1");
  return {Kind::Cyclotomic, order};
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 62)) throw Error(ErrorCode::InvalidArgument, "prime too large");
  return {Kind::Prime, p};
}

FieldSpec FieldSpec::parse(std::string_view text) {
  std::string s(text);
  std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
  auto number_after = [&](std::size_t pos, std::string_view tail) -> std::uint64_t {
    std::string digits = s.substr(pos, s.size() - pos - tail.size());
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw Error(ErrorCode::ParseError, "bad field name '" + std::string(text) + "'");
    return std::stoull(digits);
  };
  if (s == "Q" || s == "rational" || s == "rationals") return rationals();
  if (s.rfind("Q(z", 0) == 0 && s.size() > 4 && s.back() == ')') return cyclotomic(number_after(3, ")"));
  if (s.rfind("Qz", 0) == 0) return cyclotomic(number_after(2, ""));
  if (s.rfind("cyclotomic:", 0) == 0) return cyclotomic(number_after(11, ""));
  if (s.rfind("prime:", 0) == 0) return prime(number_after(6, ""));
  if (s.rfind("F", 0) == 0) return prime(number_after(1, ""));
  throw Error(ErrorCode::ParseError, "unknown field '" + std::string(text) + "'");
}

std::string FieldSpec::name() const {
  switch (kind) {
    case Kind::Rational: return "Q";
    case Kind::Cyclotomic: return "Q(z" + std::to_string(n) + ")";
    case Kind::Prime: return "F" + std::to_string(n);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Field

Field::Field(const FieldSpec& spec) : spec_(spec) {
  if (spec.kind == FieldSpec::Kind::Cyclotomic) {
    auto phi = cyclotomic_polynomial(spec.n);
    modulus_.assign(phi.begin(), phi.end());
    degree_ = modulus_.size() - 1;
  }
}

const Field& Field::get(const FieldSpec& spec) {
  static std::mutex mu;
  static std::map<std::pair<int, std::uint64_t>, std::unique_ptr<Field>> registry;
  std::lock_guard lock(mu);
  auto key = std::make_pair(static_cast<int>(spec.kind), spec.n);
  auto it = registry.find(key);
  if (it == registry.end()) it = registry.emplace(key, std::unique_ptr<Field>(new Field(spec))).first;
  return *it->second;
}

FieldElem Field::zero() const {
  FieldElem e;
  e.field_ = this;
  if (!is_prime()) e.coords_.assign(degree_, 0);
  return e;
}

FieldElem Field::one() const { return from_int(1); }

FieldElem Field::from_int(long long v) const {
  FieldElem e = zero();
  if (is_prime()) {
    long long p = static_cast<long long>(spec_.n);
    long long r = v % p;
    if (r < 0) r += p;
    e.residue_ = static_cast<std::uint64_t>(r);
  } else {
    e.coords_[0] = Rational(static_cast<long>(v));
  }
  return e;
}

FieldElem Field::from_rational(const Rational& q) const {
  FieldElem e = zero();
  if (is_prime()) {
    e.residue_ = residue_of(q, spec_.n);
  } else {
    e.coords_[0] = q;
  }
  return e;
}

FieldElem Field::from_coords(std::vector<Rational> coords) const {
  if (is_prime()) throw Error(ErrorCode::InvalidArgument, "prime fields have no rational coordinates");
  FieldElem e = zero();
  e.reduce_poly(coords);
  e.coords_ = std::move(coords);
  return e;
}

FieldElem Field::generator() const {
  if (spec_.kind != FieldSpec::Kind::Cyclotomic) return one();
  std::vector<Rational> z(2, 0);
  z[1] = 1;
  return from_coords(std::move(z));
}

bool Field::has_primitive_root_of_unity(std::uint64_t m) const noexcept {
  if (m == 0) return false;
  switch (spec_.kind) {
    case FieldSpec::Kind::Rational: return m <= 2;
    case FieldSpec::Kind::Cyclotomic: {
      std::uint64_t full = spec_.n % 2 == 1 ? 2 * spec_.n : spec_.n;
      return full % m == 0;
    }
    case FieldSpec::Kind::Prime: return (spec_.n - 1) % m == 0;
  }
  return false;
}

FieldElem Field::primitive_root_of_unity(std::uint64_t m) const {
  if (!has_primitive_root_of_unity(m))
    throw Error(ErrorCode::NoSuchRoot,
                spec_.name() + " has no primitive root of unity of order " + std::to_string(m));
  switch (spec_.kind) {
    case FieldSpec::Kind::Rational: return m == 1 ? one() : from_int(-1);
    case FieldSpec::Kind::Cyclotomic: {
      if (spec_.n % m == 0) return generator().pow(static_cast<long long>(spec_.n / m));
      // n odd: -z^((n+1)/2) is a primitive 2n-th root
      FieldElem root2n = -generator().pow(static_cast<long long>((spec_.n + 1) / 2));
      return root2n.pow(static_cast<long long>(2 * spec_.n / m));
    }
    case FieldSpec::Kind::Prime: {
      std::uint64_t p = spec_.n;
      // smallest residue of exact order m
      for (std::uint64_t a = 1; a < p; ++a) {
        if (powmod(a, m, p) != 1) continue;
        bool exact = true;
        for (std::uint64_t q = 2; q <= m && exact; ++q)
          if (m % q == 0 && gsla::is_prime(q) && powmod(a, m / q, p) == 1) exact = false;
        if (exact) return from_int(static_cast<long long>(a));
      }
      break;
    }
  }
  throw Error(ErrorCode::NoSuchRoot, "root search failed");
}

namespace {

Rational parse_rational(const std::string& s, std::string_view whole) {
  try {
    Rational q(s, 10);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    q.canonicalize();
    return q;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad coefficient '" + s + "' in literal '" + std::string(whole) + "'");
  }
}

}  // namespace

FieldElem Field::parse(std::string_view literal) const {
  std::string s(literal);
  std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty scalar literal");
  FieldElem result = zero();
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw Error(ErrorCode::ParseError, "malformed literal '" + s + "'");
    pos = end;

    std::string coef = term;
    long long power = 0;
    auto zpos = term.find('z');
    if (zpos != std::string::npos) {
      if (is_prime()) throw Error(ErrorCode::ParseError, "prime-field literals are integers: '" + s + "'");
      coef = term.substr(0, zpos);
      if (!coef.empty() && coef.back() == '*') coef.pop_back();
      std::string tail = term.substr(zpos + 1);
      power = 1;
      if (!tail.empty()) {
        if (tail[0] != '^' || tail.size() < 2 ||
            !std::all_of(tail.begin() + 1, tail.end(), ::isdigit))
          throw Error(ErrorCode::ParseError, "bad exponent in literal '" + s + "'");
        power = std::stoll(tail.substr(1));
      }
    }
    Rational c = coef.empty() ? Rational(1) : parse_rational(coef, literal);
    if (sign < 0) c = -c;
    FieldElem t = from_rational(c);
    if (power != 0) t *= generator().pow(power);
    result += t;
  }
  return result;
}

// ---------------------------------------------------------------------------
// FieldElem

void FieldElem::check_same(const FieldElem& o) const {
  if (field_ != o.field_) {
    if (!field_ || !o.field_) throw Error(ErrorCode::FieldMismatch, "uninitialized field element");
    throw Error(ErrorCode::FieldMismatch, spec().name() + " vs " + o.spec().name());
  }
}

void FieldElem::reduce_poly(std::vector<Rational>& poly) const {
  const Field& f = *field_;
  std::size_t d = f.degree();
  if (f.spec().kind != FieldSpec::Kind::Cyclotomic) {
    poly.resize(d, 0);
    return;
  }
  const auto& mod = f.modulus();
  for (std::size_t k = poly.size(); k-- > d;) {
    if (poly[k] == 0) continue;
    Rational c = poly[k];
    for (std::size_t i = 0; i <= d; ++i) poly[k - d + i] -= c * mod[i];
  }
  poly.resize(d, 0);
}

bool FieldElem::is_zero() const {
  if (field_->is_prime()) return residue_ == 0;
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
}

bool FieldElem::is_one() const {
  if (field_->is_prime()) return residue_ == 1 % field_->spec().n;
  if (coords_[0] != 1) return false;
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& q) { return q == 0; });
}

bool FieldElem::is_rational() const {
  if (field_->is_prime()) return true;
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& q) { return q == 0; });
}

Rational FieldElem::to_rational() const {
  if (field_->is_prime()) return Rational(static_cast<unsigned long>(residue_));
  if (!is_rational()) throw Error(ErrorCode::InvalidArgument, "element is not rational: " + to_string());
  return coords_[0];
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  check_same(o);
  if (field_->is_prime()) {
    std::uint64_t p = field_->spec().n;
    residue_ = (residue_ + o.residue_) % p;
  } else {
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (o.coords_[i] != 0) coords_[i] += o.coords_[i];
  }
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  check_same(o);
  if (field_->is_prime()) {
    std::uint64_t p = field_->spec().n;
    residue_ = (residue_ + p - o.residue_) % p;
  } else {
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (o.coords_[i] != 0) coords_[i] -= o.coords_[i];
  }
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  check_same(o);
  if (field_->is_prime()) {
    residue_ = mulmod(residue_, o.residue_, field_->spec().n);
    return *this;
  }
  std::size_t d = coords_.size();
  if (d == 1) {
    coords_[0] *= o.coords_[0];
    return *this;
  }
  std::vector<Rational> prod(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (coords_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (o.coords_[j] == 0) continue;
      prod[i + j] += coords_[i] * o.coords_[j];
    }
  }
  reduce_poly(prod);
  coords_ = std::move(prod);
  return *this;
}

FieldElem FieldElem::operator-() const {
  FieldElem r = field_->zero();
  r -= *this;
  return r;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  FieldElem r = field_->zero();
  if (field_->is_prime()) {
    r.residue_ = invmod(residue_, field_->spec().n);
    return r;
  }
  if (coords_.size() == 1) {
    r.coords_[0] = 1 / coords_[0];
    return r;
  }
  // extended Euclid in Q[t] against the cyclotomic modulus
  QPoly r0 = field_->modulus(), r1 = coords_;
  trim(r1);
  QPoly s0, s1{Rational(1)};
  while (!(r1.size() == 1)) {
    QPoly q;
    QPoly rem = poly_divmod(r0, r1, &q);
    QPoly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw Error(ErrorCode::DivisionByZero, "non-invertible cyclotomic element");
  }
  Rational c = 1 / r1[0];
  for (auto& x : s1) x *= c;
  reduce_poly(s1);
  r.coords_ = std::move(s1);
  return r;
}

FieldElem FieldElem::pow(long long e) const {
  FieldElem base = e < 0 ? inverse() : *this;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  FieldElem r = field_->one();
  while (k) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return r;
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  if (a.field_ != b.field_) return false;
  if (a.field_->is_prime()) return a.residue_ == b.residue_;
  return a.coords_ == b.coords_;
}

std::string FieldElem::to_string() const {
  if (field_->is_prime()) return std::to_string(residue_);
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    const Rational& c = coords_[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "z";
      if (k > 1) os << "^" << k;
    }
  }
  if (first) return "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElem& a) { return os << a.to_string(); }

}  // namespace gsla
