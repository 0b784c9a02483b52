#include "gsla/idempotents.hpp"

#include <algorithm>
#include <optional>

namespace gsla {

Vec CommAlgebra::multiply(std::span<const FieldElem> a, std::span<const FieldElem> b) const {
  Vec out = zero_vec(*field, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (b[j].is_zero()) continue;
      axpy(out, a[i] * b[j], mult[i][j]);
    }
  }
  return out;
}

void CommAlgebra::check() const {
  if (mult.size() != dim || unit.size() != dim) throw Error(ErrorCode::InvalidArgument, "structure table shape");
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      if (mult[i][j] != mult[j][i])
        throw Error(ErrorCode::NotCommutative,
                    "b" + std::to_string(i) + "*b" + std::to_string(j) + " differs from the reverse product");
  for (std::size_t i = 0; i < dim; ++i)
    if (multiply(unit, unit_vec(*field, dim, i)) != unit_vec(*field, dim, i))
      throw Error(ErrorCode::NotCommutative, "unit does not act as the identity");
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using ModVec = std::vector<u64>;
using ModMat = std::vector<ModVec>;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 addmod(u64 a, u64 b, u64 p) { return (a + b) % p; }
u64 submod(u64 a, u64 b, u64 p) { return (a + p - b) % p; }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

// --- linear algebra over F_p -------------------------------------------------

ModMat matmul(const ModMat& a, const ModMat& b, u64 p) {
  std::size_t n = a.size(), m = b[0].size(), k = b.size();
  ModMat c(n, ModVec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (!a[i][t]) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] = addmod(c[i][j], mulmod(a[i][t], b[t][j], p), p);
    }
  return c;
}

// Null space basis of m (d x d).
std::vector<ModVec> kernel_mod(ModMat m, u64 p) {
  std::size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t s = r;
    while (s < rows && m[s][c] == 0) ++s;
    if (s == rows) continue;
    std::swap(m[r], m[s]);
    u64 inv = invmod(m[r][c], p);
    for (auto& x : m[r]) x = mulmod(x, inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || !m[i][c]) continue;
      u64 f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = submod(m[i][j], mulmod(f, m[r][j], p), p);
    }
    piv.push_back(c);
    ++r;
  }
  std::vector<bool> is_piv(cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<ModVec> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    ModVec v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = submod(0, m[i][f], p);
    out.push_back(v);
  }
  return out;
}

// Solves sum_j y_j cols[j] = rhs; nullopt when singular.
std::optional<ModVec> solve_mod(const std::vector<ModVec>& cols, const ModVec& rhs, u64 p) {
  std::size_t n = rhs.size(), k = cols.size();
  ModMat m(n, ModVec(k + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = cols[j][i];
    m[i][k] = rhs[i];
  }
  std::size_t r = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t s = r;
    while (s < n && m[s][c] == 0) ++s;
    if (s == n) return std::nullopt;
    std::swap(m[r], m[s]);
    u64 inv = invmod(m[r][c], p);
    for (auto& x : m[r]) x = mulmod(x, inv, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || !m[i][c]) continue;
      u64 f = m[i][c];
      for (std::size_t j = 0; j <= k; ++j) m[i][j] = submod(m[i][j], mulmod(f, m[r][j], p), p);
    }
    piv.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (m[i][k]) return std::nullopt;
  ModVec y(k);
  for (std::size_t i = 0; i < k; ++i) y[i] = m[i][k];
  return y;
}

// Characteristic polynomial (lowest degree first) via Hessenberg reduction.
ModVec charpoly_mod(ModMat h, u64 p) {
  std::size_t n = h.size();
  for (std::size_t m = 1; m + 1 < n + 1 && m < n; ++m) {
    std::size_t i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (auto& row : h) std::swap(row[i], row[m]);
    }
    u64 inv = invmod(h[m][m - 1], p);
    for (std::size_t r = m + 1; r < n; ++r) {
      if (!h[r][m - 1]) continue;
      u64 u = mulmod(h[r][m - 1], inv, p);
      for (std::size_t c = 0; c < n; ++c) h[r][c] = submod(h[r][c], mulmod(u, h[m][c], p), p);
      for (std::size_t c = 0; c < n; ++c) h[c][m] = addmod(h[c][m], mulmod(u, h[c][r], p), p);
    }
  }
  std::vector<ModVec> polys(n + 1);
  polys[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    ModVec next(m + 1, 0);
    const ModVec& prev = polys[m - 1];
    for (std::size_t k = 0; k < prev.size(); ++k) {
      next[k + 1] = addmod(next[k + 1], prev[k], p);
      next[k] = submod(next[k], mulmod(h[m - 1][m - 1], prev[k], p), p);
    }
    u64 t = 1;
    for (std::size_t i = m - 1; i >= 1; --i) {
      t = mulmod(t, h[i][i - 1], p);
      u64 coef = mulmod(t, h[i - 1][m - 1], p);
      const ModVec& q = polys[i - 1];
      for (std::size_t k = 0; k < q.size(); ++k) next[k] = submod(next[k], mulmod(coef, q[k], p), p);
    }
    polys[m] = next;
  }
  return polys[n];
}

u64 poly_eval(const ModVec& f, u64 x, u64 p) {
  u64 r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = addmod(mulmod(r, x, p), f[i], p);
  return r;
}

// Structure constants reduced into F_p: t[i][j] = b_i * b_j.
struct ModAlgebra {
  u64 p;
  std::size_t d;
  std::vector<std::vector<ModVec>> t;
  ModVec unit;

  ModVec mul(const ModVec& a, const ModVec& b) const {
    ModVec out(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (!b[j]) continue;
        u64 s = mulmod(a[i], b[j], p);
        for (std::size_t k = 0; k < d; ++k)
          if (t[i][j][k]) out[k] = addmod(out[k], mulmod(s, t[i][j][k], p), p);
      }
    }
    return out;
  }
};

// Unit components along the generalized eigenspaces of multiplication by
// basis element b; nullopt when the characteristic polynomial does not split.
std::optional<std::vector<ModVec>> split_by(const ModAlgebra& a, std::size_t b) {
  u64 p = a.p;
  std::size_t d = a.d;
  ModMat l(d, ModVec(d, 0));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) l[k][j] = a.t[b][j][k];
  ModVec cp = charpoly_mod(l, p);
  std::vector<u64> roots;
  std::size_t found = 0;
  for (u64 lam = 0; lam < p && found < d; ++lam) {
    if (poly_eval(cp, lam, p) != 0) continue;
    roots.push_back(lam);
    ModVec q = cp;  // multiplicity by synthetic division
    while (q.size() > 1 && poly_eval(q, lam, p) == 0) {
      ModVec nq(q.size() - 1, 0);
      u64 carry = 0;
      for (std::size_t i = q.size(); i-- > 1;) {
        carry = addmod(q[i], mulmod(carry, lam, p), p);
        nq[i - 1] = carry;
      }
      q = nq;
      ++found;
    }
  }
  if (found < d) return std::nullopt;
  if (roots.size() == 1) return std::vector<ModVec>{a.unit};
  std::vector<ModVec> cols;
  std::vector<std::size_t> owner;
  for (std::size_t r = 0; r < roots.size(); ++r) {
    ModMat m = l;
    for (std::size_t i = 0; i < d; ++i) m[i][i] = submod(m[i][i], roots[r], p);
    ModMat pw = m;
    for (std::size_t e = 1; e < d; e *= 2) pw = matmul(pw, pw, p);
    for (auto& v : kernel_mod(pw, p)) {
      cols.push_back(v);
      owner.push_back(r);
    }
  }
  auto y = solve_mod(cols, a.unit, p);
  if (!y || cols.size() != d) return std::nullopt;
  std::vector<ModVec> parts(roots.size(), ModVec(d, 0));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t k = 0; k < d; ++k) parts[owner[j]][k] = addmod(parts[owner[j]][k], mulmod((*y)[j], cols[j][k], p), p);
  return parts;
}

// Primitive idempotents of a split algebra over F_p: common refinement of the
// eigen-splittings by every basis element.
std::optional<std::vector<ModVec>> primitive_idempotents_mod(const ModAlgebra& a) {
  std::vector<ModVec> cur{a.unit};
  for (std::size_t b = 0; b < a.d; ++b) {
    auto parts = split_by(a, b);
    if (!parts) return std::nullopt;
    if (parts->size() == 1) continue;
    std::vector<ModVec> next;
    for (const auto& e : cur)
      for (const auto& f : *parts) {
        ModVec g = a.mul(e, f);
        if (std::any_of(g.begin(), g.end(), [](u64 x) { return x != 0; })) next.push_back(g);
      }
    cur = std::move(next);
  }
  return cur;
}

// --- arithmetic modulo M = p^K ----------------------------------------------

Integer mod_norm(const Integer& x, const Integer& m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return r;
}

std::optional<Integer> inv_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  return r;
}

std::optional<Integer> rational_mod(const Rational& q, const Integer& m) {
  auto inv = inv_mod(q.get_den(), m);
  if (!inv) return std::nullopt;
  return mod_norm(q.get_num() * *inv, m);
}

// Embedding of an element of K into Z/M under z -> root.
std::optional<Integer> embed(const FieldElem& x, const Integer& root, const Integer& m) {
  Integer acc = 0, pw = 1;
  for (const auto& c : x.coords()) {
    if (c != 0) {
      auto r = rational_mod(c, m);
      if (!r) return std::nullopt;
      acc = mod_norm(acc + *r * pw, m);
    }
    pw = mod_norm(pw * root, m);
  }
  return acc;
}

struct LiftAlgebra {
  Integer m;
  std::size_t d;
  std::vector<std::vector<std::vector<Integer>>> t;

  std::vector<Integer> mul(const std::vector<Integer>& a, const std::vector<Integer>& b) const {
    std::vector<Integer> out(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b[j] == 0) continue;
        Integer s = a[i] * b[j];
        for (std::size_t k = 0; k < d; ++k)
          if (t[i][j][k] != 0) out[k] += s * t[i][j][k];
      }
    }
    for (auto& x : out) x = mod_norm(x, m);
    return out;
  }
};

bool is_prime_u64(u64 n) { return gsla::is_prime(n); }

// Hensel-lifted root of the cyclotomic polynomial starting from r0 mod p.
Integer lift_root(const std::vector<Integer>& phi, u64 r0, const Integer& m) {
  Integer r = r0;
  for (int it = 0; it < 200; ++it) {
    Integer f = 0, df = 0;
    for (std::size_t i = phi.size(); i-- > 0;) {
      df = mod_norm(df * r + f, m);
      f = mod_norm(f * r + phi[i], m);
    }
    if (f == 0) break;
    auto inv = inv_mod(df, m);
    if (!inv) break;
    r = mod_norm(r - f * *inv, m);
  }
  return r;
}

class Splitter {
 public:
  Splitter(const CommAlgebra& a, const IdempotentOptions& opts) : a_(a), f_(*a.field), opts_(opts) {}

  std::vector<Vec> run() {
    if (f_.is_prime()) return run_prime();
    u64 n = f_.spec().kind == FieldSpec::Kind::Cyclotomic ? f_.spec().n : 1;
    Integer bound = opts_.bound;
    u64 p = 10007;
    for (int attempt = 0; attempt < opts_.attempts; ++attempt) {
      p = next_prime(p, n);
      auto r = try_prime(p, bound);
      if (r) return *r;
      bound *= 2;
      ++p;
    }
    throw Error(ErrorCode::NonSplit, "no verified idempotent decomposition after " +
                                         std::to_string(opts_.attempts) + " primes");
  }

 private:
  static u64 next_prime(u64 from, u64 n) {
    u64 q = from;
    while (!(q % n == 1 % n && is_prime_u64(q))) ++q;
    return q;
  }

  std::vector<Vec> run_prime() {
    u64 p = f_.characteristic();
    ModAlgebra m{p, a_.dim, {}, {}};
    m.t.assign(a_.dim, std::vector<ModVec>(a_.dim, ModVec(a_.dim, 0)));
    for (std::size_t i = 0; i < a_.dim; ++i)
      for (std::size_t j = 0; j < a_.dim; ++j)
        for (std::size_t k = 0; k < a_.dim; ++k) m.t[i][j][k] = a_.mult[i][j][k].residue();
    for (const auto& x : a_.unit) m.unit.push_back(x.residue());
    auto ids = primitive_idempotents_mod(m);
    if (!ids) throw Error(ErrorCode::NonSplit, "characteristic polynomial does not split over " + f_.spec().name());
    std::vector<Vec> out;
    for (const auto& e : *ids) {
      Vec v;
      for (auto x : e) v.push_back(f_.from_int(static_cast<long long>(x)));
      out.push_back(v);
    }
    if (!verify(out)) throw Error(ErrorCode::NonSplit, "modular idempotents failed verification");
    return out;
  }

  std::optional<std::vector<Vec>> try_prime(u64 p, const Integer& bound) {
    std::size_t d = a_.dim;
    std::size_t phi = f_.degree();
    std::vector<Integer> cyc;
    std::vector<u64> roots0;
    if (f_.spec().kind == FieldSpec::Kind::Cyclotomic) {
      cyc = cyclotomic_polynomial(f_.spec().n);
      for (u64 r = 1; r < p && roots0.size() < phi; ++r) {
        Integer v = 0;
        for (std::size_t i = cyc.size(); i-- > 0;) v = mod_norm(v * r + cyc[i], Integer(p));
        if (v == 0) roots0.push_back(r);
      }
      if (roots0.size() != phi) return std::nullopt;
    } else {
      roots0.push_back(0);
    }
    // modulus M = p^(2^s) > 2 bound^2
    Integer target = 2 * bound * bound;
    Integer m = p;
    int steps = 0;
    while (m <= target) {
      m *= m;
      ++steps;
    }
    std::vector<Integer> roots;
    for (auto r0 : roots0) roots.push_back(cyc.empty() ? Integer(0) : lift_root(cyc, r0, m));

    // idempotents per embedding
    std::vector<std::vector<std::vector<Integer>>> lifted(roots.size());
    for (std::size_t e = 0; e < roots.size(); ++e) {
      LiftAlgebra big{m, d, {}};
      big.t.assign(d, std::vector<std::vector<Integer>>(d, std::vector<Integer>(d, 0)));
      ModAlgebra small{p, d, {}, {}};
      small.t.assign(d, std::vector<ModVec>(d, ModVec(d, 0)));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t k = 0; k < d; ++k) {
            auto v = embed(a_.mult[i][j][k], roots[e], m);
            if (!v) return std::nullopt;
            big.t[i][j][k] = *v;
            small.t[i][j][k] = mod_norm(*v, Integer(p)).get_ui();
          }
      for (const auto& x : a_.unit) {
        auto v = embed(x, roots[e], m);
        if (!v) return std::nullopt;
        small.unit.push_back(mod_norm(*v, Integer(p)).get_ui());
      }
      auto ids = primitive_idempotents_mod(small);
      if (!ids) return std::nullopt;
      for (const auto& id : *ids) {
        std::vector<Integer> x(id.begin(), id.end());
        for (int it = 0; it <= steps + 1; ++it) {
          auto x2 = big.mul(x, x);
          auto x3 = big.mul(x2, x);
          std::vector<Integer> nx(d);
          for (std::size_t k = 0; k < d; ++k) nx[k] = mod_norm(3 * x2[k] - 2 * x3[k], m);
          if (nx == x) break;
          x = nx;
        }
        lifted[e].push_back(x);
      }
      if (lifted[e].size() != lifted[0].size()) return std::nullopt;
    }
    auto exact = combine(lifted, roots, m, bound);
    if (!exact || !verify(*exact)) return std::nullopt;
    return exact;
  }

  // Matches one lifted idempotent per embedding and interpolates coordinates.
  std::optional<std::vector<Vec>> combine(const std::vector<std::vector<std::vector<Integer>>>& lifted,
                                          const std::vector<Integer>& roots, const Integer& m,
                                          const Integer& bound) {
    std::size_t phi = roots.size(), d = a_.dim, r = lifted[0].size();
    // inverse Vandermonde: coords = vinv * values
    std::vector<std::vector<Integer>> vinv(phi, std::vector<Integer>(phi, 0));
    {
      std::vector<std::vector<Integer>> aug(phi, std::vector<Integer>(2 * phi, 0));
      for (std::size_t j = 0; j < phi; ++j) {
        Integer pw = 1;
        for (std::size_t k = 0; k < phi; ++k) {
          aug[j][k] = pw;
          pw = mod_norm(pw * roots[j], m);
        }
        aug[j][phi + j] = 1;
      }
      for (std::size_t c = 0; c < phi; ++c) {
        std::size_t s = c;
        std::optional<Integer> inv;
        for (; s < phi; ++s)
          if ((inv = inv_mod(aug[s][c], m))) break;
        if (!inv) return std::nullopt;
        std::swap(aug[s], aug[c]);
        for (auto& x : aug[c]) x = mod_norm(x * *inv, m);
        for (std::size_t i = 0; i < phi; ++i) {
          if (i == c || aug[i][c] == 0) continue;
          Integer f = aug[i][c];
          for (std::size_t k = 0; k < 2 * phi; ++k) aug[i][k] = mod_norm(aug[i][k] - f * aug[c][k], m);
        }
      }
      for (std::size_t i = 0; i < phi; ++i)
        for (std::size_t k = 0; k < phi; ++k) vinv[i][k] = aug[i][phi + k];
    }
    std::vector<Vec> out;
    std::vector<bool> used_any(r, false);
    std::vector<std::size_t> choice(phi, 0);
    for (std::size_t i0 = 0; i0 < r; ++i0) {
      choice[0] = i0;
      bool done = false;
      // odometer over the other embeddings
      std::vector<std::size_t> idx(phi, 0);
      while (!done) {
        for (std::size_t e = 1; e < phi; ++e) choice[e] = idx[e];
        Vec v;
        bool ok = true;
        for (std::size_t k = 0; k < d && ok; ++k) {
          std::vector<Rational> coords;
          for (std::size_t c = 0; c < phi && ok; ++c) {
            Integer s = 0;
            for (std::size_t e = 0; e < phi; ++e) s += vinv[c][e] * lifted[e][choice[e]][k];
            auto q = rational_reconstruct(mod_norm(s, m), m, bound);
            if (!q) ok = false;
            else coords.push_back(*q);
          }
          if (ok) v.push_back(f_.from_coords(coords));
        }
        if (ok && a_.multiply(v, v) == v) {
          out.push_back(v);
          break;
        }
        std::size_t e = 1;
        while (e < phi && ++idx[e] == r) idx[e++] = 0;
        if (e >= phi) done = true;
      }
      if (done && out.size() <= i0) return std::nullopt;
    }
    return out;
  }

  bool verify(const std::vector<Vec>& ids) const {
    Vec sum = zero_vec(f_, a_.dim);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (is_zero_vec(ids[i]) || a_.multiply(ids[i], ids[i]) != ids[i]) return false;
      for (std::size_t j = i + 1; j < ids.size(); ++j)
        if (!is_zero_vec(a_.multiply(ids[i], ids[j]))) return false;
      axpy(sum, f_.one(), ids[i]);
    }
    return sum == a_.unit;
  }

  const CommAlgebra& a_;
  const Field& f_;
  IdempotentOptions opts_;
};

}  // namespace

std::vector<Vec> idempotents_commutative(const CommAlgebra& a, const IdempotentOptions& opts) {
  a.check();
  if (a.dim == 0) throw Error(ErrorCode::InvalidArgument, "zero algebra has no unit");
  auto ids = Splitter(a, opts).run();
  std::sort(ids.begin(), ids.end(), [](const Vec& x, const Vec& y) {
    // deterministic order: by first nonzero coordinate position, then text
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k] == y[k]) continue;
      return x[k].to_string() < y[k].to_string();
    }
    return false;
  });
  return ids;
}

}  // namespace gsla
