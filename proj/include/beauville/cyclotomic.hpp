#pragma once
// Arithmetic in (Z/p^e)[X] / Phi_{p^k}(X), the mod-p^e reduction of the ring
// of integers of the p^k-th cyclotomic field. X - 1 is a uniformizer and
// (p) = (X-1)^d with d = p^{k-1}(p-1), so the (X-1)-adic valuation of a
// nonzero element is read off exactly from its (X-1)-basis coefficients.
// Ideal subgroups are carried as Howell bases over Z/p^e, which give
// membership tests and canonical coset representatives.

#include <vector>

#include "common.hpp"

namespace beauville {

using CycPoly = std::vector<u32>;  // coefficients mod p^e, degree < d

struct CycloRing {
  int p = 0, k = 1, e = 1;
  int d = 0;       // p^{k-1}(p-1)
  u64 mod = 0;     // p^e
  CycPoly phi_tail;  // Phi_{p^k} = X^d + phi_tail (degree < d)

  CycloRing(int p_, int k_, int e_) : p(p_), k(k_), e(e_) {
    if (!is_prime(u64(p)) || p < 3) fail<InputError>("cyclotomic: p must be an odd prime");
    if (k < 1 || e < 1) fail<InputError>("cyclotomic: k, e must be >= 1");
    d = int(ipow(u64(p), unsigned(k - 1))) * (p - 1);
    mod = ipow(u64(p), unsigned(e));
    // Phi_{p^k}(X) = sum_{i=0}^{p-1} X^{i p^{k-1}}
    phi_tail.assign(d, 0);
    u64 step = ipow(u64(p), unsigned(k - 1));
    for (int i = 0; i < p - 1; ++i) phi_tail[size_t(i) * step] = 1;
    // X^d = -phi_tail
    for (auto& c : phi_tail) c = u32((mod - c) % mod);
  }

  CycPoly zero() const { return CycPoly(size_t(d), 0); }
  CycPoly one() const {
    CycPoly r = zero();
    r[0] = 1;
    return r;
  }
  CycPoly zeta() const {
    CycPoly r = zero();
    if (d > 1)
      r[1] = 1;
    else
      r = reduce_degree({0, 1});
    return r;
  }

  CycPoly add(const CycPoly& a, const CycPoly& b) const {
    CycPoly r = a;
    for (int i = 0; i < d; ++i) r[i] = u32((u64(r[i]) + b[i]) % mod);
    return r;
  }
  CycPoly sub(const CycPoly& a, const CycPoly& b) const {
    CycPoly r = a;
    for (int i = 0; i < d; ++i) r[i] = u32((u64(r[i]) + mod - b[i]) % mod);
    return r;
  }
  CycPoly neg(const CycPoly& a) const { return sub(zero(), a); }

  // Reduces an arbitrary-degree polynomial using X^d = -phi_tail.
  CycPoly reduce_degree(std::vector<u32> v) const {
    while (v.size() > size_t(d)) {
      u32 top = v.back();
      v.pop_back();
      if (top)
        for (int i = 0; i < d; ++i)
          v[v.size() - size_t(d) + size_t(i)] =
              u32((v[v.size() - size_t(d) + size_t(i)] +
                   u64(top) * phi_tail[i]) % mod);
    }
    v.resize(size_t(d), 0);
    return v;
  }

  CycPoly mul(const CycPoly& a, const CycPoly& b) const {
    std::vector<u32> prod(size_t(2 * d - 1), 0);
    for (int i = 0; i < d; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < d; ++j)
        if (b[j]) prod[i + j] = u32((prod[i + j] + u64(a[i]) * b[j]) % mod);
    }
    return reduce_degree(std::move(prod));
  }

  CycPoly mul_zeta(const CycPoly& a) const {
    std::vector<u32> v(size_t(d) + 1, 0);
    for (int i = 0; i < d; ++i) v[size_t(i) + 1] = a[i];
    return reduce_degree(std::move(v));
  }
  CycPoly mul_zeta_pow(CycPoly a, u64 j) const {
    for (u64 i = 0; i < j; ++i) a = mul_zeta(a);
    return a;
  }

  CycPoly from_int(i64 c) const {
    CycPoly r = zero();
    r[0] = u32(((c % i64(mod)) + i64(mod)) % i64(mod));
    return r;
  }
  // (X-1)^s as a ring element.
  CycPoly uniformizer_power(int s) const {
    CycPoly x1 = zero();
    x1[0] = u32(mod - 1);
    if (d > 1)
      x1[1] = 1;
    else
      x1 = add(x1, zeta());
    CycPoly r = one();
    for (int i = 0; i < s; ++i) r = mul(r, x1);
    return r;
  }

  int coeff_val(u32 c) const {
    if (c == 0) return e;
    int v = 0;
    while (c % u32(p) == 0) c /= u32(p), ++v;
    return v;
  }

  static constexpr int VAL_INFINITY = 0x7fffffff;

  // (X-1)-adic valuation: rewrite in the (X-1) basis (synthetic division),
  // then min over j of d*v_p(c_j) + j. The candidate values are distinct
  // modulo d, so no cancellation can hide the minimum.
  int valuation(const CycPoly& a) const {
    CycPoly c = a;
    std::vector<u32> basis_coeff(size_t(d), 0);
    int len = d;
    for (int j = 0; j < d; ++j) {
      // synthetic division by (X - 1): running sums from the top, remainder
      // lands in c[0], quotient in c[1..len-1]
      for (int i = len - 2; i >= 0; --i) c[i] = u32((u64(c[i]) + c[i + 1]) % mod);
      basis_coeff[j] = c[0];
      for (int i = 0; i + 1 < len; ++i) c[i] = c[i + 1];
      if (len > 0) c[len - 1] = 0;
      --len;
    }
    int best = VAL_INFINITY;
    for (int j = 0; j < d; ++j) {
      if (basis_coeff[j] == 0) continue;
      int v = d * coeff_val(basis_coeff[j]) + j;
      best = std::min(best, v);
    }
    return best;
  }
};

// ---- Howell basis ----------------------------------------------------------
// Echelonized generating rows for a subgroup of (Z/p^e)^d, with the extra
// Howell property that every span element's leading column entry is divisible
// by that column's pivot. Canonical coset representatives have the entry at
// column j reduced into [0, p^{w_j}), where p^{w_j} is the pivot (w_j = e for
// pivot-free columns); they are exactly the mixed-radix boxes used for dense
// element codes.

struct HowellBasis {
  int d = 0, e = 0;
  u64 mod = 0;
  int p = 0;
  std::vector<CycPoly> rows;    // echelon rows, rows[r] has pivot at pivcol[r]
  std::vector<int> pivcol;
  std::vector<int> colw;        // w_j per column (digit capacity exponent)

  u64 quotient_order() const {
    u64 o = 1;
    for (int j = 0; j < d; ++j) o *= ipow(u64(p), unsigned(colw[j]));
    return o;
  }
  u64 subgroup_order() const {
    u64 o = 1;
    for (int j = 0; j < d; ++j) o *= ipow(u64(p), unsigned(e - colw[j]));
    return o;
  }

  // Canonical representative of v + span.
  CycPoly reduce(CycPoly v) const {
    for (size_t r = 0; r < rows.size(); ++r) {
      int j = pivcol[r];
      u64 piv = ipow(u64(p), unsigned(colw[j]));
      u64 q = v[j] / piv;
      if (q)
        for (int t = j; t < d; ++t)
          v[t] = u32((v[t] + (mod - rows[r][t] % mod) * q) % mod);
    }
    return v;
  }
  bool contains(const CycPoly& v) const {
    CycPoly r = reduce(v);
    for (u32 c : r)
      if (c) return false;
    return true;
  }
};

// Builds the Howell basis of the span of the given generators.
inline HowellBasis howell_basis(int d, int e, int p,
                                std::vector<CycPoly> gens) {
  HowellBasis H;
  H.d = d;
  H.e = e;
  H.p = p;
  H.mod = ipow(u64(p), unsigned(e));
  u64 mod = H.mod;
  auto val = [&](u32 c) {
    if (!c) return e;
    int v = 0;
    while (c % u32(p) == 0) c /= u32(p), ++v;
    return v;
  };
  std::vector<CycPoly> pool = std::move(gens);
  for (int col = 0; col < d; ++col) {
    // pick the pool row with minimal p-valuation at this column
    int best = -1, bestv = e;
    for (size_t r = 0; r < pool.size(); ++r) {
      int v = val(pool[r][col]);
      if (v < bestv) {
        bestv = v;
        best = int(r);
      }
    }
    H.colw.push_back(bestv);
    if (best < 0 || bestv >= e) continue;
    CycPoly row = pool[best];
    pool.erase(pool.begin() + best);
    // normalize: leading entry exactly p^bestv
    u64 unit = row[col] / ipow(u64(p), unsigned(bestv));
    u64 uinv = mod_inv(unit, mod);
    for (auto& c : row) c = u32(u64(c) * uinv % mod);
    // eliminate this column from the rest of the pool
    u64 piv = ipow(u64(p), unsigned(bestv));
    for (auto& other : pool) {
      if (!other[col]) continue;
      u64 q = other[col] / piv;
      for (int t = 0; t < d; ++t)
        other[t] = u32((other[t] + (mod - row[t] % mod) * q) % mod);
    }
    // Howell completion: the p^{e-v} multiple leaks into later columns
    if (bestv > 0) {
      CycPoly shadow = row;
      u64 s = ipow(u64(p), unsigned(e - bestv));
      for (auto& c : shadow) c = u32(u64(c) * s % mod);
      bool nonzero = false;
      for (u32 c : shadow) nonzero = nonzero || c;
      if (nonzero) pool.push_back(std::move(shadow));
    }
    H.rows.push_back(std::move(row));
    H.pivcol.push_back(col);
  }
  // reduce entries above pivots so that reduce() is idempotent
  for (size_t r = H.rows.size(); r-- > 0;) {
    for (size_t r2 = r + 1; r2 < H.rows.size(); ++r2) {
      int j = H.pivcol[r2];
      u64 piv = ipow(u64(H.p), unsigned(H.colw[j]));
      u64 q = H.rows[r][j] / piv;
      if (q)
        for (int t = 0; t < d; ++t)
          H.rows[r][t] =
              u32((H.rows[r][t] + (mod - H.rows[r2][t] % mod) * q) % mod);
    }
  }
  return H;
}

// Howell basis of the ideal (X-1)^s inside R/p^e, spanned additively by
// (X-1)^s X^j for 0 <= j < d.
inline HowellBasis ideal_subgroup(const CycloRing& R, int s) {
  if (s < 0 || s > R.e * R.d) fail<InputError>("ideal_subgroup: s out of range");
  std::vector<CycPoly> gens;
  CycPoly g = R.uniformizer_power(s);
  for (int j = 0; j < R.d; ++j) {
    gens.push_back(g);
    g = R.mul_zeta(g);
  }
  return howell_basis(R.d, R.e, R.p, std::move(gens));
}

}  // namespace beauville
