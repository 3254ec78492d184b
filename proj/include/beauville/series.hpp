#pragma once
// Truncated formal power series t + a_2 t^2 + ... + a_K t^K over F_p, composed
// modulo t^{K+1}. These are the elements of the finite quotients of the
// Nottingham group; the product is substitution f(g(t)).

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"

namespace beauville {

namespace detail {
// c = a*b truncated at degree cap; arrays indexed by degree 0..cap.
inline void poly_mul_trunc(const std::vector<u32>& a, const std::vector<u32>& b,
                           std::vector<u32>& c, int cap, int p) {
  c.assign(cap + 1, 0);
  for (int i = 0; i <= cap; ++i) {
    if (!a[i]) continue;
    u32 ai = a[i];
    int jmax = cap - i;
    for (int j = 0; j <= jmax; ++j)
      if (b[j]) c[i + j] = (c[i + j] + ai * b[j]) % p;
  }
}
}  // namespace detail

class TruncSeries {
 public:
  TruncSeries() = default;
  // The identity series t, truncated at degree cap >= 1.
  TruncSeries(int p, int cap) : p_(p), cap_(cap), a_(tail_len(cap), 0) {
    check();
  }
  // tail holds a_2..a_cap.
  TruncSeries(int p, int cap, std::vector<u8> tail)
      : p_(p), cap_(cap), a_(std::move(tail)) {
    check();
    if (a_.size() != tail_len(cap_)) fail<InputError>("series: bad tail size");
    for (u8 c : a_)
      if (c >= p_) fail<InputError>("series: coefficient out of range");
  }
  static TruncSeries identity(int p, int cap) { return TruncSeries(p, cap); }

  int prime() const { return p_; }
  int cap() const { return cap_; }
  bool is_identity() const {
    for (u8 c : a_)
      if (c) return false;
    return true;
  }
  // a_i for 2 <= i <= cap.
  u8 coeff(int i) const { return a_[size_t(i) - 2]; }
  void set_coeff(int i, u32 v) { a_[size_t(i) - 2] = u8(v % u32(p_)); }
  const std::vector<u8>& tail() const { return a_; }

  // Largest k with f in N_k (all of a_2..a_{k+1} ... a_{j<=k+1} zero up to the
  // first nonzero coefficient); nullopt for the identity.
  std::optional<int> filtration_degree() const {
    for (int i = 2; i <= cap_; ++i)
      if (coeff(i)) return i - 1;
    return std::nullopt;
  }

  // Truncate (cap2 < cap) or zero-extend (cap2 > cap). Truncation is the
  // natural quotient map between truncation levels; extension picks the
  // all-zero preimage.
  TruncSeries with_cap(int cap2) const {
    TruncSeries r(p_, cap2);
    for (int i = 2; i <= std::min(cap_, cap2); ++i) r.set_coeff(i, coeff(i));
    return r;
  }

  friend bool operator==(const TruncSeries& x, const TruncSeries& y) {
    return x.p_ == y.p_ && x.cap_ == y.cap_ && x.a_ == y.a_;
  }
  friend bool operator!=(const TruncSeries& x, const TruncSeries& y) {
    return !(x == y);
  }

  // Group product: (f*g)(t) = f(g(t)) mod t^{cap+1}.
  friend TruncSeries compose(const TruncSeries& f, const TruncSeries& g) {
    if (f.p_ != g.p_ || f.cap_ != g.cap_)
      fail<InputError>("compose: mismatched (p, cap)");
    int K = f.cap_, p = f.p_;
    if (K < 2) return TruncSeries(p, K);
    std::vector<u32> gv(K + 1, 0), h(K + 1, 0), tmp;
    gv[1] = 1;
    for (int i = 2; i <= K; ++i) gv[i] = g.coeff(i);
    // Horner: h = f_K; h = f_i + g*h; result = g*h.
    h[0] = f.coeff(K);
    for (int i = K - 1; i >= 1; --i) {
      detail::poly_mul_trunc(gv, h, tmp, K, p);
      tmp[0] = (tmp[0] + (i >= 2 ? f.coeff(i) : 1)) % u32(p);
      h = tmp;
    }
    detail::poly_mul_trunc(gv, h, tmp, K, p);
    TruncSeries r(p, K);
    for (int i = 2; i <= K; ++i) r.set_coeff(i, tmp[i]);
    return r;
  }

  // Compositional inverse mod t^{cap+1}, solved degree by degree.
  TruncSeries inverse() const {
    TruncSeries g(p_, cap_);
    for (int d = 2; d <= cap_; ++d) {
      TruncSeries probe = compose(with_cap(d), g.with_cap(d));
      u32 err = probe.coeff(d);
      g.set_coeff(d, (u32(p_) - err) % u32(p_));
    }
    return g;
  }

  // n-th composition power (n may be negative).
  TruncSeries power(i64 n) const {
    if (n < 0) return inverse().power(-n);
    TruncSeries acc = identity(p_, cap_), base = *this;
    u64 e = u64(n);
    while (e) {
      if (e & 1) acc = compose(acc, base);
      base = compose(base, base);
      e >>= 1;
    }
    return acc;
  }

  std::string str() const {
    std::ostringstream os;
    os << "t";
    for (int i = 2; i <= cap_; ++i)
      if (coeff(i)) os << "+" << int(coeff(i)) << "t^" << i;
    return os.str();
  }

 private:
  static size_t tail_len(int cap) { return cap >= 2 ? size_t(cap) - 1 : 0; }
  void check() const {
    if (p_ < 2 || p_ > 251 || !is_prime(u64(p_)))
      fail<InputError>("series: p must be a small prime");
    if (cap_ < 1) fail<InputError>("series: cap must be >= 1");
  }
  int p_ = 2;
  int cap_ = 1;
  std::vector<u8> a_;
};

// z_m = p^m + p^{m-1} + ... + p + 2, with z_0 = 2.
inline u64 zm(int p, int m) {
  u64 z = 2, q = 1;
  for (int i = 1; i <= m; ++i) {
    q *= u64(p);
    z += q;
  }
  return z;
}

// Index of the i-th lower central term of the Nottingham group inside the
// congruence filtration: s(i) = i + 1 + floor((i-2)/(p-1)) for i >= 2, s(1)=1.
inline u64 gamma_start(int p, u64 i) {
  if (i <= 1) return 1;
  return i + 1 + (i - 2) / u64(p - 1);
}

// t/(1-t) = t + t^2 + t^3 + ...; order p under composition.
inline TruncSeries nott_a(int p, int cap) {
  TruncSeries f(p, cap);
  for (int i = 2; i <= cap; ++i) f.set_coeff(i, 1);
  return f;
}

// t*(1-2t^2)^{-1/2} with the square root chosen as y = 1 + t^2 + ...; the
// standard order-p element with lowest coefficient in degree 3. Computed by
// solving y^2 (1-2t^2) = 1 degree by degree, which avoids binomial
// denominators divisible by p.
inline TruncSeries nott_b(int p, int cap) {
  if (p == 2) fail<InputError>("nott_b: p must be odd");
  int n = cap;  // y_0..y_{n-1}; b_j = y_{j-1}
  std::vector<u32> y(n, 0), s(n, 0);
  u32 inv2 = u32(mod_inv(2, u64(p)));
  y[0] = 1;
  s[0] = 1;
  for (int d = 1; d < n; ++d) {
    u32 t = 0;  // sum_{i=1}^{d-1} y_i y_{d-i}
    for (int i = 1; i < d; ++i) t = (t + y[i] * y[d - i]) % u32(p);
    u32 s2 = d >= 2 ? s[d - 2] : 0;
    y[d] = ((2 * s2 % u32(p) + u32(p) - t) % u32(p)) * inv2 % u32(p);
    u32 sd = 0;
    for (int i = 0; i <= d; ++i) sd = (sd + y[i] * y[d - i]) % u32(p);
    s[d] = sd;
  }
  TruncSeries b(p, cap);
  for (int i = 2; i <= cap; ++i) b.set_coeff(i, y[i - 1]);
  return b;
}

// t + t^2 + lambda t^3. The p+1 maximal-subgroup directions of the Nottingham
// group are spanned by these together with the degree->=3 subgroup.
inline TruncSeries f_lambda(int p, int cap, int lambda) {
  TruncSeries f(p, cap);
  if (cap >= 2) f.set_coeff(2, 1);
  if (cap >= 3) f.set_coeff(3, u32((lambda % p + p) % p));
  return f;
}

// t + t^{z_m} + alpha t^{z_m+1}.
inline TruncSeries e_alpha(int p, int cap, int m, int alpha) {
  TruncSeries f(p, cap);
  u64 z = zm(p, m);
  if (z <= u64(cap)) f.set_coeff(int(z), 1);
  if (z + 1 <= u64(cap)) f.set_coeff(int(z + 1), u32((alpha % p + p) % p));
  return f;
}

// t + t^d.
inline TruncSeries depth_one(int p, int cap, int d) {
  TruncSeries f(p, cap);
  if (d >= 2 && d <= cap) f.set_coeff(d, 1);
  return f;
}

// ---- transfer matrix ----------------------------------------------------
// M is the unitriangular matrix with M[i][j] = coefficient of t^j in f(t)^i.
// It is multiplicative: M(f*g) = M(f) M(g), so coefficients of composition
// powers are entries of matrix powers.

struct TransferMatrix {
  int n = 0;
  int p = 2;
  std::vector<u8> m;  // (n+1)x(n+1), 1-based
  u8 at(int i, int j) const { return m[size_t(i) * (n + 1) + j]; }
  u8& at(int i, int j) { return m[size_t(i) * (n + 1) + j]; }
};

inline TransferMatrix transfer_matrix(const TruncSeries& f, int n) {
  if (n < 1) fail<InputError>("transfer_matrix: n must be >= 1");
  TransferMatrix M;
  M.n = n;
  M.p = f.prime();
  M.m.assign(size_t(n + 1) * (n + 1), 0);
  std::vector<u32> fv(n + 1, 0), pw(n + 1, 0), tmp;
  fv[1] = 1;
  for (int i = 2; i <= std::min(n, f.cap()); ++i) fv[i] = f.coeff(i);
  pw = fv;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) M.at(i, j) = u8(pw[j]);
    if (i < n) {
      detail::poly_mul_trunc(pw, fv, tmp, n, f.prime());
      pw = tmp;
    }
  }
  return M;
}

inline TransferMatrix matmul(const TransferMatrix& A, const TransferMatrix& B) {
  if (A.n != B.n || A.p != B.p) fail<InputError>("matmul: shape mismatch");
  TransferMatrix C;
  C.n = A.n;
  C.p = A.p;
  C.m.assign(A.m.size(), 0);
  for (int i = 1; i <= A.n; ++i)
    for (int k = i; k <= A.n; ++k) {
      u32 a = A.at(i, k);
      if (!a) continue;
      for (int j = k; j <= A.n; ++j) {
        if (!B.at(k, j)) continue;
        C.at(i, j) = u8((C.at(i, j) + a * B.at(k, j)) % u32(A.p));
      }
    }
  return C;
}

inline TransferMatrix matpow(TransferMatrix M, u64 e) {
  TransferMatrix R;
  R.n = M.n;
  R.p = M.p;
  R.m.assign(M.m.size(), 0);
  for (int i = 1; i <= M.n; ++i) R.at(i, i) = 1;
  while (e) {
    if (e & 1) R = matmul(R, M);
    M = matmul(M, M);
    e >>= 1;
  }
  return R;
}

// Coefficient of t^n in the p^r-th composition power of f, computed as the
// (1, n) entry of M^{p^r} with M truncated to n x n.
inline u8 transfer_matrix_power_coeff(const TruncSeries& f, int r, int n) {
  if (n < 2) fail<InputError>("transfer_matrix_power_coeff: n must be >= 2");
  TransferMatrix M = transfer_matrix(f, n);
  u64 e = 1;
  for (int i = 0; i < r; ++i) e *= u64(f.prime());
  TransferMatrix P = matpow(std::move(M), e);
  return P.at(1, n);
}

// Closed form for the p^m-th power of f_lambda:
//   t + (1-lambda)^m t^{z_m} - (1-lambda)^{m+1} t^{z_m+1}  (mod t^{z_m+2}),
// returned at cap z_m + 1.
inline TruncSeries pm_power_closed_form(int p, int lambda, int m) {
  if (p == 2) fail<InputError>("pm_power_closed_form: p must be odd");
  if (m < 1) fail<InputError>("pm_power_closed_form: m must be >= 1");
  u64 z = zm(p, m);
  TruncSeries r(p, int(z + 1));
  u32 base = u32(((1 - lambda) % p + p) % p);
  u32 cm = u32(mod_pow(base, u64(m), u64(p)));
  r.set_coeff(int(z), cm);
  r.set_coeff(int(z + 1), (u32(p) - cm * base % u32(p)) % u32(p));
  return r;
}

// ---- witness fixture format ---------------------------------------------
// Line 1: "# <label>"; then one series per line as "p K a2 a3 ... aK".

struct SeriesFixture {
  std::string label;
  std::vector<TruncSeries> entries;
};

inline void write_series_fixture(std::ostream& os, const SeriesFixture& fx) {
  os << "# " << fx.label << "\n";
  for (const auto& s : fx.entries) {
    os << s.prime() << " " << s.cap();
    for (int i = 2; i <= s.cap(); ++i) os << " " << int(s.coeff(i));
    os << "\n";
  }
}

inline SeriesFixture read_series_fixture(std::istream& is) {
  SeriesFixture fx;
  std::string line;
  bool have_label = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!have_label) {
        size_t b = line.find_first_not_of("# \t");
        fx.label = b == std::string::npos ? "" : line.substr(b);
        have_label = true;
      }
      continue;
    }
    std::istringstream ls(line);
    int p = 0, cap = 0;
    if (!(ls >> p >> cap)) fail<InputError>("series fixture: bad line");
    std::vector<u8> tail;
    for (int i = 2; i <= cap; ++i) {
      int c;
      if (!(ls >> c)) fail<InputError>("series fixture: truncated line");
      tail.push_back(u8(((c % p) + p) % p));
    }
    fx.entries.emplace_back(p, cap, std::move(tail));
  }
  return fx;
}

}  // namespace beauville
