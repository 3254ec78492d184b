#pragma once
// Concrete group families built on cyclotomic arithmetic and small semidirect
// products: quotients of the pro-p groups C_{p^k} acting on the cyclotomic
// ring of integers by a primitive root of unity, the nonsplit central
// extensions of those quotients, the potent-but-not-semi-abelian semidirect
// example, and plain C_n x C_n.

#include "cyclotomic.hpp"
#include "group.hpp"

namespace beauville {

// C_{p^k} acting on A/N where A is the additive group of Z_p[zeta] (zeta a
// primitive p^k-th root of unity), the action is multiplication by zeta, and
// N = (zeta-1)^s with s >= d = p^{k-1}(p-1) so that N <= A^p. Elements are
// pairs (j, h) with the product (j,h)(j',h') = (j+j', zeta^{j'} h + h').
class PkQuotientOracle : public GroupOracle {
 public:
  PkQuotientOracle(int p, int k, int s)
      : ring_(p, k, (s + p_to_d(p, k) - 1) / p_to_d(p, k)), s_(s) {
    if (p < 5) fail<InputError>("pk-quotient: p must be >= 5");
    if (s < ring_.d) fail<InputError>("pk-quotient: s must be >= p^{k-1}(p-1)");
    ideal_ = ideal_subgroup(ring_, s);
    if (ideal_.quotient_order() != ipow(u64(p), unsigned(s)))
      fail<IntegrityError>("pk-quotient: ideal index is not p^s");
    tmod_ = ipow(u64(p), unsigned(k));
    build_radix();
  }
  const CycloRing& ring() const { return ring_; }
  const HowellBasis& ideal() const { return ideal_; }
  u64 size() const override { return tmod_ * ideal_.quotient_order(); }
  Code mul(Code a, Code b) const override {
    auto [ja, ha] = unpack(a);
    auto [jb, hb] = unpack(b);
    CycPoly h = ring_.add(ring_.mul_zeta_pow(ha, jb), hb);
    return pack((ja + jb) % tmod_, ideal_.reduce(std::move(h)));
  }
  Code inv(Code a) const override {
    auto [j, h] = unpack(a);
    u64 ji = (tmod_ - j) % tmod_;
    CycPoly hi = ring_.neg(ring_.mul_zeta_pow(h, ji));
    return pack(ji, ideal_.reduce(std::move(hi)));
  }
  std::string describe() const override {
    return "pk-quotient(p=" + std::to_string(ring_.p) +
           ",k=" + std::to_string(ring_.k) + ",s=" + std::to_string(s_) + ")";
  }
  std::string element_repr(Code a) const override {
    auto [j, h] = unpack(a);
    std::string s = "t^" + std::to_string(j) + " [";
    for (int i = 0; i < ring_.d; ++i)
      s += (i ? "," : "") + std::to_string(h[i]);
    return s + "]";
  }
  Code gen_t() const { return pack(1, ring_.zero()); }
  Code gen_a1() const { return pack(0, ideal_.reduce(ring_.one())); }

  std::pair<u64, CycPoly> unpack(Code a) const {
    u64 v = a;
    u64 j = v % tmod_;
    v /= tmod_;
    CycPoly h = ring_.zero();
    for (int i = 0; i < ring_.d; ++i) {
      h[i] = u32(v % radix_[i]);
      v /= radix_[i];
    }
    return {j, h};
  }
  Code pack(u64 j, const CycPoly& h) const {
    u64 v = 0;
    for (int i = ring_.d; i-- > 0;) v = v * radix_[i] + h[i];
    return Code(v * tmod_ + j);
  }

 protected:
  static int p_to_d(int p, int k) {
    return int(ipow(u64(p), unsigned(k - 1))) * (p - 1);
  }
  void build_radix() {
    for (int i = 0; i < ring_.d; ++i)
      radix_.push_back(ipow(u64(ring_.p), unsigned(ideal_.colw[i])));
  }
  CycloRing ring_;
  int s_;
  HowellBasis ideal_;
  u64 tmod_ = 0;
  std::vector<u64> radix_;
};

// Nonsplit variant: H = A/N with N = (zeta-1)^{d(e-1)+m}, and a generator u
// acting like zeta whose p^k-th power is the chosen central element
// z = (zeta-1)^{d(e-1)+m-1} mod N rather than 1. The product carries a
// cocycle: (j,h)(j',h') adds z exactly when j + j' wraps past p^k.
class NonsplitExtensionOracle : public GroupOracle {
 public:
  NonsplitExtensionOracle(int p, int k, int e, int m)
      : ring_(p, k, e), p_(p), k_(k), e_(e), m_(m) {
    if (p < 5) fail<InputError>("nonsplit: p must be >= 5");
    if (e <= k) fail<InputError>("nonsplit: requires e > k");
    int d = ring_.d;
    if (m < 2 || m > d)
      fail<InputError>("nonsplit: requires 2 <= m <= p^{k-1}(p-1)");
    s_ = d * (e - 1) + m;
    ideal_ = ideal_subgroup(ring_, s_);
    if (ideal_.quotient_order() != ipow(u64(p), unsigned(s_)))
      fail<IntegrityError>("nonsplit: ideal index is not p^s");
    z_ = ideal_.reduce(ring_.uniformizer_power(s_ - 1));
    bool znz = false;
    for (u32 c : z_) znz = znz || c;
    if (!znz) fail<IntegrityError>("nonsplit: central element vanished");
    tmod_ = ipow(u64(p), unsigned(k));
    for (int i = 0; i < d; ++i)
      radix_.push_back(ipow(u64(p), unsigned(ideal_.colw[i])));
  }
  u64 size() const override { return tmod_ * ideal_.quotient_order(); }
  Code mul(Code a, Code b) const override {
    auto [ja, ha] = unpack(a);
    auto [jb, hb] = unpack(b);
    CycPoly h = ring_.add(ring_.mul_zeta_pow(ha, jb), hb);
    if (ja + jb >= tmod_) h = ring_.add(h, z_);
    return pack((ja + jb) % tmod_, ideal_.reduce(std::move(h)));
  }
  Code inv(Code a) const override {
    auto [j, h] = unpack(a);
    u64 ji = (tmod_ - j) % tmod_;
    CycPoly hi = ring_.neg(ring_.mul_zeta_pow(h, ji));
    if (j != 0) hi = ring_.sub(hi, z_);
    return pack(ji, ideal_.reduce(std::move(hi)));
  }
  std::string describe() const override {
    return "nonsplit-extension(p=" + std::to_string(p_) + ",k=" +
           std::to_string(k_) + ",e=" + std::to_string(e_) + ",m=" +
           std::to_string(m_) + ")";
  }
  std::string element_repr(Code a) const override {
    auto [j, h] = unpack(a);
    std::string s = "u^" + std::to_string(j) + " [";
    for (int i = 0; i < ring_.d; ++i)
      s += (i ? "," : "") + std::to_string(h[i]);
    return s + "]";
  }
  Code gen_u() const { return pack(1, ring_.zero()); }
  Code gen_a1() const { return pack(0, ideal_.reduce(ring_.one())); }
  Code central_z() const { return pack(0, z_); }
  const CycloRing& ring() const { return ring_; }
  const HowellBasis& ideal() const { return ideal_; }

  std::pair<u64, CycPoly> unpack(Code a) const {
    u64 v = a;
    u64 j = v % tmod_;
    v /= tmod_;
    CycPoly h = ring_.zero();
    for (int i = 0; i < ring_.d; ++i) {
      h[i] = u32(v % radix_[i]);
      v /= radix_[i];
    }
    return {j, h};
  }
  Code pack(u64 j, const CycPoly& h) const {
    u64 v = 0;
    for (int i = ring_.d; i-- > 0;) v = v * radix_[i] + h[i];
    return Code(v * tmod_ + j);
  }

 private:
  CycloRing ring_;
  int p_, k_, e_, m_, s_ = 0;
  HowellBasis ideal_;
  CycPoly z_;
  u64 tmod_ = 0;
  std::vector<u64> radix_;
};

// The potent example: A = C_p x ... x C_p x C_{p^2} x C_{p^2} on coordinates
// a_1..a_p, extended by b of order p^2 acting by
//   a_i -> a_i a_{i+1} (i <= p-3),  a_{p-2} -> a_{p-2} a_{p-1}^p,
//   a_{p-1} -> a_{p-1} a_p,         a_p -> a_p.
// Potent but not semi-p-abelian; rank 3, generated by b, a_1, a_{p-1}.
class PotentExampleOracle : public GroupOracle {
 public:
  explicit PotentExampleOracle(int p) : p_(p) {
    if (p < 5 || !is_prime(u64(p))) fail<InputError>("potent example: p >= 5");
    p2_ = u64(p) * u64(p);
    n_ = size_t(p);
    // coordinate moduli
    mods_.assign(n_, u64(p));
    mods_[n_ - 2] = p2_;
    mods_[n_ - 1] = p2_;
    // action matrix
    std::vector<std::vector<u64>> M(n_, std::vector<u64>(n_, 0));
    for (size_t i = 0; i < n_; ++i) M[i][i] = 1;
    for (size_t i = 0; i + 3 <= n_; ++i) M[i][i + 1] = 1;  // a_i -> a_i a_{i+1}
    M[n_ - 3][n_ - 2] = u64(p);                            // a_{p-2} -> ... a_{p-1}^p
    M[n_ - 2][n_ - 1] = 1;                                 // a_{p-1} -> ... a_p
    // precompute all powers of the action
    pows_.push_back(identity_matrix());
    for (u64 j = 1; j < p2_; ++j) pows_.push_back(matmul(pows_.back(), M));
    if (action_equal(matmul(pows_.back(), M), pows_[0]) == false)
      fail<IntegrityError>("potent example: action order is not p^2");
    if (action_equal(pows_[ipow(u64(p), 1)], pows_[0]))
      fail<IntegrityError>("potent example: action order divides p");
    // well-definedness: rows of order p must not leak unreduced multiples
    // into the order-p^2 coordinates
    for (u64 j = 0; j < p2_; ++j)
      for (size_t i = 0; i + 2 < n_; ++i)
        for (size_t c = n_ - 2; c < n_; ++c)
          if (pows_[j][i][c] % u64(p))
            fail<IntegrityError>("potent example: action not defined mod p");
    size_ = p2_;
    for (u64 m : mods_) size_ *= m;
  }
  u64 size() const override { return size_; }
  Code mul(Code a, Code b) const override {
    auto [ja, xa] = unpack(a);
    auto [jb, xb] = unpack(b);
    std::vector<u64> x = apply(jb, xa);
    for (size_t i = 0; i < n_; ++i) x[i] = (x[i] + xb[i]) % mods_[i];
    return pack((ja + jb) % p2_, x);
  }
  Code inv(Code a) const override {
    auto [j, x] = unpack(a);
    u64 ji = (p2_ - j) % p2_;
    std::vector<u64> xi = apply(ji, x);
    for (size_t i = 0; i < n_; ++i) xi[i] = (mods_[i] - xi[i]) % mods_[i];
    return pack(ji, xi);
  }
  std::string describe() const override {
    return "potent-example(p=" + std::to_string(p_) + ")";
  }
  std::string element_repr(Code a) const override {
    auto [j, x] = unpack(a);
    std::string s = "b^" + std::to_string(j);
    for (size_t i = 0; i < n_; ++i)
      if (x[i]) s += " a" + std::to_string(i + 1) + "^" + std::to_string(x[i]);
    return s;
  }
  Code gen_b() const { return pack(1, std::vector<u64>(n_, 0)); }
  Code gen_a(size_t i) const {  // 1-based coordinate index
    std::vector<u64> x(n_, 0);
    x[i - 1] = 1;
    return pack(0, x);
  }

  std::pair<u64, std::vector<u64>> unpack(Code a) const {
    u64 v = a;
    u64 j = v % p2_;
    v /= p2_;
    std::vector<u64> x(n_);
    for (size_t i = 0; i < n_; ++i) {
      x[i] = v % mods_[i];
      v /= mods_[i];
    }
    return {j, x};
  }
  Code pack(u64 j, const std::vector<u64>& x) const {
    u64 v = 0;
    for (size_t i = n_; i-- > 0;) v = v * mods_[i] + x[i];
    return Code(v * p2_ + j);
  }

 private:
  using Mat = std::vector<std::vector<u64>>;
  Mat identity_matrix() const {
    Mat I(n_, std::vector<u64>(n_, 0));
    for (size_t i = 0; i < n_; ++i) I[i][i] = 1;
    return I;
  }
  Mat matmul(const Mat& A, const Mat& B) const {
    Mat C(n_, std::vector<u64>(n_, 0));
    for (size_t i = 0; i < n_; ++i)
      for (size_t k = 0; k < n_; ++k) {
        if (!A[i][k]) continue;
        for (size_t j = 0; j < n_; ++j)
          C[i][j] = (C[i][j] + A[i][k] * B[k][j]) % p2_;
      }
    return C;
  }
  bool action_equal(const Mat& A, const Mat& B) const {
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < n_; ++j)
        if ((A[i][j] % mods_[j]) != (B[i][j] % mods_[j])) return false;
    return true;
  }
  std::vector<u64> apply(u64 j, const std::vector<u64>& x) const {
    const Mat& M = pows_[j];
    std::vector<u64> y(n_, 0);
    for (size_t i = 0; i < n_; ++i) {
      if (!x[i]) continue;
      for (size_t c = 0; c < n_; ++c)
        if (M[i][c]) y[c] = (y[c] + x[i] * M[i][c]) % mods_[c];
    }
    return y;
  }
  int p_;
  u64 p2_ = 0;
  size_t n_ = 0;
  u64 size_ = 0;
  std::vector<u64> mods_;
  std::vector<Mat> pows_;
};

// C_n x C_n under componentwise addition.
class AbelianOracle : public GroupOracle {
 public:
  explicit AbelianOracle(u64 n) : n_(n) {
    if (n < 1) fail<InputError>("abelian: n must be >= 1");
  }
  u64 size() const override { return n_ * n_; }
  Code mul(Code a, Code b) const override {
    u64 a1 = a % n_, a2 = a / n_, b1 = b % n_, b2 = b / n_;
    return Code((a2 + b2) % n_ * n_ + (a1 + b1) % n_);
  }
  Code inv(Code a) const override {
    u64 a1 = a % n_, a2 = a / n_;
    return Code((n_ - a2) % n_ * n_ + (n_ - a1) % n_);
  }
  int pair_generates(Code x, Code y) const override {
    i64 x1 = i64(x % n_), x2 = i64(x / n_), y1 = i64(y % n_), y2 = i64(y / n_);
    i64 det = ((x1 * y2 - x2 * y1) % i64(n_) + i64(n_)) % i64(n_);
    return std::gcd(u64(det), n_) == 1 ? 1 : 0;
  }
  std::string describe() const override {
    return "C_" + std::to_string(n_) + " x C_" + std::to_string(n_);
  }
  std::string element_repr(Code a) const override {
    return "(" + std::to_string(a % n_) + "," + std::to_string(a / n_) + ")";
  }
  Code element_from_coords(const std::vector<i64>& cs) const override {
    if (cs.size() != 2) fail<InputError>("expected a coordinate pair");
    u64 a = u64(((cs[0] % i64(n_)) + i64(n_)) % i64(n_));
    u64 b = u64(((cs[1] % i64(n_)) + i64(n_)) % i64(n_));
    return Code(b * n_ + a);
  }
  Code gen_e1() const { return Code(1 % (n_ * n_)); }
  Code gen_e2() const { return Code(n_ % (n_ * n_)); }

 private:
  u64 n_;
};

}  // namespace beauville
