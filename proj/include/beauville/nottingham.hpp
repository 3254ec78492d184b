#pragma once
// Finite quotients of the Nottingham group over F_p (odd p) as dense-code
// multiplication oracles. Full congruence quotients have elements
// t + a_2 t^2 + ... + a_k t^k; the quotients by an intermediate subgroup of a
// distinguished diamond (between N_{z_m+1} and N_{z_m-1}) canonicalize one
// coefficient to zero using the central generator of the subgroup that is
// factored out. The classification of which quotients are Beauville groups
// is also provided as a closed-form reference verdict.

#include "group.hpp"
#include "series.hpp"

namespace beauville {

struct QuotientSpec {
  enum class Kind { full, diamond };
  int p = 3;
  Kind kind = Kind::full;
  int k = 0;      // full: quotient by the k-th congruence subgroup
  int m = 0;      // diamond: distinguished level
  int alpha = 0;  // diamond: which intermediate subgroup; -1 encodes W = N_{z_m}
  static QuotientSpec full_q(int p, int k) {
    QuotientSpec s;
    s.p = p;
    s.kind = Kind::full;
    s.k = k;
    return s;
  }
  static QuotientSpec diamond_q(int p, int m, int alpha) {
    QuotientSpec s;
    s.p = p;
    s.kind = Kind::diamond;
    s.m = m;
    s.alpha = alpha;
    return s;
  }
  bool alpha_inf() const { return alpha < 0; }
  // truncation degree of the series representatives
  int cap() const {
    if (kind == Kind::full) return k;
    return alpha_inf() ? int(zm(p, m)) : int(zm(p, m)) + 1;
  }
  u64 order() const {
    int digits = cap() - 1 - (kind == Kind::diamond && !alpha_inf() ? 1 : 0);
    return ipow(u64(p), unsigned(digits));
  }
  std::string str() const {
    if (kind == Kind::full) return "N/N_" + std::to_string(k);
    return "N/W(m=" + std::to_string(m) +
           ",alpha=" + (alpha_inf() ? std::string("inf") : std::to_string(alpha)) +
           ")";
  }
};

// The paper-of-record classification, as a pure formula. Full quotients by
// the k-th congruence subgroup are Beauville iff k >= 3 (p >= 5) or k >= 6
// (p = 3) and k avoids every z_m; diamond quotients at level m iff the
// subgroup is none of N_{z_m}, <t + t^{z_m}> N_{z_m+1} and m >= 1 (p >= 5)
// or m >= 2 (p = 3).
inline bool nottingham_verdict(const QuotientSpec& s) {
  if (s.p == 2) fail<InputError>("nottingham_verdict: p must be odd");
  if (s.kind == QuotientSpec::Kind::full) {
    int k = s.k;
    if (k < (s.p == 3 ? 6 : 3)) return false;
    for (int m = 1;; ++m) {
      u64 z = zm(s.p, m);
      if (z == u64(k)) return false;
      if (z > u64(k)) break;
    }
    return true;
  }
  if (s.alpha_inf() || s.alpha % s.p == 0) return false;
  return s.m >= (s.p == 3 ? 2 : 1);
}

namespace nottdetail {

constexpr int MAXDEG = 24;  // supports caps up to MAXDEG - 1

struct Buf {
  u32 c[MAXDEG];  // coefficient of t^i at index i; c[0] = 0, c[1] = 1
};

inline void clear_buf(Buf& b, int cap) {
  for (int i = 0; i <= cap; ++i) b.c[i] = 0;
  b.c[1] = 1;
}

// out = f(g(t)) mod t^{cap+1}; all arrays are coefficient-by-degree.
inline void compose_buf(const Buf& f, const Buf& g, Buf& out, int cap, u32 p) {
  u32 h[MAXDEG] = {0};
  u32 t[MAXDEG];
  h[0] = f.c[cap];
  for (int i = cap - 1; i >= 1; --i) {
    for (int a = 0; a <= cap; ++a) t[a] = 0;
    for (int a = 0; a <= cap; ++a) {
      u32 ha = h[a];
      if (!ha) continue;
      for (int b = 1; a + b <= cap; ++b) t[a + b] += ha * g.c[b];
    }
    t[0] = (i >= 2 ? f.c[i] : 1u);
    for (int a = 0; a <= cap; ++a) h[a] = t[a] % p;
  }
  for (int a = 0; a <= cap; ++a) t[a] = 0;
  for (int a = 0; a <= cap; ++a) {
    u32 ha = h[a];
    if (!ha) continue;
    for (int b = 1; a + b <= cap; ++b) t[a + b] += ha * g.c[b];
  }
  out.c[0] = 0;
  for (int a = 1; a <= cap; ++a) out.c[a] = t[a] % p;
}

}  // namespace nottdetail

// Dense-code oracle for one quotient. Codes are the base-p digit strings of
// the free coefficients (all of a_2..a_cap for full quotients; the
// coefficient at the canonicalized degree is forced to zero for diamonds).
class NottinghamOracle : public GroupOracle {
 public:
  explicit NottinghamOracle(QuotientSpec spec) : spec_(spec), p_(u32(spec.p)) {
    if (spec_.p == 2 || !is_prime(u64(spec_.p)))
      fail<InputError>("nottingham: p must be an odd prime");
    cap_ = spec_.cap();
    if (cap_ < 1 || cap_ >= nottdetail::MAXDEG)
      fail<InputError>("nottingham: truncation degree out of range");
    if (spec_.kind == QuotientSpec::Kind::full) {
      if (spec_.k < 2) fail<InputError>("nottingham: k must be >= 2");
      forced_ = 0;
    } else {
      if (spec_.alpha_inf()) {
        forced_ = 0;  // same coefficient pattern as the full quotient N/N_{z_m}
      } else {
        if (spec_.m < 1) fail<InputError>("nottingham: diamond level must be >= 1");
        forced_ = int(zm(spec_.p, spec_.m));
        walpha_ = u32(((spec_.alpha % spec_.p) + spec_.p) % spec_.p);
      }
    }
    size_ = spec_.order();
    for (int i = 2; i <= cap_; ++i)
      if (i != forced_) positions_.push_back(i);
  }

  const QuotientSpec& spec() const { return spec_; }
  u64 size() const override { return size_; }

  Code mul(Code a, Code b) const override {
    nottdetail::Buf fa, fb, out;
    unpack(a, fa);
    unpack(b, fb);
    nottdetail::compose_buf(fa, fb, out, cap_, p_);
    canonicalize(out);
    return pack(out);
  }

  Code inv(Code a) const override {
    nottdetail::Buf f;
    unpack(a, f);
    TruncSeries s = to_series(f);
    TruncSeries si = s.inverse();
    nottdetail::Buf out;
    from_series(si, out);
    canonicalize(out);
    return pack(out);
  }

  std::string describe() const override { return spec_.str(); }
  std::string element_repr(Code a) const override {
    nottdetail::Buf f;
    unpack(a, f);
    return to_series(f).str();
  }

  std::unique_ptr<Translator> right_translator(Code b) const override;

  // coordinates are the series coefficients a_2, ..., a_cap
  Code element_from_coords(const std::vector<i64>& cs) const override {
    if (cs.size() + 1 != size_t(cap_))
      fail<InputError>("expected " + std::to_string(cap_ - 1) +
                       " series coefficients");
    TruncSeries s(spec_.p, cap_);
    for (int i = 2; i <= cap_; ++i)
      s.set_coeff(i, u32(((cs[size_t(i) - 2] % p_) + p_) % p_));
    return series_code(s);
  }

  // canonical code of an arbitrary series representative
  Code series_code(const TruncSeries& s) const {
    nottdetail::Buf f;
    from_series(s.with_cap(cap_), f);
    canonicalize(f);
    return pack(f);
  }
  TruncSeries code_series(Code a) const {
    nottdetail::Buf f;
    unpack(a, f);
    return to_series(f);
  }
  int cap() const { return cap_; }
  int forced_degree() const { return forced_; }

  // codes of the image of the congruence subgroup at filtration level j
  // (series with zero coefficients in degrees 2..j)
  std::vector<Code> layer_codes(int j) const {
    std::vector<int> free_pos;
    for (int i : positions_)
      if (i > j) free_pos.push_back(i);
    u64 count = ipow(u64(p_), unsigned(free_pos.size()));
    std::vector<Code> out;
    out.reserve(count);
    nottdetail::Buf f;
    for (u64 v = 0; v < count; ++v) {
      nottdetail::clear_buf(f, cap_);
      u64 t = v;
      for (int i : free_pos) {
        f.c[i] = u32(t % p_);
        t /= p_;
      }
      canonicalize(f);  // no-op for full quotients; safe for diamonds
      out.push_back(pack(f));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void unpack(Code a, nottdetail::Buf& f) const {
    u64 v = a;
    f.c[0] = 0;
    f.c[1] = 1;
    for (int i = 2; i <= cap_; ++i) f.c[i] = 0;
    for (int i : positions_) {
      f.c[i] = u32(v % p_);
      v /= p_;
    }
  }
  Code pack(const nottdetail::Buf& f) const {
    u64 v = 0;
    for (size_t idx = positions_.size(); idx-- > 0;)
      v = v * p_ + f.c[positions_[idx]];
    return Code(v);
  }
  // Multiplies by the central generator's power that clears the forced
  // coefficient. Composition with t + beta t^{z} + gamma t^{z+1} only shifts
  // the two top coefficients: [z] += beta, [z+1] += gamma + 2 a_2 beta.
  void canonicalize(nottdetail::Buf& f) const {
    if (!forced_) return;
    u32 c = f.c[forced_];
    if (!c) return;
    u32 j = p_ - c;  // power of the central generator
    u32 beta = j % p_;
    u32 gamma = (j * walpha_) % p_;
    f.c[forced_] = (f.c[forced_] + beta) % p_;
    f.c[forced_ + 1] =
        (f.c[forced_ + 1] + gamma + 2 * f.c[2] % p_ * beta) % p_;
  }

  TruncSeries to_series(const nottdetail::Buf& f) const {
    TruncSeries s(spec_.p, cap_);
    for (int i = 2; i <= cap_; ++i) s.set_coeff(i, f.c[i]);
    return s;
  }
  void from_series(const TruncSeries& s, nottdetail::Buf& f) const {
    nottdetail::clear_buf(f, cap_);
    for (int i = 2; i <= std::min(cap_, s.cap()); ++i) f.c[i] = s.coeff(i);
  }

 private:
  friend class NottTranslator;
  QuotientSpec spec_;
  u32 p_;
  int cap_ = 0;
  int forced_ = 0;   // degree of the canonicalized coefficient, 0 = none
  u32 walpha_ = 0;   // second coefficient of the central generator
  u64 size_ = 0;
  std::vector<int> positions_;  // free coefficient degrees, ascending
};

// Right translation x -> x * b with the powers of b's series precomputed:
// f(b(t)) = sum_i f_i b(t)^i needs one inner product per element, and the
// iota sweep keeps suffix partial sums as the digit counter advances.
class NottTranslator : public Translator {
 public:
  NottTranslator(const NottinghamOracle& o, Code b) : o_(o) {
    cap_ = o.cap_;
    p_ = o.p_;
    nottdetail::Buf fb;
    o_.unpack(b, fb);
    pw_.resize(size_t(cap_) + 1);
    for (int a = 0; a <= cap_; ++a) pw_[1].c[a] = fb.c[a];
    for (int i = 2; i <= cap_; ++i) {
      for (int a = 0; a <= cap_; ++a) pw_[size_t(i)].c[a] = 0;
      u32 t[nottdetail::MAXDEG] = {0};
      for (int a = i - 1; a <= cap_; ++a) {
        u32 ha = pw_[size_t(i) - 1].c[a];
        if (!ha) continue;
        for (int bdeg = 1; a + bdeg <= cap_; ++bdeg)
          t[a + bdeg] += ha * fb.c[bdeg];
      }
      for (int a = 0; a <= cap_; ++a) pw_[size_t(i)].c[a] = t[a] % p_;
    }
  }

  Code apply(Code x) const override {
    nottdetail::Buf fx, out;
    o_.unpack(x, fx);
    apply_buf(fx, out);
    return o_.pack(out);
  }

  void apply_iota(Code n, Code* out) const override {
    // digit odometer over the free coefficient positions with suffix sums
    int npos = int(o_.positions_.size());
    std::vector<nottdetail::Buf> suf(size_t(npos) + 1);
    std::vector<u32> digit(size_t(npos), 0);
    for (auto& s : suf)
      for (int a = 0; a <= cap_; ++a) s.c[a] = pw_[1].c[a];
    nottdetail::Buf res;
    for (Code x = 0;; ++x) {
      res = suf[0];
      o_.canonicalize(res);
      out[x] = o_.pack(res);
      if (x + 1 >= n) break;
      int d = 0;
      while (digit[size_t(d)] == p_ - 1) {
        digit[size_t(d)] = 0;
        ++d;
      }
      ++digit[size_t(d)];
      int deg = o_.positions_[size_t(d)];
      nottdetail::Buf& s = suf[size_t(d) + 1];
      for (int a = deg; a <= cap_; ++a)
        s.c[a] = (s.c[a] + pw_[size_t(deg)].c[a]) % p_;
      for (int j = d; j >= 0; --j) suf[size_t(j)] = suf[size_t(j) + 1];
    }
  }

 private:
  void apply_buf(const nottdetail::Buf& fx, nottdetail::Buf& out) const {
    u32 t[nottdetail::MAXDEG] = {0};
    for (int a = 1; a <= cap_; ++a) t[a] = pw_[1].c[a];
    for (int i = 2; i <= cap_; ++i) {
      u32 fi = fx.c[i];
      if (!fi) continue;
      for (int a = i; a <= cap_; ++a) t[a] += fi * pw_[size_t(i)].c[a];
    }
    out.c[0] = 0;
    for (int a = 1; a <= cap_; ++a) out.c[a] = t[a] % p_;
    o_.canonicalize(out);
  }
  const NottinghamOracle& o_;
  int cap_;
  u32 p_;
  std::vector<nottdetail::Buf> pw_;  // pw_[i] = b(t)^i
};

inline std::unique_ptr<Translator> NottinghamOracle::right_translator(
    Code b) const {
  return std::make_unique<NottTranslator>(*this, b);
}

// A quotient plus the standard generator pair: u is the image of t/(1-t),
// v the image of t (1-2t^2)^{-1/2}; both have order p in the full group.
struct NottQuotient {
  QuotientSpec spec;
  std::shared_ptr<NottinghamOracle> oracle;
  Code u = 0, v = 0;
};

inline NottQuotient make_quotient(QuotientSpec spec) {
  NottQuotient q;
  q.spec = spec;
  if (spec.kind == QuotientSpec::Kind::diamond && spec.alpha_inf()) {
    // W = N_{z_m}: the same group as the full quotient at k = z_m
    QuotientSpec full = QuotientSpec::full_q(spec.p, int(zm(spec.p, spec.m)));
    q.oracle = std::make_shared<NottinghamOracle>(full);
    q.spec = spec;
  } else {
    q.oracle = std::make_shared<NottinghamOracle>(spec);
  }
  int cap = q.oracle->cap();
  q.u = q.oracle->series_code(nott_a(spec.p, cap));
  q.v = q.oracle->series_code(nott_b(spec.p, cap));
  return q;
}

// Element of the central layer (degrees >= z_m - 1 ... here: the subgroup of
// series supported from from_deg on) avoiding {[x, g] : g in G}. Existence is
// an invariant of these quotients; a fully covered layer is an integrity
// failure.
inline Code find_uncovered_witness(const Group& G, const NottQuotient& q,
                                   Code x, int from_deg) {
  ElementSet covered = G.commutator_image(x);
  for (Code c : q.oracle->layer_codes(from_deg)) {
    if (c == 0) continue;
    if (!covered.test(c)) return c;
  }
  fail<IntegrityError>("uncovered witness: layer " + std::to_string(from_deg) +
                       " of " + q.spec.str() +
                       " is covered by commutators of the given element");
}

// Candidate Beauville structures for a realized quotient. For p >= 5 the
// pairs {u, v} and {u v^2, u v^4}; for p = 3 the pairs {u, v} and
// {(uw)^{-1}, vz} built from central-layer elements w, z that are not
// commutator values of u resp. v. When the target sits strictly above the
// distinguished level the witnesses are computed in the smaller quotient and
// lifted by zero extension.
inline std::vector<std::array<Code, 4>> suggested_structures(
    const NottQuotient& q, const Group& G, u64 element_budget = 8'000'000) {
  std::vector<std::array<Code, 4>> out;
  int p = q.spec.p;
  const auto& O = *q.oracle;
  if (p >= 5) {
    Code uv2 = G.mul(q.u, G.pow(q.v, 2));
    Code uv4 = G.mul(q.u, G.pow(q.v, 4));
    out.push_back({q.u, q.v, uv2, uv4});
    if (q.spec.kind == QuotientSpec::Kind::diamond && !q.spec.alpha_inf() &&
        q.spec.alpha % p != 0) {
      Code va = G.pow(q.v, u64(q.spec.alpha));
      out.push_back({q.u, va, G.mul(q.u, G.pow(va, 2)), G.mul(q.u, G.pow(va, 4))});
    }
    return out;
  }
  // p = 3: build witnesses at the largest distinguished level whose bottom
  // quotient factors through this group
  int m = 0;
  if (q.spec.kind == QuotientSpec::Kind::full) {
    while (zm(p, m + 1) + 1 <= u64(q.spec.k)) ++m;
  } else {
    m = q.spec.m - 1;
  }
  if (m < 1) return out;
  int twist = q.spec.kind == QuotientSpec::Kind::diamond && !q.spec.alpha_inf()
                  ? q.spec.alpha
                  : 1;
  u64 zsmall = zm(p, m);
  QuotientSpec small = QuotientSpec::full_q(p, int(zsmall) + 1);
  bool same = q.spec.kind == QuotientSpec::Kind::full && q.spec.k == small.k;
  NottQuotient hq = same ? q : make_quotient(small);
  GroupConfig gc;
  gc.element_budget = element_budget;
  const Group* H;
  std::optional<Group> own;
  if (same) {
    H = &G;
  } else {
    own.emplace(hq.oracle, std::vector<Code>{hq.u, hq.v}, gc);
    H = &own.value();
  }
  Code vv = H->pow(hq.v, u64(((twist % p) + p) % p));
  Code w = find_uncovered_witness(*H, hq, hq.u, int(zsmall) - 1);
  Code z = find_uncovered_witness(*H, hq, vv, int(zsmall) - 1);
  // map the four elements into the target group
  auto lift = [&](Code c) {
    return O.series_code(hq.oracle->code_series(c).with_cap(O.cap()));
  };
  Code u_t = lift(hq.u), v_t = lift(vv), w_t = lift(w), z_t = lift(z);
  Code x2 = G.inv(G.mul(u_t, w_t));
  Code y2 = G.mul(v_t, z_t);
  out.push_back({u_t, v_t, x2, y2});
  return out;
}

// Natural quotient map between two realizations of full quotients
// (k_target <= k_source): truncate the series and re-encode.
inline Code natural_projection(const NottinghamOracle& src,
                               const NottinghamOracle& dst, Code a) {
  return dst.series_code(src.code_series(a).with_cap(dst.cap()));
}

}  // namespace beauville
