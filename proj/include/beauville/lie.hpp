#pragma once
// Finite nilpotent Lie rings of p-power order and class <= 4, turned into
// groups via the truncated Baker-Campbell-Hausdorff product. For p >= 5 the
// coefficients 1/2, 1/12, 1/24 exist modulo every additive order, and the
// n-th group power of an element equals its n-th additive multiple, which is
// what the validation suite pins down.
//
// File format ('#' comments):
//   p <prime>
//   basis <name> <additive-order>
//   bracket [<x>,<y>] = <linear combination>      (x, y basis names)
//   class <c>
// Linear combinations are signed terms "3 d" or "c" joined by + / -; "0" is
// the zero combination.

#include <cctype>
#include <sstream>
#include <tuple>

#include "group.hpp"

namespace beauville {

using LieVec = std::vector<u32>;  // coordinates, entry i reduced mod order[i]

struct LieRingTable {
  int p = 0;
  std::vector<std::string> names;
  std::vector<u32> add_order;               // p^{m_i}
  std::vector<std::vector<LieVec>> brk;     // brk[i][j] = [b_i, b_j]
  int declared_class = 0;

  size_t dim() const { return names.size(); }
  u64 order() const {
    u64 o = 1;
    for (u32 r : add_order) o *= r;
    return o;
  }
  LieVec zero() const { return LieVec(dim(), 0); }
  LieVec basis_vec(size_t i) const {
    LieVec v = zero();
    v[i] = 1;
    return v;
  }
};

namespace liedetail {
inline void add_into(const LieRingTable& L, LieVec& acc, const LieVec& v,
                     u64 scale) {
  for (size_t k = 0; k < acc.size(); ++k)
    acc[k] = u32((acc[k] + scale % L.add_order[k] * u64(v[k])) % L.add_order[k]);
}
}  // namespace liedetail

inline LieVec lie_add(const LieRingTable& L, const LieVec& x, const LieVec& y) {
  LieVec r = x;
  liedetail::add_into(L, r, y, 1);
  return r;
}
inline LieVec lie_scale(const LieRingTable& L, const LieVec& x, i64 n) {
  LieVec r = L.zero();
  for (size_t k = 0; k < r.size(); ++k) {
    i64 m = i64(L.add_order[k]);
    r[k] = u32(((i64(x[k]) * (n % m)) % m + m) % m);
  }
  return r;
}
inline LieVec lie_neg(const LieRingTable& L, const LieVec& x) {
  return lie_scale(L, x, -1);
}

// Bilinear extension of the structure constants; [x, y].
inline LieVec bracket(const LieRingTable& L, const LieVec& x, const LieVec& y) {
  LieVec r = L.zero();
  for (size_t i = 0; i < L.dim(); ++i) {
    if (!x[i]) continue;
    for (size_t j = 0; j < L.dim(); ++j) {
      if (!y[j]) continue;
      liedetail::add_into(L, r, L.brk[i][j], u64(x[i]) * y[j]);
    }
  }
  return r;
}

// Left-normed bracket [x1, x2, ..., xk].
inline LieVec bracket_chain(const LieRingTable& L, std::vector<LieVec> xs) {
  if (xs.empty()) fail<InputError>("bracket_chain: empty");
  LieVec acc = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) acc = bracket(L, acc, xs[i]);
  return acc;
}

// Validates antisymmetry, the Jacobi identity on all basis triples, and
// compatibility of the structure constants with the additive orders.
inline void validate_lie_table(const LieRingTable& L) {
  size_t n = L.dim();
  if (L.brk.size() != n) fail<InputError>("lie table: bad bracket shape");
  for (size_t i = 0; i < n; ++i) {
    if (L.brk[i].size() != n) fail<InputError>("lie table: bad bracket shape");
    for (size_t j = 0; j < n; ++j) {
      if (L.brk[i][j].size() != n) fail<InputError>("lie table: bad entry");
      // [b_i, b_j] = -[b_j, b_i]
      LieVec s = lie_add(L, L.brk[i][j], L.brk[j][i]);
      for (u32 c : s)
        if (c) fail<IntegrityError>("lie table: antisymmetry fails");
      // additive-order compatibility: ord(b_i) * [b_i, b_j] = 0
      for (size_t k = 0; k < n; ++k)
        if (u64(L.brk[i][j][k]) * L.add_order[i] % L.add_order[k] ||
            u64(L.brk[i][j][k]) * L.add_order[j] % L.add_order[k])
          fail<IntegrityError>("lie table: structure constant incompatible "
                               "with additive orders");
    }
    if (L.brk[i][i] != L.zero())
      fail<IntegrityError>("lie table: [x,x] must vanish");
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        LieVec s = bracket(L, L.brk[i][j], L.basis_vec(k));
        s = lie_add(L, s, bracket(L, L.brk[j][k], L.basis_vec(i)));
        s = lie_add(L, s, bracket(L, L.brk[k][i], L.basis_vec(j)));
        for (u32 c : s)
          if (c) fail<IntegrityError>("lie table: Jacobi identity fails");
      }
}

// BCH product truncated at class 4:
//   x + y + 1/2 [x,y] + 1/12 ([x,x,y] + [y,y,x]) - 1/24 [y,x,x,y]
// (left-normed brackets), with the rational coefficients realized as inverses
// modulo each additive order. Requires p >= 5.
inline LieVec bch_multiply(const LieRingTable& L, const LieVec& x,
                           const LieVec& y) {
  LieVec r = lie_add(L, x, y);
  LieVec xy = bracket(L, x, y);
  bool xy_zero = xy == L.zero();
  for (size_t k = 0; k < L.dim(); ++k)
    if (xy[k])
      r[k] = u32((r[k] + u64(xy[k]) * mod_inv(2, L.add_order[k])) %
                 L.add_order[k]);
  if (!xy_zero) {
    LieVec xxy = bracket(L, x, xy);               // [x,[x,y]] = -[[x,y],x]
    LieVec yyx = bracket(L, y, bracket(L, y, x)); // [y,[y,x]]
    for (size_t k = 0; k < L.dim(); ++k) {
      u64 m = L.add_order[k];
      u64 t = (u64(xxy[k]) + yyx[k]) % m;
      if (t) r[k] = u32((r[k] + t * mod_inv(12, m)) % m);
    }
    LieVec w = bracket(L, y, bracket(L, x, xy));  // [y,[x,[x,y]]]
    for (size_t k = 0; k < L.dim(); ++k) {
      u64 m = L.add_order[k];
      if (w[k]) r[k] = u32((r[k] + (m - w[k]) % m * mod_inv(24, m)) % m);
    }
  }
  return r;
}

// True iff the BCH n-th power of x equals the additive multiple n*x.
inline bool power_multiple_check(const LieRingTable& L, const LieVec& x,
                                 u64 n) {
  LieVec acc = L.zero();
  for (u64 i = 0; i < n; ++i) acc = bch_multiply(L, acc, x);
  return acc == lie_scale(L, x, i64(n));
}

class LieOracle : public GroupOracle {
 public:
  explicit LieOracle(LieRingTable L) : L_(std::move(L)) {
    if (L_.p < 5) fail<InputError>("lie oracle: p must be >= 5");
    if (L_.declared_class > 4)
      fail<InputError>("lie oracle: class must be <= 4");
    validate_lie_table(L_);
    size_ = L_.order();
  }
  const LieRingTable& table() const { return L_; }
  u64 size() const override { return size_; }
  Code mul(Code a, Code b) const override {
    return pack(bch_multiply(L_, unpack(a), unpack(b)));
  }
  Code inv(Code a) const override { return pack(lie_neg(L_, unpack(a))); }
  std::string describe() const override {
    return "BCH group of order " + std::to_string(size_);
  }
  std::string element_repr(Code a) const override {
    LieVec v = unpack(a);
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
      if (!v[i]) continue;
      if (!s.empty()) s += " + ";
      if (v[i] != 1) s += std::to_string(v[i]) + " ";
      s += L_.names[i];
    }
    return s.empty() ? "0" : s;
  }
  // coordinates over the basis, reduced modulo the additive orders
  Code element_from_coords(const std::vector<i64>& cs) const override {
    if (cs.size() != L_.dim())
      fail<InputError>("expected " + std::to_string(L_.dim()) +
                       " basis coordinates");
    LieVec v = L_.zero();
    for (size_t i = 0; i < v.size(); ++i) {
      i64 m = i64(L_.add_order[i]);
      v[i] = u32(((cs[i] % m) + m) % m);
    }
    return pack(v);
  }
  LieVec unpack(Code a) const {
    LieVec v = L_.zero();
    for (size_t i = 0; i < v.size(); ++i) {
      v[i] = a % L_.add_order[i];
      a /= L_.add_order[i];
    }
    return v;
  }
  Code pack(const LieVec& v) const {
    u64 c = 0;
    for (size_t i = v.size(); i-- > 0;) c = c * L_.add_order[i] + v[i];
    return Code(c);
  }
  Code basis_code(size_t i) const { return pack(L_.basis_vec(i)); }

 private:
  LieRingTable L_;
  u64 size_ = 0;
};

// Distinct-and-nontrivial test for <p^{e-1} a> and <p^{e-1} b> inside the
// additive group (no BCH involved); e is the additive exponent.
inline bool lie_easy_detect(const LieRingTable& L, const LieVec& a,
                            const LieVec& b) {
  u32 expo = 1;
  for (u32 r : L.add_order) expo = std::max(expo, r);
  u64 q = expo / u64(L.p);
  LieVec sa = lie_scale(L, a, i64(q)), sb = lie_scale(L, b, i64(q));
  if (sa == L.zero() || sb == L.zero()) return false;
  // equal iff sb is an integer multiple of sa and vice versa
  for (u64 j = 1; j < u64(L.p) * L.p; ++j)
    if (lie_scale(L, sa, i64(j)) == sb) return false;
  return true;
}

// ---- built-in tables -------------------------------------------------------

// Two-generator ring of order p^6, class 3: basis (a, b, c, d) with additive
// orders (p^2, p^2, p, p), [b,a] = c, [c,a] = p b, [c,b] = d. Here <pa> and
// <pb> are distinct nontrivial subgroups.
inline LieRingTable builtin_lie_l1(int p) {
  if (p < 5) fail<InputError>("L1: p must be >= 5");
  LieRingTable L;
  L.p = p;
  L.declared_class = 3;
  L.names = {"a", "b", "c", "d"};
  u32 p2 = u32(p) * u32(p);
  L.add_order = {p2, p2, u32(p), u32(p)};
  size_t n = 4;
  L.brk.assign(n, std::vector<LieVec>(n, L.zero()));
  auto set = [&](size_t i, size_t j, LieVec v) {
    L.brk[i][j] = v;
    L.brk[j][i] = lie_neg(L, v);
  };
  // indices: a=0 b=1 c=2 d=3
  LieVec c = L.zero();
  c[2] = 1;
  set(1, 0, c);  // [b,a] = c
  LieVec pb = L.zero();
  pb[1] = u32(p);
  set(2, 0, pb);  // [c,a] = [b,a,a] = p b
  LieVec d = L.zero();
  d[3] = 1;
  set(2, 1, d);  // [c,b] = [b,a,b] = d
  validate_lie_table(L);
  return L;
}

// Two-generator ring of order p^6, class 4: basis (a, b', c, d1, d2) with
// additive orders (p^2, p, p, p, p) where b' = b - a kills the shared value
// pa = pb = [b,a,a,a]. Here <pa> = <pb>.
inline LieRingTable builtin_lie_l2(int p) {
  if (p < 5) fail<InputError>("L2: p must be >= 5");
  LieRingTable L;
  L.p = p;
  L.declared_class = 4;
  L.names = {"a", "b1", "c", "d1", "d2"};
  u32 p2 = u32(p) * u32(p);
  L.add_order = {p2, u32(p), u32(p), u32(p), u32(p)};
  size_t n = 5;
  L.brk.assign(n, std::vector<LieVec>(n, L.zero()));
  auto set = [&](size_t i, size_t j, LieVec v) {
    L.brk[i][j] = v;
    L.brk[j][i] = lie_neg(L, v);
  };
  auto unit = [&](size_t k, u32 v) {
    LieVec x = L.zero();
    x[k] = v;
    return x;
  };
  // indices: a=0 b1=1 c=2 d1=3 d2=4; e1 := [b,a,a,a] = p a
  set(1, 0, unit(2, 1));              // [b',a] = [b,a] = c
  set(2, 0, unit(3, 1));              // [c,a]  = d1
  // [c,b'] = [c,b] - [c,a] = d2 - d1
  {
    LieVec v = unit(4, 1);
    v[3] = u32(p - 1);
    set(2, 1, v);
  }
  set(3, 0, unit(0, u32(p)));         // [d1,a] = e1 = p a
  // [d1,b'] = [d1,b] - [d1,a] = 0 - e1 = -p a
  set(3, 1, unit(0, u32(p2 - u32(p))));
  set(4, 0, L.zero());                // [d2,a] = [b,a,a,b] = 0
  // [d2,b'] = [d2,b] - [d2,a] = -e1 - 0 = -p a
  set(4, 1, unit(0, u32(p2 - u32(p))));
  validate_lie_table(L);
  return L;
}

inline LieRingTable builtin_lie(const std::string& name, int p) {
  if (name == "L1") return builtin_lie_l1(p);
  if (name == "L2") return builtin_lie_l2(p);
  fail<InputError>("unknown builtin lie ring '" + name + "'");
}

// Generator coordinates (a, b) of the built-in rings. For l2 the basis
// stores b1 = b - a, so the original generator b is a + b1.
inline std::pair<LieVec, LieVec> builtin_lie_generators(const LieRingTable& L,
                                                        const std::string& name) {
  LieVec a = L.basis_vec(0);
  LieVec b = L.basis_vec(1);
  if (name == "L2") b = lie_add(L, a, b);
  return {a, b};
}

// ---- file format -----------------------------------------------------------

inline LieVec parse_lie_combination(const LieRingTable& L, const std::string& s,
                                    int lineno) {
  LieVec v = L.zero();
  std::istringstream in(s);
  std::string tok;
  i64 sign = 1;
  i64 coeff = 1;
  bool have_coeff = false;
  auto flush_name = [&](const std::string& name) {
    for (size_t i = 0; i < L.dim(); ++i)
      if (L.names[i] == name) {
        i64 m = i64(L.add_order[i]);
        v[i] = u32(((v[i] + sign * coeff) % m + m) % m);
        sign = 1;
        coeff = 1;
        have_coeff = false;
        return;
      }
    fail<InputError>("lie file line " + std::to_string(lineno) +
                     ": unknown basis element '" + name + "'");
  };
  while (in >> tok) {
    if (tok == "0") continue;
    if (tok == "+") continue;
    if (tok == "-") {
      sign = -sign;
      continue;
    }
    bool numeric = !tok.empty() &&
                   (std::isdigit(u8(tok[0])) || tok[0] == '-' || tok[0] == '+');
    if (numeric) {
      if (have_coeff)
        fail<InputError>("lie file line " + std::to_string(lineno) +
                         ": two coefficients in a row");
      coeff = std::stoll(tok);
      have_coeff = true;
    } else {
      flush_name(tok);
    }
  }
  if (have_coeff)
    fail<InputError>("lie file line " + std::to_string(lineno) +
                     ": dangling coefficient");
  return v;
}

inline LieRingTable parse_lie_file(const std::string& text) {
  LieRingTable L;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::vector<std::tuple<std::string, std::string, std::string, int>> brackets;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "p") {
      if (!(ls >> L.p) || !is_prime(u64(L.p)))
        fail<InputError>("lie file line " + std::to_string(lineno) +
                         ": expected a prime");
    } else if (kw == "basis") {
      std::string name;
      u64 ord;
      if (!(ls >> name >> ord))
        fail<InputError>("lie file line " + std::to_string(lineno) +
                         ": expected 'basis <name> <order>'");
      L.names.push_back(name);
      L.add_order.push_back(u32(ord));
    } else if (kw == "bracket") {
      std::string lhs, eq, rest;
      if (!(ls >> lhs >> eq) || eq != "=")
        fail<InputError>("lie file line " + std::to_string(lineno) +
                         ": expected 'bracket [x,y] = <combination>'");
      std::getline(ls, rest);
      if (lhs.size() < 5 || lhs.front() != '[' || lhs.back() != ']')
        fail<InputError>("lie file line " + std::to_string(lineno) +
                         ": expected '[x,y]'");
      auto comma = lhs.find(',');
      brackets.emplace_back(lhs.substr(1, comma - 1),
                            lhs.substr(comma + 1, lhs.size() - comma - 2), rest,
                            lineno);
    } else if (kw == "class") {
      ls >> L.declared_class;
    } else {
      fail<InputError>("lie file line " + std::to_string(lineno) +
                       ": unknown directive '" + kw + "'");
    }
  }
  size_t n = L.dim();
  L.brk.assign(n, std::vector<LieVec>(n, L.zero()));
  auto idx = [&](const std::string& name, int ln) -> size_t {
    for (size_t i = 0; i < n; ++i)
      if (L.names[i] == name) return i;
    fail<InputError>("lie file line " + std::to_string(ln) +
                     ": unknown basis element '" + name + "'");
  };
  for (auto& [x, y, combo, ln] : brackets) {
    size_t i = idx(x, ln), j = idx(y, ln);
    LieVec v = parse_lie_combination(L, combo, ln);
    L.brk[i][j] = v;
    L.brk[j][i] = lie_neg(L, v);
  }
  validate_lie_table(L);
  return L;
}

inline std::string write_lie_file(const LieRingTable& L) {
  std::ostringstream os;
  os << "p " << L.p << "\n";
  for (size_t i = 0; i < L.dim(); ++i)
    os << "basis " << L.names[i] << " " << L.add_order[i] << "\n";
  os << "class " << L.declared_class << "\n";
  for (size_t i = 0; i < L.dim(); ++i)
    for (size_t j = 0; j < i; ++j) {
      const LieVec& v = L.brk[i][j];
      bool zero = true;
      for (u32 c : v) zero = zero && !c;
      if (zero) continue;
      os << "bracket [" << L.names[i] << "," << L.names[j] << "] =";
      bool first = true;
      for (size_t k = 0; k < L.dim(); ++k)
        if (v[k]) {
          os << (first ? " " : " + ");
          if (v[k] != 1) os << v[k] << " ";
          os << L.names[k];
          first = false;
        }
      os << "\n";
    }
  return os.str();
}

}  // namespace beauville
