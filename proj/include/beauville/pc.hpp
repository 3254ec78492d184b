#pragma once
// Power-conjugate presentations of finite p-groups and multiplication by
// collection. Generators g_1 < ... < g_n carry relative orders p^{e_i};
// power relations rewrite g_i^{p^{e_i}} into the subgroup generated by the
// higher-indexed generators, conjugation relations rewrite g_j^{g_i} (i < j)
// there as well. Normal forms are exponent tuples g_1^{x_1} ... g_n^{x_n}.
//
// Grammar (UTF-8 text, '#' comments):
//   p <prime>
//   gen <name> <relative-order>            in collection order
//   pow <name> = <word>
//   conj <base>^<conjugator> = <word>
//   comm [<x>,<y>] = <word>                sugar for y^x = y * w^{-1}
// Words are juxtaposed factors name or name^<int> ("1" is the empty word).
// Missing power relations default to g^ord = 1, missing conjugations to
// commuting generators.

#include <map>
#include <sstream>

#include "group.hpp"

namespace beauville {

using NormalWord = std::vector<u32>;  // exponent per generator

struct WordLetter {
  u32 gen;
  i64 exp;
};
using Word = std::vector<WordLetter>;

struct PcPresentation {
  int p = 0;
  std::vector<std::string> names;
  std::vector<u32> rel_order;                 // p^{e_i}
  std::vector<Word> pow_raw;                  // RHS of g_i^{rel_order_i}
  std::vector<std::map<u32, Word>> conj_raw;  // conj_raw[i][j]: g_j^{g_i}

  size_t ngens() const { return names.size(); }
  u64 presented_order() const {
    u64 o = 1;
    for (u32 r : rel_order) o *= r;
    return o;
  }
};

namespace pcdetail {

struct Cursor {
  std::string_view text;
  size_t pos = 0;
  int line = 1, col = 1;
};

[[noreturn]] inline void parse_fail(const Cursor& c, const std::string& msg) {
  fail<InputError>("presentation parse error at line " + std::to_string(c.line) +
                   ", column " + std::to_string(c.col) + ": " + msg);
}

}  // namespace pcdetail

// Parses the grammar above. Grammar violations and ill-ordered relations
// throw InputError with line/column positions.
inline PcPresentation parse_presentation(const std::string& text) {
  PcPresentation P;
  std::map<std::string, u32> index;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool have_p = false;

  auto fail_at = [&](int col, const std::string& msg) {
    pcdetail::Cursor c;
    c.line = lineno;
    c.col = col;
    pcdetail::parse_fail(c, msg);
  };
  auto gen_index = [&](const std::string& name, int col) -> u32 {
    auto it = index.find(name);
    if (it == index.end()) fail_at(col, "unknown generator '" + name + "'");
    return it->second;
  };
  // splits a word "a^2 b c^-1" into letters; "1" is empty
  auto parse_word = [&](const std::string& s, int col0) -> Word {
    Word w;
    std::istringstream ws(s);
    std::string tok;
    while (ws >> tok) {
      if (tok == "1") continue;
      std::string name = tok;
      i64 e = 1;
      if (auto caret = tok.find('^'); caret != std::string::npos) {
        name = tok.substr(0, caret);
        try {
          e = std::stoll(tok.substr(caret + 1));
        } catch (...) {
          fail_at(col0, "bad exponent in '" + tok + "'");
        }
      }
      if (e != 0) w.push_back({gen_index(name, col0), e});
    }
    return w;
  };
  auto check_ordered = [&](const Word& w, u32 above, int col,
                           const char* what) {
    for (auto& l : w)
      if (l.gen <= above)
        fail_at(col, std::string(what) + " relation references generator '" +
                         P.names[l.gen] + "' not after '" + P.names[above] +
                         "': ill-ordered");
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "p") {
      int p = 0;
      if (!(ls >> p) || !is_prime(u64(p))) fail_at(1, "expected a prime after 'p'");
      P.p = p;
      have_p = true;
    } else if (kw == "gen") {
      if (!have_p) fail_at(1, "'p <prime>' must come first");
      std::string name;
      u64 ord = 0;
      if (!(ls >> name >> ord)) fail_at(1, "expected 'gen <name> <order>'");
      u64 o = ord;
      while (o > 1 && o % u64(P.p) == 0) o /= u64(P.p);
      if (o != 1 || ord < 2 || ord > 0x7fffffff)
        fail_at(1, "relative order must be a power of p");
      if (index.count(name)) fail_at(1, "duplicate generator '" + name + "'");
      index[name] = u32(P.names.size());
      P.names.push_back(name);
      P.rel_order.push_back(u32(ord));
      P.pow_raw.push_back({});
      P.conj_raw.push_back({});
    } else if (kw == "pow") {
      std::string name, eq, rest;
      if (!(ls >> name >> eq) || eq != "=") fail_at(1, "expected 'pow <name> = <word>'");
      std::getline(ls, rest);
      u32 i = gen_index(name, 1);
      Word w = parse_word(rest, 1);
      check_ordered(w, i, 1, "power");
      P.pow_raw[i] = std::move(w);
    } else if (kw == "conj") {
      std::string lhs, eq, rest;
      if (!(ls >> lhs >> eq) || eq != "=") fail_at(1, "expected 'conj <g>^<h> = <word>'");
      std::getline(ls, rest);
      auto caret = lhs.find('^');
      if (caret == std::string::npos) fail_at(1, "expected '<g>^<h>' on the left");
      u32 j = gen_index(lhs.substr(0, caret), 1);
      u32 i = gen_index(lhs.substr(caret + 1), 1);
      if (!(i < j)) fail_at(1, "conjugator must precede the base generator");
      Word w = parse_word(rest, 1);
      check_ordered(w, i, 1, "conjugation");
      P.conj_raw[i][j] = std::move(w);
    } else if (kw == "comm") {
      // comm [x,y] = w  with [x,y] = x^{-1}y^{-1}xy, i.e. y^x = y w^{-1}
      std::string lhs, eq, rest;
      if (!(ls >> lhs >> eq) || eq != "=") fail_at(1, "expected 'comm [x,y] = <word>'");
      std::getline(ls, rest);
      if (lhs.size() < 5 || lhs.front() != '[' || lhs.back() != ']')
        fail_at(1, "expected '[x,y]' on the left");
      auto commapos = lhs.find(',');
      if (commapos == std::string::npos) fail_at(1, "expected '[x,y]' on the left");
      u32 x = gen_index(lhs.substr(1, commapos - 1), 1);
      u32 y = gen_index(lhs.substr(commapos + 1, lhs.size() - commapos - 2), 1);
      if (!(x < y)) fail_at(1, "conjugator must precede the base generator");
      Word w = parse_word(rest, 1);
      Word rhs;
      rhs.push_back({y, 1});
      for (auto it = w.rbegin(); it != w.rend(); ++it)
        rhs.push_back({it->gen, -it->exp});
      check_ordered(rhs, x, 1, "commutator");
      P.conj_raw[x][y] = std::move(rhs);
    } else {
      fail_at(1, "unknown directive '" + kw + "'");
    }
  }
  if (!have_p) {
    pcdetail::Cursor c;
    pcdetail::parse_fail(c, "missing 'p <prime>' line");
  }
  return P;
}

// Collector: normal forms and products for a parsed presentation. Collection
// is from the left with exponents handled in batch: moving g_i^e past the
// tail conjugates each tail generator through a precomputed table of
// g_j^{g_i^e} normal forms, and power-relation overflow splices in the stored
// right-hand side. Products of normal words only ever create positive
// exponents; inverses lift negative powers through the power relations.
class PcGroup {
 public:
  explicit PcGroup(PcPresentation pres, u64 step_budget = 1'000'000)
      : P(std::move(pres)), budget_(step_budget) {
    size_t n = P.ngens();
    for (u32 r : P.rel_order)
      if (r > 100'000)
        fail<ResourceError>("collector: relative order too large");
    pow_rhs_.assign(n, NormalWord(n, 0));
    inv_pow_rhs_.assign(n, NormalWord(n, 0));
    conj_pow_.assign(n, {});
    // normalize relation right-hand sides bottom-up; a relation at index i
    // only involves generators above i, whose tables are already built
    for (size_t ii = n; ii-- > 0;) {
      u32 i = u32(ii);
      u32 ord = P.rel_order[i];
      conj_pow_[i].assign(ord, std::vector<NormalWord>(n));
      for (u32 j = u32(ii) + 1; j < n; ++j) {
        NormalWord base = one();
        auto it = P.conj_raw[i].find(j);
        if (it == P.conj_raw[i].end())
          base[j] = 1;  // commuting default
        else
          base = collect(it->second);
        if (ord > 1) conj_pow_[i][1][j] = base;
      }
      for (u32 e = 2; e < ord; ++e)
        for (u32 j = u32(ii) + 1; j < n; ++j) {
          // g_j^{g_i^e} = (g_j^{g_i^{e-1}})^{g_i}
          u64 steps = 0;
          NormalWord r = one();
          const NormalWord& prev = conj_pow_[i][e - 1][j];
          for (u32 k = u32(ii) + 1; k < n; ++k)
            for (u32 t = 0; t < prev[k]; ++t)
              mul_norm(r, conj_pow_[i][1][k], steps);
          conj_pow_[i][e][j] = std::move(r);
        }
      pow_rhs_[i] = collect(P.pow_raw[i]);
      inv_pow_rhs_[i] = inverse(pow_rhs_[i]);
    }
  }

  const PcPresentation& presentation() const { return P; }
  NormalWord one() const { return NormalWord(P.ngens(), 0); }

  NormalWord collect(const Word& w) const {
    u64 steps = 0;
    NormalWord r = one();
    mul_word(r, w, steps);
    return r;
  }
  NormalWord mul(const NormalWord& a, const NormalWord& b) const {
    u64 steps = 0;
    NormalWord r = a;
    mul_norm(r, b, steps);
    return r;
  }
  NormalWord inverse(const NormalWord& w) const {
    u64 steps = 0;
    return inverse_impl(w, steps);
  }

  std::string str(const NormalWord& w) const {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i]) {
        if (!s.empty()) s += " ";
        s += P.names[i];
        if (w[i] != 1) s += "^" + std::to_string(w[i]);
      }
    return s.empty() ? "1" : s;
  }

 private:
  void bump_steps(u64& steps) const {
    if (++steps > budget_)
      fail<ResourceError>(
          "collection step budget exceeded (inconsistent presentation?)");
  }

  // w := w * g_i^e with 0 <= e < rel_order_i
  void mul_gen_pow(NormalWord& w, u32 i, u32 e, u64& steps) const {
    if (!e) return;
    bump_steps(steps);
    size_t n = w.size();
    u64 tail_mask = 0;
    for (u32 j = i + 1; j < n; ++j)
      if (w[j]) tail_mask |= u64(1) << j;
    u64 tot = u64(w[i]) + e;
    u32 ord = P.rel_order[i];
    w[i] = u32(tot % ord);
    bool wrap = tot >= ord;
    if (!tail_mask && !wrap) return;
    NormalWord tail(n, 0);
    for (u32 j = i + 1; j < n; ++j) {
      tail[j] = w[j];
      w[j] = 0;
    }
    if (wrap) mul_norm(w, pow_rhs_[i], steps);
    for (u32 j = i + 1; j < n; ++j) {
      if (!tail[j]) continue;
      const NormalWord& c = conj_pow_[i][e][j];
      for (u32 t = 0; t < tail[j]; ++t) mul_norm(w, c, steps);
    }
  }

  void mul_norm(NormalWord& w, const NormalWord& v, u64& steps) const {
    for (u32 j = 0; j < v.size(); ++j)
      if (v[j]) mul_gen_pow(w, j, v[j], steps);
  }

  void mul_word(NormalWord& w, const Word& v, u64& steps) const {
    for (const auto& l : v) {
      if (l.gen >= w.size()) fail<InputError>("collect: bad generator index");
      u32 ord = P.rel_order[l.gen];
      if (l.exp >= 0) {
        u64 e = u64(l.exp);
        mul_gen_pow(w, l.gen, u32(e % ord), steps);
        for (u64 t = 0; t < e / ord; ++t) mul_norm(w, pow_rhs_[l.gen], steps);
      } else {
        // g^{-1} = g^{ord-1} (g^{ord})^{-1}
        for (i64 t = 0; t < -l.exp; ++t) {
          mul_gen_pow(w, l.gen, ord - 1, steps);
          mul_norm(w, inv_pow_rhs_[l.gen], steps);
        }
      }
    }
  }

  NormalWord inverse_impl(const NormalWord& w, u64& steps) const {
    NormalWord r = one();
    for (size_t ii = w.size(); ii-- > 0;) {
      u32 i = u32(ii);
      if (!w[i]) continue;
      mul_gen_pow(r, i, P.rel_order[i] - w[i], steps);
      mul_norm(r, inv_pow_rhs_[i], steps);
    }
    return r;
  }

  PcPresentation P;
  u64 budget_;
  std::vector<NormalWord> pow_rhs_, inv_pow_rhs_;
  // conj_pow_[i][e][j] = normal form of g_j^{g_i^e}, for i < j, 1 <= e < ord_i
  std::vector<std::vector<std::vector<NormalWord>>> conj_pow_;
};

// Multiplication oracle over dense codes (mixed-radix exponent tuples).
class PcOracle : public GroupOracle {
 public:
  explicit PcOracle(std::shared_ptr<const PcGroup> g) : g_(std::move(g)) {
    for (u32 r : g_->presentation().rel_order) radix_.push_back(r);
    size_ = g_->presentation().presented_order();
  }
  u64 size() const override { return size_; }
  Code mul(Code a, Code b) const override {
    return pack(g_->mul(unpack(a), unpack(b)));
  }
  Code inv(Code a) const override { return pack(g_->inverse(unpack(a))); }
  std::string describe() const override {
    return "pc-presentation group of order " + std::to_string(size_);
  }
  std::string element_repr(Code a) const override { return g_->str(unpack(a)); }
  // coordinates are the normal-form exponents
  Code element_from_coords(const std::vector<i64>& cs) const override {
    if (cs.size() != radix_.size())
      fail<InputError>("expected " + std::to_string(radix_.size()) +
                       " exponents");
    NormalWord w(radix_.size(), 0);
    for (size_t i = 0; i < radix_.size(); ++i)
      w[i] = u32(((cs[i] % radix_[i]) + radix_[i]) % radix_[i]);
    return pack(w);
  }
  Code gen_code(u32 i) const {
    NormalWord w(radix_.size(), 0);
    w[i] = 1;
    return pack(w);
  }
  NormalWord unpack(Code a) const {
    NormalWord w(radix_.size(), 0);
    for (size_t i = 0; i < radix_.size(); ++i) {
      w[i] = a % radix_[i];
      a /= radix_[i];
    }
    return w;
  }
  Code pack(const NormalWord& w) const {
    u64 c = 0;
    for (size_t i = radix_.size(); i-- > 0;) c = c * radix_[i] + w[i];
    return Code(c);
  }

 private:
  std::shared_ptr<const PcGroup> g_;
  std::vector<u32> radix_;
  u64 size_ = 0;
};

// Closure count from the generators plus a sampled associativity check;
// false signals an inconsistent presentation (fewer normal forms than the
// presented order, a broken product, or divergent collection).
inline bool consistency_check(std::shared_ptr<const PcGroup> g,
                              u64 seed = 0xc0ffee) {
  PcOracle oracle(g);
  u64 n = oracle.size();
  if (n > 8'000'000) fail<ResourceError>("consistency_check: group too large");
  try {
    spot_check_axioms(oracle, seed);
    std::vector<u8> seen(n, 0);
    std::vector<Code> queue{0};
    seen[0] = 1;
    std::vector<Code> gens;
    for (u32 i = 0; i < g->presentation().ngens(); ++i)
      gens.push_back(oracle.gen_code(i));
    for (size_t qi = 0; qi < queue.size(); ++qi)
      for (Code gc : gens) {
        Code c = oracle.mul(queue[qi], gc);
        if (!seen[c]) {
          seen[c] = 1;
          queue.push_back(c);
        }
      }
    return queue.size() == n;
  } catch (const IntegrityError&) {
    return false;
  } catch (const ResourceError&) {
    return false;
  }
}

// ---- built-in presentations ------------------------------------------------

// <a, b, c | a^{p^2} = b^{p^2} = c^p = [b,c] = 1, [a,b] = c, [a,c] = b^{rp}>,
// the two order-p^5 types distinguished by the quadratic-residue class of r.
inline std::string builtin_h34_text(int p, int r) {
  if (p < 3 || !is_prime(u64(p))) fail<InputError>("h34: p must be an odd prime");
  if (r % p == 0) fail<InputError>("h34: r must not be divisible by p");
  std::ostringstream os;
  os << "# two-generator group of order p^5, exponent p^2\n";
  os << "p " << p << "\n";
  os << "gen a " << p * p << "\n";
  os << "gen b " << p * p << "\n";
  os << "gen c " << p << "\n";
  os << "pow a = 1\npow b = 1\npow c = 1\n";
  os << "comm [a,b] = c\n";
  os << "comm [a,c] = b^" << (i64(r) * p) % (i64(p) * p) << "\n";
  os << "comm [b,c] = 1\n";
  return os.str();
}

// Split metacyclic extension of <a> by <b>, both of order p^e, a^b = a^s.
inline std::string builtin_metacyclic_split_text(int p, int e, i64 s) {
  u64 pe = ipow(u64(p), unsigned(e));
  if (s % p == 0 || (s - 1) % p != 0)
    fail<InputError>("metacyclic: action must be 1 mod p and prime to p");
  std::ostringstream os;
  os << "p " << p << "\n";
  os << "gen b " << pe << "\ngen a " << pe << "\n";
  os << "pow b = 1\npow a = 1\n";
  os << "conj a^b = a^" << ((s % i64(pe)) + i64(pe)) % i64(pe) << "\n";
  return os.str();
}

// Modular group of order p^{e+1}: C_{p^e} extended by C_p, a^b = a^{1+p^{e-1}}.
inline std::string builtin_metacyclic_modular_text(int p, int e) {
  if (e < 2) fail<InputError>("modular metacyclic: e must be >= 2");
  u64 pe = ipow(u64(p), unsigned(e));
  std::ostringstream os;
  os << "p " << p << "\n";
  os << "gen b " << p << "\ngen a " << pe << "\n";
  os << "pow b = 1\npow a = 1\n";
  os << "conj a^b = a^" << 1 + ipow(u64(p), unsigned(e - 1)) << "\n";
  return os.str();
}

}  // namespace beauville
