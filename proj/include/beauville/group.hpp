#pragma once
// Realization of a finite group from a multiplication oracle: full
// enumeration by closure from the generators, cached inverses, Frattini
// coordinates for two-generator p-groups, element orders, subgroup closures
// and the standard structural series.

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "oracle.hpp"

namespace beauville {

class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(u32 universe)
      : n_(universe), w_((universe + 63) / 64, 0) {}
  u32 universe() const { return n_; }
  u32 count() const { return count_; }
  bool test(u32 i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  // Returns true when the bit was newly set.
  bool set(u32 i) {
    u64& w = w_[i >> 6];
    u64 m = u64(1) << (i & 63);
    if (w & m) return false;
    w |= m;
    ++count_;
    return true;
  }
  void merge(const ElementSet& o) {
    count_ = 0;
    for (size_t i = 0; i < w_.size(); ++i) {
      w_[i] |= o.w_[i];
      count_ += u32(__builtin_popcountll(w_[i]));
    }
  }
  template <class F>
  void for_each(F f) const {
    for (size_t wi = 0; wi < w_.size(); ++wi) {
      u64 w = w_[wi];
      while (w) {
        unsigned b = unsigned(__builtin_ctzll(w));
        f(u32(wi * 64 + b));
        w &= w - 1;
      }
    }
  }
  std::vector<u32> to_vector() const {
    std::vector<u32> v;
    v.reserve(count_);
    for_each([&](u32 i) { v.push_back(i); });
    return v;
  }
  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

 private:
  u32 n_ = 0;
  std::vector<u64> w_;
  u32 count_ = 0;
};

// A subgroup as an element set together with the essential generators the
// closure actually used.
struct Subgroup {
  ElementSet set;
  std::vector<Code> gens;
  u32 order() const { return set.count(); }
};

struct GroupConfig {
  u64 element_budget = 8'000'000;
  u64 seed = 0xb07a11;
};

class Group {
 public:
  Group(std::shared_ptr<const GroupOracle> oracle, std::vector<Code> gens,
        GroupConfig cfg = {})
      : oracle_(std::move(oracle)), gens_(std::move(gens)) {
    u64 n = oracle_->size();
    if (n > cfg.element_budget)
      fail<ResourceError>("realize: " + oracle_->describe() + " has " +
                          std::to_string(n) + " elements, over the budget of " +
                          std::to_string(cfg.element_budget));
    n_ = u32(n);
    spot_check_axioms(*oracle_, cfg.seed);
    for (Code g : gens_)
      if (g >= n_) fail<InputError>("realize: generator code out of range");
    if (auto pp = prime_power(n)) {
      p_ = pp->first;
      logn_ = pp->second;
    }
    enumerate();
  }

  u32 order() const { return n_; }
  const GroupOracle& oracle() const { return *oracle_; }
  std::shared_ptr<const GroupOracle> oracle_ptr() const { return oracle_; }
  const std::vector<Code>& gens() const { return gens_; }
  bool is_p_group() const { return p_ != 0 || n_ == 1; }
  u64 prime() const { return p_; }
  int order_exp() const { return logn_; }

  Code mul(Code a, Code b) const { return oracle_->mul(a, b); }
  Code inv(Code a) const { return inv_[a]; }
  Code conj(Code x, Code g) const { return mul(mul(inv_[g], x), g); }
  Code comm(Code x, Code y) const {
    return mul(mul(inv_[x], inv_[y]), mul(x, y));
  }
  Code pow(Code g, u64 e) const {
    Code acc = 0, base = g;
    while (e) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  // ---- generation -------------------------------------------------------

  // Minimal number of generators for p-groups (Burnside basis); -1 when the
  // notion is not computed (non-prime-power order).
  int rank() const { return rank_; }
  const ElementSet& frattini() const { return frattini_; }
  bool has_coords() const { return !coords_.empty(); }
  // Coordinates of g modulo the Frattini subgroup in the basis given by the
  // two generators.
  std::array<u8, 2> coords(Code g) const {
    return {coords_[size_t(g) * 2], coords_[size_t(g) * 2 + 1]};
  }

  bool pair_generates(Code x, Code y) const {
    if (has_coords()) {
      auto a = coords(x), b = coords(y);
      return (i32(a[0]) * b[1] - i32(a[1]) * b[0]) % i32(p_) != 0;
    }
    if (int r = oracle_->pair_generates(x, y); r >= 0) return r == 1;
    std::array<Code, 2> seeds{x, y};
    return closure(seeds).order() == n_;
  }

  // ---- orders and power maps ---------------------------------------------

  // g -> g^p map (p-groups only).
  const std::vector<Code>& pth_power_map() const {
    ensure_orders();
    return powp_;
  }
  const std::vector<u32>& order_table() const {
    ensure_orders();
    return orders_;
  }
  u32 element_order(Code g) const {
    ensure_orders();
    return orders_[g];
  }
  u32 exponent() const {
    ensure_orders();
    return exponent_;
  }
  // e with exp(G) = p^e, for p-groups.
  int exponent_exp() const {
    ensure_orders();
    return expexp_;
  }

  // ---- subgroup machinery -------------------------------------------------

  // Subgroup generated by the seeds; with normal = true, the normal closure
  // (conjugation by the conjugator set, defaulting to the group generators).
  Subgroup closure(std::span<const Code> seeds, bool normal = false) const {
    return closure_impl(seeds, normal ? gens_ : std::vector<Code>{});
  }
  Subgroup closure(std::span<const Code> seeds,
                   const std::vector<Code>& conjugators) const {
    return closure_impl(seeds, conjugators);
  }

  Subgroup whole_group() const {
    Subgroup s;
    s.set = ElementSet(n_);
    for (u32 i = 0; i < n_; ++i) s.set.set(i);
    s.gens = gens_;
    return s;
  }

  ElementSet center() const {
    ElementSet z(n_);
    for (u32 g = 0; g < n_; ++g) {
      bool c = true;
      for (Code a : gens_)
        if (mul(g, a) != mul(a, g)) {
          c = false;
          break;
        }
      if (c) z.set(g);
    }
    return z;
  }

  // gamma_1 = G, gamma_{i+1} = [gamma_i, G]; stops at the trivial subgroup
  // (or at stabilization for a non-nilpotent input).
  std::vector<Subgroup> lower_central_series() const {
    std::vector<Subgroup> s;
    s.push_back(whole_group());
    while (s.back().order() > 1) {
      std::vector<Code> seeds;
      for (Code h : s.back().gens)
        for (Code g : gens_) seeds.push_back(comm(h, g));
      Subgroup next = closure(seeds, true);
      if (next.order() == s.back().order()) break;
      s.push_back(std::move(next));
    }
    return s;
  }

  std::vector<Subgroup> derived_series() const {
    std::vector<Subgroup> s;
    s.push_back(whole_group());
    while (s.back().order() > 1) {
      std::vector<Code> seeds;
      const auto& hg = s.back().gens;
      for (size_t i = 0; i < hg.size(); ++i)
        for (size_t j = i + 1; j < hg.size(); ++j)
          seeds.push_back(comm(hg[i], hg[j]));
      Subgroup next = closure(seeds, true);
      if (next.order() == s.back().order()) break;
      s.push_back(std::move(next));
    }
    return s;
  }

  // Z_0 = 1 <= Z_1 = Z(G) <= ...; ascending, stops at stabilization.
  std::vector<ElementSet> upper_central_series() const {
    std::vector<ElementSet> s;
    ElementSet z0(n_);
    z0.set(0);
    s.push_back(std::move(z0));
    for (;;) {
      const ElementSet& zi = s.back();
      ElementSet zn(n_);
      for (u32 g = 0; g < n_; ++g) {
        bool in = true;
        for (Code a : gens_)
          if (!zi.test(comm(g, a))) {
            in = false;
            break;
          }
        if (in) zn.set(g);
      }
      if (zn.count() == zi.count()) break;
      s.push_back(std::move(zn));
      if (s.back().count() == n_) break;
    }
    return s;
  }

  int nilpotency_class() const {
    auto lcs = lower_central_series();
    if (lcs.back().order() != 1)
      fail<IntegrityError>("nilpotency_class: group is not nilpotent");
    return int(lcs.size()) - 1;
  }

  enum class SeriesKind { lower_central, upper_central, derived, frattini, center };

  // The standard structural series as element-set chains. The frattini chain
  // iterates H -> H' H^p; center returns the one-step chain {1, Z(G)}.
  std::vector<ElementSet> series(SeriesKind kind) const {
    std::vector<ElementSet> out;
    switch (kind) {
      case SeriesKind::lower_central:
        for (auto& s : lower_central_series()) out.push_back(std::move(s.set));
        break;
      case SeriesKind::derived:
        for (auto& s : derived_series()) out.push_back(std::move(s.set));
        break;
      case SeriesKind::upper_central:
        return upper_central_series();
      case SeriesKind::center: {
        ElementSet one(n_);
        one.set(0);
        out.push_back(std::move(one));
        out.push_back(center());
        break;
      }
      case SeriesKind::frattini: {
        Subgroup h = whole_group();
        out.push_back(h.set);
        while (h.order() > 1) {
          h = frattini_of(h);
          out.push_back(h.set);
        }
        break;
      }
    }
    return out;
  }

  // Frattini subgroup of a realized subgroup H (p-groups): H' H^p.
  Subgroup frattini_of(const Subgroup& h) const {
    std::vector<Code> seeds;
    for (size_t i = 0; i < h.gens.size(); ++i) {
      for (size_t j = i + 1; j < h.gens.size(); ++j)
        seeds.push_back(comm(h.gens[i], h.gens[j]));
      seeds.push_back(pow(h.gens[i], p_));
    }
    return closure_impl(seeds, h.gens);
  }

  // The p+1 maximal subgroups of a rank-2 p-group, indexed by the lines of
  // the Frattini quotient: index lambda in [0,p) is the line through
  // (1, lambda), index p the line through (0, 1).
  std::vector<ElementSet> maximal_subgroups() const {
    if (!has_coords())
      fail<InputError>("maximal_subgroups: group does not have rank 2");
    u32 p = u32(p_);
    std::vector<ElementSet> ms(p + 1, ElementSet(n_));
    for (u32 g = 0; g < n_; ++g) {
      auto c = coords(g);
      if (c[0] == 0 && c[1] == 0) {
        for (auto& m : ms) m.set(g);
      } else {
        ms[line_of(c)].set(g);
      }
    }
    return ms;
  }
  // Line index of a nonzero coordinate pair (see maximal_subgroups).
  u32 line_of(std::array<u8, 2> c) const {
    if (c[0] == 0) return u32(p_);
    return u32(c[1]) * u32(mod_inv(c[0], p_)) % u32(p_);
  }

  // {[x, g] : g in G}.
  ElementSet commutator_image(Code x) const {
    ElementSet out(n_);
    Code ix = inv_[x];
    auto rt = oracle_->right_translator(x);
    std::vector<ElementSet> parts;
    std::mutex mu;
    parallel_chunks(n_, [&](u64 b, u64 e, unsigned) {
      ElementSet local(n_);
      for (u64 g = b; g < e; ++g) {
        Code t = rt->apply(inv_[Code(g)]);     // g^{-1} x
        Code cx = mul(mul(ix, t), Code(g));    // x^{-1} g^{-1} x g
        local.set(cx);
      }
      std::lock_guard<std::mutex> lk(mu);
      parts.push_back(std::move(local));
    });
    for (auto& part : parts) out.merge(part);
    return out;
  }

  // Subgroup generated by all p^i-th powers.
  Subgroup agemo(int i) const {
    ensure_orders();
    std::vector<Code> cur(n_);
    for (u32 g = 0; g < n_; ++g) cur[g] = g;
    for (int s = 0; s < i; ++s)
      for (u32 g = 0; g < n_; ++g) cur[g] = powp_[cur[g]];
    ElementSet seen(n_);
    std::vector<Code> seeds;
    for (u32 g = 0; g < n_; ++g)
      if (seen.set(cur[g])) seeds.push_back(cur[g]);
    return closure(seeds);
  }

  // Subgroup generated by the elements of order dividing p^i.
  Subgroup omega(int i) const {
    ensure_orders();
    u64 bound = ipow(p_, unsigned(i));
    std::vector<Code> seeds;
    for (u32 g = 0; g < n_; ++g)
      if (orders_[g] <= bound) seeds.push_back(g);
    return closure(seeds);
  }

  // Number of elements of order dividing p^i (the set, not the subgroup).
  u64 omega_set_count(int i) const {
    ensure_orders();
    u64 bound = ipow(p_, unsigned(i));
    u64 c = 0;
    for (u32 g = 0; g < n_; ++g)
      if (orders_[g] <= bound) ++c;
    return c;
  }

 private:
  void enumerate() {
    inv_.assign(n_, 0);
    std::vector<std::unique_ptr<Translator>> step;
    std::vector<Code> ginv;
    for (Code g : gens_) {
      step.push_back(oracle_->right_translator(g));
      ginv.push_back(oracle_->inv(g));
    }
    ElementSet seen(n_);
    seen.set(0);
    std::vector<Code> queue;
    queue.reserve(n_);
    queue.push_back(0);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      Code cur = queue[qi];
      for (size_t gi = 0; gi < gens_.size(); ++gi) {
        Code nxt = step[gi]->apply(cur);
        if (seen.set(nxt)) {
          inv_[nxt] = mul(ginv[gi], inv_[cur]);
          queue.push_back(nxt);
        }
      }
    }
    if (queue.size() != n_)
      fail<IntegrityError>("realize: generators produce only " +
                           std::to_string(queue.size()) + " of " +
                           std::to_string(n_) + " elements of " +
                           oracle_->describe());
    if (p_ != 0) {
      std::vector<Code> seeds;
      for (size_t i = 0; i < gens_.size(); ++i) {
        for (size_t j = i + 1; j < gens_.size(); ++j)
          seeds.push_back(comm(gens_[i], gens_[j]));
        seeds.push_back(pow(gens_[i], p_));
      }
      frattini_ = closure(seeds, true).set;
      u64 idx = n_ / frattini_.count();
      rank_ = 0;
      while (idx > 1) {
        idx /= p_;
        ++rank_;
      }
      if (rank_ == 2) assign_coords();
    } else if (n_ == 1) {
      rank_ = 0;
    }
  }

  // Frattini-quotient coordinates for rank-2 p-groups: pick a basis pair
  // among the listed generators (any two whose images are independent
  // generate the whole group) and label every element along a Cayley
  // breadth-first search over that pair.
  void assign_coords() {
    basis_ = {gens_[0], gens_[0]};
    bool found = false;
    if (gens_.size() == 2) {
      basis_ = {gens_[0], gens_[1]};
      found = true;
    } else {
      size_t first = gens_.size();
      for (size_t i = 0; i < gens_.size() && !found; ++i) {
        if (frattini_.test(gens_[i])) continue;
        if (first == gens_.size()) {
          first = i;
          continue;
        }
        std::array<Code, 2> pair{gens_[first], gens_[i]};
        if (closure(pair).order() == n_) {
          basis_ = {gens_[first], gens_[i]};
          found = true;
        }
      }
    }
    if (!found) return;
    coords_.assign(size_t(n_) * 2, 0);
    std::array<std::unique_ptr<Translator>, 2> step{
        oracle_->right_translator(basis_[0]),
        oracle_->right_translator(basis_[1])};
    ElementSet seen(n_);
    seen.set(0);
    std::vector<Code> queue{0};
    queue.reserve(n_);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      Code cur = queue[qi];
      for (size_t gi = 0; gi < 2; ++gi) {
        Code nxt = step[gi]->apply(cur);
        if (seen.set(nxt)) {
          coords_[size_t(nxt) * 2] = coords_[size_t(cur) * 2];
          coords_[size_t(nxt) * 2 + 1] = coords_[size_t(cur) * 2 + 1];
          u8& c = coords_[size_t(nxt) * 2 + gi];
          c = u8((c + 1) % p_);
          queue.push_back(nxt);
        }
      }
    }
    if (queue.size() != n_) {
      coords_.clear();
      fail<IntegrityError>("coords: basis pair fails to span the group");
    }
  }

  Subgroup closure_impl(std::span<const Code> seeds,
                        const std::vector<Code>& conjugators) const {
    Subgroup h;
    h.set = ElementSet(n_);
    h.set.set(0);
    std::vector<Code> members{0};
    std::vector<Code> pending(seeds.begin(), seeds.end());
    for (size_t pi = 0; pi < pending.size(); ++pi) {
      Code s = pending[pi];
      if (h.set.test(s)) continue;
      h.gens.push_back(s);
      for (Code c : conjugators) pending.push_back(conj(s, c));
      // extend: existing members times the new generator, then BFS over all
      // essential generators discovered so far.
      size_t frontier_begin = members.size();
      auto ts = oracle_->right_translator(s);
      size_t base = members.size();
      for (size_t i = 0; i < base; ++i) {
        Code c = ts->apply(members[i]);
        if (h.set.set(c)) members.push_back(c);
      }
      for (size_t i = frontier_begin; i < members.size(); ++i) {
        for (Code g : h.gens) {
          Code c = mul(members[i], g);
          if (h.set.set(c)) members.push_back(c);
        }
      }
    }
    return h;
  }

  void ensure_orders() const {
    std::lock_guard<std::mutex> lk(lazy_mu_);
    if (!orders_.empty()) return;
    std::vector<u32> orders(n_);
    orders[0] = 1;
    if (p_ != 0) {
      powp_.assign(n_, 0);
      parallel_chunks(n_, [&](u64 b, u64 e, unsigned) {
        for (u64 g = b; g < e; ++g) powp_[g] = pow(Code(g), p_);
      });
      int ee = 0;
      parallel_chunks(n_, [&](u64 b, u64 e, unsigned) {
        for (u64 g = b; g < e; ++g) {
          u32 o = 1;
          Code c = Code(g);
          while (c != 0) {
            c = powp_[c];
            o *= u32(p_);
          }
          orders[g] = o;
        }
      });
      for (u32 g = 0; g < n_; ++g) {
        int k = 0;
        u32 o = orders[g];
        while (o > 1) o /= u32(p_), ++k;
        ee = std::max(ee, k);
      }
      expexp_ = ee;
      exponent_ = u32(ipow(p_, unsigned(ee)));
    } else {
      auto fac = factorize(n_);
      u64 expo = 1;
      for (u32 g = 0; g < n_; ++g) {
        u64 o = n_;
        for (auto [q, a] : fac)
          for (int s = 0; s < a && o % q == 0 && pow(Code(g), o / q) == 0; ++s)
            o /= q;
        orders[g] = u32(o);
        expo = std::lcm(expo, o);
      }
      exponent_ = u32(expo);
      expexp_ = -1;
    }
    orders_ = std::move(orders);
  }

  std::shared_ptr<const GroupOracle> oracle_;
  u32 n_ = 0;
  std::vector<Code> gens_;
  std::vector<Code> inv_;
  u64 p_ = 0;
  int logn_ = 0;
  int rank_ = -1;
  std::array<Code, 2> basis_{0, 0};
  std::vector<u8> coords_;
  ElementSet frattini_;
  mutable std::mutex lazy_mu_;
  mutable std::vector<Code> powp_;
  mutable std::vector<u32> orders_;
  mutable u32 exponent_ = 0;
  mutable int expexp_ = -1;
};

// Depth-first walk over a Cayley tree that maintains a full translation row
// as a permutation. With left = false the visitor sees, for every z in the
// group, row[x] = x * z; with left = true, row[y] = z * y. Rows are updated
// by composing with the per-generator rows (one array pass per tree edge and
// per backtrack), so a sweep over all of G x G costs about 2 |G|^2 array
// lookups regardless of how expensive the oracle product is.
template <class Visit>
void cayley_row_walk(const Group& G, bool left, Visit visit) {
  u32 n = G.order();
  const auto& gens = G.gens();
  size_t ng = gens.size();
  std::vector<std::vector<Code>> gen_row(ng, std::vector<Code>(n)),
      inv_row(ng, std::vector<Code>(n));
  for (size_t gi = 0; gi < ng; ++gi) {
    Code g = gens[gi], ig = G.inv(g);
    if (left) {
      for (u32 x = 0; x < n; ++x) gen_row[gi][x] = G.mul(g, x);
      for (u32 x = 0; x < n; ++x) inv_row[gi][x] = G.mul(ig, x);
    } else {
      auto t = G.oracle().right_translator(g);
      t->apply_iota(n, gen_row[gi].data());
      auto ti = G.oracle().right_translator(ig);
      ti->apply_iota(n, inv_row[gi].data());
    }
  }
  // spanning tree by breadth-first search over the chosen translation
  std::vector<u32> parent(n, 0);
  std::vector<u8> pgen(n, 0);
  ElementSet seen(n);
  seen.set(0);
  std::vector<Code> order{0};
  for (size_t qi = 0; qi < order.size(); ++qi) {
    Code cur = order[qi];
    for (size_t gi = 0; gi < ng; ++gi) {
      Code nxt = gen_row[gi][cur];  // product of cur with a generator on the
                                    // appropriate side
      if (seen.set(nxt)) {
        parent[nxt] = cur;
        pgen[nxt] = u8(gi);
        order.push_back(nxt);
      }
    }
  }
  if (order.size() != n)
    fail<IntegrityError>("cayley walk: generators do not span the group");
  // children adjacency
  std::vector<u32> child_off(n + 1, 0), child(n ? n - 1 : 0);
  for (u32 v = 1; v < n; ++v) ++child_off[parent[v] + 1];
  for (u32 v = 0; v < n; ++v) child_off[v + 1] += child_off[v];
  {
    std::vector<u32> fill(child_off.begin(), child_off.end() - 1);
    for (u32 v = 1; v < n; ++v) child[fill[parent[v]]++] = v;
  }
  std::vector<Code> row(n);
  for (u32 x = 0; x < n; ++x) row[x] = x;
  // iterative depth-first traversal with undo on backtrack
  struct Frame {
    u32 node;
    u32 next_child;
  };
  std::vector<Frame> stack{{0, child_off[0]}};
  visit(Code(0), row);
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next_child < child_off[f.node + 1]) {
      u32 c = child[f.next_child++];
      const auto& gr = gen_row[pgen[c]];
      for (u32 x = 0; x < n; ++x) row[x] = gr[row[x]];
      visit(Code(c), row);
      stack.push_back({c, child_off[c]});
    } else {
      u32 node = f.node;
      stack.pop_back();
      if (!stack.empty()) {
        const auto& ir = inv_row[pgen[node]];
        for (u32 x = 0; x < n; ++x) row[x] = ir[row[x]];
      }
    }
  }
}

}  // namespace beauville
