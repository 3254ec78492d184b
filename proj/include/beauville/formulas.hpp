#pragma once
// Property suites for the congruence-filtration arithmetic of the Nottingham
// group: the p-th power and commutator formulas for the filtration layers,
// the closed form for p^m-th powers of the degree-2 generators f_lambda
// cross-checked against repeated composition and transfer-matrix powering,
// the congruence (fg)^{p^l} = f^{p^l} modulo the next distinguished level,
// and the exact order p of the two standard generators. The suites run under
// a selectable composition convention; the transfer-matrix homomorphism check
// fails under the mirrored convention, which keeps a silent convention slip
// from passing.

#include <set>
#include <unordered_set>

#include "series.hpp"

namespace beauville {

enum class ComposeOrder { standard, mirrored };

struct FormulaReport {
  u64 checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  void merge(const FormulaReport& o) {
    checks += o.checks;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
  }
};

namespace fdetail {

inline TruncSeries product(const TruncSeries& f, const TruncSeries& g,
                           ComposeOrder ord) {
  return ord == ComposeOrder::standard ? compose(f, g) : compose(g, f);
}

inline TruncSeries comp_power(const TruncSeries& f, u64 n, ComposeOrder ord) {
  TruncSeries acc = TruncSeries::identity(f.prime(), f.cap());
  TruncSeries base = f;
  while (n) {
    if (n & 1) acc = product(acc, base, ord);
    base = product(base, base, ord);
    n >>= 1;
  }
  return acc;
}

inline u64 series_key(const TruncSeries& s) {
  u64 k = 0;
  for (int i = s.cap(); i >= 2; --i) k = k * u64(s.prime()) + s.coeff(i);
  return k;
}

inline TruncSeries random_in_layer(SplitMix64& rng, int p, int cap, int depth,
                                   bool exact) {
  TruncSeries f(p, cap);
  for (int i = depth + 1; i <= cap; ++i) f.set_coeff(i, u32(rng.below(u64(p))));
  if (exact && depth + 1 <= cap && f.coeff(depth + 1) == 0)
    f.set_coeff(depth + 1, 1 + u32(rng.below(u64(p) - 1)));
  return f;
}

// Size of the subgroup of the cap-truncated group supported from degree
// from_deg on.
inline u64 layer_size(int p, int cap, int from_deg) {
  if (from_deg > cap) return 1;
  return ipow(u64(p), unsigned(cap - from_deg + 1));
}

// Closure of the seeds under the group product, bounded; returns the size.
inline u64 closure_size(const std::vector<TruncSeries>& seeds,
                        ComposeOrder ord, u64 bound) {
  std::unordered_set<u64> seen;
  std::vector<TruncSeries> queue;
  if (seeds.empty()) return 1;
  TruncSeries id = TruncSeries::identity(seeds[0].prime(), seeds[0].cap());
  seen.insert(series_key(id));
  queue.push_back(id);
  std::vector<TruncSeries> gens;
  for (const auto& s : seeds)
    if (seen.insert(series_key(s)).second) {
      gens.push_back(s);
      queue.push_back(s);
    }
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    for (const auto& g : gens) {
      TruncSeries c = product(queue[qi], g, ord);
      if (seen.insert(series_key(c)).second) {
        queue.push_back(c);
        if (seen.size() > bound) return seen.size();
      }
    }
  }
  return seen.size();
}

}  // namespace fdetail

// N_k^p = N_{pk+r} with r = k mod p: sampled p-th powers land at depth
// pk + r, and the subgroup they generate is the whole layer there.
inline FormulaReport check_power_formula(int p, int kmax, int cap_limit,
                                         u64 seed,
                                         ComposeOrder ord = ComposeOrder::standard) {
  FormulaReport rep;
  SplitMix64 rng(seed ^ 0x90f);
  for (int k = 1; k <= kmax; ++k) {
    int r = k % p;
    int j0 = p * k + r;
    int cap = std::min(j0 + 3, cap_limit);
    std::vector<TruncSeries> powers;
    for (int s = 0; s < 200; ++s) {
      TruncSeries f = fdetail::random_in_layer(rng, p, cap, k, s % 2 == 0);
      TruncSeries fp = fdetail::comp_power(f, u64(p), ord);
      ++rep.checks;
      auto fd = fp.filtration_degree();
      if (fd.has_value() && *fd < j0) {
        rep.failures.push_back("power formula: p=" + std::to_string(p) +
                               " k=" + std::to_string(k) +
                               ": p-th power too shallow (depth " +
                               std::to_string(*fd) + ")");
        continue;
      }
      powers.push_back(fp);
    }
    u64 expect = fdetail::layer_size(p, cap, j0 + 1);
    u64 got = fdetail::closure_size(powers, ord, expect + 8);
    ++rep.checks;
    if (got != expect)
      rep.failures.push_back("power formula: p=" + std::to_string(p) + " k=" +
                             std::to_string(k) + ": generated subgroup has " +
                             std::to_string(got) + " elements, expected " +
                             std::to_string(expect));
  }
  return rep;
}

// [N_k, N_l] = N_{k+l} or N_{k+l+1} according to k = l mod p.
inline FormulaReport check_commutator_formula(
    int p, int kmax, int cap_limit, u64 seed,
    ComposeOrder ord = ComposeOrder::standard) {
  FormulaReport rep;
  SplitMix64 rng(seed ^ 0xc033);
  for (int k = 1; k <= kmax; ++k)
    for (int l = 1; l <= kmax; ++l) {
      int j0 = k + l + (k % p == l % p ? 1 : 0);
      int cap = std::min(j0 + 3, cap_limit);
      std::vector<TruncSeries> comms;
      for (int s = 0; s < 120; ++s) {
        TruncSeries f = fdetail::random_in_layer(rng, p, cap, k, true);
        TruncSeries g = fdetail::random_in_layer(rng, p, cap, l, true);
        TruncSeries c = fdetail::product(
            fdetail::product(f.inverse(), g.inverse(), ord),
            fdetail::product(f, g, ord), ord);
        ++rep.checks;
        auto fd = c.filtration_degree();
        if (fd.has_value() && *fd < j0) {
          rep.failures.push_back("commutator formula: p=" + std::to_string(p) +
                                 " k=" + std::to_string(k) + " l=" +
                                 std::to_string(l) + ": depth " +
                                 std::to_string(*fd) + " < " +
                                 std::to_string(j0));
          continue;
        }
        comms.push_back(c);
      }
      u64 expect = fdetail::layer_size(p, cap, j0 + 1);
      u64 got = fdetail::closure_size(comms, ord, expect + 8);
      ++rep.checks;
      if (got != expect)
        rep.failures.push_back(
            "commutator formula: p=" + std::to_string(p) + " k=" +
            std::to_string(k) + " l=" + std::to_string(l) +
            ": generated subgroup has " + std::to_string(got) +
            " elements, expected " + std::to_string(expect));
    }
  return rep;
}

// Closed form vs repeated composition vs transfer-matrix powering for the
// p^m-th powers of every f_lambda.
inline FormulaReport check_pm_power_forms(int p, int mmax,
                                          ComposeOrder ord = ComposeOrder::standard) {
  FormulaReport rep;
  for (int m = 1; m <= mmax; ++m) {
    int cap = int(zm(p, m)) + 1;
    for (int lambda = 0; lambda < p; ++lambda) {
      TruncSeries f = f_lambda(p, cap, lambda);
      TruncSeries via_comp = fdetail::comp_power(f, ipow(u64(p), unsigned(m)), ord);
      TruncSeries closed = pm_power_closed_form(p, lambda, m);
      ++rep.checks;
      if (via_comp != closed)
        rep.failures.push_back("p^m power closed form: p=" + std::to_string(p) +
                               " lambda=" + std::to_string(lambda) + " m=" +
                               std::to_string(m) + ": composition differs");
      TransferMatrix P =
          matpow(transfer_matrix(f, cap), ipow(u64(p), unsigned(m)));
      for (int n = 2; n <= cap; ++n) {
        ++rep.checks;
        if (P.at(1, n) != via_comp.coeff(n)) {
          rep.failures.push_back(
              "transfer matrix power: p=" + std::to_string(p) + " lambda=" +
              std::to_string(lambda) + " m=" + std::to_string(m) + " n=" +
              std::to_string(n) + ": entry mismatch");
          break;
        }
      }
    }
  }
  return rep;
}

// M(f * g) = M(f) M(g): the coefficient matrix is multiplicative for the
// substitution product. This is the check that pins the composition
// convention; the mirrored convention turns it into an antihomomorphism.
inline FormulaReport check_matrix_homomorphism(
    int p, int samples, u64 seed, ComposeOrder ord = ComposeOrder::standard) {
  FormulaReport rep;
  SplitMix64 rng(seed ^ 0x3a7);
  int n = 9;
  for (int s = 0; s < samples; ++s) {
    TruncSeries f(p, n), g(p, n);
    for (int d = 2; d <= n; ++d) {
      f.set_coeff(d, u32(rng.below(u64(p))));
      g.set_coeff(d, u32(rng.below(u64(p))));
    }
    TransferMatrix lhs = transfer_matrix(fdetail::product(f, g, ord), n);
    TransferMatrix rhs = matmul(transfer_matrix(f, n), transfer_matrix(g, n));
    ++rep.checks;
    if (lhs.m != rhs.m) {
      rep.failures.push_back("matrix homomorphism: p=" + std::to_string(p) +
                             ": M(f*g) != M(f)M(g)");
      break;
    }
  }
  return rep;
}

// (f g)^{p^l} = f^{p^l} modulo the level z_{k+l}+1, for f at depth >= z_k - 1
// and g at depth >= z_k + 1.
inline FormulaReport check_congruence_lemma(
    int p, int sum_bound, u64 seed, ComposeOrder ord = ComposeOrder::standard) {
  FormulaReport rep;
  SplitMix64 rng(seed ^ 0x717);
  for (int k = 0; k <= sum_bound; ++k)
    for (int l = 1; k + l <= sum_bound; ++l) {
      int cap = int(zm(p, k + l)) + 1;
      int fdepth = int(zm(p, k)) - 1;
      int gdepth = int(zm(p, k)) + 1;
      for (int s = 0; s < 100; ++s) {
        TruncSeries f = fdetail::random_in_layer(rng, p, cap, fdepth, false);
        TruncSeries g = fdetail::random_in_layer(rng, p, cap, gdepth, false);
        u64 q = ipow(u64(p), unsigned(l));
        TruncSeries lhs = fdetail::comp_power(fdetail::product(f, g, ord), q, ord);
        TruncSeries rhs = fdetail::comp_power(f, q, ord);
        ++rep.checks;
        if (lhs != rhs) {
          rep.failures.push_back("power congruence: p=" + std::to_string(p) +
                                 " k=" + std::to_string(k) + " l=" +
                                 std::to_string(l) + ": congruence fails");
          break;
        }
      }
    }
  return rep;
}

// The standard generators have order exactly p at every truncation used.
inline FormulaReport check_generator_orders(
    int p, const std::vector<int>& caps,
    ComposeOrder ord = ComposeOrder::standard) {
  FormulaReport rep;
  for (int cap : caps) {
    for (const TruncSeries& f : {nott_a(p, cap), nott_b(p, cap)}) {
      ++rep.checks;
      if (!(fdetail::comp_power(f, u64(p), ord).is_identity()))
        rep.failures.push_back("generator order: p=" + std::to_string(p) +
                               " cap=" + std::to_string(cap) +
                               ": p-th power is not the identity");
    }
  }
  ++rep.checks;
  if (fdetail::comp_power(nott_a(p, 10), 1, ord).is_identity())
    rep.failures.push_back("generator order: generator is trivial");
  return rep;
}

// Aggregate runner used by the CLI and the acceptance suite. depth bounds the
// distinguished level (m <= depth); the layer formulas run for p in {3, 5}
// at truncations <= 15, the closed-form suite for every given p.
inline FormulaReport run_formula_suites(const std::vector<int>& ps, int depth,
                                        u64 seed,
                                        ComposeOrder ord = ComposeOrder::standard) {
  FormulaReport rep;
  for (int p : ps) {
    if (p == 3 || p == 5) {
      rep.merge(check_power_formula(p, 8, 15, seed, ord));
      rep.merge(check_commutator_formula(p, 8, 15, seed, ord));
      rep.merge(check_congruence_lemma(p, 2, seed, ord));
    }
    int mmax = depth;
    if (zm(p, mmax) > 80) mmax = 1;  // keep matrix sizes reasonable
    rep.merge(check_pm_power_forms(p, mmax, ord));
    rep.merge(check_matrix_homomorphism(p, 24, seed, ord));
    std::vector<int> caps{6, 9, 15};
    if (p >= 5) caps.push_back(int(zm(p, 1)) + 1);
    rep.merge(check_generator_orders(p, caps, ord));
  }
  return rep;
}

}  // namespace beauville
