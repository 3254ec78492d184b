#pragma once
// Multiplication oracles. A finite group is presented to the engine as a
// dense code space [0, size()) with code 0 the identity, a product map, and
// an inverse map. Oracles may provide accelerated right-translation contexts
// (x -> x*b for fixed b) which the sweeps use heavily.

#include <memory>
#include <string>

#include "common.hpp"

namespace beauville {

class Translator {
 public:
  virtual ~Translator() = default;
  virtual Code apply(Code x) const = 0;
  virtual void apply_array(const Code* xs, size_t n, Code* out) const {
    for (size_t i = 0; i < n; ++i) out[i] = apply(Code(xs[i]));
  }
  // out[x] = x*b for every code x in [0, n).
  virtual void apply_iota(Code n, Code* out) const {
    for (Code x = 0; x < n; ++x) out[x] = apply(x);
  }
};

class GroupOracle {
 public:
  virtual ~GroupOracle() = default;
  virtual u64 size() const = 0;
  virtual Code mul(Code a, Code b) const = 0;
  virtual Code inv(Code a) const = 0;
  virtual std::string describe() const = 0;
  // Printable coordinates of one element (series coefficients, exponent
  // tuples, ...), used in reports and witness files.
  virtual std::string element_repr(Code a) const {
    return std::to_string(a);
  }
  // Optional O(1) generation test for a pair: 1 = generates the whole group,
  // 0 = does not, -1 = not supported.
  virtual int pair_generates(Code, Code) const { return -1; }
  // Element from family-canonical coordinates (series coefficients, exponent
  // tuples, ...). Families without a coordinate form reject.
  virtual Code element_from_coords(const std::vector<i64>&) const {
    fail<InputError>("this family has no coordinate form for elements");
  }
  virtual std::unique_ptr<Translator> right_translator(Code b) const {
    struct Plain : Translator {
      const GroupOracle* o;
      Code b;
      Code apply(Code x) const override { return o->mul(x, b); }
    };
    auto t = std::make_unique<Plain>();
    t->o = this;
    t->b = b;
    return t;
  }
};

// Seeded spot check of the group axioms on random triples; throws
// IntegrityError on the first violation.
inline void spot_check_axioms(const GroupOracle& o, u64 seed,
                              int samples = 64) {
  u64 n = o.size();
  if (n == 0) fail<IntegrityError>("oracle: empty domain");
  SplitMix64 rng(seed ^ 0xa11ce5);
  for (int s = 0; s < samples; ++s) {
    Code a = Code(rng.below(n)), b = Code(rng.below(n)), c = Code(rng.below(n));
    if (o.mul(o.mul(a, b), c) != o.mul(a, o.mul(b, c)))
      fail<IntegrityError>("oracle: associativity fails on sampled triple in " +
                           o.describe());
    if (o.mul(a, 0) != a || o.mul(0, a) != a)
      fail<IntegrityError>("oracle: code 0 is not an identity in " +
                           o.describe());
    if (o.mul(a, o.inv(a)) != 0 || o.mul(o.inv(a), a) != 0)
      fail<IntegrityError>("oracle: inverse map fails in " + o.describe());
  }
}

}  // namespace beauville
