#include <catch2/catch_amalgamated.hpp>

#include "beauville/cyclotomic.hpp"

using namespace beauville;

TEST_CASE("ring construction") {
  CycloRing R(5, 1, 2);
  CHECK(R.d == 4);
  CHECK(R.mod == 25);
  // Phi_5 = X^4 + X^3 + X^2 + X + 1, i.e. X^4 = -(1 + X + X^2 + X^3)
  CHECK(R.phi_tail == CycPoly{24, 24, 24, 24});
  CycloRing R2(5, 2, 1);
  CHECK(R2.d == 20);
}

TEST_CASE("zeta has multiplicative order p^k") {
  CycloRing R(5, 1, 2);
  CHECK(R.mul_zeta_pow(R.one(), 5) == R.one());
  CHECK(R.mul_zeta_pow(R.one(), 1) != R.one());
  CycloRing R2(3, 2, 1);
  CHECK(R2.mul_zeta_pow(R2.one(), 9) == R2.one());
  CHECK(R2.mul_zeta_pow(R2.one(), 3) != R2.one());
}

TEST_CASE("uniformizer valuation") {
  CycloRing R(5, 1, 2);
  CHECK(R.valuation(R.uniformizer_power(2)) == 2);
  CHECK(R.valuation(R.from_int(5)) == 4);  // (p) = (zeta-1)^d
  CHECK(R.valuation(R.mul(R.from_int(5), R.uniformizer_power(1))) == 5);
  CHECK(R.valuation(R.zero()) == CycloRing::VAL_INFINITY);
  CHECK(R.valuation(R.one()) == 0);
}

TEST_CASE("valuation is additive") {
  CycloRing R(5, 1, 3);
  SplitMix64 rng(23);
  int checked = 0;
  while (checked < 40) {
    CycPoly x = R.zero(), y = R.zero();
    for (int i = 0; i < R.d; ++i) {
      x[i] = u32(rng.below(R.mod));
      y[i] = u32(rng.below(R.mod));
    }
    int vx = R.valuation(x), vy = R.valuation(y);
    if (vx == CycloRing::VAL_INFINITY || vy == CycloRing::VAL_INFINITY) continue;
    if (vx + vy >= R.e * R.d) continue;  // product may vanish mod p^e
    CHECK(R.valuation(R.mul(x, y)) == vx + vy);
    ++checked;
  }
}

TEST_CASE("ideal subgroups") {
  CycloRing R(5, 1, 2);
  HowellBasis full = ideal_subgroup(R, 0);
  CHECK(full.quotient_order() == 1);
  CHECK(full.contains(R.from_int(7)));

  HowellBasis i4 = ideal_subgroup(R, 4);
  CHECK(i4.quotient_order() == 625);  // index p^s
  CHECK(i4.contains(R.from_int(5)));  // p lies in (zeta-1)^4
  CHECK(!i4.contains(R.uniformizer_power(3)));

  HowellBasis i5 = ideal_subgroup(R, 5);
  CHECK(i5.quotient_order() == 3125);
  CHECK(!i5.contains(R.from_int(5)));
  CHECK(i5.contains(R.mul(R.from_int(5), R.uniformizer_power(1))));
}

TEST_CASE("howell reduction is canonical and zeta-stable") {
  CycloRing R(5, 1, 2);
  for (int s : {4, 5, 6}) {
    HowellBasis H = ideal_subgroup(R, s);
    // rows stay inside the span under the zeta action
    for (const auto& row : H.rows) CHECK(H.contains(R.mul_zeta(row)));
    SplitMix64 rng{u64(s)};
    for (int rep = 0; rep < 30; ++rep) {
      CycPoly x = R.zero();
      for (int i = 0; i < R.d; ++i) x[i] = u32(rng.below(R.mod));
      CycPoly r = H.reduce(x);
      CHECK(H.reduce(r) == r);                       // idempotent
      CHECK(H.contains(R.sub(x, r)));                // same coset
      for (int i = 0; i < R.d; ++i)                  // box digits
        CHECK(r[i] < ipow(u64(R.p), unsigned(H.colw[i])));
    }
  }
}

TEST_CASE("membership of p in the critical ideal for k = 2") {
  CycloRing R(5, 2, 2);
  // d = 20 and (p) = (zeta-1)^20
  CHECK(R.valuation(R.from_int(5)) == 20);
}
