#include <catch2/catch_amalgamated.hpp>

#include "beauville/constructions.hpp"
#include "beauville/criteria.hpp"

using namespace beauville;

TEST_CASE("pk quotient at s = d") {
  auto o = std::make_shared<PkQuotientOracle>(5, 1, 4);
  CHECK(o->size() == 3125);
  Group g(o, {o->gen_t(), o->gen_a1()});
  CHECK(g.order() == 3125);
  CHECK(g.rank() == 2);
  // (t a)^{p^k} = 1 for every a in the abelian part
  for (u64 h = 0; h < 625; ++h) {
    Code a = Code(h * 5);  // codes with t-exponent 0
    Code ta = g.mul(o->gen_t(), a);
    CHECK(g.pow(ta, 5) == 0);
  }
  // distinct images t a1^i generate pairwise trivially intersecting cyclics
  std::vector<Code> xs;
  for (u64 i = 0; i < 5; ++i)
    xs.push_back(g.mul(o->gen_t(), g.pow(o->gen_a1(), i)));
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j) {
      std::array<Code, 1> sa{xs[i]}, sb{xs[j]};
      ElementSet A = g.closure(sa).set, B = g.closure(sb).set;
      u32 common = 0;
      A.for_each([&](u32 e) {
        if (B.test(e)) ++common;
      });
      CHECK(common == 1);
    }
}

TEST_CASE("pk quotient at s = d + 1 has small top power subgroup") {
  auto o = std::make_shared<PkQuotientOracle>(5, 1, 5);
  CHECK(o->size() == 15625);
  Group g(o, {o->gen_t(), o->gen_a1()});
  CHECK(g.exponent() == 25);
  PowerProfile pr = power_profile(g);
  CHECK(pr.e == 2);
  CHECK(pr.agemo_orders[1] == 5);  // |G^{p^{e-1}}| = p, yet Beauville
}

TEST_CASE("nonsplit extension") {
  auto o = std::make_shared<NonsplitExtensionOracle>(5, 1, 2, 2);
  CHECK(o->size() == 78125);
  Group g(o, {o->gen_u(), o->gen_a1()});
  CHECK(g.rank() == 2);
  CHECK(g.exponent() == 25);
  // u^p is the chosen central element
  CHECK(g.pow(o->gen_u(), 5) == o->central_z());
  CHECK(g.element_order(o->central_z()) == 5);
  CHECK(g.center().test(o->central_z()));
  // every element outside the abelian part has order 25 with p-th power in Z
  SplitMix64 rng(4);
  Code z = o->central_z();
  for (int rep = 0; rep < 200; ++rep) {
    Code h = Code(rng.below(o->size() / 5) * 5);  // t-exponent 0
    Code x = g.mul(o->gen_u(), h);
    CHECK(g.element_order(x) == 25);
    Code x5 = g.pow(x, 5);
    bool in_z = false;
    Code c = z;
    for (int j = 0; j < 5; ++j, c = g.mul(c, z))
      if (x5 == c) in_z = true;
    CHECK(in_z);
  }
  PowerProfile pr = power_profile(g);
  CHECK(pr.agemo_orders[1] == 25);  // |G^{p^{e-1}}| = p^m with m = 2
  // the central cyclic obstruction is found and certifies non-existence
  auto cert = cyclic_obstruction(g);
  REQUIRE(cert.has_value());
  CHECK(replay_certificate(g, *cert));
}

TEST_CASE("nonsplit extension rejects bad parameters") {
  CHECK_THROWS_AS(NonsplitExtensionOracle(5, 1, 1, 2), InputError);
  CHECK_THROWS_AS(NonsplitExtensionOracle(5, 1, 2, 1), InputError);
  CHECK_THROWS_AS(NonsplitExtensionOracle(3, 1, 2, 2), InputError);
}

TEST_CASE("potent example") {
  auto o = std::make_shared<PotentExampleOracle>(5);
  CHECK(o->size() == 1953125);  // p^{p+4}
  Group g(o, {o->gen_b(), o->gen_a(1), o->gen_a(4)});
  CHECK(g.exponent() == 25);
  CHECK(g.rank() == 3);
  // x = b a_1 and y = b a_p agree on p-th powers but x y^{-1} does not
  Code x = g.mul(o->gen_b(), o->gen_a(1));
  Code y = g.mul(o->gen_b(), o->gen_a(5));
  CHECK(g.pow(x, 5) == g.pow(y, 5));
  Code q = g.pow(g.mul(x, g.inv(y)), 5);
  CHECK(q != 0);
  CHECK(q == g.inv(g.pow(o->gen_a(5), 5)));  // equals a_p^{-p}
}

TEST_CASE("abelian oracle generation test") {
  AbelianOracle o(12);
  auto code = [](u64 i, u64 j) { return Code(j * 12 + i); };
  CHECK(o.pair_generates(code(1, 0), code(0, 1)) == 1);
  CHECK(o.pair_generates(code(2, 0), code(0, 1)) == 0);  // det 2 shares gcd
  CHECK(o.pair_generates(code(1, 5), code(7, 11)) == 0);  // det -24 = 0 mod 12
  CHECK(o.pair_generates(code(1, 5), code(7, 12 % 12)) == 1);  // det -35, unit
}
