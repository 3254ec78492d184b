#include <catch2/catch_amalgamated.hpp>

#include "beauville/pc.hpp"
#include "beauville/search.hpp"

using namespace beauville;

namespace {
std::shared_ptr<PcGroup> h3(int p = 5, int r = 1) {
  return std::make_shared<PcGroup>(parse_presentation(builtin_h34_text(p, r)));
}
}  // namespace

TEST_CASE("parse h34 presentation") {
  PcPresentation P = parse_presentation(builtin_h34_text(5, 1));
  REQUIRE(P.ngens() == 3);
  CHECK(P.p == 5);
  CHECK(P.rel_order == std::vector<u32>{25, 25, 5});
  CHECK(P.presented_order() == 3125);
}

TEST_CASE("parse trivial presentation") {
  PcPresentation P = parse_presentation("p 5\n");
  CHECK(P.ngens() == 0);
  CHECK(P.presented_order() == 1);
  PcGroup g(P);
  CHECK(g.mul(g.one(), g.one()) == g.one());
}

TEST_CASE("parse errors carry positions") {
  // conjugation landing on a lower-indexed generator
  std::string bad = "p 5\ngen a 5\ngen b 5\ngen c 5\ncomm [b,c] = a\n";
  CHECK_THROWS_WITH(parse_presentation(bad),
                    Catch::Matchers::ContainsSubstring("ill-ordered") &&
                        Catch::Matchers::ContainsSubstring("line 5"));
  CHECK_THROWS_AS(parse_presentation("p 6\n"), InputError);
  CHECK_THROWS_AS(parse_presentation("gen a 5\n"), InputError);
  CHECK_THROWS_AS(parse_presentation("p 5\ngen a 10\n"), InputError);
  CHECK_THROWS_AS(parse_presentation("p 5\ngen a 5\npow b = 1\n"), InputError);
}

TEST_CASE("collection normal forms") {
  auto g = h3();
  // b a = a b c^{-1}, forced by [a,b] = c and [b,c] = 1
  Word ba{{1, 1}, {0, 1}};
  CHECK(g->collect(ba) == NormalWord{1, 1, 4});
  // a^{25} collects to the power relation right-hand side (trivial here)
  Word a25{{0, 25}};
  CHECK(g->collect(a25) == g->one());
  // a^{-1} c a = c b^{-5}
  Word aca{{0, -1}, {2, 1}, {0, 1}};
  CHECK(g->collect(aca) == NormalWord{0, 20, 1});
}

TEST_CASE("inverse law under collection") {
  auto g = h3();
  SplitMix64 rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    NormalWord w{u32(rng.below(25)), u32(rng.below(25)), u32(rng.below(5))};
    CHECK(g->mul(w, g->inverse(w)) == g->one());
    CHECK(g->mul(g->inverse(w), w) == g->one());
  }
}

TEST_CASE("collection is associative on sampled triples") {
  for (int r : {1, 2}) {
    auto g = h3(5, r);
    SplitMix64 rng(u64(100 + r));
    for (int rep = 0; rep < 1000; ++rep) {
      NormalWord u{u32(rng.below(25)), u32(rng.below(25)), u32(rng.below(5))};
      NormalWord v{u32(rng.below(25)), u32(rng.below(25)), u32(rng.below(5))};
      NormalWord w{u32(rng.below(25)), u32(rng.below(25)), u32(rng.below(5))};
      CHECK(g->mul(g->mul(u, v), w) == g->mul(u, g->mul(v, w)));
    }
  }
}

TEST_CASE("oracle and realization") {
  auto g = h3();
  auto o = std::make_shared<PcOracle>(g);
  CHECK(o->size() == 3125);
  Group G(o, {o->gen_code(0), o->gen_code(1), o->gen_code(2)});
  CHECK(G.order() == 3125);
  CHECK(G.rank() == 2);
  CHECK(G.exponent() == 25);
  // single-generator cyclic group via a presentation
  auto cyc = std::make_shared<PcGroup>(
      parse_presentation("p 5\ngen a 25\npow a = 1\n"));
  auto oc = std::make_shared<PcOracle>(cyc);
  Group C(oc, {oc->gen_code(0)});
  CHECK(C.order() == 25);
  CHECK(C.element_order(oc->gen_code(0)) == 25);
  CHECK(C.element_order(C.pow(oc->gen_code(0), 5)) == 5);
  SocleIndex s = socle_index(C);
  CHECK(s.orbit_count == 1);
}

TEST_CASE("consistency check") {
  CHECK(consistency_check(h3()));
  auto split = std::make_shared<PcGroup>(
      parse_presentation(builtin_metacyclic_split_text(5, 2, 6)));
  CHECK(consistency_check(split));
  CHECK(PcOracle(split).size() == 625);
  auto modular = std::make_shared<PcGroup>(
      parse_presentation(builtin_metacyclic_modular_text(5, 2)));
  CHECK(consistency_check(modular));
  CHECK(PcOracle(modular).size() == 125);
  // deliberately inconsistent: c = [a,b] declared of order 25 although a and
  // b have order 5, which forces c^5 = [a^5, b] = 1 in any actual group
  std::string bad =
      "p 5\ngen a 5\ngen b 5\ngen c 25\n"
      "pow a = 1\npow b = 1\npow c = 1\n"
      "comm [a,b] = c\ncomm [a,c] = 1\ncomm [b,c] = 1\n";
  auto badg = std::make_shared<PcGroup>(parse_presentation(bad));
  CHECK(!consistency_check(badg));
}

TEST_CASE("collection budget guards divergence") {
  PcPresentation P = parse_presentation(builtin_h34_text(5, 1));
  auto diverge = [&] {
    PcGroup tight(P, 5);
    NormalWord w{24, 24, 4};
    (void)tight.mul(w, w);
  };
  CHECK_THROWS_AS(diverge(), ResourceError);
}

TEST_CASE("builtin parameter validation") {
  CHECK_THROWS_AS(builtin_h34_text(5, 10), InputError);  // p divides r
  CHECK_THROWS_AS(builtin_h34_text(4, 1), InputError);   // not a prime
  CHECK_THROWS_AS(builtin_metacyclic_split_text(5, 2, 10), InputError);
  CHECK_NOTHROW(builtin_metacyclic_modular_text(3, 2));
}

TEST_CASE("trivial presentation is consistent") {
  auto g = std::make_shared<PcGroup>(parse_presentation("p 5\n"));
  CHECK(consistency_check(g));
}
