#include <catch2/catch_amalgamated.hpp>

#include "beauville/criteria.hpp"
#include "beauville/nottingham.hpp"

using namespace beauville;

TEST_CASE("quotient orders") {
  CHECK(QuotientSpec::full_q(3, 6).order() == 243);
  CHECK(QuotientSpec::full_q(5, 8).order() == 78125);
  CHECK(QuotientSpec::diamond_q(5, 1, 2).order() == 15625);
  CHECK(QuotientSpec::diamond_q(5, 1, -1).order() == 15625);
  CHECK(QuotientSpec::diamond_q(3, 2, 1).order() == 1594323);
}

TEST_CASE("full quotient realization") {
  NottQuotient q = make_quotient(QuotientSpec::full_q(3, 6));
  Group g(q.oracle, {q.u, q.v});
  CHECK(g.order() == 243);
  CHECK(g.rank() == 2);
  CHECK(g.element_order(q.u) == 3);
  CHECK(g.element_order(q.v) == 3);
  CHECK(g.element_order(g.mul(q.u, q.v)) == 9);

  // derived subgroup is the level-3 congruence layer: index 9
  std::array<Code, 1> seeds{g.comm(q.u, q.v)};
  Subgroup der = g.closure(seeds, true);
  CHECK(g.order() / der.order() == 9);
}

TEST_CASE("lower central series matches the filtration") {
  NottQuotient q = make_quotient(QuotientSpec::full_q(3, 6));
  Group g(q.oracle, {q.u, q.v});
  auto lcs = g.lower_central_series();
  // gamma_i corresponds to filtration level s(i) = i + 1 + floor((i-2)/2)
  for (size_t i = 2; i <= lcs.size(); ++i) {
    u64 level = std::min<u64>(gamma_start(3, i), 6);
    auto expect = q.oracle->layer_codes(int(level));
    CHECK(lcs[i - 1].order() == expect.size());
    for (Code c : expect) CHECK(lcs[i - 1].set.test(c));
  }
  CHECK(g.nilpotency_class() == 3);
}

TEST_CASE("socle orbit census of the smallest interesting quotient") {
  // frozen: 67 subgroups of order 3 fall into 11 conjugacy orbits
  NottQuotient q = make_quotient(QuotientSpec::full_q(3, 6));
  Group g(q.oracle, {q.u, q.v});
  SocleIndex S = socle_index(g);
  CHECK(S.orbit_count == 11);
}

TEST_CASE("semi-abelian status of the smallest interesting quotient") {
  // frozen by the full 243^2 pair sweep
  NottQuotient q = make_quotient(QuotientSpec::full_q(3, 6));
  Group g(q.oracle, {q.u, q.v});
  auto res = is_semi_pi_abelian(g, 1);
  CHECK(res.status == Tri::no);
  REQUIRE(res.witness.has_value());
  auto [x, y] = *res.witness;
  CHECK((g.pow(x, 3) == g.pow(y, 3)) !=
        (g.pow(g.mul(x, g.inv(y)), 3) == 0));
}

TEST_CASE("sigma size fixture") {
  // frozen: direct conjugation sweep over all 78125 conjugators gives 17505
  NottQuotient q = make_quotient(QuotientSpec::full_q(5, 8));
  Group g(q.oracle, {q.u, q.v});
  CHECK(g.element_order(g.mul(q.u, q.v)) == 25);
  ElementSet s = sigma_set(g, q.u, q.v);
  CHECK(s.count() == 17505);
}

TEST_CASE("standard structure verifies at the bottom of a diamond") {
  NottQuotient q = make_quotient(QuotientSpec::full_q(5, 8));
  Group g(q.oracle, {q.u, q.v});
  Code uv2 = g.mul(q.u, g.pow(q.v, 2));
  Code uv4 = g.mul(q.u, g.pow(q.v, 4));
  CHECK(beauville_verify(g, {q.u, q.v, uv2, uv4}));
}

TEST_CASE("lifted structures keep their orders and verify") {
  // orders of u, v, uv agree in N/N_8 and N/N_9 at p = 5, so the same
  // coefficient strings form a structure one level up
  NottQuotient q8 = make_quotient(QuotientSpec::full_q(5, 8));
  NottQuotient q9 = make_quotient(QuotientSpec::full_q(5, 9));
  Group g8(q8.oracle, {q8.u, q8.v});
  Group g9(q9.oracle, {q9.u, q9.v});
  for (Code c : {q9.u, q9.v, g9.mul(q9.u, q9.v)}) {
    Code down = natural_projection(*q9.oracle, *q8.oracle, c);
    CHECK(g9.element_order(c) == g8.element_order(down));
  }
  Code uv2 = g9.mul(q9.u, g9.pow(q9.v, 2));
  Code uv4 = g9.mul(q9.u, g9.pow(q9.v, 4));
  CHECK(beauville_verify(g9, {q9.u, q9.v, uv2, uv4}));
}

TEST_CASE("uncovered central witnesses at p = 3") {
  NottQuotient q = make_quotient(QuotientSpec::full_q(3, 6));
  Group g(q.oracle, {q.u, q.v});
  Code w = find_uncovered_witness(g, q, q.u, 4);
  Code z = find_uncovered_witness(g, q, q.v, 4);
  // frozen: w = t + t^6 (level 5), z = t + t^5 (level 4)
  CHECK(q.oracle->code_series(w) == depth_one(3, 6, 6));
  CHECK(q.oracle->code_series(z) == depth_one(3, 6, 5));
  CHECK(!g.commutator_image(q.u).test(w));
  CHECK(!g.commutator_image(q.v).test(z));
  // the resulting pairs form a Beauville structure
  auto cands = suggested_structures(q, g);
  REQUIRE(!cands.empty());
  CHECK(beauville_verify(g, cands[0]));
}

TEST_CASE("diamond canonical forms") {
  QuotientSpec spec = QuotientSpec::diamond_q(5, 1, 2);
  NottQuotient q = make_quotient(spec);
  const NottinghamOracle& O = *q.oracle;
  CHECK(O.size() == 15625);
  // the canonicalized coefficient is forced to zero
  for (Code c : {q.u, q.v, O.mul(q.u, q.v)})
    CHECK(O.code_series(c).coeff(7) == 0);
  // the subgroup generator collapses to the identity exactly in its own
  // quotient
  TruncSeries e2 = e_alpha(5, O.cap(), 1, 2);
  CHECK(O.series_code(e2) == 0);
  TruncSeries e0 = e_alpha(5, O.cap(), 1, 0);
  CHECK(O.series_code(e0) != 0);
  // in the quotient by the filtration subgroup itself, the depth-one element
  // survives instead
  NottQuotient qinf = make_quotient(QuotientSpec::diamond_q(5, 1, -1));
  CHECK(qinf.oracle->series_code(e_alpha(5, qinf.oracle->cap(), 1, 0)) != 0);
  CHECK(qinf.oracle->series_code(depth_one(5, qinf.oracle->cap(), 8)) == 0);
}

TEST_CASE("diamond canonicalization is a homomorphic section") {
  QuotientSpec spec = QuotientSpec::diamond_q(5, 1, 3);
  NottQuotient q = make_quotient(spec);
  const NottinghamOracle& O = *q.oracle;
  SplitMix64 rng(6);
  for (int rep = 0; rep < 200; ++rep) {
    TruncSeries f(5, O.cap()), g(5, O.cap());
    for (int d = 2; d <= O.cap(); ++d) {
      f.set_coeff(d, u32(rng.below(5)));
      g.set_coeff(d, u32(rng.below(5)));
    }
    Code cf = O.series_code(f), cg = O.series_code(g);
    CHECK(O.mul(cf, cg) == O.series_code(compose(f, g)));
  }
}

TEST_CASE("reference verdict formula") {
  // p = 5 full quotients: only the distinguished levels fail
  for (int k = 3; k <= 10; ++k)
    CHECK(nottingham_verdict(QuotientSpec::full_q(5, k)) == (k != 7));
  CHECK(!nottingham_verdict(QuotientSpec::full_q(5, 2)));
  CHECK(!nottingham_verdict(QuotientSpec::full_q(5, 32)));
  CHECK(nottingham_verdict(QuotientSpec::full_q(5, 33)));
  // p = 3: also everything below 3^5 fails
  CHECK(!nottingham_verdict(QuotientSpec::full_q(3, 5)));
  for (int k = 6; k <= 13; ++k)
    CHECK(nottingham_verdict(QuotientSpec::full_q(3, k)));
  CHECK(!nottingham_verdict(QuotientSpec::full_q(3, 14)));
  CHECK(nottingham_verdict(QuotientSpec::full_q(3, 15)));
  // diamonds
  for (int alpha : {1, 2, 3, 4})
    CHECK(nottingham_verdict(QuotientSpec::diamond_q(5, 1, alpha)));
  CHECK(!nottingham_verdict(QuotientSpec::diamond_q(5, 1, 0)));
  CHECK(!nottingham_verdict(QuotientSpec::diamond_q(5, 1, -1)));
  for (int alpha : {1, 2})
    CHECK(!nottingham_verdict(QuotientSpec::diamond_q(3, 1, alpha)));
  CHECK(nottingham_verdict(QuotientSpec::diamond_q(3, 2, 1)));
  CHECK(!nottingham_verdict(QuotientSpec::diamond_q(3, 2, 0)));
}

TEST_CASE("order-p generators at every truncation") {
  for (int p : {3, 5}) {
    for (int k : {4, 6, 9}) {
      NottQuotient q = make_quotient(QuotientSpec::full_q(p, k));
      Group g(q.oracle, {q.u, q.v});
      CHECK(g.element_order(q.u) == u64(p));
      CHECK(g.element_order(q.v) == u64(p));
    }
  }
}

TEST_CASE("oracle guards") {
  CHECK_THROWS_AS(NottinghamOracle(QuotientSpec::full_q(2, 5)), InputError);
  CHECK_THROWS_AS(NottinghamOracle(QuotientSpec::full_q(5, 1)), InputError);
  CHECK_THROWS_AS(NottinghamOracle(QuotientSpec::diamond_q(5, 0, 1)),
                  InputError);
}
