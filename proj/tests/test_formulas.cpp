#include <catch2/catch_amalgamated.hpp>

#include "beauville/formulas.hpp"

using namespace beauville;

TEST_CASE("power formula suite") {
  for (int p : {3, 5}) {
    FormulaReport rep = check_power_formula(p, 4, 15, 1);
    INFO((rep.failures.empty() ? std::string() : rep.failures[0]));
    CHECK(rep.ok());
    CHECK(rep.checks > 0);
  }
}

TEST_CASE("commutator formula suite") {
  for (int p : {3, 5}) {
    FormulaReport rep = check_commutator_formula(p, 4, 15, 1);
    INFO((rep.failures.empty() ? std::string() : rep.failures[0]));
    CHECK(rep.ok());
  }
}

TEST_CASE("closed form suite") {
  for (int p : {3, 5, 7}) {
    FormulaReport rep = check_pm_power_forms(p, p == 7 ? 1 : 2);
    INFO((rep.failures.empty() ? std::string() : rep.failures[0]));
    CHECK(rep.ok());
  }
}

TEST_CASE("congruence lemma suite") {
  for (int p : {3, 5}) {
    FormulaReport rep = check_congruence_lemma(p, 2, 1);
    INFO((rep.failures.empty() ? std::string() : rep.failures[0]));
    CHECK(rep.ok());
  }
}

TEST_CASE("mirrored composition is caught") {
  FormulaReport rep = check_matrix_homomorphism(5, 24, 1, ComposeOrder::mirrored);
  CHECK(!rep.ok());
  FormulaReport ok = check_matrix_homomorphism(5, 24, 1, ComposeOrder::standard);
  CHECK(ok.ok());
}

TEST_CASE("aggregate runner") {
  FormulaReport rep = run_formula_suites({7}, 1, 1);
  INFO((rep.failures.empty() ? std::string() : rep.failures[0]));
  CHECK(rep.ok());
  FormulaReport bad = run_formula_suites({7}, 1, 1, ComposeOrder::mirrored);
  CHECK(!bad.ok());
}
