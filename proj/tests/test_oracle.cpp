#include "doctest.h"

#include "oracle.hpp"
#include "suites.hpp"

using oracle::Equation;
using oracle::Int;

namespace {
Equation row(std::vector<int> coef, int constant) {
  Equation e;
  for (int c : coef) e.coef.push_back(c);
  e.constant = constant;
  return e;
}
void report(const suites::Result& r) {
  for (const auto& f : r.failures) MESSAGE(f);
  CHECK(r.passed == r.total);
}
}  // namespace

TEST_CASE("oracle: integer solvability by determinantal divisors") {
  CHECK(oracle::integer_solvable({{2, 4}}, {6}));
  CHECK_FALSE(oracle::integer_solvable({{2, 4}}, {3}));
  CHECK(oracle::integer_solvable({{2, 3}}, {1}));
  CHECK_FALSE(oracle::integer_solvable({{1, 1}, {1, -1}}, {1, 0}));
  CHECK(oracle::integer_solvable({{1, 1}, {1, -1}}, {2, 0}));
  CHECK_FALSE(oracle::integer_solvable({{1, 0}, {1, 0}}, {1, 2}));
}

TEST_CASE("oracle: hand-checked entailments") {
  // 2x + 3y = 5 forces x = 1.
  CHECK(oracle::nat_entails(2, {row({2, 3}, -5)}, row({1, 0}, -1)));
  // x + y = 2 does not.
  CHECK_FALSE(oracle::nat_entails(2, {row({1, 1}, -2)}, row({1, 0}, -1)));
  // x = y + 1 gives x + z = y + z + 1 with z unconstrained.
  CHECK(oracle::nat_entails(3, {row({1, -1, 0}, -1)}, row({1, -1, 0}, -1)));
  CHECK_FALSE(oracle::nat_entails(3, {row({1, -1, 0}, -1)}, row({0, 0, 1}, 0)));
  // x + y = 0 forces both to 0; x = y + 1 with it is unsat.
  CHECK(oracle::nat_entails(2, {row({1, 1}, 0)}, row({0, 1}, 0)));
  CHECK(oracle::nat_entails(2, {row({1, 1}, 0), row({1, -1}, -1)}, row({1, 0}, -7)));
  // 2x = 2y + 1 has no integer solution.
  CHECK(oracle::nat_entails(2, {row({2, -2}, -1)}, row({1, 0}, -3)));
  // No hypotheses: only identities.
  CHECK(oracle::nat_entails(2, {}, row({0, 0}, 0)));
  CHECK_FALSE(oracle::nat_entails(2, {}, row({1, -1}, 0)));
}

TEST_CASE("oracle: ground counterexample search") {
  using G = oracle::GroundTerm;
  G x{"x", true, false, {}}, l{"l", true, true, {}};
  G nil{"nil", false, false, {}};
  G app{"@", false, false, {l, nil}};
  CHECK_FALSE(oracle::find_counterexample({}, {app, l}, {}));
  G app2{"@", false, false, {nil, l}};
  G cons{"cons", false, false, {x, l}};
  CHECK(oracle::find_counterexample({}, {cons, l}, {}));
  CHECK_FALSE(oracle::find_counterexample({}, {app2, app}, {}));
}

TEST_CASE("solver agrees with the oracle on random linear queries") {
  report(suites::solver_vs_oracle(150, 11));
}

TEST_CASE("solver's mixed answers have no small counterexample") {
  report(suites::true_answers_survive(60, 12));
}
