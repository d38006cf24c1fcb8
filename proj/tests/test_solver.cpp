#include "doctest.h"

#include "ccic/solver.hpp"

using namespace ccic;

namespace {
const SortExpr nat = SortExpr::nat();
const SortExpr lnat = SortExpr::list(SortExpr::nat());
AlgTerm v(const std::string& n, SortExpr s = SortExpr::nat()) { return AlgTerm::variable(n, s); }
AlgTerm f(const std::string& n, std::vector<AlgTerm> a = {}) { return AlgTerm::app(n, std::move(a)); }
AlgTerm num(int k) {
  AlgTerm t = f("0");
  while (k-- > 0) t = f("S", {t});
  return t;
}
AlgTerm plus(AlgTerm a, AlgTerm b) { return f("+", {std::move(a), std::move(b)}); }
AlgEquation eq(AlgTerm a, AlgTerm b, SortExpr s = SortExpr::nat()) { return {a, b, s}; }

bool proves(const std::vector<AlgEquation>& hyps, const AlgEquation& goal) {
  Signature sig;
  SolverResult r = entails(sig, hyps, goal);
  if (r.holds) {
    ReplayResult ok = replay(sig, hyps, goal, r.trace);
    INFO("replay failed at step " << (ok.failed_step ? *ok.failed_step : 0) << ": " << ok.message);
    REQUIRE(ok.ok);
  }
  return r.holds;
}
bool unsat(const std::vector<AlgEquation>& hyps) {
  Signature sig;
  SolverResult r = is_unsat(sig, hyps);
  if (r.holds) {
    REQUIRE(r.trace.steps.back().kind == StepKind::Clash);
    REQUIRE(replay(sig, hyps, falsum(), r.trace).ok);
  }
  return r.holds;
}
}  // namespace

TEST_CASE("entails: basic examples") {
  CHECK(proves({eq(v("c"), plus(num(1), v("d"))), eq(v("d"), num(2))}, eq(v("c"), num(3))));
  CHECK(proves({}, eq(plus(v("n1"), v("n2")), plus(v("n2"), v("n1")))));
  CHECK(proves({}, eq(v("x"), v("x"))));
  AlgTerm a = v("a"), b = v("b"), l = v("l", lnat), l2 = v("l2", lnat);
  CHECK(proves({eq(f("cons", {a, l}), f("cons", {b, l2}), lnat)}, eq(a, b)));
  CHECK(proves({eq(f("cons", {a, l}), f("cons", {b, l2}), lnat)}, eq(l, l2, lnat)));
  CHECK_FALSE(proves({}, eq(v("x"), v("y"))));
}

TEST_CASE("is_unsat: basic examples") {
  CHECK(unsat({eq(num(0), num(1))}));
  CHECK(unsat({eq(f("nil"), f("cons", {v("x"), v("l", lnat)}), lnat)}));
  CHECK_FALSE(unsat({eq(v("c"), plus(num(1), v("d")))}));
}

TEST_CASE("congruence over uninterpreted symbols") {
  Signature sig;
  sig.declare({"g", false, {}, {nat}, nat});
  std::vector<AlgEquation> hyps{eq(v("x"), v("y"))};
  AlgEquation goal = eq(f("g", {v("x")}), f("g", {v("y")}));
  SolverResult r = entails(sig, hyps, goal);
  REQUIRE(r.holds);
  CHECK(replay(sig, hyps, goal, r.trace).ok);
  // g(x) = x + 1 and x = g(x) clash arithmetically.
  hyps = {eq(f("g", {v("x")}), plus(v("x"), num(1))), eq(v("x"), f("g", {v("x")}))};
  r = is_unsat(sig, hyps);
  REQUIRE(r.holds);
  CHECK(replay(sig, hyps, falsum(), r.trace).ok);
}

TEST_CASE("natural number tightening") {
  CHECK(proves({eq(plus(v("x"), v("y")), num(0))}, eq(v("x"), num(0))));
  CHECK(proves({eq(plus(v("x"), num(2)), num(1))}, eq(v("q"), v("r"))));
  CHECK(unsat({eq(plus(v("x"), num(1)), num(0))}));
  // 2x = 1 has no integer solution.
  CHECK(unsat({eq(plus(v("x"), v("x")), num(1))}));
  CHECK_FALSE(unsat({eq(plus(v("x"), v("x")), num(2))}));
  CHECK(proves({eq(plus(v("x"), v("x")), num(2))}, eq(v("x"), num(1))));
  // x + y = z, z = 0 forces both.
  CHECK(proves({eq(plus(v("x"), v("y")), v("z")), eq(v("z"), num(0))}, eq(v("y"), num(0))));
}

TEST_CASE("list and arithmetic combine") {
  AlgTerm l = v("l", lnat);
  // cons(x+1, l) = cons(S y, l) gives x = y.
  CHECK(proves({eq(f("cons", {plus(v("x"), num(1)), l}), f("cons", {f("S", {v("y")}), l}), lnat)},
               eq(v("x"), v("y"))));
  // a = b gives cons(a, nil) = cons(b + 0, nil)
  CHECK(proves({eq(v("a"), v("b"))},
               eq(f("cons", {v("a"), f("nil")}), f("cons", {plus(v("b"), num(0)), f("nil")}), lnat)));
  CHECK_FALSE(proves({}, eq(f("@", {l, f("nil")}), l, lnat)));
}

TEST_CASE("ill-sorted query") {
  Signature sig;
  CHECK_THROWS_AS(entails(sig, {}, eq(f("nil"), num(0))), KernelError);
}

TEST_CASE("replay rejects tampered traces") {
  Signature sig;
  std::vector<AlgEquation> hyps{eq(v("c"), plus(num(1), v("d"))), eq(v("d"), num(2))};
  AlgEquation goal = eq(v("c"), num(3));
  SolverResult r = entails(sig, hyps, goal);
  REQUIRE(r.holds);
  bool touched = false;
  for (auto& s : r.trace.steps)
    for (auto& c : s.combination) {
      c.first += 1;
      touched = true;
      CHECK_FALSE(replay(sig, hyps, goal, r.trace).ok);
      c.first -= 1;
    }
  CHECK(touched);
  ProofTrace refl;
  Step s;
  s.kind = StepKind::Refl;
  s.lhs = v("x");
  s.rhs = v("x");
  s.sort = nat;
  refl.steps.push_back(s);
  CHECK_FALSE(replay(sig, {}, eq(v("x"), v("y")), refl).ok);
  CHECK(replay(sig, {}, eq(v("x"), v("x")), refl).ok);
}

TEST_CASE("finite enumeration over bounded atoms") {
  AlgTerm x = v("x"), y = v("y"), z = v("z"), w = v("w");
  auto times = [](int k, AlgTerm t) {
    AlgTerm s = t;
    for (int i = 1; i < k; ++i) s = plus(s, t);
    return s;
  };
  // 2x + 3y = 5 has only x = 1, y = 1 over nat.
  std::vector<AlgEquation> h1{eq(plus(times(2, x), times(3, y)), num(5))};
  CHECK(proves(h1, eq(x, num(1))));
  CHECK(proves(h1, eq(y, num(1))));
  CHECK_FALSE(proves({eq(plus(times(2, x), times(3, y)), num(6))}, eq(x, num(0))));
  // z is even and at most 1.
  std::vector<AlgEquation> h2{eq(times(2, x), plus(times(2, y), z)), eq(plus(z, w), num(1))};
  CHECK(proves(h2, eq(z, num(0))));
  CHECK(proves(h2, eq(w, num(1))));
  // 2x + 3y = 1 has integer solutions but no nat one.
  Signature sig;
  std::vector<AlgEquation> h3{eq(plus(times(2, x), times(3, y)), num(1))};
  SolverResult r = is_unsat(sig, h3);
  REQUIRE(r.holds);
  CHECK(r.trace.steps.back().kind == StepKind::Enum);
  CHECK(replay(sig, h3, falsum(), r.trace).ok);
}

TEST_CASE("replay rejects unsound enumeration") {
  Signature sig;
  AlgTerm x = v("x"), y = v("y");
  // x + y = 2 does not force x = 1.
  std::vector<AlgEquation> hyps{eq(plus(x, y), num(2))};
  ProofTrace t;
  Step h;
  h.kind = StepKind::Hyp;
  h.lhs = hyps[0].lhs;
  h.rhs = hyps[0].rhs;
  h.sort = nat;
  t.steps.push_back(h);
  Step e;
  e.kind = StepKind::Enum;
  e.lhs = x;
  e.rhs = num(1);
  e.sort = nat;
  e.refs = {0};
  e.combination = {{1, 0}};
  t.steps.push_back(e);
  ReplayResult r = replay(sig, hyps, eq(x, num(1)), t);
  CHECK_FALSE(r.ok);
  CHECK(r.failed_step == std::optional<std::size_t>(1));
  // A negative coefficient does not bound anything.
  t.steps[1].combination = {{-1, 0}};
  CHECK_FALSE(replay(sig, hyps, eq(x, num(1)), t).ok);
}
