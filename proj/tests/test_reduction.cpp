#include "doctest.h"

#include "ccic/reduction.hpp"

using namespace ccic;

namespace {
Term var(const std::string& n) { return mk_fvar(n, VarLevel::Object); }
Term lam(const std::string& x, Term dom, Term body) {
  return mk_abs(x, Annot::U, dom, abstract(body, x));
}
Term append(Term elem, Term a, Term b) {
  return mk_apps(mk_fosym("@"), {elem, a, b});
}
}  // namespace

TEST_CASE("beta step") {
  Term x = var("x");
  Term redex = mk_app(lam("x", mk_nat(), mk_plus(x, x)), mk_zero());
  RedexKind k{};
  auto r = step(redex, {}, &k);
  REQUIRE(r);
  CHECK(k == RedexKind::Beta);
  CHECK(alpha_eq(*r, mk_plus(mk_zero(), mk_zero())));
  CHECK_FALSE(step(mk_zero()).has_value());
}

TEST_CASE("iota nat") {
  Term q = lam("n", mk_nat(), mk_nat());
  Term v0 = var("v0"), vs = var("vS");
  RedexKind k{};
  auto r = step(mk_elim(mk_zero(), Inductive::Nat, {}, q, {v0, vs}), {}, &k);
  REQUIRE(r);
  CHECK(k == RedexKind::IotaNat);
  CHECK(alpha_eq(*r, v0));
  Term s = mk_elim(mk_succ(var("p")), Inductive::Nat, {}, q, {v0, vs});
  Term expect = mk_apps(vs, {var("p"), mk_elim(var("p"), Inductive::Nat, {}, q, {v0, vs})});
  CHECK(alpha_eq(*step(s), expect));
}

TEST_CASE("iota list and word") {
  Term t = var("T");
  Term q = var("Q");
  Term vn = var("vn"), vc = var("vc");
  Term l = mk_cons(mk_nat(), var("a"), var("l"));
  RedexKind k{};
  auto r = step(mk_elim(l, Inductive::List, {mk_nat()}, q, {vn, vc}), {}, &k);
  REQUIRE(r);
  CHECK(k == RedexKind::IotaList);
  CHECK(alpha_eq(*r, mk_apps(vc, {var("a"), var("l"),
                                  mk_elim(var("l"), Inductive::List, {mk_nat()}, q, {vn, vc})})));

  Term ve = var("ve"), vch = var("vch"), va = var("va");
  Term w = mk_apps(mk_ctor(Inductive::Word, 3), {var("n"), var("m"), var("u"), var("v")});
  r = step(mk_elim(w, Inductive::Word, {mk_plus(var("n"), var("m"))}, q, {ve, vch, va}), {}, &k);
  REQUIRE(r);
  CHECK(k == RedexKind::IotaWord);
  Term expect = mk_apps(va, {var("n"), var("m"), var("u"), var("v"),
                             mk_elim(var("u"), Inductive::Word, {var("n")}, q, {ve, vch, va}),
                             mk_elim(var("v"), Inductive::Word, {var("m")}, q, {ve, vch, va})});
  CHECK(alpha_eq(*r, expect));
  Term c = mk_app(mk_ctor(Inductive::Word, 2), var("x"));
  CHECK(alpha_eq(*step(mk_elim(c, Inductive::Word, {mk_numeral(1)}, q, {ve, vch, va})),
                 mk_app(vch, var("x"))));
  (void)t;
}

TEST_CASE("normalize") {
  CHECK(alpha_eq(normalize(mk_app(lam("x", mk_nat(), var("x")), mk_zero())), mk_zero()));
  CHECK(alpha_eq(normalize(mk_succ(mk_zero())), mk_succ(mk_zero())));
  Term one = mk_cons(mk_nat(), mk_numeral(1), mk_nil(mk_nat()));
  CHECK(alpha_eq(normalize(append(mk_nat(), one, mk_nil(mk_nat()))), one));
  // [0] @ [1] = [0, 1]
  Term a = mk_cons(mk_nat(), mk_zero(), mk_nil(mk_nat()));
  Term b = mk_cons(mk_nat(), mk_numeral(1), mk_nil(mk_nat()));
  CHECK(alpha_eq(normalize(append(mk_nat(), a, b)),
                 mk_cons(mk_nat(), mk_zero(), b)));
  // Open append stays stuck on the Elim.
  Term open = normalize(append(mk_nat(), var("l"), b));
  CHECK(open->is<node::Elim>());
}

TEST_CASE("normalize runs out of fuel on a looping term") {
  // (λx. x x)(λx. x x) is ill-typed but must terminate with FuelExhausted.
  Term w = mk_abs("x", Annot::U, mk_nat(), mk_app(mk_bvar(0), mk_bvar(0)));
  ReductionOptions opts;
  opts.fuel = 1000;
  try {
    normalize(mk_app(w, w), opts);
    FAIL("expected FuelExhausted");
  } catch (const KernelError& e) {
    CHECK(e.kind() == ErrorKind::FuelExhausted);
  }
}

TEST_CASE("is_weak") {
  Term q = lam("n", mk_nat(), mk_nat());
  Term vs = mk_abs("x", Annot::U, mk_nat(),
                   mk_abs("T", Annot::U, mk_prop(), mk_arrow(mk_nat(), mk_nat())));
  Term bad = mk_abs("x", Annot::U, mk_nat(),
                    mk_elim(mk_bvar(0), Inductive::Nat, {}, q, {mk_nat(), vs}));
  CHECK_FALSE(is_weak(bad));
  CHECK(is_weak(mk_plus(mk_zero(), mk_zero())));
  CHECK_FALSE(is_weak(mk_app(mk_fvar("X", VarLevel::Predicate), var("u"))));
  CHECK_FALSE(is_weak(mk_elim(var("n"), Inductive::Nat, {}, q, {mk_zero(), var("f")})));
  // Applied bound predicate variable.
  Term lamX = mk_abs("X", Annot::U, mk_arrow(mk_nat(), mk_prop()),
                     mk_app(mk_bvar(0), mk_zero()));
  CHECK_FALSE(is_weak(lamX));
  CHECK(is_weak(mk_elim(mk_zero(), Inductive::Nat, {}, q, {mk_zero(), var("f")})));
}
