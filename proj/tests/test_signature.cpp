#include "doctest.h"

#include "ccic/reduction.hpp"
#include "ccic/signature.hpp"

using namespace ccic;

namespace {
AlgTerm v(const std::string& n, SortExpr s = SortExpr::nat()) { return AlgTerm::variable(n, s); }
AlgTerm f(const std::string& n, std::vector<AlgTerm> a = {}) { return AlgTerm::app(n, std::move(a)); }
}  // namespace

TEST_CASE("sort_of") {
  Signature sig;
  CHECK(sort_of(sig, f("+", {f("0"), v("x")}))->to_string() == "nat");
  CHECK(sort_of(sig, f("nil"))->to_string() == "list(?0)");
  CHECK(sort_of(sig, f("cons", {f("0"), f("nil")}))->to_string() == "list(nat)");
  CHECK_FALSE(sort_of(sig, f("cons", {f("0"), f("0")})).has_value());
  CHECK_FALSE(sort_of(sig, f("S", {f("nil")})).has_value());
  CHECK(has_sort(sig, f("nil"), SortExpr::list(SortExpr::nat())));
  CHECK(has_sort(sig, f("nil"), SortExpr::list(SortExpr::variable("T"))));
  // A rigid variable does not unify with nat.
  CHECK_FALSE(has_sort(sig, v("x", SortExpr::variable("T")), SortExpr::nat()));
}

TEST_CASE("sort parsing round-trips") {
  for (std::string s : {"nat", "list(nat)", "list(list(T))", "a"})
    CHECK(parse_sort(s)->to_string() == s);
  CHECK_FALSE(parse_sort("list(nat").has_value());
  CHECK_FALSE(parse_sort("").has_value());
}

TEST_CASE("embedding") {
  Signature sig;
  CHECK(alpha_eq(embed_sort(SortExpr::nat()), mk_ind(Inductive::Nat)));
  CHECK(alpha_eq(embed_sort(SortExpr::list(SortExpr::nat())), mk_list(mk_nat())));
  CHECK(alpha_eq(embed_symbol(*sig.find("0")), mk_ctor(Inductive::Nat, 1)));
  Term cons = mk_abs("A", Annot::U, mk_prop(), mk_app(mk_ctor(Inductive::List, 2), mk_bvar(0)));
  CHECK(alpha_eq(embed_symbol(*sig.find("cons")), cons));
  CHECK(alpha_eq(symbol_type(*sig.find("+")),
                 mk_arrow(mk_nat(), mk_arrow(mk_nat(), mk_nat()))));
  Term app_ty = mk_prod("T", Annot::U, mk_prop(),
                        mk_arrow(mk_list(mk_bvar(0)),
                                 mk_arrow(mk_list(mk_bvar(0)), mk_list(mk_bvar(0)))));
  CHECK(alpha_eq(symbol_type(*sig.find("@")), app_ty));
}

TEST_CASE("sort_from_type") {
  CHECK(sort_from_type(mk_nat())->to_string() == "nat");
  CHECK(sort_from_type(mk_list(mk_fvar("T", VarLevel::Predicate)))->to_string() == "list(T)");
  CHECK_FALSE(sort_from_type(mk_word(mk_zero())).has_value());
  CHECK_FALSE(sort_from_type(mk_letter()).has_value());
}

TEST_CASE("well_applied") {
  Signature sig;
  Term t = mk_fvar("T", VarLevel::Predicate);
  auto w = well_applied(sig, mk_cons(t, mk_fvar("x", VarLevel::Object), mk_fvar("l", VarLevel::Object)));
  REQUIRE(w);
  CHECK(w->decl->name == "cons");
  CHECK(w->type_args.size() == 1);
  CHECK(w->value_args.size() == 2);
  CHECK(well_applied(sig, mk_succ(mk_zero()))->decl->name == "S");
  CHECK_FALSE(well_applied(sig, mk_abs("x", Annot::U, mk_nat(), mk_bvar(0))));
  CHECK_FALSE(well_applied(sig, mk_app(mk_ctor(Inductive::List, 2), t)));
}

TEST_CASE("user declarations") {
  Signature sig;
  SymbolDecl g{"len", false, {}, {SortExpr::list(SortExpr::variable("a"))}, SortExpr::nat()};
  CHECK_THROWS_AS(sig.declare(g), KernelError);
  SymbolDecl h{"f", false, {}, {SortExpr::nat()}, SortExpr::nat()};
  sig.declare(h);
  CHECK_THROWS_AS(sig.declare(h), KernelError);
  SymbolDecl rev{"rev", false, {}, {SortExpr::list(SortExpr::variable("a"))},
                 SortExpr::list(SortExpr::variable("a"))};
  sig.declare(rev);
  CHECK(sig.find("rev")->params == std::vector<std::string>{"a"});
}

TEST_CASE("embed_term round trip through normalize") {
  Signature sig;
  AlgTerm t = f("cons", {f("S", {f("0")}), f("nil")});
  Term k = embed_term(sig, t, SortExpr::list(SortExpr::nat()));
  CHECK(alpha_eq(k, mk_cons(mk_nat(), mk_numeral(1), mk_nil(mk_nat()))));
}
