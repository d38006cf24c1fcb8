#include "doctest.h"

#include "ccic/syntax.hpp"

using namespace ccic;

namespace {
Scope objects(std::set<std::string> names) {
  return [names](const std::string& n) -> std::optional<VarLevel> {
    if (names.count(n)) return VarLevel::Object;
    return std::nullopt;
  };
}
Term parse(const std::string& s, const Signature& sig = Signature()) {
  return parse_term(s, objects({"n", "m", "w"}), sig);
}
}  // namespace

TEST_CASE("parse basic forms") {
  CHECK(alpha_eq(parse("3"), mk_numeral(3)));
  CHECK(alpha_eq(parse("n + 1"), mk_plus(mk_fvar("n", VarLevel::Object), mk_numeral(1))));
  CHECK(alpha_eq(parse("fun (x : nat) => x"), mk_abs("x", Annot::U, mk_nat(), mk_bvar(0))));
  CHECK(alpha_eq(parse("\xCE\xBB x : nat. x"), mk_abs("x", Annot::U, mk_nat(), mk_bvar(0))));
  CHECK(alpha_eq(parse("nat -> nat"), mk_arrow(mk_nat(), mk_nat())));
  CHECK(alpha_eq(parse("nat ->r nat"), mk_arrow(mk_nat(), mk_nat(), Annot::R)));
  CHECK(alpha_eq(parse("n = m"), mk_eqn(mk_fvar("n", VarLevel::Object), mk_fvar("m", VarLevel::Object), mk_nat())));
  CHECK(alpha_eq(parse("nil nat =[list nat] nil nat"),
                 mk_eqn(mk_nil(mk_nat()), mk_nil(mk_nat()), mk_list(mk_nat()))));
  Term p = parse("forall (x y :r nat), word (x + y)");
  const auto* outer = p->as<node::Prod>();
  REQUIRE(outer);
  CHECK(outer->annot == Annot::R);
  CHECK(outer->body->as<node::Prod>()->annot == Annot::R);
  // Addition is left associative, arrows right associative.
  CHECK(alpha_eq(parse("n + m + n"), parse("(n + m) + n")));
  CHECK(alpha_eq(parse("nat -> nat -> nat"), parse("nat -> (nat -> nat)")));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse("fun (x : nat) => )");
    FAIL("no error");
  } catch (const KernelError& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("1:18") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("q"), KernelError);
  try {
    parse("q");
  } catch (const KernelError& e) {
    CHECK(e.kind() == ErrorKind::UnboundVariable);
  }
  CHECK_THROWS(parse("fun (ynat_0 : nat) => ynat_0"));
}

TEST_CASE("print round trips") {
  Signature sig;
  sig.declare(parse_arity("f", "nat * nat -> nat"));
  for (const char* s :
       {"fun (x : nat) (y : nat) => f x (y + 2)", "forall (T : Prop), list T -> list T",
        "Elim(n : nat; fun (_ : nat) => nat; 0, fun (k : nat) (r : nat) => S r)",
        "Eq[nat](n)", "n = m -> word n", "fun (x : nat) (x1 : nat) => x + x1",
        "@ nat (cons nat 1 (nil nat)) (nil nat)", "(+) n", "Elim(w : word n; fun (k : nat) (_ : word k) => nat; 0, fun (_ : letter) => 1, fun (a : nat) (b : nat) (_ : word a) (_ : word b) (p : nat) (q : nat) => p + q)"}) {
    Term t = parse(s, sig);
    std::string printed = print(t);
    INFO(printed);
    CHECK(alpha_eq(parse(printed, sig), t));
  }
  // Capture: a binder named like a free variable is renamed.
  Term cap = mk_abs("n", Annot::U, mk_nat(), mk_plus(mk_bvar(0), mk_fvar("n", VarLevel::Object)));
  CHECK(print(cap) == "fun (n1 : nat) => n1 + n");
  CHECK(alpha_eq(parse(print(cap)), cap));
}

TEST_CASE("arity") {
  SymbolDecl d = parse_arity("g", "forall a. list(a) * nat -> list(a)");
  CHECK(d.params == std::vector<std::string>{"a"});
  CHECK(d.args.size() == 2);
  CHECK(print_arity(d) == "forall a. list(a) * nat -> list(a)");
  CHECK(parse_arity("c", "nat").args.empty());
}

TEST_CASE("files") {
  SourceFile f = parse_file(
      "-- comment\n"
      "symbol f : nat -> nat\n"
      "axiom n : nat\n"
      "axiom h :r f n = 3\n"
      "def two : nat := 2\n"
      "check two : nat\n"
      "convert f n ~ 3\n");
  REQUIRE(f.decls.size() == 6);
  CHECK(f.decls[2].annot == Annot::R);
  CHECK(alpha_eq(f.decls[4].term, mk_numeral(2)));
  CHECK(f.decls[5].kind == Declaration::Kind::Convert);
  CHECK(f.decls[5].span.line == 7);
  CHECK(f.signature.find("f"));
  CHECK_THROWS(parse_file("axiom n : nat\naxiom n : nat\n"));
  CHECK_THROWS(parse_file("axiom ynat_0 : nat\n"));
}
