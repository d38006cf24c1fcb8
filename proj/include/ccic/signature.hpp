#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccic/term.hpp"

namespace ccic {

// Sort expression: a sort variable, nat, or list(s). Variables whose name
// starts with '?' are unification variables; all others are rigid.
struct SortExpr {
  enum class Kind { Var, Nat, List };
  Kind kind = Kind::Nat;
  std::string var;
  std::vector<SortExpr> args;

  static SortExpr nat() { return {}; }
  static SortExpr list(SortExpr elem);
  static SortExpr variable(std::string name);

  bool is_var() const { return kind == Kind::Var; }
  bool is_flexible() const { return is_var() && !var.empty() && var[0] == '?'; }
  bool operator==(const SortExpr& o) const;
  bool operator!=(const SortExpr& o) const { return !(*this == o); }
  bool operator<(const SortExpr& o) const { return to_string() < o.to_string(); }
  std::string to_string() const;
};

// "nat", "list(nat)", "list(T)"; any other identifier is a sort variable.
std::optional<SortExpr> parse_sort(const std::string& text);

using SortSubst = std::map<std::string, SortExpr>;

SortExpr subst_sort(const SortSubst& s, const SortExpr& e);
// Most general unifier extension; only flexible variables are bound.
bool unify(const SortExpr& a, const SortExpr& b, SortSubst& s);
std::vector<std::string> sort_vars(const SortExpr& e);

struct SymbolDecl {
  std::string name;
  bool constructor = false;
  std::vector<std::string> params;
  std::vector<SortExpr> args;
  SortExpr result;

  std::size_t arity() const { return args.size(); }
  std::string to_string() const;
};

// First-order term over the signature plus sorted variables.
struct AlgTerm {
  bool is_var = false;
  std::string name;
  SortExpr sort;  // meaningful for variables only
  std::vector<AlgTerm> args;

  static AlgTerm variable(std::string name, SortExpr sort);
  static AlgTerm app(std::string symbol, std::vector<AlgTerm> args = {});

  bool operator==(const AlgTerm& o) const;
  bool operator!=(const AlgTerm& o) const { return !(*this == o); }
  std::string to_string() const;
};

struct AlgEquation {
  AlgTerm lhs;
  AlgTerm rhs;
  SortExpr sort;
};

// Abstraction variable standing for a non-algebraic kernel term.
struct Alien {
  std::string name;
  SortExpr sort;
  Term term;
};

class Signature {
 public:
  // The built-in signature: 0, S, +, nil, cons, @.
  Signature();

  const SymbolDecl* find(const std::string& name) const;
  const std::vector<SymbolDecl>& symbols() const { return symbols_; }
  bool is_builtin(const std::string& name) const;

  // Adds an uninterpreted defined symbol. Throws IllFormedTerm on duplicate
  // names, constructors, or sort variables missing from the codomain.
  void declare(SymbolDecl decl);

  // Kernel term for a constructor symbol name, and back.
  static std::optional<std::pair<Inductive, int>> constructor_of(const std::string& name);
  static std::optional<std::string> symbol_of_constructor(Inductive ind, int index);

 private:
  std::vector<SymbolDecl> symbols_;
  std::size_t builtin_count_ = 0;
};

// Most general sort of t (unification variables renamed to ?0, ?1, ...), or
// nullopt when t is ill-sorted.
std::optional<SortExpr> sort_of(const Signature& sig, const AlgTerm& t);
// True iff t admits sort `s` (flexible variables only in t's typing).
bool has_sort(const Signature& sig, const AlgTerm& t, const SortExpr& s);

// Sort denoted by a kernel type: nat, list T, or a predicate variable.
std::optional<SortExpr> sort_from_type(const Term& type);

Term embed_sort(const SortExpr& s);
// Kernel term for a symbol: constructors become (η-expanded) Ctor terms,
// defined symbols become FoSym.
Term embed_symbol(const SymbolDecl& d);
// Declared kernel type of a symbol, ΠA:Prop. s1 -> ... -> sn -> s.
Term symbol_type(const SymbolDecl& d);
// Kernel term for an algebraic term at sort s, with explicit type arguments.
// Variables become object variables of the same name.
Term embed_term(const Signature& sig, const AlgTerm& t, const SortExpr& s);

struct WellApplied {
  const SymbolDecl* decl;
  std::vector<Term> type_args;
  std::vector<Term> value_args;
};
// Decomposes f T1..Tk u1..un when f is a symbol applied to exactly its
// parameters and arguments.
std::optional<WellApplied> well_applied(const Signature& sig, const Term& t);

}  // namespace ccic
