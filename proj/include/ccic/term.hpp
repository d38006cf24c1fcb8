#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ccic/error.hpp"

namespace ccic {

enum class Sort { Prop, Type, Extern };

// Annotations are totally ordered: u < r.
enum class Annot { U = 0, R = 1 };

inline bool annot_less(Annot a, Annot b) {
  return static_cast<int>(a) < static_cast<int>(b);
}

enum class VarLevel { Object, Predicate };

// Built-in inductive families. Letter is the opaque alphabet of words.
enum class Inductive { Nat, List, Word, Letter };

enum class SyntacticClass { Object, Predicate, Kind, KindPredicate, Extern };

const char* to_string(Sort s);
const char* to_string(Annot a);
const char* to_string(Inductive i);
const char* to_string(SyntacticClass c);

// O -> P -> K -> M -> Extern. Extern has no successor.
std::optional<SyntacticClass> successor(SyntacticClass c);

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

namespace node {

struct SortNode {
  Sort sort;
};
struct FVar {
  std::string name;
  VarLevel level;
};
struct BVar {
  std::uint32_t index;
};
struct Prod {
  std::string name;
  Annot annot;
  Term dom;
  Term body;
};
struct Abs {
  std::string name;
  Annot annot;
  Term dom;
  Term body;
};
struct App {
  Term fn;
  Term arg;
};
// Defined first-order symbol (+, @, user declared symbols).
struct FoSym {
  std::string name;
};
struct Ind {
  Inductive ind;
};
// `ind^[index]`, index is 1-based.
struct Ctor {
  Inductive ind;
  int index;
};
// lhs ≐_ty rhs
struct Eqn {
  Term lhs;
  Term rhs;
  Term ty;
};
// Eq_ty(arg), the reflexivity proof of arg ≐_ty arg.
struct Refl {
  Term ty;
  Term arg;
};
struct Elim {
  Term scrut;
  Inductive ind;
  std::vector<Term> indices;
  Term motive;
  std::vector<Term> branches;
};

}  // namespace node

using TermVariant =
    std::variant<node::SortNode, node::FVar, node::BVar, node::Prod, node::Abs,
                 node::App, node::FoSym, node::Ind, node::Ctor, node::Eqn,
                 node::Refl, node::Elim>;

struct TermNode {
  TermVariant v;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&v);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(v);
  }
};

// Constructors.
Term mk_sort(Sort s);
Term mk_prop();
Term mk_type();
Term mk_fvar(std::string name, VarLevel level);
Term mk_bvar(std::uint32_t index);
Term mk_prod(std::string name, Annot a, Term dom, Term body);
Term mk_abs(std::string name, Annot a, Term dom, Term body);
Term mk_app(Term fn, Term arg);
Term mk_apps(Term fn, const std::vector<Term>& args);
Term mk_fosym(std::string name);
Term mk_ind(Inductive i);
Term mk_ctor(Inductive i, int index);
Term mk_eqn(Term lhs, Term rhs, Term ty);
Term mk_refl(Term ty, Term arg);
Term mk_elim(Term scrut, Inductive ind, std::vector<Term> indices, Term motive,
             std::vector<Term> branches);

// Non-dependent arrow A ->^a B (B must not refer to the new binder).
Term mk_arrow(Term dom, Term cod, Annot a = Annot::U);

// Convenience for the built-in signature.
Term mk_nat();
Term mk_zero();
Term mk_succ(Term t);
Term mk_numeral(unsigned n);
Term mk_plus(Term a, Term b);
Term mk_list(Term elem);
Term mk_nil(Term elem);
Term mk_cons(Term elem, Term head, Term tail);
Term mk_word(Term length);
Term mk_letter();

// Spine decomposition: t = head a1 ... an.
Term app_head(const Term& t);
std::vector<Term> app_args(const Term& t);

// ---------------------------------------------------------------------------
// Locally nameless plumbing.

// Replace the loose bound variable at depth 0 with `u` (u must be locally
// closed). Shares unchanged subtrees.
Term instantiate(const Term& body, const Term& u);
// Replace free variable `name` with a bound variable at depth 0.
Term abstract(const Term& t, const std::string& name);
// True if t has a loose bound variable (index >= depth at nesting depth).
bool has_loose_bvars(const Term& t);

// Capture-avoiding substitution of the free variable x by u. Rejects
// class-mismatched substitutions with ClassMismatch.
Term substitute(const Term& t, const std::string& x, VarLevel x_level,
                const Term& u);
// Same without the class check; used internally where the caller already
// established well-constructedness.
Term replace_fvar(const Term& t, const std::string& x, const Term& u);

bool alpha_eq(const Term& t, const Term& u);

std::set<std::string> free_vars(const Term& t);
bool occurs_free(const std::string& x, const Term& t);

// Syntactic class, or nullopt for ill-constructed terms.
std::optional<SyntacticClass> class_of(const Term& t);
// Same for a term with loose bound variables; `bound` holds the classes of the
// enclosing binders' variables, innermost last.
std::optional<SyntacticClass> class_of_under(
    const Term& t, std::vector<std::optional<SyntacticClass>> bound);

std::size_t term_size(const Term& t);

}  // namespace ccic
