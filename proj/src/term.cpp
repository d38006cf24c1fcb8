#include "ccic/term.hpp"

#include <functional>

namespace ccic {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::IllFormedElim: return "IllFormedElim";
    case ErrorKind::GuardFailed: return "GuardFailed";
    case ErrorKind::FuelExhausted: return "FuelExhausted";
    case ErrorKind::StrongElimForbidden: return "StrongElimForbidden";
    case ErrorKind::ClassMismatch: return "ClassMismatch";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::IllFormedTerm: return "IllFormedTerm";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidStep: return "InvalidStep";
    case ErrorKind::GoalMismatch: return "GoalMismatch";
    case ErrorKind::Usage: return "Usage";
  }
  return "?";
}

const char* to_string(Sort s) {
  switch (s) {
    case Sort::Prop: return "Prop";
    case Sort::Type: return "Type";
    case Sort::Extern: return "Extern";
  }
  return "?";
}

const char* to_string(Annot a) { return a == Annot::R ? "r" : "u"; }

const char* to_string(Inductive i) {
  switch (i) {
    case Inductive::Nat: return "nat";
    case Inductive::List: return "list";
    case Inductive::Word: return "word";
    case Inductive::Letter: return "letter";
  }
  return "?";
}

const char* to_string(SyntacticClass c) {
  switch (c) {
    case SyntacticClass::Object: return "O";
    case SyntacticClass::Predicate: return "P";
    case SyntacticClass::Kind: return "K";
    case SyntacticClass::KindPredicate: return "M";
    case SyntacticClass::Extern: return "Extern";
  }
  return "?";
}

std::optional<SyntacticClass> successor(SyntacticClass c) {
  switch (c) {
    case SyntacticClass::Object: return SyntacticClass::Predicate;
    case SyntacticClass::Predicate: return SyntacticClass::Kind;
    case SyntacticClass::Kind: return SyntacticClass::KindPredicate;
    case SyntacticClass::KindPredicate: return SyntacticClass::Extern;
    case SyntacticClass::Extern: return std::nullopt;
  }
  return std::nullopt;
}

namespace {
Term make(TermVariant v) {
  return std::make_shared<const TermNode>(TermNode{std::move(v)});
}
}  // namespace

Term mk_sort(Sort s) { return make(node::SortNode{s}); }
Term mk_prop() { return mk_sort(Sort::Prop); }
Term mk_type() { return mk_sort(Sort::Type); }
Term mk_fvar(std::string name, VarLevel level) {
  return make(node::FVar{std::move(name), level});
}
Term mk_bvar(std::uint32_t index) { return make(node::BVar{index}); }
Term mk_prod(std::string name, Annot a, Term dom, Term body) {
  return make(node::Prod{std::move(name), a, std::move(dom), std::move(body)});
}
Term mk_abs(std::string name, Annot a, Term dom, Term body) {
  return make(node::Abs{std::move(name), a, std::move(dom), std::move(body)});
}
Term mk_app(Term fn, Term arg) {
  return make(node::App{std::move(fn), std::move(arg)});
}
Term mk_apps(Term fn, const std::vector<Term>& args) {
  for (const auto& a : args) fn = mk_app(std::move(fn), a);
  return fn;
}
Term mk_fosym(std::string name) { return make(node::FoSym{std::move(name)}); }
Term mk_ind(Inductive i) { return make(node::Ind{i}); }
Term mk_ctor(Inductive i, int index) { return make(node::Ctor{i, index}); }
Term mk_eqn(Term lhs, Term rhs, Term ty) {
  return make(node::Eqn{std::move(lhs), std::move(rhs), std::move(ty)});
}
Term mk_refl(Term ty, Term arg) {
  return make(node::Refl{std::move(ty), std::move(arg)});
}
Term mk_elim(Term scrut, Inductive ind, std::vector<Term> indices, Term motive,
             std::vector<Term> branches) {
  return make(node::Elim{std::move(scrut), ind, std::move(indices),
                         std::move(motive), std::move(branches)});
}

namespace {
// Shift loose bound variables >= cutoff by `by`. Only needed when a term is
// moved under binders without being locally closed.
Term shift(const Term& t, std::uint32_t cutoff, std::uint32_t by);
}  // namespace

Term mk_arrow(Term dom, Term cod, Annot a) {
  return mk_prod("_", a, std::move(dom), shift(cod, 0, 1));
}

Term mk_nat() { return mk_ind(Inductive::Nat); }
Term mk_zero() { return mk_ctor(Inductive::Nat, 1); }
Term mk_succ(Term t) { return mk_app(mk_ctor(Inductive::Nat, 2), std::move(t)); }
Term mk_numeral(unsigned n) {
  Term t = mk_zero();
  for (unsigned i = 0; i < n; ++i) t = mk_succ(t);
  return t;
}
Term mk_plus(Term a, Term b) {
  return mk_apps(mk_fosym("+"), {std::move(a), std::move(b)});
}
Term mk_list(Term elem) { return mk_app(mk_ind(Inductive::List), std::move(elem)); }
Term mk_nil(Term elem) {
  return mk_app(mk_ctor(Inductive::List, 1), std::move(elem));
}
Term mk_cons(Term elem, Term head, Term tail) {
  return mk_apps(mk_ctor(Inductive::List, 2),
                 {std::move(elem), std::move(head), std::move(tail)});
}
Term mk_word(Term length) {
  return mk_app(mk_ind(Inductive::Word), std::move(length));
}
Term mk_letter() { return mk_ind(Inductive::Letter); }

Term app_head(const Term& t) {
  Term cur = t;
  while (const auto* a = cur->as<node::App>()) cur = a->fn;
  return cur;
}

std::vector<Term> app_args(const Term& t) {
  std::vector<Term> args;
  Term cur = t;
  while (const auto* a = cur->as<node::App>()) {
    args.push_back(a->arg);
    cur = a->fn;
  }
  return {args.rbegin(), args.rend()};
}

namespace {

// Generic structural map over children with a binder-depth counter. `leaf`
// handles variables; returns the original node when nothing changed.
using LeafFn = std::function<Term(const Term&, std::uint32_t depth)>;

Term map_term(const Term& t, std::uint32_t depth, const LeafFn& leaf) {
  auto rec = [&](const Term& c, std::uint32_t d) { return map_term(c, d, leaf); };
  return std::visit(
      [&](const auto& n) -> Term {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::FVar> ||
                      std::is_same_v<N, node::BVar>) {
          return leaf(t, depth);
        } else if constexpr (std::is_same_v<N, node::Prod> ||
                             std::is_same_v<N, node::Abs>) {
          Term d = rec(n.dom, depth);
          Term b = rec(n.body, depth + 1);
          if (d == n.dom && b == n.body) return t;
          return make(N{n.name, n.annot, d, b});
        } else if constexpr (std::is_same_v<N, node::App>) {
          Term f = rec(n.fn, depth);
          Term a = rec(n.arg, depth);
          if (f == n.fn && a == n.arg) return t;
          return make(node::App{f, a});
        } else if constexpr (std::is_same_v<N, node::Eqn>) {
          Term l = rec(n.lhs, depth), r = rec(n.rhs, depth), ty = rec(n.ty, depth);
          if (l == n.lhs && r == n.rhs && ty == n.ty) return t;
          return make(node::Eqn{l, r, ty});
        } else if constexpr (std::is_same_v<N, node::Refl>) {
          Term ty = rec(n.ty, depth), a = rec(n.arg, depth);
          if (ty == n.ty && a == n.arg) return t;
          return make(node::Refl{ty, a});
        } else if constexpr (std::is_same_v<N, node::Elim>) {
          bool changed = false;
          auto go = [&](const Term& c) {
            Term r = rec(c, depth);
            changed |= (r != c);
            return r;
          };
          Term s = go(n.scrut);
          std::vector<Term> idx, br;
          for (const auto& i : n.indices) idx.push_back(go(i));
          Term m = go(n.motive);
          for (const auto& b : n.branches) br.push_back(go(b));
          if (!changed) return t;
          return make(node::Elim{s, n.ind, std::move(idx), m, std::move(br)});
        } else {
          return t;
        }
      },
      t->v);
}

Term shift(const Term& t, std::uint32_t cutoff, std::uint32_t by) {
  if (by == 0) return t;
  return map_term(t, cutoff, [by](const Term& leaf, std::uint32_t depth) {
    if (const auto* b = leaf->as<node::BVar>(); b && b->index >= depth)
      return mk_bvar(b->index + by);
    return leaf;
  });
}

}  // namespace

Term instantiate(const Term& body, const Term& u) {
  return map_term(body, 0, [&u](const Term& leaf, std::uint32_t depth) -> Term {
    if (const auto* b = leaf->as<node::BVar>()) {
      if (b->index == depth) return shift(u, 0, depth);
      if (b->index > depth) return mk_bvar(b->index - 1);
    }
    return leaf;
  });
}

Term abstract(const Term& t, const std::string& name) {
  return map_term(t, 0, [&name](const Term& leaf, std::uint32_t depth) -> Term {
    if (const auto* f = leaf->as<node::FVar>(); f && f->name == name)
      return mk_bvar(depth);
    return leaf;
  });
}

bool has_loose_bvars(const Term& t) {
  bool found = false;
  map_term(t, 0, [&found](const Term& leaf, std::uint32_t depth) {
    if (const auto* b = leaf->as<node::BVar>(); b && b->index >= depth)
      found = true;
    return leaf;
  });
  return found;
}

Term replace_fvar(const Term& t, const std::string& x, const Term& u) {
  return map_term(t, 0, [&](const Term& leaf, std::uint32_t depth) -> Term {
    if (const auto* f = leaf->as<node::FVar>(); f && f->name == x)
      return shift(u, 0, depth);
    return leaf;
  });
}

Term substitute(const Term& t, const std::string& x, VarLevel x_level,
                const Term& u) {
  auto cx = class_of(mk_fvar(x, x_level));
  auto cu = class_of(u);
  if (!cu || cx != cu)
    throw KernelError(ErrorKind::ClassMismatch,
                      "substitution of " + x + " is not well-constructed");
  return replace_fvar(t, x, u);
}

bool alpha_eq(const Term& t, const Term& u) {
  if (t == u) return true;
  if (t->v.index() != u->v.index()) return false;
  return std::visit(
      [&](const auto& a) -> bool {
        using N = std::decay_t<decltype(a)>;
        const auto& b = std::get<N>(u->v);
        if constexpr (std::is_same_v<N, node::SortNode>) {
          return a.sort == b.sort;
        } else if constexpr (std::is_same_v<N, node::FVar>) {
          return a.name == b.name && a.level == b.level;
        } else if constexpr (std::is_same_v<N, node::BVar>) {
          return a.index == b.index;
        } else if constexpr (std::is_same_v<N, node::Prod> ||
                             std::is_same_v<N, node::Abs>) {
          return a.annot == b.annot && alpha_eq(a.dom, b.dom) &&
                 alpha_eq(a.body, b.body);
        } else if constexpr (std::is_same_v<N, node::App>) {
          return alpha_eq(a.fn, b.fn) && alpha_eq(a.arg, b.arg);
        } else if constexpr (std::is_same_v<N, node::FoSym>) {
          return a.name == b.name;
        } else if constexpr (std::is_same_v<N, node::Ind>) {
          return a.ind == b.ind;
        } else if constexpr (std::is_same_v<N, node::Ctor>) {
          return a.ind == b.ind && a.index == b.index;
        } else if constexpr (std::is_same_v<N, node::Eqn>) {
          return alpha_eq(a.lhs, b.lhs) && alpha_eq(a.rhs, b.rhs) &&
                 alpha_eq(a.ty, b.ty);
        } else if constexpr (std::is_same_v<N, node::Refl>) {
          return alpha_eq(a.ty, b.ty) && alpha_eq(a.arg, b.arg);
        } else {
          static_assert(std::is_same_v<N, node::Elim>);
          if (a.ind != b.ind || a.indices.size() != b.indices.size() ||
              a.branches.size() != b.branches.size())
            return false;
          if (!alpha_eq(a.scrut, b.scrut) || !alpha_eq(a.motive, b.motive))
            return false;
          for (std::size_t i = 0; i < a.indices.size(); ++i)
            if (!alpha_eq(a.indices[i], b.indices[i])) return false;
          for (std::size_t i = 0; i < a.branches.size(); ++i)
            if (!alpha_eq(a.branches[i], b.branches[i])) return false;
          return true;
        }
      },
      t->v);
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  map_term(t, 0, [&out](const Term& leaf, std::uint32_t) {
    if (const auto* f = leaf->as<node::FVar>()) out.insert(f->name);
    return leaf;
  });
  return out;
}

bool occurs_free(const std::string& x, const Term& t) {
  bool found = false;
  map_term(t, 0, [&](const Term& leaf, std::uint32_t) {
    if (const auto* f = leaf->as<node::FVar>(); f && f->name == x) found = true;
    return leaf;
  });
  return found;
}

namespace {

using Cls = std::optional<SyntacticClass>;
using SC = SyntacticClass;

// Bound variables are objects when their domain is a predicate and predicate
// variables when their domain is a kind.
Cls bound_var_class(Cls dom) {
  if (dom == SC::Predicate) return SC::Object;
  if (dom == SC::Kind) return SC::Predicate;
  return std::nullopt;
}

Cls class_rec(const Term& t, std::vector<Cls>& stack) {
  return std::visit(
      [&](const auto& n) -> Cls {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::SortNode>) {
          switch (n.sort) {
            case Sort::Prop: return SC::Kind;
            case Sort::Type: return SC::KindPredicate;
            case Sort::Extern: return SC::Extern;
          }
          return std::nullopt;
        } else if constexpr (std::is_same_v<N, node::FVar>) {
          return n.level == VarLevel::Object ? SC::Object : SC::Predicate;
        } else if constexpr (std::is_same_v<N, node::BVar>) {
          if (n.index >= stack.size()) return std::nullopt;
          return stack[stack.size() - 1 - n.index];
        } else if constexpr (std::is_same_v<N, node::FoSym> ||
                             std::is_same_v<N, node::Ctor>) {
          return SC::Object;
        } else if constexpr (std::is_same_v<N, node::Ind>) {
          return SC::Predicate;
        } else if constexpr (std::is_same_v<N, node::App>) {
          Cls f = class_rec(n.fn, stack);
          Cls a = class_rec(n.arg, stack);
          if (a != SC::Object && a != SC::Predicate) return std::nullopt;
          if (f == SC::Object || f == SC::Predicate || f == SC::Kind) return f;
          return std::nullopt;
        } else if constexpr (std::is_same_v<N, node::Abs> ||
                             std::is_same_v<N, node::Prod>) {
          Cls d = class_rec(n.dom, stack);
          Cls v = bound_var_class(d);
          if (!v) return std::nullopt;
          stack.push_back(v);
          Cls b = class_rec(n.body, stack);
          stack.pop_back();
          if constexpr (std::is_same_v<N, node::Abs>) {
            if (b == SC::Object || b == SC::Predicate || b == SC::Kind) return b;
          } else {
            if (b == SC::Predicate || b == SC::Kind || b == SC::KindPredicate)
              return b;
          }
          return std::nullopt;
        } else if constexpr (std::is_same_v<N, node::Eqn>) {
          if (class_rec(n.lhs, stack) == SC::Object &&
              class_rec(n.rhs, stack) == SC::Object &&
              class_rec(n.ty, stack) == SC::Predicate)
            return SC::Predicate;
          return std::nullopt;
        } else if constexpr (std::is_same_v<N, node::Refl>) {
          if (class_rec(n.ty, stack) == SC::Predicate &&
              class_rec(n.arg, stack) == SC::Object)
            return SC::Object;
          return std::nullopt;
        } else {
          static_assert(std::is_same_v<N, node::Elim>);
          if (class_rec(n.scrut, stack) != SC::Object) return std::nullopt;
          for (const auto& i : n.indices) {
            Cls c = class_rec(i, stack);
            if (c != SC::Object && c != SC::Predicate) return std::nullopt;
          }
          Cls m = class_rec(n.motive, stack);
          Cls want;
          if (m == SC::Predicate)
            want = SC::Object;
          else if (m == SC::Kind)
            want = SC::Predicate;
          else
            return std::nullopt;
          for (const auto& b : n.branches)
            if (class_rec(b, stack) != want) return std::nullopt;
          return want;
        }
      },
      t->v);
}

}  // namespace

std::optional<SyntacticClass> class_of(const Term& t) {
  std::vector<Cls> stack;
  return class_rec(t, stack);
}

std::optional<SyntacticClass> class_of_under(
    const Term& t, std::vector<std::optional<SyntacticClass>> bound) {
  return class_rec(t, bound);
}

std::size_t term_size(const Term& t) {
  std::size_t n = 0;
  std::function<void(const Term&)> go = [&](const Term& x) {
    ++n;
    std::visit(
        [&](const auto& v) {
          using N = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<N, node::Prod> ||
                        std::is_same_v<N, node::Abs>) {
            go(v.dom);
            go(v.body);
          } else if constexpr (std::is_same_v<N, node::App>) {
            go(v.fn);
            go(v.arg);
          } else if constexpr (std::is_same_v<N, node::Eqn>) {
            go(v.lhs);
            go(v.rhs);
            go(v.ty);
          } else if constexpr (std::is_same_v<N, node::Refl>) {
            go(v.ty);
            go(v.arg);
          } else if constexpr (std::is_same_v<N, node::Elim>) {
            go(v.scrut);
            for (const auto& i : v.indices) go(i);
            go(v.motive);
            for (const auto& b : v.branches) go(b);
          }
        },
        x->v);
  };
  go(t);
  return n;
}

}  // namespace ccic
