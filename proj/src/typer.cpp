#include "ccic/typer.hpp"

#include "ccic/reduction.hpp"
#include "ccic/syntax.hpp"

namespace ccic {

bool check_strong_elim_guard(Inductive ind, Sort motive_sort, bool word_is_small) {
  if (motive_sort != Sort::Type) return true;
  switch (ind) {
    case Inductive::Nat:
    case Inductive::List: return true;
    case Inductive::Word: return word_is_small;
    case Inductive::Letter: return false;
  }
  return false;
}

namespace {

[[noreturn]] void error(ErrorKind k, const std::string& msg) { throw KernelError(k, msg); }

Term constructor_type(Inductive ind, int index) {
  Term nat = mk_nat();
  switch (ind) {
    case Inductive::Nat:
      return index == 1 ? nat : mk_arrow(nat, nat);
    case Inductive::List:
      if (index == 1) return mk_prod("T", Annot::U, mk_prop(), mk_list(mk_bvar(0)));
      return mk_prod("T", Annot::U, mk_prop(),
                     mk_arrow(mk_bvar(0), mk_arrow(mk_list(mk_bvar(0)), mk_list(mk_bvar(0)))));
    case Inductive::Word:
      if (index == 1) return mk_word(mk_zero());
      if (index == 2) return mk_arrow(mk_letter(), mk_word(mk_numeral(1)));
      return mk_prod("n", Annot::U, nat,
                     mk_prod("p", Annot::U, nat,
                             mk_arrow(mk_word(mk_bvar(1)),
                                      mk_arrow(mk_word(mk_bvar(0)),
                                               mk_word(mk_plus(mk_bvar(1), mk_bvar(0)))))));
    case Inductive::Letter: break;
  }
  error(ErrorKind::IllFormedTerm, "letter has no constructors");
}

Term inductive_type(Inductive ind) {
  switch (ind) {
    case Inductive::Nat:
    case Inductive::Letter: return mk_prop();
    case Inductive::List: return mk_arrow(mk_prop(), mk_prop());
    case Inductive::Word: return mk_arrow(mk_nat(), mk_prop());
  }
  return mk_prop();
}

// Name of the k-th λ of a branch, or `fallback`.
std::string lambda_name(const Term& branch, std::size_t k, const std::string& fallback) {
  Term cur = branch;
  for (std::size_t i = 0;; ++i) {
    const auto* a = cur->as<node::Abs>();
    if (!a) return fallback;
    if (i == k) return a->name;
    cur = a->body;
  }
}

}  // namespace

Typer::Typer(const Signature& sig, TyperOptions opts) : sig_(sig), opts_(std::move(opts)) {}

std::vector<Certificate> Typer::take_certificates() {
  std::vector<Certificate> out = std::move(certs_);
  certs_.clear();
  return out;
}

Term Typer::whnf_type(const Term& t) const { return whnf(t, opts_.conversion.reduction); }

Term Typer::open(const Term& body, const Term& v) {
  Term t = instantiate(body, v);
  if (spans_ && t != body) {
    origin_.emplace(t.get(), body);
    opened_.push_back(t);
  }
  return t;
}

const TermNode* Typer::locate() const {
  if (!spans_) return stack_.back();
  for (std::size_t i = stack_.size(); i-- > 0;) {
    const TermNode* n = stack_[i];
    for (;;) {
      if (spans_->count(n)) return n;
      auto it = origin_.find(n);
      if (it == origin_.end()) break;
      n = it->second.get();
    }
  }
  return stack_.back();
}

Term Typer::infer(Context& ctx, const Term& t) {
  stack_.push_back(t.get());
  try {
    Term r = infer_node(ctx, t);
    stack_.pop_back();
    return r;
  } catch (KernelError& e) {
    if (!e.where()) e.set_where(locate());
    stack_.pop_back();
    throw;
  }
}

void Typer::check(Context& ctx, const Term& t, const Term& type) {
  stack_.push_back(t.get());
  try {
    check_node(ctx, t, type);
    stack_.pop_back();
  } catch (KernelError& e) {
    if (!e.where()) e.set_where(locate());
    stack_.pop_back();
    throw;
  }
}

Sort Typer::sort_of_type(Context& ctx, const Term& type, bool allow_extern) {
  Term s = whnf_type(infer(ctx, type));
  const auto* n = s->as<node::SortNode>();
  if (!n || (n->sort == Sort::Extern && !allow_extern))
    throw KernelError(ErrorKind::TypeMismatch, print(type) + " is not a type", type.get());
  return n->sort;
}

void Typer::require_convertible(Context& ctx, const Term& expected, const Term& actual,
                                const std::string& what) {
  ConversionResult r = convertible(sig_, ctx, expected, actual, opts_.conversion);
  if (!r.ok) {
    const ReductionOptions& ro = opts_.conversion.reduction;
    error(ErrorKind::TypeMismatch, what + ": expected " + print(normalize(expected, ro)) +
                                       ", got " + print(normalize(actual, ro)));
  }
  for (auto& c : r.certificates) certs_.push_back(std::move(c));
}

namespace {

// Pushes a binding for a binder; "_" binders become anonymous.
Term bind(Context& ctx, const std::string& name, Annot a, const Term& type) {
  Binding b;
  b.anonymous = name == "_";
  b.name = ctx.fresh_name(b.anonymous ? "_x" : name);
  b.annot = a;
  b.type = type;
  b.level = Context::level_for_type(type);
  ctx.push(b);
  return ctx.var(b.name);
}

struct PopOnExit {
  Context& ctx;
  ~PopOnExit() { ctx.pop(); }
};

}  // namespace

void Typer::check_node(Context& ctx, const Term& t, const Term& type) {
  if (const auto* a = t->as<node::Abs>()) {
    Term w = whnf_type(type);
    if (const auto* p = w->as<node::Prod>()) {
      if (a->annot != p->annot) error(ErrorKind::TypeMismatch, "binder annotations differ");
      sort_of_type(ctx, a->dom);
      require_convertible(ctx, p->dom, a->dom, "binder domain");
      Term v = bind(ctx, a->name, a->annot, a->dom);
      PopOnExit guard{ctx};
      check(ctx, open(a->body, v), instantiate(p->body, v));
      return;
    }
  }
  Term actual = infer(ctx, t);
  require_convertible(ctx, type, actual, "type of " + print(t));
}

Term Typer::infer_node(Context& ctx, const Term& t) {
  if (const auto* s = t->as<node::SortNode>()) {
    if (s->sort == Sort::Prop) return mk_type();
    if (s->sort == Sort::Type) return mk_sort(Sort::Extern);
    error(ErrorKind::IllFormedTerm, "Extern has no type");
  }
  if (t->is<node::BVar>()) error(ErrorKind::IllFormedTerm, "loose bound variable");
  if (const auto* v = t->as<node::FVar>()) {
    const Binding* b = ctx.lookup(v->name);
    if (!b) error(ErrorKind::UnboundVariable, "unbound variable " + v->name);
    return b->type;
  }
  if (const auto* p = t->as<node::Prod>()) {
    sort_of_type(ctx, p->dom);
    Term v = bind(ctx, p->name, p->annot, p->dom);
    PopOnExit guard{ctx};
    return mk_sort(sort_of_type(ctx, open(p->body, v), true));
  }
  if (const auto* a = t->as<node::Abs>()) {
    sort_of_type(ctx, a->dom);
    Term v = bind(ctx, a->name, a->annot, a->dom);
    PopOnExit guard{ctx};
    Term body_type = infer(ctx, open(a->body, v));
    sort_of_type(ctx, body_type, true);
    return mk_prod(a->name, a->annot, a->dom, abstract(body_type, ctx.bindings().back().name));
  }
  if (const auto* a = t->as<node::App>()) {
    Term f = whnf_type(infer(ctx, a->fn));
    const auto* p = f->as<node::Prod>();
    if (!p) error(ErrorKind::TypeMismatch, print(a->fn) + " is not a function");
    Term actual = infer(ctx, a->arg);
    require_convertible(ctx, p->dom, actual, "argument " + print(a->arg));
    if (p->annot == Annot::R) {
      Term u = normalize_beta(p->dom, opts_.conversion.reduction.fuel);
      const auto* e = u->as<node::Eqn>();
      if (e && class_of(e->lhs) == SyntacticClass::Object &&
          class_of(e->rhs) == SyntacticClass::Object) {
        ConversionResult r = convertible(sig_, ctx, e->lhs, e->rhs, opts_.conversion);
        if (!r.ok)
          error(ErrorKind::GuardFailed,
                "restricted argument needs " + print(e->lhs) + " ~ " + print(e->rhs));
        for (auto& c : r.certificates) certs_.push_back(std::move(c));
      }
    }
    return instantiate(p->body, a->arg);
  }
  if (const auto* f = t->as<node::FoSym>()) {
    const SymbolDecl* d = sig_.find(f->name);
    if (!d) error(ErrorKind::UnboundVariable, "unknown symbol " + f->name);
    return symbol_type(*d);
  }
  if (const auto* i = t->as<node::Ind>()) return inductive_type(i->ind);
  if (const auto* c = t->as<node::Ctor>()) return constructor_type(c->ind, c->index);
  if (const auto* e = t->as<node::Eqn>()) {
    sort_of_type(ctx, e->ty);
    check(ctx, e->lhs, e->ty);
    check(ctx, e->rhs, e->ty);
    return mk_prop();
  }
  if (const auto* r = t->as<node::Refl>()) {
    sort_of_type(ctx, r->ty);
    check(ctx, r->arg, r->ty);
    return mk_eqn(r->arg, r->arg, r->ty);
  }
  if (t->is<node::Elim>()) return infer_elim(ctx, t);
  error(ErrorKind::IllFormedTerm, "unknown term");
}

Term Typer::infer_elim(Context& ctx, const Term& t) {
  const auto& e = *t->as<node::Elim>();
  if (e.ind == Inductive::Letter) error(ErrorKind::IllFormedElim, "letter has no eliminator");
  if (static_cast<int>(e.branches.size()) != constructor_count(e.ind))
    error(ErrorKind::IllFormedElim, "wrong number of branches");
  std::size_t want_indices = e.ind == Inductive::Nat ? 0 : 1;
  if (e.indices.size() != want_indices) error(ErrorKind::IllFormedElim, "wrong number of indices");

  // Scrutinee and parameters.
  Term scrut_type = whnf_type(infer(ctx, e.scrut));
  const auto* ind = app_head(scrut_type)->as<node::Ind>();
  std::vector<Term> scrut_args = app_args(scrut_type);
  if (!ind || ind->ind != e.ind || scrut_args.size() != want_indices)
    error(ErrorKind::IllFormedElim,
          "scrutinee has type " + print(scrut_type) + ", not " + to_string(e.ind));
  if (e.ind == Inductive::List) {
    check(ctx, e.indices[0], mk_prop());
    require_convertible(ctx, e.indices[0], scrut_args[0], "list parameter");
  } else if (e.ind == Inductive::Word) {
    check(ctx, e.indices[0], mk_nat());
    require_convertible(ctx, e.indices[0], scrut_args[0], "word index");
  }

  // Motive: nat -> s, list T -> s, or forall k, word k -> s.
  Term motive_type = infer(ctx, e.motive);
  Term tail = whnf_type(motive_type);
  for (int k = 0; k < (e.ind == Inductive::Word ? 2 : 1); ++k) {
    const auto* p = tail->as<node::Prod>();
    if (!p) error(ErrorKind::IllFormedElim, "motive has type " + print(motive_type));
    tail = whnf_type(p->body);
  }
  const auto* sort = tail->as<node::SortNode>();
  if (!sort || sort->sort == Sort::Extern)
    error(ErrorKind::IllFormedElim, "motive has type " + print(motive_type));
  if (!check_strong_elim_guard(e.ind, sort->sort, opts_.word_is_small))
    error(ErrorKind::StrongElimForbidden, std::string("strong elimination over ") + to_string(e.ind));
  Term s = mk_sort(sort->sort);
  Term expected_motive;
  const Term& Q = e.motive;
  auto name = [&](std::size_t branch, std::size_t k, const char* fallback) {
    return lambda_name(e.branches[branch], k, fallback);
  };
  std::vector<Term> expected;
  switch (e.ind) {
    case Inductive::Nat:
      expected_motive = mk_arrow(mk_nat(), s);
      expected.push_back(mk_app(Q, mk_zero()));
      expected.push_back(mk_prod(name(1, 0, "p"), Annot::U, mk_nat(),
                                 mk_prod(name(1, 1, "_"), Annot::U, mk_app(Q, mk_bvar(0)),
                                         mk_app(Q, mk_succ(mk_bvar(1))))));
      break;
    case Inductive::List: {
      const Term& T = e.indices[0];
      expected_motive = mk_arrow(mk_list(T), s);
      expected.push_back(mk_app(Q, mk_nil(T)));
      expected.push_back(mk_prod(
          name(1, 0, "x"), Annot::U, T,
          mk_prod(name(1, 1, "l"), Annot::U, mk_list(T),
                  mk_prod(name(1, 2, "_"), Annot::U, mk_app(Q, mk_bvar(0)),
                          mk_app(Q, mk_cons(T, mk_bvar(2), mk_bvar(1)))))));
      break;
    }
    case Inductive::Word: {
      expected_motive = mk_prod("k", Annot::U, mk_nat(), mk_arrow(mk_word(mk_bvar(0)), s));
      expected.push_back(mk_apps(Q, {mk_zero(), mk_ctor(Inductive::Word, 1)}));
      expected.push_back(mk_prod(name(1, 0, "c"), Annot::U, mk_letter(),
                                 mk_apps(Q, {mk_numeral(1), mk_app(mk_ctor(Inductive::Word, 2), mk_bvar(0))})));
      Term concat = mk_apps(mk_ctor(Inductive::Word, 3), {mk_bvar(5), mk_bvar(4), mk_bvar(3), mk_bvar(2)});
      expected.push_back(mk_prod(
          name(2, 0, "n"), Annot::U, mk_nat(),
          mk_prod(name(2, 1, "p"), Annot::U, mk_nat(),
                  mk_prod(name(2, 2, "w1"), Annot::U, mk_word(mk_bvar(1)),
                          mk_prod(name(2, 3, "w2"), Annot::U, mk_word(mk_bvar(1)),
                                  mk_prod(name(2, 4, "_"), Annot::U, mk_apps(Q, {mk_bvar(3), mk_bvar(1)}),
                                          mk_prod(name(2, 5, "_"), Annot::U,
                                                  mk_apps(Q, {mk_bvar(3), mk_bvar(1)}),
                                                  mk_apps(Q, {mk_plus(mk_bvar(5), mk_bvar(4)), concat}))))))));
      break;
    }
    case Inductive::Letter: break;
  }
  require_convertible(ctx, expected_motive, motive_type, "motive");
  for (std::size_t i = 0; i < e.branches.size(); ++i) check(ctx, e.branches[i], expected[i]);
  if (e.ind == Inductive::Word) return mk_apps(Q, {e.indices[0], e.scrut});
  return mk_app(Q, e.scrut);
}

Term infer(const Signature& sig, const Context& ctx, const Term& t, const TyperOptions& opts) {
  Context c = ctx;
  Typer typer(sig, opts);
  return typer.infer(c, t);
}

std::vector<Certificate> check(const Signature& sig, const Context& ctx, const Term& t,
                               const Term& type, const TyperOptions& opts) {
  Context c = ctx;
  Typer typer(sig, opts);
  typer.check(c, t, type);
  return typer.take_certificates();
}

}  // namespace ccic
