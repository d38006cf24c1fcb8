#include "ccic/reduction.hpp"

namespace ccic {

int constructor_count(Inductive ind) {
  switch (ind) {
    case Inductive::Nat: return 2;
    case Inductive::List: return 2;
    case Inductive::Word: return 3;
    case Inductive::Letter: return 0;
  }
  return 0;
}

int constructor_arity(Inductive ind, int index) {
  switch (ind) {
    case Inductive::Nat: return index == 1 ? 0 : 1;
    case Inductive::List: return index == 1 ? 1 : 3;
    case Inductive::Word: return index == 1 ? 0 : index == 2 ? 1 : 4;
    case Inductive::Letter: return 0;
  }
  return 0;
}

const Term& append_definition() {
  // λT:Prop. λl:list T. λl':list T.
  //   Elim(l, list, [T], λ_:list T. list T, [l', λx:T. λl'':list T. λL:list T. cons T x L])
  static const Term def = [] {
    auto T = [](std::uint32_t depth) { return mk_bvar(depth); };
    // Inside λT λl λl': T = #2, l = #1, l' = #0.
    Term motive = mk_abs("_", Annot::U, mk_list(T(2)), mk_list(T(3)));
    // Inside λx λl'' λL (under T l l'): T = #5, x = #2, L = #0.
    Term cons_branch = mk_abs(
        "x", Annot::U, T(2),
        mk_abs("l''", Annot::U, mk_list(T(3)),
               mk_abs("L", Annot::U, mk_list(T(4)),
                      mk_cons(T(5), mk_bvar(2), mk_bvar(0)))));
    Term elim = mk_elim(mk_bvar(1), Inductive::List, {T(2)}, motive,
                        {mk_bvar(0), cons_branch});
    return mk_abs("T", Annot::U, mk_prop(),
                  mk_abs("l", Annot::U, mk_list(mk_bvar(0)),
                         mk_abs("l'", Annot::U, mk_list(mk_bvar(1)), elim)));
  }();
  return def;
}

namespace {

struct Fuel {
  std::uint64_t left;
  void spend() {
    if (left == 0)
      throw KernelError(ErrorKind::FuelExhausted,
                        "reduction step bound exhausted");
    --left;
  }
};

std::optional<Term> contract_iota(const node::Elim& e, RedexKind* kind) {
  Term head = app_head(e.scrut);
  const auto* c = head->as<node::Ctor>();
  if (!c || c->ind != e.ind) return std::nullopt;
  std::vector<Term> args = app_args(e.scrut);
  if (static_cast<int>(args.size()) != constructor_arity(c->ind, c->index))
    return std::nullopt;
  if (static_cast<int>(e.branches.size()) != constructor_count(e.ind))
    return std::nullopt;
  auto rec = [&](const Term& sub, std::vector<Term> indices) {
    return mk_elim(sub, e.ind, std::move(indices), e.motive, e.branches);
  };
  switch (e.ind) {
    case Inductive::Nat:
      if (kind) *kind = RedexKind::IotaNat;
      if (c->index == 1) return e.branches[0];
      return mk_apps(e.branches[1], {args[0], rec(args[0], e.indices)});
    case Inductive::List:
      if (kind) *kind = RedexKind::IotaList;
      if (c->index == 1) return e.branches[0];
      return mk_apps(e.branches[1], {args[1], args[2], rec(args[2], e.indices)});
    case Inductive::Word:
      if (kind) *kind = RedexKind::IotaWord;
      if (c->index == 1) return e.branches[0];
      if (c->index == 2) return mk_app(e.branches[1], args[0]);
      return mk_apps(e.branches[2], {args[0], args[1], args[2], args[3],
                                     rec(args[2], {args[0]}),
                                     rec(args[3], {args[1]})});
    case Inductive::Letter:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Term> contract(const Term& t, const ReductionOptions& opts,
                             RedexKind* kind) {
  if (const auto* a = t->as<node::App>()) {
    if (!opts.beta) return std::nullopt;
    if (const auto* abs = a->fn->as<node::Abs>()) {
      if (kind) *kind = RedexKind::Beta;
      return instantiate(abs->body, a->arg);
    }
    return std::nullopt;
  }
  if (const auto* e = t->as<node::Elim>()) {
    if (!opts.iota) return std::nullopt;
    return contract_iota(*e, kind);
  }
  if (const auto* f = t->as<node::FoSym>()) {
    if (opts.delta && f->name == "@") {
      if (kind) *kind = RedexKind::Delta;
      return append_definition();
    }
  }
  return std::nullopt;
}

std::optional<Term> step(const Term& t, const ReductionOptions& opts,
                         RedexKind* kind) {
  if (auto r = contract(t, opts, kind)) return r;
  return std::visit(
      [&](const auto& n) -> std::optional<Term> {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::App>) {
          if (auto f = step(n.fn, opts, kind)) return mk_app(*f, n.arg);
          if (auto a = step(n.arg, opts, kind)) return mk_app(n.fn, *a);
        } else if constexpr (std::is_same_v<N, node::Prod>) {
          if (auto d = step(n.dom, opts, kind))
            return mk_prod(n.name, n.annot, *d, n.body);
          if (auto b = step(n.body, opts, kind))
            return mk_prod(n.name, n.annot, n.dom, *b);
        } else if constexpr (std::is_same_v<N, node::Abs>) {
          if (auto d = step(n.dom, opts, kind))
            return mk_abs(n.name, n.annot, *d, n.body);
          if (auto b = step(n.body, opts, kind))
            return mk_abs(n.name, n.annot, n.dom, *b);
        } else if constexpr (std::is_same_v<N, node::Eqn>) {
          if (auto l = step(n.lhs, opts, kind)) return mk_eqn(*l, n.rhs, n.ty);
          if (auto r = step(n.rhs, opts, kind)) return mk_eqn(n.lhs, *r, n.ty);
          if (auto ty = step(n.ty, opts, kind)) return mk_eqn(n.lhs, n.rhs, *ty);
        } else if constexpr (std::is_same_v<N, node::Refl>) {
          if (auto ty = step(n.ty, opts, kind)) return mk_refl(*ty, n.arg);
          if (auto a = step(n.arg, opts, kind)) return mk_refl(n.ty, *a);
        } else if constexpr (std::is_same_v<N, node::Elim>) {
          if (auto s = step(n.scrut, opts, kind))
            return mk_elim(*s, n.ind, n.indices, n.motive, n.branches);
          for (std::size_t i = 0; i < n.indices.size(); ++i) {
            if (auto x = step(n.indices[i], opts, kind)) {
              auto idx = n.indices;
              idx[i] = *x;
              return mk_elim(n.scrut, n.ind, idx, n.motive, n.branches);
            }
          }
          if (auto m = step(n.motive, opts, kind))
            return mk_elim(n.scrut, n.ind, n.indices, *m, n.branches);
          for (std::size_t i = 0; i < n.branches.size(); ++i) {
            if (auto x = step(n.branches[i], opts, kind)) {
              auto br = n.branches;
              br[i] = *x;
              return mk_elim(n.scrut, n.ind, n.indices, n.motive, br);
            }
          }
        }
        return std::nullopt;
      },
      t->v);
}

namespace {

Term whnf_rec(const Term& t, const ReductionOptions& opts, Fuel& fuel) {
  Term cur = t;
  for (;;) {
    if (const auto* a = cur->as<node::App>()) {
      Term f = whnf_rec(a->fn, opts, fuel);
      if (opts.beta) {
        if (const auto* abs = f->as<node::Abs>()) {
          fuel.spend();
          cur = instantiate(abs->body, a->arg);
          continue;
        }
      }
      return f == a->fn ? cur : mk_app(f, a->arg);
    }
    if (const auto* e = cur->as<node::Elim>()) {
      if (!opts.iota) return cur;
      Term s = whnf_rec(e->scrut, opts, fuel);
      node::Elim probe{s, e->ind, e->indices, e->motive, e->branches};
      if (auto r = contract_iota(probe, nullptr)) {
        fuel.spend();
        cur = *r;
        continue;
      }
      return s == e->scrut ? cur
                           : mk_elim(s, e->ind, e->indices, e->motive, e->branches);
    }
    if (const auto* f = cur->as<node::FoSym>()) {
      if (opts.delta && f->name == "@") {
        fuel.spend();
        cur = append_definition();
        continue;
      }
    }
    return cur;
  }
}

Term nf_rec(const Term& t, const ReductionOptions& opts, Fuel& fuel) {
  Term w = whnf_rec(t, opts, fuel);
  auto go = [&](const Term& c) { return nf_rec(c, opts, fuel); };
  return std::visit(
      [&](const auto& n) -> Term {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::App>) {
          Term f = go(n.fn), a = go(n.arg);
          return (f == n.fn && a == n.arg) ? w : mk_app(f, a);
        } else if constexpr (std::is_same_v<N, node::Prod>) {
          Term d = go(n.dom), b = go(n.body);
          return (d == n.dom && b == n.body) ? w : mk_prod(n.name, n.annot, d, b);
        } else if constexpr (std::is_same_v<N, node::Abs>) {
          Term d = go(n.dom), b = go(n.body);
          return (d == n.dom && b == n.body) ? w : mk_abs(n.name, n.annot, d, b);
        } else if constexpr (std::is_same_v<N, node::Eqn>) {
          return mk_eqn(go(n.lhs), go(n.rhs), go(n.ty));
        } else if constexpr (std::is_same_v<N, node::Refl>) {
          return mk_refl(go(n.ty), go(n.arg));
        } else if constexpr (std::is_same_v<N, node::Elim>) {
          std::vector<Term> idx, br;
          Term s = go(n.scrut);
          for (const auto& i : n.indices) idx.push_back(go(i));
          Term m = go(n.motive);
          for (const auto& b : n.branches) br.push_back(go(b));
          return mk_elim(s, n.ind, std::move(idx), m, std::move(br));
        } else {
          return w;
        }
      },
      w->v);
}

}  // namespace

Term whnf(const Term& t, const ReductionOptions& opts) {
  Fuel fuel{opts.fuel};
  return whnf_rec(t, opts, fuel);
}

Term normalize(const Term& t, const ReductionOptions& opts) {
  Fuel fuel{opts.fuel};
  return nf_rec(t, opts, fuel);
}

Term normalize_beta(const Term& t, std::uint64_t fuel) {
  ReductionOptions opts;
  opts.iota = false;
  opts.delta = false;
  opts.fuel = fuel;
  return normalize(t, opts);
}

namespace {

using Cls = std::optional<SyntacticClass>;

bool weak_rec(const Term& t, std::vector<Cls>& bound) {
  auto is_type_var = [&](const Term& h) {
    if (const auto* f = h->as<node::FVar>()) return f->level == VarLevel::Predicate;
    if (const auto* b = h->as<node::BVar>())
      return b->index < bound.size() &&
             bound[bound.size() - 1 - b->index] == SyntacticClass::Predicate;
    return false;
  };
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::App>) {
          if (is_type_var(app_head(t))) return false;
          return weak_rec(n.fn, bound) && weak_rec(n.arg, bound);
        } else if constexpr (std::is_same_v<N, node::Prod> ||
                             std::is_same_v<N, node::Abs>) {
          if (!weak_rec(n.dom, bound)) return false;
          Cls d = class_of_under(n.dom, bound);
          Cls v;
          if (d == SyntacticClass::Predicate) v = SyntacticClass::Object;
          if (d == SyntacticClass::Kind) v = SyntacticClass::Predicate;
          bound.push_back(v);
          bool ok = weak_rec(n.body, bound);
          bound.pop_back();
          return ok;
        } else if constexpr (std::is_same_v<N, node::Eqn>) {
          return weak_rec(n.lhs, bound) && weak_rec(n.rhs, bound) &&
                 weak_rec(n.ty, bound);
        } else if constexpr (std::is_same_v<N, node::Refl>) {
          return weak_rec(n.ty, bound) && weak_rec(n.arg, bound);
        } else if constexpr (std::is_same_v<N, node::Elim>) {
          if (!free_vars(n.scrut).empty() || has_loose_bvars(n.scrut)) return false;
          if (!weak_rec(n.scrut, bound) || !weak_rec(n.motive, bound)) return false;
          for (const auto& i : n.indices)
            if (!weak_rec(i, bound)) return false;
          for (const auto& b : n.branches)
            if (!weak_rec(b, bound)) return false;
          return true;
        } else {
          return true;
        }
      },
      t->v);
}

}  // namespace

bool is_weak(const Term& t) {
  std::vector<Cls> bound;
  return weak_rec(t, bound);
}

}  // namespace ccic
