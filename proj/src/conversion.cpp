#include "ccic/conversion.hpp"

#include <map>
#include <set>

#include "ccic/algebraize.hpp"
#include "ccic/solver.hpp"

namespace ccic {

VarSorts context_sorts(const Context& ctx) {
  const Context* c = &ctx;
  return [c](const std::string& name) -> std::optional<SortExpr> {
    const Binding* b = c->lookup(name);
    if (!b || b->level != VarLevel::Object) return std::nullopt;
    return sort_from_type(b->type);
  };
}

bool in_o_plus(const Signature& sig, const Context& ctx, const Term& t,
               const ReductionOptions& opts) {
  if (class_of(t) != SyntacticClass::Object) return false;
  return is_algebraic(sig, context_sorts(ctx), normalize(t, opts));
}

Context normalize_context(const Context& ctx, const ReductionOptions& opts) {
  Context out;
  for (const auto& b : ctx.bindings()) {
    Binding n = b;
    n.type = normalize(b.type, opts);
    out.push(std::move(n));
  }
  return out;
}

std::vector<ExtractedEq> extract_eqs_weak(const Signature& sig, const Context& ctx,
                                          const ConversionOptions& opts) {
  std::vector<ExtractedEq> out;
  if (!opts.theory) return out;
  VarSorts vars = context_sorts(ctx);
  for (const auto& b : ctx.bindings()) {
    if (b.annot != opts.extract_annot) continue;
    Term ty = whnf(b.type, opts.reduction);
    const auto* e = ty->as<node::Eqn>();
    if (!e) continue;
    auto sort = sort_from_type(e->ty);
    if (!sort) continue;
    if (class_of(e->lhs) != SyntacticClass::Object || class_of(e->rhs) != SyntacticClass::Object)
      continue;
    AlgebraicCap l = algebraic_cap(sig, vars, e->lhs, *sort);
    AlgebraicCap r = algebraic_cap(sig, vars, e->rhs, *sort);
    if (!l.aliens.empty() || !r.aliens.empty()) continue;
    out.push_back({{l.cap, r.cap, *sort}, b.name});
  }
  return out;
}

std::vector<ExtractedEq> extract_eqs(const Signature& sig, const Context& ctx,
                                     const ConversionOptions& opts) {
  return extract_eqs_weak(sig, normalize_context(ctx, opts.reduction), opts);
}

namespace {

void collect_symbols(const AlgTerm& t, std::set<std::string>& out) {
  if (t.is_var) return;
  out.insert(t.name);
  for (const auto& a : t.args) collect_symbols(a, out);
}

void collect_symbols(const Term& t, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::FoSym>) {
          out.insert(n.name);
        } else if constexpr (std::is_same_v<N, node::Prod> || std::is_same_v<N, node::Abs>) {
          collect_symbols(n.dom, out);
          collect_symbols(n.body, out);
        } else if constexpr (std::is_same_v<N, node::App>) {
          collect_symbols(n.fn, out);
          collect_symbols(n.arg, out);
        } else if constexpr (std::is_same_v<N, node::Eqn>) {
          collect_symbols(n.lhs, out);
          collect_symbols(n.rhs, out);
          collect_symbols(n.ty, out);
        } else if constexpr (std::is_same_v<N, node::Refl>) {
          collect_symbols(n.ty, out);
          collect_symbols(n.arg, out);
        } else if constexpr (std::is_same_v<N, node::Elim>) {
          collect_symbols(n.scrut, out);
          for (const auto& i : n.indices) collect_symbols(i, out);
          collect_symbols(n.motive, out);
          for (const auto& b : n.branches) collect_symbols(b, out);
        }
      },
      t->v);
}

void collect_vars(const AlgTerm& t, std::set<std::string>& out) {
  if (t.is_var) {
    out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) collect_vars(a, out);
}

class Converter {
 public:
  Converter(const Signature& sig, const ConversionOptions& opts, Context ctx)
      : sig_(sig), opts_(opts), ctx_(std::move(ctx)) {}

  bool conv(const Term& t, const Term& u, std::vector<Certificate>& out);

 private:
  void rule(const char* name) {
    if (opts_.rule_trace) opts_.rule_trace->push_back(name);
  }
  void push(Binding b) {
    invalidate(ctx_.size());
    ctx_.push(std::move(b));
  }
  void pop() {
    ctx_.pop();
    invalidate(ctx_.size());
  }
  void invalidate(std::size_t from) {
    eqs_.erase(eqs_.lower_bound(from + 1), eqs_.end());
    unsat_.erase(unsat_.lower_bound(from + 1), unsat_.end());
  }
  const std::vector<ExtractedEq>& eqs() {
    auto it = eqs_.find(ctx_.size());
    if (it == eqs_.end()) it = eqs_.emplace(ctx_.size(), extract_eqs_weak(sig_, ctx_, opts_)).first;
    return it->second;
  }
  const SolverResult& unsat() {
    auto it = unsat_.find(ctx_.size());
    if (it == unsat_.end()) {
      std::vector<AlgEquation> hs;
      for (const auto& e : eqs()) hs.push_back(e.eq);
      it = unsat_.emplace(ctx_.size(), is_unsat(sig_, hs)).first;
    }
    return it->second;
  }

  bool binder(const std::string& name, Annot a1, const Term& d1, const Term& b1, Annot a2,
              const Term& d2, const Term& b2, std::vector<Certificate>& out);
  std::optional<bool> ded(const Term& t, const Term& u, std::vector<Certificate>& out);
  Certificate certificate(const AlgEquation& goal, const std::vector<Alien>& aliens,
                          const ProofTrace& trace);

  const Signature& sig_;
  const ConversionOptions& opts_;
  Context ctx_;
  std::map<std::size_t, std::vector<ExtractedEq>> eqs_;
  std::map<std::size_t, SolverResult> unsat_;
};

Certificate Converter::certificate(const AlgEquation& goal, const std::vector<Alien>& aliens,
                                   const ProofTrace& trace) {
  const auto& all = eqs();
  Certificate c;
  c.goal = goal;
  c.aliens = aliens;
  c.trace = trace;
  // Keep only the hypotheses the trace cites.
  std::map<std::size_t, std::size_t> renum;
  for (auto& s : c.trace.steps) {
    if (s.kind != StepKind::Hyp) continue;
    auto [it, fresh] = renum.emplace(s.index, renum.size());
    if (fresh) c.hypotheses.push_back({all[s.index].eq, all[s.index].source});
    s.index = it->second;
  }

  std::set<std::string> alien_names;
  for (const auto& a : aliens) alien_names.insert(a.name);
  std::set<std::string> needed;
  auto add_vars = [&](const AlgTerm& t) {
    std::set<std::string> vs;
    collect_vars(t, vs);
    for (const auto& v : vs)
      if (!alien_names.count(v)) needed.insert(v);
  };
  add_vars(goal.lhs);
  add_vars(goal.rhs);
  for (const auto& h : c.hypotheses) {
    add_vars(h.eq.lhs);
    add_vars(h.eq.rhs);
    needed.insert(h.source);
  }
  for (const auto& a : aliens)
    for (const auto& v : free_vars(a.term)) needed.insert(v);

  // Named bindings whose types mention a goal variable come along too;
  // equations only as hypothesis sources.
  const auto& bs = ctx_.bindings();
  std::vector<bool> keep(bs.size(), false);
  const std::set<std::string> direct = needed;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (direct.count(bs[i].name) || bs[i].anonymous) continue;
    if (whnf(bs[i].type)->is<node::Eqn>()) continue;
    for (const auto& v : free_vars(bs[i].type))
      if (direct.count(v)) needed.insert(bs[i].name);
  }
  for (std::size_t i = bs.size(); i-- > 0;) {
    if (!needed.count(bs[i].name)) continue;
    keep[i] = true;
    for (const auto& v : free_vars(bs[i].type)) needed.insert(v);
  }
  std::set<std::string> syms;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (!keep[i]) continue;
    c.context.push_back({bs[i].name, bs[i].type});
    collect_symbols(bs[i].type, syms);
  }
  collect_symbols(goal.lhs, syms);
  collect_symbols(goal.rhs, syms);
  for (const auto& h : c.hypotheses) {
    collect_symbols(h.eq.lhs, syms);
    collect_symbols(h.eq.rhs, syms);
  }
  for (const auto& a : aliens) collect_symbols(a.term, syms);
  for (const auto& d : sig_.symbols())
    if (syms.count(d.name) && !sig_.is_builtin(d.name)) c.symbols.push_back(d);
  return c;
}

// Ded; nullopt when the rule does not apply.
std::optional<bool> Converter::ded(const Term& t, const Term& u, std::vector<Certificate>& out) {
  VarSorts vars = context_sorts(ctx_);
  auto sort = natural_sort(sig_, vars, t);
  if (!sort) sort = natural_sort(sig_, vars, u);
  if (!sort) return std::nullopt;
  if (algebraic_cap(sig_, vars, t, *sort).empty && algebraic_cap(sig_, vars, u, *sort).empty)
    return std::nullopt;
  rule("Ded");
  std::vector<Certificate> inner;
  AlienPool pool([&](const Term& a, const Term& b) {
    std::vector<Certificate> sub;
    if (!conv(a, b, sub)) return false;
    inner.insert(inner.end(), sub.begin(), sub.end());
    return true;
  });
  AlgEquation goal{algebraise(sig_, vars, t, *sort, pool), algebraise(sig_, vars, u, *sort, pool),
                   *sort};
  std::vector<AlgEquation> hyps;
  for (const auto& e : eqs()) hyps.push_back(e.eq);
  SolverResult r = entails(sig_, hyps, goal);
  if (!r.holds) return false;
  out.insert(out.end(), inner.begin(), inner.end());
  out.push_back(certificate(goal, pool.aliens(), r.trace));
  return true;
}

bool Converter::binder(const std::string& name, Annot a1, const Term& d1, const Term& b1,
                       Annot a2, const Term& d2, const Term& b2, std::vector<Certificate>& out) {
  if (a1 != a2) return false;
  if (!conv(d1, d2, out)) return false;
  Binding b;
  b.name = ctx_.fresh_name(name);
  b.annot = a1;
  b.type = d1;
  b.level = Context::level_for_type(d1);
  Term x = mk_fvar(b.name, b.level);
  Term l = instantiate(b1, x), r = instantiate(b2, x);
  b.anonymous = name == "_" || (!occurs_free(b.name, l) && !occurs_free(b.name, r));
  push(std::move(b));
  bool ok = false;
  try {
    ok = conv(l, r, out);
  } catch (...) {
    pop();
    throw;
  }
  pop();
  return ok;
}

bool Converter::conv(const Term& t, const Term& u, std::vector<Certificate>& out) {
  std::vector<Certificate> local;
  bool both_objects = class_of(t) == SyntacticClass::Object &&
                      class_of(u) == SyntacticClass::Object;
  bool ok = false;
  if (opts_.theory && both_objects && unsat().holds) {
    rule("Unsat");
    Certificate c = certificate(falsum(), {}, unsat().trace);
    out.push_back(std::move(c));
    return true;
  }
  if (alpha_eq(t, u)) {
    rule("Refl");
    return true;
  }
  if (opts_.theory && both_objects) {
    if (auto d = ded(t, u, local)) {
      if (*d) out.insert(out.end(), local.begin(), local.end());
      return *d;
    }
  }
  if (const auto* p = t->as<node::Prod>()) {
    const auto* q = u->as<node::Prod>();
    if (!q) return false;
    rule("Prod");
    ok = binder(p->name, p->annot, p->dom, p->body, q->annot, q->dom, q->body, local);
  } else if (const auto* p = t->as<node::Abs>()) {
    const auto* q = u->as<node::Abs>();
    if (!q) return false;
    rule("Lam");
    ok = binder(p->name, p->annot, p->dom, p->body, q->annot, q->dom, q->body, local);
  } else if (const auto* p = t->as<node::Elim>()) {
    const auto* q = u->as<node::Elim>();
    if (!q || p->ind != q->ind || !alpha_eq(p->scrut, q->scrut) || !is_weak(t) || !is_weak(u) ||
        p->indices.size() != q->indices.size() || p->branches.size() != q->branches.size())
      return false;
    rule("Elim");
    ok = conv(p->motive, q->motive, local);
    for (std::size_t i = 0; ok && i < p->indices.size(); ++i)
      ok = conv(p->indices[i], q->indices[i], local);
    for (std::size_t i = 0; ok && i < p->branches.size(); ++i)
      ok = conv(p->branches[i], q->branches[i], local);
  } else if (const auto* p = t->as<node::App>()) {
    const auto* q = u->as<node::App>();
    if (!q || !is_weak(t) || !is_weak(u)) return false;
    rule("App");
    ok = conv(p->fn, q->fn, local) && conv(p->arg, q->arg, local);
  } else if (const auto* p = t->as<node::Eqn>()) {
    const auto* q = u->as<node::Eqn>();
    if (!q) return false;
    rule("Eqn");
    ok = conv(p->ty, q->ty, local) && conv(p->lhs, q->lhs, local) && conv(p->rhs, q->rhs, local);
  } else if (const auto* p = t->as<node::Refl>()) {
    const auto* q = u->as<node::Refl>();
    if (!q) return false;
    rule("EqRefl");
    ok = conv(p->ty, q->ty, local) && conv(p->arg, q->arg, local);
  }
  if (ok) out.insert(out.end(), local.begin(), local.end());
  return ok;
}

}  // namespace

ConversionResult weak_convertible(const Signature& sig, const Context& ctx, const Term& t,
                                  const Term& u, const ConversionOptions& opts) {
  Converter c(sig, opts, ctx);
  ConversionResult r;
  r.ok = c.conv(t, u, r.certificates);
  if (!r.ok) r.certificates.clear();
  return r;
}

ConversionResult convertible(const Signature& sig, const Context& ctx, const Term& t,
                             const Term& u, const ConversionOptions& opts) {
  Context g = opts.normalize_context ? normalize_context(ctx, opts.reduction) : ctx;
  return weak_convertible(sig, g, normalize(t, opts.reduction), normalize(u, opts.reduction),
                          opts);
}

}  // namespace ccic
