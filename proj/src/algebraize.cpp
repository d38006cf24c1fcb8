#include "ccic/algebraize.hpp"

#include <functional>

namespace ccic {

std::string alien_name(const SortExpr& s, std::size_t k) {
  return "y" + s.to_string() + "_" + std::to_string(k);
}

AlgTerm AlienPool::abstract(const Term& t, const SortExpr& s) {
  for (const auto& a : aliens_)
    if (a.sort == s && oracle_(a.term, t)) return AlgTerm::variable(a.name, s);
  aliens_.push_back({alien_name(s, aliens_.size()), s, t});
  return AlgTerm::variable(aliens_.back().name, s);
}

AlgTerm algebraise(const Signature& sig, const VarSorts& vars, const Term& t,
                   const SortExpr& s, AlienPool& pool) {
  if (const auto* x = t->as<node::FVar>()) {
    if (x->level == VarLevel::Object) {
      auto vs = vars(x->name);
      if (vs && *vs == s) return AlgTerm::variable(x->name, s);
    }
    return pool.abstract(t, s);
  }
  if (auto w = well_applied(sig, t)) {
    const SymbolDecl& d = *w->decl;
    SortSubst inst;
    for (const auto& p : d.params) inst[p] = SortExpr::variable("?" + p);
    SortSubst xi;
    if (unify(subst_sort(inst, d.result), s, xi)) {
      std::vector<AlgTerm> args;
      for (std::size_t i = 0; i < w->value_args.size(); ++i)
        args.push_back(algebraise(sig, vars, w->value_args[i],
                                  subst_sort(xi, subst_sort(inst, d.args[i])), pool));
      return AlgTerm::app(d.name, std::move(args));
    }
  }
  return pool.abstract(t, s);
}

AlgebraicCap algebraic_cap(const Signature& sig, const VarSorts& vars, const Term& t,
                           const SortExpr& s) {
  AlienPool pool([](const Term& a, const Term& b) { return alpha_eq(a, b); });
  AlgebraicCap c;
  c.cap = algebraise(sig, vars, t, s, pool);
  c.aliens = pool.aliens();
  c.empty = c.cap.is_var && !c.aliens.empty() && c.cap.name == c.aliens[0].name;
  return c;
}

std::optional<SortExpr> natural_sort(const Signature& sig, const VarSorts& vars, const Term& t) {
  if (const auto* x = t->as<node::FVar>()) {
    if (x->level != VarLevel::Object) return std::nullopt;
    return vars(x->name);
  }
  auto w = well_applied(sig, t);
  if (!w) return std::nullopt;
  SortSubst xi;
  for (std::size_t i = 0; i < w->decl->params.size(); ++i) {
    auto ps = sort_from_type(w->type_args[i]);
    if (!ps) return std::nullopt;
    xi[w->decl->params[i]] = *ps;
  }
  // Substitute simultaneously: parameter names may clash with sort variables.
  SortExpr r = w->decl->result;
  std::function<SortExpr(const SortExpr&)> go = [&](const SortExpr& e) {
    if (e.is_var()) {
      auto it = xi.find(e.var);
      return it == xi.end() ? e : it->second;
    }
    SortExpr out = e;
    for (auto& a : out.args) a = go(a);
    return out;
  };
  return go(r);
}

bool is_algebraic(const Signature& sig, const VarSorts& vars, const Term& t) {
  auto s = natural_sort(sig, vars, t);
  if (!s) return false;
  return algebraic_cap(sig, vars, t, *s).aliens.empty();
}

}  // namespace ccic
