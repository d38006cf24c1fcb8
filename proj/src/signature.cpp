#include "ccic/signature.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace ccic {

SortExpr SortExpr::list(SortExpr elem) {
  SortExpr s;
  s.kind = Kind::List;
  s.args.push_back(std::move(elem));
  return s;
}

SortExpr SortExpr::variable(std::string name) {
  SortExpr s;
  s.kind = Kind::Var;
  s.var = std::move(name);
  return s;
}

bool SortExpr::operator==(const SortExpr& o) const {
  return kind == o.kind && var == o.var && args == o.args;
}

std::string SortExpr::to_string() const {
  switch (kind) {
    case Kind::Var: return var;
    case Kind::Nat: return "nat";
    case Kind::List: return "list(" + args[0].to_string() + ")";
  }
  return "";
}

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' ||
         c == '?';
}

std::optional<SortExpr> parse_sort_at(const std::string& s, std::size_t& i) {
  std::size_t start = i;
  while (i < s.size() && ident_char(s[i])) ++i;
  std::string id = s.substr(start, i - start);
  if (id.empty()) return std::nullopt;
  if (id == "nat") return SortExpr::nat();
  if (id == "list") {
    if (i >= s.size() || s[i] != '(') return std::nullopt;
    ++i;
    auto inner = parse_sort_at(s, i);
    if (!inner || i >= s.size() || s[i] != ')') return std::nullopt;
    ++i;
    return SortExpr::list(*inner);
  }
  return SortExpr::variable(id);
}

}  // namespace

std::optional<SortExpr> parse_sort(const std::string& text) {
  std::size_t i = 0;
  auto r = parse_sort_at(text, i);
  if (!r || i != text.size()) return std::nullopt;
  return r;
}

SortExpr subst_sort(const SortSubst& s, const SortExpr& e) {
  if (e.is_var()) {
    auto it = s.find(e.var);
    return it == s.end() ? e : subst_sort(s, it->second);
  }
  SortExpr r = e;
  for (auto& a : r.args) a = subst_sort(s, a);
  return r;
}

namespace {

bool occurs(const std::string& v, const SortExpr& e) {
  if (e.is_var()) return e.var == v;
  return std::any_of(e.args.begin(), e.args.end(),
                     [&](const SortExpr& a) { return occurs(v, a); });
}

}  // namespace

bool unify(const SortExpr& a0, const SortExpr& b0, SortSubst& s) {
  SortExpr a = subst_sort(s, a0), b = subst_sort(s, b0);
  if (a == b) return true;
  if (a.is_flexible()) {
    if (occurs(a.var, b)) return false;
    s[a.var] = b;
    return true;
  }
  if (b.is_flexible()) return unify(b, a, s);
  if (a.kind != b.kind || a.is_var()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!unify(a.args[i], b.args[i], s)) return false;
  return true;
}

std::vector<std::string> sort_vars(const SortExpr& e) {
  std::vector<std::string> out;
  std::function<void(const SortExpr&)> go = [&](const SortExpr& x) {
    if (x.is_var()) {
      if (std::find(out.begin(), out.end(), x.var) == out.end()) out.push_back(x.var);
      return;
    }
    for (const auto& a : x.args) go(a);
  };
  go(e);
  return out;
}

std::string SymbolDecl::to_string() const {
  std::string s = name + " : ";
  if (!params.empty()) {
    s += "forall";
    for (const auto& p : params) s += " " + p;
    s += ". ";
  }
  for (std::size_t i = 0; i < args.size(); ++i)
    s += (i ? " * " : "") + args[i].to_string();
  if (!args.empty()) s += " -> ";
  return s + result.to_string();
}

AlgTerm AlgTerm::variable(std::string name, SortExpr sort) {
  AlgTerm t;
  t.is_var = true;
  t.name = std::move(name);
  t.sort = std::move(sort);
  return t;
}

AlgTerm AlgTerm::app(std::string symbol, std::vector<AlgTerm> args) {
  AlgTerm t;
  t.name = std::move(symbol);
  t.args = std::move(args);
  return t;
}

bool AlgTerm::operator==(const AlgTerm& o) const {
  if (is_var != o.is_var || name != o.name) return false;
  if (is_var) return sort == o.sort;
  return args == o.args;
}

std::string AlgTerm::to_string() const {
  if (is_var || args.empty()) return name;
  std::string s = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i)
    s += (i ? ", " : "") + args[i].to_string();
  return s + ")";
}

Signature::Signature() {
  SortExpr nat = SortExpr::nat();
  SortExpr la = SortExpr::list(SortExpr::variable("A"));
  symbols_.push_back({"0", true, {}, {}, nat});
  symbols_.push_back({"S", true, {}, {nat}, nat});
  symbols_.push_back({"+", false, {}, {nat, nat}, nat});
  symbols_.push_back({"nil", true, {"A"}, {}, la});
  symbols_.push_back({"cons", true, {"A"}, {SortExpr::variable("A"), la}, la});
  symbols_.push_back({"@", false, {"A"}, {la, la}, la});
  builtin_count_ = symbols_.size();
}

const SymbolDecl* Signature::find(const std::string& name) const {
  for (const auto& d : symbols_)
    if (d.name == name) return &d;
  return nullptr;
}

bool Signature::is_builtin(const std::string& name) const {
  for (std::size_t i = 0; i < builtin_count_; ++i)
    if (symbols_[i].name == name) return true;
  return false;
}

void Signature::declare(SymbolDecl decl) {
  if (find(decl.name))
    throw KernelError(ErrorKind::IllFormedTerm, "symbol " + decl.name + " is already declared");
  if (decl.constructor)
    throw KernelError(ErrorKind::IllFormedTerm,
                      "user symbols must be defined symbols, not constructors");
  std::vector<std::string> cod = sort_vars(decl.result);
  for (const auto& a : decl.args)
    for (const auto& v : sort_vars(a))
      if (std::find(cod.begin(), cod.end(), v) == cod.end())
        throw KernelError(ErrorKind::IllFormedTerm,
                          "sort variable " + v + " of " + decl.name +
                              " does not occur in its codomain");
  for (const auto& v : sort_vars(decl.result)) {
    if (!v.empty() && v[0] == '?')
      throw KernelError(ErrorKind::IllFormedTerm, "invalid sort variable " + v);
    if (std::find(decl.params.begin(), decl.params.end(), v) == decl.params.end())
      decl.params.push_back(v);
  }
  symbols_.push_back(std::move(decl));
}

std::optional<std::pair<Inductive, int>> Signature::constructor_of(const std::string& name) {
  if (name == "0") return std::make_pair(Inductive::Nat, 1);
  if (name == "S") return std::make_pair(Inductive::Nat, 2);
  if (name == "nil") return std::make_pair(Inductive::List, 1);
  if (name == "cons") return std::make_pair(Inductive::List, 2);
  return std::nullopt;
}

std::optional<std::string> Signature::symbol_of_constructor(Inductive ind, int index) {
  if (ind == Inductive::Nat) return std::string(index == 1 ? "0" : "S");
  if (ind == Inductive::List) return std::string(index == 1 ? "nil" : "cons");
  return std::nullopt;
}

namespace {

// Fresh instance of a declaration's parameters.
SortSubst instantiate_params(const SymbolDecl& d, int& counter) {
  SortSubst inst;
  for (const auto& p : d.params)
    inst[p] = SortExpr::variable("?" + std::to_string(counter++));
  return inst;
}

// Infers t's sort under `s`; `record` receives each application's parameter
// instance in pre-order.
std::optional<SortExpr> infer(const Signature& sig, const AlgTerm& t, int& counter,
                              SortSubst& s, std::vector<SortSubst>* record) {
  if (t.is_var) return t.sort;
  const SymbolDecl* d = sig.find(t.name);
  if (!d || d->args.size() != t.args.size()) return std::nullopt;
  SortSubst inst = instantiate_params(*d, counter);
  if (record) record->push_back(inst);
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    auto a = infer(sig, t.args[i], counter, s, record);
    if (!a || !unify(*a, subst_sort(inst, d->args[i]), s)) return std::nullopt;
  }
  return subst_sort(s, subst_sort(inst, d->result));
}

SortExpr rename_flexible(const SortExpr& e) {
  std::map<std::string, std::string> ren;
  for (const auto& v : sort_vars(e))
    if (!v.empty() && v[0] == '?') ren.emplace(v, "?" + std::to_string(ren.size()));
  std::function<SortExpr(const SortExpr&)> go = [&](const SortExpr& x) {
    if (x.is_var()) {
      auto it = ren.find(x.var);
      return it == ren.end() ? x : SortExpr::variable(it->second);
    }
    SortExpr r = x;
    for (auto& a : r.args) a = go(a);
    return r;
  };
  return go(e);
}

}  // namespace

std::optional<SortExpr> sort_of(const Signature& sig, const AlgTerm& t) {
  int counter = 0;
  SortSubst s;
  auto r = infer(sig, t, counter, s, nullptr);
  if (!r) return std::nullopt;
  return rename_flexible(subst_sort(s, *r));
}

bool has_sort(const Signature& sig, const AlgTerm& t, const SortExpr& target) {
  int counter = 0;
  SortSubst s;
  auto r = infer(sig, t, counter, s, nullptr);
  if (!r) return false;
  SortExpr got = subst_sort(s, *r);
  // Only t's own unification variables may be instantiated.
  SortSubst m = s;
  if (!unify(got, target, m)) return false;
  return subst_sort(m, target) == target;
}

std::optional<SortExpr> sort_from_type(const Term& type) {
  if (const auto* i = type->as<node::Ind>())
    if (i->ind == Inductive::Nat) return SortExpr::nat();
  if (const auto* a = type->as<node::App>()) {
    const auto* i = a->fn->as<node::Ind>();
    if (i && i->ind == Inductive::List) {
      auto e = sort_from_type(a->arg);
      if (e) return SortExpr::list(*e);
    }
    return std::nullopt;
  }
  if (const auto* f = type->as<node::FVar>())
    if (f->level == VarLevel::Predicate) return SortExpr::variable(f->name);
  return std::nullopt;
}

Term embed_sort(const SortExpr& s) {
  switch (s.kind) {
    case SortExpr::Kind::Nat: return mk_nat();
    case SortExpr::Kind::List: return mk_list(embed_sort(s.args[0]));
    case SortExpr::Kind::Var: return mk_fvar(s.var, VarLevel::Predicate);
  }
  return mk_nat();
}

Term embed_symbol(const SymbolDecl& d) {
  if (auto c = Signature::constructor_of(d.name)) {
    Term body = mk_ctor(c->first, c->second);
    for (std::size_t i = 0; i < d.params.size(); ++i)
      body = mk_app(body, mk_bvar(static_cast<std::uint32_t>(d.params.size() - 1 - i)));
    for (auto it = d.params.rbegin(); it != d.params.rend(); ++it)
      body = mk_abs(*it, Annot::U, mk_prop(), body);
    return body;
  }
  return mk_fosym(d.name);
}

Term symbol_type(const SymbolDecl& d) {
  Term body = embed_sort(d.result);
  for (auto it = d.args.rbegin(); it != d.args.rend(); ++it)
    body = mk_arrow(embed_sort(*it), body);
  for (auto it = d.params.rbegin(); it != d.params.rend(); ++it)
    body = mk_prod(*it, Annot::U, mk_prop(), abstract(body, *it));
  return body;
}

Term embed_term(const Signature& sig, const AlgTerm& t, const SortExpr& target) {
  int counter = 0;
  SortSubst s;
  std::vector<SortSubst> record;
  auto r = infer(sig, t, counter, s, &record);
  if (!r || !unify(*r, target, s))
    throw KernelError(ErrorKind::SortMismatch,
                      t.to_string() + " does not have sort " + target.to_string());
  std::size_t next = 0;
  std::function<Term(const AlgTerm&)> go = [&](const AlgTerm& x) -> Term {
    if (x.is_var) return mk_fvar(x.name, VarLevel::Object);
    const SymbolDecl* d = sig.find(x.name);
    const SortSubst& inst = record[next++];
    Term head;
    if (auto c = Signature::constructor_of(d->name))
      head = mk_ctor(c->first, c->second);
    else
      head = mk_fosym(d->name);
    for (const auto& p : d->params) {
      SortExpr ps = subst_sort(s, inst.at(p));
      // Unconstrained parameters default to nat.
      SortSubst dflt;
      for (const auto& v : sort_vars(ps))
        if (v[0] == '?') dflt[v] = SortExpr::nat();
      head = mk_app(head, embed_sort(subst_sort(dflt, ps)));
    }
    for (const auto& a : x.args) head = mk_app(head, go(a));
    return head;
  };
  return go(t);
}

std::optional<WellApplied> well_applied(const Signature& sig, const Term& t) {
  Term head = app_head(t);
  const SymbolDecl* d = nullptr;
  if (const auto* f = head->as<node::FoSym>()) {
    d = sig.find(f->name);
  } else if (const auto* c = head->as<node::Ctor>()) {
    if (auto n = Signature::symbol_of_constructor(c->ind, c->index)) d = sig.find(*n);
  }
  if (!d) return std::nullopt;
  std::vector<Term> args = app_args(t);
  if (args.size() != d->params.size() + d->args.size()) return std::nullopt;
  WellApplied w{d, {}, {}};
  w.type_args.assign(args.begin(), args.begin() + d->params.size());
  w.value_args.assign(args.begin() + d->params.size(), args.end());
  return w;
}

}  // namespace ccic
