#include <set>

#include "ccic/syntax.hpp"

namespace ccic {

std::string Span::to_string() const {
  return std::to_string(line) + ":" + std::to_string(col);
}

namespace {

bool refers_to(const Term& t, std::uint32_t k) {
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::BVar>) {
          return n.index == k;
        } else if constexpr (std::is_same_v<N, node::Prod> || std::is_same_v<N, node::Abs>) {
          return refers_to(n.dom, k) || refers_to(n.body, k + 1);
        } else if constexpr (std::is_same_v<N, node::App>) {
          return refers_to(n.fn, k) || refers_to(n.arg, k);
        } else if constexpr (std::is_same_v<N, node::Eqn>) {
          return refers_to(n.lhs, k) || refers_to(n.rhs, k) || refers_to(n.ty, k);
        } else if constexpr (std::is_same_v<N, node::Refl>) {
          return refers_to(n.ty, k) || refers_to(n.arg, k);
        } else if constexpr (std::is_same_v<N, node::Elim>) {
          if (refers_to(n.scrut, k) || refers_to(n.motive, k)) return true;
          for (const auto& i : n.indices)
            if (refers_to(i, k)) return true;
          for (const auto& b : n.branches)
            if (refers_to(b, k)) return true;
          return false;
        } else {
          return false;
        }
      },
      t->v);
}

std::vector<Term> children(const Term& t) {
  return std::visit(
      [&](const auto& n) -> std::vector<Term> {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::Prod> || std::is_same_v<N, node::Abs>) {
          return {n.dom, n.body};
        } else if constexpr (std::is_same_v<N, node::App>) {
          return {n.fn, n.arg};
        } else if constexpr (std::is_same_v<N, node::Eqn>) {
          return {n.lhs, n.rhs, n.ty};
        } else if constexpr (std::is_same_v<N, node::Refl>) {
          return {n.ty, n.arg};
        } else if constexpr (std::is_same_v<N, node::Elim>) {
          std::vector<Term> r{n.scrut, n.motive};
          r.insert(r.end(), n.indices.begin(), n.indices.end());
          r.insert(r.end(), n.branches.begin(), n.branches.end());
          return r;
        } else {
          return {};
        }
      },
      t->v);
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{
      "fun", "forall", "Prop", "Type", "nat", "list", "word", "letter", "S", "nil", "cons",
      "epsilon", "char", "app", "Eq", "Elim", "symbol", "def", "axiom", "check", "convert", "_"};
  return k;
}

const char* ctor_name(Inductive ind, int index) {
  switch (ind) {
    case Inductive::Nat: return index == 1 ? "0" : "S";
    case Inductive::List: return index == 1 ? "nil" : "cons";
    case Inductive::Word: return index == 1 ? "epsilon" : index == 2 ? "char" : "app";
    case Inductive::Letter: break;
  }
  return "?";
}

std::optional<unsigned> numeral(const Term& t) {
  unsigned n = 0;
  Term cur = t;
  for (;;) {
    if (const auto* c = cur->as<node::Ctor>())
      return (c->ind == Inductive::Nat && c->index == 1) ? std::optional<unsigned>(n) : std::nullopt;
    const auto* a = cur->as<node::App>();
    if (!a) return std::nullopt;
    const auto* c = a->fn->as<node::Ctor>();
    if (!c || c->ind != Inductive::Nat || c->index != 2) return std::nullopt;
    ++n;
    cur = a->arg;
  }
}

class Printer {
 public:
  explicit Printer(const Term& root) : avoid_(free_vars(root)) { collect_symbols(root); }

  // Precedence: 0 binder, 1 arrow, 2 equation, 3 sum, 4 application, 5 atom.
  std::string go(const Term& t, int prec) {
    std::string s = render(t, prec);
    return s;
  }

 private:
  void collect_symbols(const Term& t) {
    if (const auto* f = t->as<node::FoSym>()) avoid_.insert(f->name);
    for (const auto& c : children(t)) collect_symbols(c);
  }

  static std::string paren(bool wrap, const std::string& s) { return wrap ? "(" + s + ")" : s; }

  std::string fresh(const std::string& base) {
    std::string stem = (base.empty() || base == "_") ? "x" : base;
    auto taken = [&](const std::string& c) {
      if (avoid_.count(c) || keywords().count(c)) return true;
      for (const auto& n : names_)
        if (n == c) return true;
      return false;
    };
    if (!taken(stem)) return stem;
    for (int i = 1;; ++i)
      if (!taken(stem + std::to_string(i))) return stem + std::to_string(i);
  }

  std::string binders(const Term& t, bool prod, std::size_t& pushed, Term& body) {
    std::string out;
    body = t;
    for (;;) {
      const std::string* name;
      Annot annot;
      Term dom, inner;
      if (prod) {
        const auto* p = body->as<node::Prod>();
        if (!p || (!refers_to(p->body, 0) && pushed > 0)) break;
        if (!refers_to(p->body, 0) && pushed == 0) break;
        name = &p->name;
        annot = p->annot;
        dom = p->dom;
        inner = p->body;
      } else {
        const auto* a = body->as<node::Abs>();
        if (!a) break;
        name = &a->name;
        annot = a->annot;
        dom = a->dom;
        inner = a->body;
      }
      std::string d = go(dom, 0);
      std::string n = (!prod && *name == "_" && !refers_to(inner, 0)) ? "_" : fresh(*name);
      out += " (" + n + (annot == Annot::R ? " :r " : " : ") + d + ")";
      names_.push_back(n);
      ++pushed;
      body = inner;
    }
    return out;
  }

  std::string render(const Term& t, int prec) {
    if (auto n = numeral(t)) return std::to_string(*n);
    if (const auto* s = t->as<node::SortNode>()) {
      return s->sort == Sort::Prop ? "Prop" : s->sort == Sort::Type ? "Type" : "Extern";
    }
    if (const auto* v = t->as<node::FVar>()) return v->name;
    if (const auto* b = t->as<node::BVar>()) {
      if (b->index < names_.size()) return names_[names_.size() - 1 - b->index];
      return "#" + std::to_string(b->index);
    }
    if (const auto* p = t->as<node::Prod>()) {
      if (!refers_to(p->body, 0)) {
        std::string dom = go(p->dom, 2);
        names_.push_back("_");
        std::string cod = go(p->body, 1);
        names_.pop_back();
        return paren(prec > 1, dom + (p->annot == Annot::R ? " ->r " : " -> ") + cod);
      }
      std::size_t pushed = 0;
      Term body;
      std::string bs = binders(t, true, pushed, body);
      std::string rest = go(body, 0);
      names_.resize(names_.size() - pushed);
      return paren(prec > 0, "forall" + bs + ", " + rest);
    }
    if (t->is<node::Abs>()) {
      std::size_t pushed = 0;
      Term body;
      std::string bs = binders(t, false, pushed, body);
      std::string rest = go(body, 0);
      names_.resize(names_.size() - pushed);
      return paren(prec > 0, "fun" + bs + " => " + rest);
    }
    if (t->is<node::App>()) {
      Term head = app_head(t);
      std::vector<Term> args = app_args(t);
      if (const auto* f = head->as<node::FoSym>(); f && f->name == "+" && args.size() == 2)
        return paren(prec > 3, go(args[0], 3) + " + " + go(args[1], 4));
      std::string s = go(head, 5);
      for (const auto& a : args) s += " " + go(a, 5);
      return paren(prec > 4, s);
    }
    if (const auto* f = t->as<node::FoSym>()) return f->name == "+" ? "(+)" : f->name;
    if (const auto* i = t->as<node::Ind>()) return to_string(i->ind);
    if (const auto* c = t->as<node::Ctor>()) return ctor_name(c->ind, c->index);
    if (const auto* e = t->as<node::Eqn>()) {
      std::string op = " = ";
      if (!(e->ty->is<node::Ind>() && e->ty->as<node::Ind>()->ind == Inductive::Nat))
        op = " =[" + go(e->ty, 0) + "] ";
      return paren(prec > 2, go(e->lhs, 3) + op + go(e->rhs, 3));
    }
    if (const auto* r = t->as<node::Refl>()) return "Eq[" + go(r->ty, 0) + "](" + go(r->arg, 0) + ")";
    if (const auto* e = t->as<node::Elim>()) {
      std::string s = "Elim(" + go(e->scrut, 0) + " : " + to_string(e->ind);
      for (const auto& i : e->indices) s += " " + go(i, 5);
      s += "; " + go(e->motive, 0) + ";";
      for (std::size_t k = 0; k < e->branches.size(); ++k)
        s += (k ? ", " : " ") + go(e->branches[k], 0);
      return s + ")";
    }
    return "?";
  }

  std::set<std::string> avoid_;
  std::vector<std::string> names_;
};

}  // namespace

std::string print(const Term& t) {
  Printer p(t);
  return p.go(t, 0);
}

std::string print_arity(const SymbolDecl& d) {
  std::string s;
  if (!d.params.empty()) {
    s += "forall";
    for (const auto& p : d.params) s += " " + p;
    s += ". ";
  }
  for (std::size_t i = 0; i < d.args.size(); ++i) s += (i ? " * " : "") + d.args[i].to_string();
  if (!d.args.empty()) s += " -> ";
  return s + d.result.to_string();
}

std::string print(const SymbolDecl& d) { return d.name + " : " + print_arity(d); }

}  // namespace ccic
