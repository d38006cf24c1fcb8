#include <map>
#include <regex>
#include <set>

#include "ccic/context.hpp"
#include "ccic/error.hpp"
#include "ccic/syntax.hpp"

namespace ccic {

namespace {

enum class Tok { Ident, Num, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
  int end_line = 1;
  int end_col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

[[noreturn]] void fail(int line, int col, const std::string& msg) {
  throw KernelError(ErrorKind::ParseError, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

std::vector<Token> tokenize(const std::string& s) {
  // Multi-byte spellings and their ASCII equivalents.
  static const std::vector<std::pair<std::string, std::string>> unicode{
      {"\xCE\xBB", "fun"}, {"\xCE\xA0", "forall"}, {"\xE2\x88\x80", "forall"},
      {"\xE2\x86\x92", "->"}, {"\xE2\x89\x90", "="}};
  static const std::vector<std::string> symbols{":=", "->", "=>", "(", ")", "[", "]", ",", ";",
                                                ":", "+", "=", "@", "~", ".", "*"};
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (s.compare(i, 2, "--") == 0) {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    bool matched = false;
    for (const auto& [u, a] : unicode) {
      if (s.compare(i, u.size(), u) == 0) {
        t.kind = a == "fun" || a == "forall" ? Tok::Ident : Tok::Sym;
        t.text = a;
        advance(u.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      if (ident_start(c)) {
        std::size_t j = i;
        while (j < s.size() && ident_char(s[j])) ++j;
        t.kind = Tok::Ident;
        t.text = s.substr(i, j - i);
        advance(j - i);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        t.kind = Tok::Num;
        t.text = s.substr(i, j - i);
        advance(j - i);
      } else {
        for (const auto& sym : symbols) {
          if (s.compare(i, sym.size(), sym) == 0) {
            t.kind = Tok::Sym;
            t.text = sym;
            advance(sym.size());
            matched = true;
            break;
          }
        }
        if (!matched) fail(line, col, std::string("unexpected character '") + c + "'");
      }
    }
    // ":r", ":u" and "->r" carry an annotation letter.
    if (t.kind == Tok::Sym && (t.text == ":" || t.text == "->") && i < s.size() &&
        (s[i] == 'r' || s[i] == 'u') && (i + 1 >= s.size() || !ident_char(s[i + 1]))) {
      t.text += s[i];
      advance(1);
    }
    t.end_line = line;
    t.end_col = col;
    out.push_back(t);
  }
  Token end;
  end.line = line;
  end.col = col;
  end.end_line = line;
  end.end_col = col;
  out.push_back(end);
  return out;
}

const std::set<std::string>& decl_keywords() {
  static const std::set<std::string> k{"symbol", "def", "axiom", "check", "convert"};
  return k;
}

const std::set<std::string>& reserved() {
  static const std::set<std::string> k{"fun", "forall", "Prop", "Type", "nat", "list",
                                       "word", "letter", "S", "nil", "cons", "epsilon",
                                       "char", "app", "Eq", "Elim", "symbol", "def",
                                       "axiom", "check", "convert"};
  return k;
}

// Names of the form y<sort>_<k> are taken by abstraction variables.
bool alien_like(const std::string& name) {
  static const std::regex re("y[A-Za-z][A-Za-z0-9_']*_[0-9]+");
  return std::regex_match(name, re);
}

using Resolver = std::function<std::optional<Term>(const std::string&)>;

class Parser {
 public:
  Parser(std::vector<Token> toks, const Signature& sig, Resolver resolve, SourceMap* spans)
      : toks_(std::move(toks)), sig_(sig), resolve_(std::move(resolve)), spans_(spans) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is_sym(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool is_ident(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == s;
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void error(const std::string& msg) const {
    const Token& t = peek();
    fail(t.line, t.col, msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"));
  }
  Token expect_sym(const std::string& s) {
    if (!is_sym(s)) error("expected '" + s + "'");
    return next();
  }
  std::string expect_name() {
    if (peek().kind != Tok::Ident || reserved().count(peek().text)) error("expected a name");
    return next().text;
  }

  Term term() {
    if (is_ident("fun") || is_ident("forall")) return binder();
    return arrow();
  }

  // [forall a b.] s1 * ... * sn -> s
  SymbolDecl arity(const std::string& name) {
    SymbolDecl d;
    d.name = name;
    if (is_ident("forall")) {
      next();
      while (peek().kind == Tok::Ident) d.params.push_back(next().text);
      expect_sym(".");
    }
    std::vector<SortExpr> sorts{sort()};
    while (is_sym("*")) {
      next();
      sorts.push_back(sort());
    }
    if (is_sym("->")) {
      next();
      d.args = sorts;
      d.result = sort();
    } else {
      if (sorts.size() != 1) error("expected '->'");
      d.result = sorts[0];
    }
    return d;
  }

  Term mark(Term t, const Token& start) {
    if (spans_) {
      const Token& last = toks_[pos_ == 0 ? 0 : pos_ - 1];
      spans_->emplace(t.get(), Span{start.line, start.col, last.end_line, last.end_col});
    }
    return t;
  }

  SortExpr sort() {
    if (peek().kind != Tok::Ident) error("expected a sort");
    std::string id = next().text;
    if (id == "nat") return SortExpr::nat();
    if (id == "list") {
      expect_sym("(");
      SortExpr inner = sort();
      expect_sym(")");
      return SortExpr::list(inner);
    }
    return SortExpr::variable(id);
  }

  struct Param {
    std::string name;
    Annot annot;
    Term type;
  };

  Annot annot_token() {
    if (is_sym(":") || is_sym(":u")) {
      next();
      return Annot::U;
    }
    if (is_sym(":r")) {
      next();
      return Annot::R;
    }
    error("expected ':'");
  }

  std::string binder_name() {
    if (is_ident("_")) return next().text;
    std::string n = expect_name();
    if (alien_like(n)) fail(toks_[pos_ - 1].line, toks_[pos_ - 1].col, "name '" + n + "' is reserved");
    return n;
  }

  // Parses parameter groups, pushing the names as they are bound.
  std::vector<Param> params() {
    std::vector<Param> ps;
    auto group = [&](bool closed) {
      std::vector<std::string> names;
      while (peek().kind == Tok::Ident) names.push_back(binder_name());
      if (names.empty()) error("expected a binder name");
      Annot a = annot_token();
      std::size_t depth = bound_.size();
      for (std::size_t k = 0; k < names.size(); ++k) {
        // The type is reparsed under the earlier names of the group.
        std::size_t save = pos_;
        Term ty = term();
        if (k + 1 < names.size()) pos_ = save;
        ps.push_back({names[k], a, ty});
        bound_.push_back(names[k]);
      }
      (void)depth;
      if (closed) expect_sym(")");
    };
    if (is_sym("(")) {
      while (is_sym("(")) {
        next();
        group(true);
      }
    } else {
      group(false);
    }
    return ps;
  }

  Term binder() {
    Token start = peek();
    bool lam = next().text == "fun";
    std::size_t depth = bound_.size();
    std::vector<Param> ps = params();
    if (lam ? !(is_sym("=>") || is_sym(",") || is_sym(".")) : !(is_sym(",") || is_sym(".")))
      error(lam ? "expected '=>'" : "expected ','");
    next();
    Term body = term();
    bound_.resize(depth);
    for (std::size_t k = ps.size(); k-- > 0;) {
      const Param& p = ps[k];
      body = lam ? mk_abs(p.name, p.annot, p.type, body) : mk_prod(p.name, p.annot, p.type, body);
    }
    return mark(body, start);
  }

  Term arrow() {
    Token start = peek();
    Term l = equation();
    if (is_sym("->") || is_sym("->r") || is_sym("->u")) {
      Annot a = next().text == "->r" ? Annot::R : Annot::U;
      bound_.push_back("_");
      Term r = term();
      bound_.pop_back();
      return mark(mk_prod("_", a, l, r), start);
    }
    return l;
  }

  Term equation() {
    Token start = peek();
    Term l = sum();
    if (is_sym("=")) {
      next();
      Term ty = mk_nat();
      if (is_sym("[")) {
        next();
        ty = term();
        expect_sym("]");
      }
      Term r = sum();
      return mark(mk_eqn(l, r, ty), start);
    }
    return l;
  }

  Term sum() {
    Token start = peek();
    Term l = application();
    while (is_sym("+")) {
      next();
      Term r = application();
      l = mark(mk_plus(l, r), start);
    }
    return l;
  }

  bool atom_start() const {
    const Token& t = peek();
    if (t.kind == Tok::Num) return true;
    if (t.kind == Tok::Ident)
      return !decl_keywords().count(t.text) && t.text != "fun" && t.text != "forall";
    return t.text == "(" || t.text == "@";
  }

  Term application() {
    Token start = peek();
    if (!atom_start()) error("expected a term");
    Term f = atom();
    while (atom_start()) f = mark(mk_app(f, atom()), start);
    return f;
  }

  Term atom() {
    Token start = peek();
    Token t = next();
    if (t.kind == Tok::Num) {
      if (t.text.size() > 6) fail(t.line, t.col, "numeral too large");
      return mark(mk_numeral(static_cast<unsigned>(std::stoul(t.text))), start);
    }
    if (t.kind == Tok::Sym) {
      if (t.text == "@") return mark(mk_fosym("@"), start);
      // t.text == "("
      if (is_sym("+") && is_sym(")", 1)) {
        next();
        next();
        return mark(mk_fosym("+"), start);
      }
      Term inner = term();
      expect_sym(")");
      return inner;
    }
    const std::string& id = t.text;
    for (std::size_t k = bound_.size(); k-- > 0;)
      if (bound_[k] == id && id != "_")
        return mark(mk_bvar(static_cast<std::uint32_t>(bound_.size() - 1 - k)), start);
    if (id == "Prop") return mark(mk_prop(), start);
    if (id == "Type") return mark(mk_type(), start);
    if (id == "nat") return mark(mk_ind(Inductive::Nat), start);
    if (id == "list") return mark(mk_ind(Inductive::List), start);
    if (id == "word") return mark(mk_ind(Inductive::Word), start);
    if (id == "letter") return mark(mk_ind(Inductive::Letter), start);
    if (id == "S") return mark(mk_ctor(Inductive::Nat, 2), start);
    if (id == "nil") return mark(mk_ctor(Inductive::List, 1), start);
    if (id == "cons") return mark(mk_ctor(Inductive::List, 2), start);
    if (id == "epsilon") return mark(mk_ctor(Inductive::Word, 1), start);
    if (id == "char") return mark(mk_ctor(Inductive::Word, 2), start);
    if (id == "app") return mark(mk_ctor(Inductive::Word, 3), start);
    if (id == "Eq") {
      expect_sym("[");
      Term ty = term();
      expect_sym("]");
      expect_sym("(");
      Term arg = term();
      expect_sym(")");
      return mark(mk_refl(ty, arg), start);
    }
    if (id == "Elim") return elim(start);
    if (const SymbolDecl* d = sig_.find(id); d && !d->constructor) return mark(mk_fosym(id), start);
    if (auto r = resolve_(id)) return mark(*r, start);
    throw KernelError(ErrorKind::UnboundVariable,
                      std::to_string(t.line) + ":" + std::to_string(t.col) + ": unbound name '" + id + "'");
  }

  Term elim(const Token& start) {
    expect_sym("(");
    Term scrut = term();
    expect_sym(":");
    Inductive ind;
    if (is_ident("nat")) ind = Inductive::Nat;
    else if (is_ident("list")) ind = Inductive::List;
    else if (is_ident("word")) ind = Inductive::Word;
    else error("expected nat, list or word");
    next();
    std::vector<Term> indices;
    while (atom_start()) indices.push_back(atom());
    expect_sym(";");
    Term motive = term();
    expect_sym(";");
    std::vector<Term> branches{term()};
    while (is_sym(",")) {
      next();
      branches.push_back(term());
    }
    expect_sym(")");
    return mark(mk_elim(scrut, ind, std::move(indices), motive, std::move(branches)), start);
  }

  const Token& last() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  Resolver resolve_;
  SourceMap* spans_;
  std::vector<std::string> bound_;
};

}  // namespace

Term parse_term(const std::string& text, const Scope& scope, const Signature& sig,
                SourceMap* spans) {
  Resolver r = [&](const std::string& name) -> std::optional<Term> {
    if (!scope) return std::nullopt;
    if (auto level = scope(name)) return mk_fvar(name, *level);
    return std::nullopt;
  };
  Parser p(tokenize(text), sig, r, spans);
  Term t = p.term();
  if (!p.at_end()) p.error("trailing input");
  return t;
}

SymbolDecl parse_arity(const std::string& name, const std::string& text) {
  Signature sig;
  Parser p(tokenize(text), sig, nullptr, nullptr);
  SymbolDecl d = p.arity(name);
  if (!p.at_end()) p.error("trailing input");
  return d;
}

SourceFile parse_file(const std::string& text) {
  SourceFile f;
  std::map<std::string, Term> defs;
  std::map<std::string, VarLevel> axioms;
  Resolver r = [&](const std::string& name) -> std::optional<Term> {
    if (auto it = defs.find(name); it != defs.end()) return it->second;
    if (auto it = axioms.find(name); it != axioms.end()) return mk_fvar(name, it->second);
    return std::nullopt;
  };
  Parser p(tokenize(text), f.signature, r, &f.spans);
  auto new_name = [&]() {
    Token at = p.peek();
    std::string n = p.expect_name();
    if (n == "_" || alien_like(n)) fail(at.line, at.col, "name '" + n + "' is reserved");
    if (defs.count(n) || axioms.count(n) || f.signature.find(n))
      fail(at.line, at.col, "'" + n + "' is already declared");
    return n;
  };
  while (!p.at_end()) {
    Token start = p.peek();
    if (start.kind != Tok::Ident || !decl_keywords().count(start.text))
      p.error("expected a declaration");
    std::string kw = p.next().text;
    Declaration d;
    if (kw == "symbol") {
      d.kind = Declaration::Kind::Symbol;
      d.name = new_name();
      p.expect_sym(":");
      d.symbol = p.arity(d.name);
      try {
        f.signature.declare(d.symbol);
      } catch (const KernelError& e) {
        fail(start.line, start.col, e.what());
      }
      d.symbol = *f.signature.find(d.name);
    } else if (kw == "def") {
      d.kind = Declaration::Kind::Def;
      d.name = new_name();
      p.expect_sym(":");
      d.type = p.term();
      p.expect_sym(":=");
      d.term = p.term();
      defs[d.name] = d.term;
    } else if (kw == "axiom") {
      d.kind = Declaration::Kind::Axiom;
      d.name = new_name();
      d.annot = p.annot_token();
      d.type = p.term();
      axioms[d.name] = Context::level_for_type(d.type);
    } else if (kw == "check") {
      d.kind = Declaration::Kind::Check;
      d.term = p.term();
      p.expect_sym(":");
      d.type = p.term();
    } else {
      d.kind = Declaration::Kind::Convert;
      d.term = p.term();
      p.expect_sym("~");
      d.other = p.term();
    }
    const Token& last = p.last();
    d.span = Span{start.line, start.col, last.end_line, last.end_col};
    f.decls.push_back(std::move(d));
    while (p.is_sym(";")) p.next();
  }
  return f;
}

}  // namespace ccic
