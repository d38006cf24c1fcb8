#include "ccic/certificate.hpp"

#include <map>
#include <regex>
#include <set>

#include <json.hpp>

#include "ccic/context.hpp"
#include "ccic/reduction.hpp"
#include "ccic/syntax.hpp"

namespace ccic {

using Json = nlohmann::ordered_json;

namespace {

constexpr int kVersion = 1;

[[noreturn]] void bad(const std::string& msg) { throw KernelError(ErrorKind::ParseError, msg); }

Json alg_to_json(const AlgTerm& t) {
  if (t.is_var) return t.name;
  Json args = Json::array();
  for (const auto& a : t.args) args.push_back(alg_to_json(a));
  return Json::array({t.name, args});
}

Json step_to_json(const Step& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  switch (s.kind) {
    case StepKind::Hyp: j["index"] = s.index; break;
    case StepKind::Refl: break;
    case StepKind::Sym:
    case StepKind::Trans:
    case StepKind::Absurd: j["refs"] = s.refs; break;
    case StepKind::Inject:
      j["symbol"] = s.symbol;
      j["index"] = s.index;
      j["refs"] = s.refs;
      break;
    case StepKind::Congr: {
      j["symbol"] = s.symbol;
      Json args = Json::array();
      for (const auto& a : s.args) args.push_back(a ? Json(*a) : Json(nullptr));
      j["args"] = args;
      break;
    }
    case StepKind::LinComb:
    case StepKind::NonNeg:
    case StepKind::Clash:
    case StepKind::Enum:
      if (s.kind == StepKind::Enum) j["refs"] = s.refs;
      if (s.kind == StepKind::LinComb) j["scale"] = s.scale;
      if (s.kind == StepKind::Clash && !s.refs.empty()) {
        j["refs"] = s.refs;
        break;
      }
      j["combination"] = Json::array();
      for (const auto& [c, p] : s.combination) j["combination"].push_back(Json::array({c, p}));
      break;
  }
  j["lhs"] = alg_to_json(s.lhs);
  j["rhs"] = alg_to_json(s.rhs);
  j["sort"] = s.sort.to_string();
  return j;
}

}  // namespace

std::string emit(const Certificate& c) {
  Json j;
  j["version"] = kVersion;
  Json ctx = Json::array();
  for (const auto& d : c.symbols) ctx.push_back(Json{{"symbol", d.name}, {"arity", print_arity(d)}});
  for (const auto& b : c.context) {
    auto s = sort_from_type(b.type);
    ctx.push_back(Json{{"name", b.name},
                       {"type", print(b.type)},
                       {"sort", s ? Json(s->to_string()) : Json(nullptr)}});
  }
  j["context"] = ctx;
  Json hyps = Json::array();
  for (const auto& h : c.hypotheses)
    hyps.push_back(Json{{"lhs", alg_to_json(h.eq.lhs)},
                        {"rhs", alg_to_json(h.eq.rhs)},
                        {"sort", h.eq.sort.to_string()},
                        {"source", h.source}});
  j["hypotheses"] = hyps;
  j["goal"] = Json{{"lhs", alg_to_json(c.goal.lhs)},
                   {"rhs", alg_to_json(c.goal.rhs)},
                   {"sort", c.goal.sort.to_string()}};
  Json aliens = Json::array();
  for (const auto& a : c.aliens)
    aliens.push_back(Json{{"name", a.name}, {"sort", a.sort.to_string()}, {"term", print(a.term)}});
  j["aliens"] = aliens;
  Json trace = Json::array();
  for (const auto& s : c.trace.steps) trace.push_back(step_to_json(s));
  j["trace"] = trace;
  // One line per entry of each top-level field.
  std::string out = "{\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    out += first ? "" : ",\n";
    first = false;
    out += "  " + Json(it.key()).dump() + ": ";
    if (!it.value().is_array() || it.value().empty()) {
      out += it.value().dump();
      continue;
    }
    out += "[\n";
    for (std::size_t i = 0; i < it.value().size(); ++i)
      out += "    " + it.value()[i].dump() + (i + 1 < it.value().size() ? ",\n" : "\n");
    out += "  ]";
  }
  return out + "\n}\n";
}

namespace {

struct Reader {
  Signature sig;
  std::map<std::string, std::optional<SortExpr>> vars;  // context and aliens

  static void keys(const Json& j, std::set<std::string> required, std::set<std::string> optional,
                   const std::string& what) {
    if (!j.is_object()) bad(what + " is not an object");
    for (const auto& k : required)
      if (!j.contains(k)) bad(what + " lacks \"" + k + "\"");
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!required.count(it.key()) && !optional.count(it.key()))
        bad(what + " has unexpected key \"" + it.key() + "\"");
  }

  static std::string str(const Json& j, const std::string& what) {
    if (!j.is_string()) bad(what + " is not a string");
    return j.get<std::string>();
  }

  static std::size_t index(const Json& j, const std::string& what) {
    if (!j.is_number_unsigned()) bad(what + " is not a non-negative integer");
    return j.get<std::size_t>();
  }

  static SortExpr sort(const Json& j, const std::string& what) {
    auto s = parse_sort(str(j, what));
    if (!s) bad(what + " is not a sort");
    return *s;
  }

  AlgTerm term(const Json& j) const {
    if (j.is_string()) {
      std::string n = j.get<std::string>();
      auto it = vars.find(n);
      if (it == vars.end()) throw KernelError(ErrorKind::UnboundVariable, "undeclared variable " + n);
      if (!it->second) throw KernelError(ErrorKind::SortMismatch, n + " is not first-order");
      return AlgTerm::variable(n, *it->second);
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_array())
      bad("malformed term " + j.dump());
    std::string f = j[0].get<std::string>();
    if (!sig.find(f)) bad("unknown symbol " + f);
    std::vector<AlgTerm> args;
    for (const auto& a : j[1]) args.push_back(term(a));
    return AlgTerm::app(f, std::move(args));
  }

  std::vector<std::size_t> refs(const Json& j) const {
    if (!j.is_array()) bad("refs is not an array");
    std::vector<std::size_t> r;
    for (const auto& x : j) r.push_back(index(x, "ref"));
    return r;
  }

  std::vector<Coefficient> combination(const Json& j) const {
    if (!j.is_array()) bad("combination is not an array");
    std::vector<Coefficient> r;
    for (const auto& x : j) {
      if (!x.is_array() || x.size() != 2 || !x[0].is_number_integer())
        bad("malformed combination entry");
      r.emplace_back(x[0].get<std::int64_t>(), index(x[1], "premise"));
    }
    return r;
  }

  Step step(const Json& j, std::size_t i) const {
    std::string what = "trace step " + std::to_string(i);
    if (!j.is_object() || !j.contains("kind")) bad(what + " lacks \"kind\"");
    auto kind = step_kind_from_string(str(j["kind"], what + " kind"));
    if (!kind) bad(what + " has unknown kind");
    std::set<std::string> req{"kind", "lhs", "rhs", "sort"};
    std::set<std::string> opt;
    switch (*kind) {
      case StepKind::Hyp: req.insert("index"); break;
      case StepKind::Refl: break;
      case StepKind::Sym:
      case StepKind::Trans:
      case StepKind::Absurd: req.insert("refs"); break;
      case StepKind::Inject: req.insert({"symbol", "index", "refs"}); break;
      case StepKind::Congr: req.insert({"symbol", "args"}); break;
      case StepKind::LinComb: req.insert({"scale", "combination"}); break;
      case StepKind::NonNeg: req.insert("combination"); break;
      case StepKind::Enum: req.insert({"refs", "combination"}); break;
      case StepKind::Clash:
        req.insert(j.contains("refs") ? "refs" : "combination");
        break;
    }
    keys(j, req, opt, what);
    Step s;
    s.kind = *kind;
    s.lhs = term(j["lhs"]);
    s.rhs = term(j["rhs"]);
    s.sort = sort(j["sort"], what + " sort");
    if (j.contains("index")) s.index = index(j["index"], what + " index");
    if (j.contains("symbol")) s.symbol = str(j["symbol"], what + " symbol");
    if (j.contains("refs")) s.refs = refs(j["refs"]);
    if (j.contains("combination")) s.combination = combination(j["combination"]);
    if (j.contains("scale")) {
      if (!j["scale"].is_number_integer()) bad(what + " scale is not an integer");
      s.scale = j["scale"].get<std::int64_t>();
    }
    if (j.contains("args")) {
      if (!j["args"].is_array()) bad(what + " args is not an array");
      for (const auto& a : j["args"])
        s.args.push_back(a.is_null() ? std::nullopt : std::optional<std::size_t>(index(a, "arg")));
    }
    return s;
  }
};

}  // namespace

Certificate parse_certificate(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  Reader::keys(j, {"version", "context", "hypotheses", "goal", "aliens", "trace"}, {}, "certificate");
  if (!j["version"].is_number_integer() || j["version"].get<int>() != kVersion)
    bad("unsupported version");
  for (const char* k : {"context", "hypotheses", "aliens", "trace"})
    if (!j[k].is_array()) bad(std::string(k) + " is not an array");

  Certificate c;
  Reader r;
  std::map<std::string, VarLevel> scope;
  Scope lookup = [&](const std::string& n) -> std::optional<VarLevel> {
    auto it = scope.find(n);
    return it == scope.end() ? std::nullopt : std::optional<VarLevel>(it->second);
  };
  for (const auto& e : j["context"]) {
    if (e.is_object() && e.contains("symbol")) {
      Reader::keys(e, {"symbol", "arity"}, {}, "symbol entry");
      if (!c.context.empty()) bad("symbol entries must precede bindings");
      SymbolDecl d = parse_arity(Reader::str(e["symbol"], "symbol"), Reader::str(e["arity"], "arity"));
      r.sig.declare(d);
      c.symbols.push_back(*r.sig.find(d.name));
      continue;
    }
    Reader::keys(e, {"name", "type", "sort"}, {}, "context entry");
    std::string name = Reader::str(e["name"], "name");
    if (scope.count(name) || r.sig.find(name)) bad("name " + name + " is declared twice");
    Term type = parse_term(Reader::str(e["type"], "type of " + name), lookup, r.sig);
    auto natural = sort_from_type(type);
    std::optional<SortExpr> declared;
    if (!e["sort"].is_null()) declared = Reader::sort(e["sort"], "sort of " + name);
    if (natural != declared)
      throw KernelError(ErrorKind::SortMismatch, "declared sort of " + name + " disagrees with its type");
    scope[name] = Context::level_for_type(type);
    r.vars[name] = natural;
    c.context.push_back({name, type});
  }
  for (const auto& e : j["aliens"]) {
    Reader::keys(e, {"name", "sort", "term"}, {}, "alien");
    Alien a;
    a.name = Reader::str(e["name"], "alien name");
    a.sort = Reader::sort(e["sort"], "alien sort");
    a.term = parse_term(Reader::str(e["term"], "alien term"), lookup, r.sig);
    if (r.vars.count(a.name)) bad("name " + a.name + " is declared twice");
    r.vars[a.name] = a.sort;
    c.aliens.push_back(a);
  }
  for (const auto& e : j["hypotheses"]) {
    Reader::keys(e, {"lhs", "rhs", "sort", "source"}, {}, "hypothesis");
    CertHypothesis h;
    h.eq = {r.term(e["lhs"]), r.term(e["rhs"]), Reader::sort(e["sort"], "hypothesis sort")};
    h.source = Reader::str(e["source"], "hypothesis source");
    c.hypotheses.push_back(h);
  }
  Reader::keys(j["goal"], {"lhs", "rhs", "sort"}, {}, "goal");
  c.goal = {r.term(j["goal"]["lhs"]), r.term(j["goal"]["rhs"]), Reader::sort(j["goal"]["sort"], "goal sort")};
  for (std::size_t i = 0; i < j["trace"].size(); ++i) c.trace.steps.push_back(r.step(j["trace"][i], i));
  return c;
}

namespace {

struct Failure {
  ErrorKind kind;
  std::string message;
};

void vars_of(const AlgTerm& t, std::vector<const AlgTerm*>& out) {
  if (t.is_var) out.push_back(&t);
  for (const auto& a : t.args) vars_of(a, out);
}

// A name the surface syntax reads back as a variable.
bool is_identifier(const std::string& name, const Signature& sig) {
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_']*");
  if (name == "_" || !std::regex_match(name, ident)) return false;
  auto scope = [&](const std::string& x) -> std::optional<VarLevel> {
    if (x == name) return VarLevel::Object;
    return std::nullopt;
  };
  try {
    const auto* v = parse_term(name, scope, sig)->as<node::FVar>();
    return v && v->name == name;
  } catch (const KernelError&) {
    return false;
  }
}

// Kernel term of an algebraic term with the aliens put back.
Term unabstract(const Signature& sig, const std::vector<Alien>& aliens, const AlgTerm& t,
                const SortExpr& s) {
  Term k = embed_term(sig, t, s);
  for (const auto& a : aliens) k = replace_fvar(k, a.name, a.term);
  return k;
}

void check(const Certificate& c, ReplayResult& replayed) {
  auto fail = [](ErrorKind k, const std::string& m) { throw Failure{k, m}; };
  Signature sig;
  for (const auto& d : c.symbols) {
    if (d.constructor) fail(ErrorKind::IllFormedTerm, "symbol " + d.name + " is a constructor");
    sig.declare(d);
  }

  std::map<std::string, std::optional<SortExpr>> declared;
  std::map<std::string, Term> types;
  for (const auto& b : c.context) {
    if (!is_identifier(b.name, sig)) fail(ErrorKind::IllFormedTerm, "bad binding name " + b.name);
    if (declared.count(b.name) || sig.find(b.name))
      fail(ErrorKind::IllFormedTerm, "name " + b.name + " is declared twice");
    for (const auto& v : free_vars(b.type))
      if (!declared.count(v)) fail(ErrorKind::UnboundVariable, "type of " + b.name + " mentions " + v);
    auto cls = class_of(b.type);
    if (cls != SyntacticClass::Predicate && cls != SyntacticClass::Kind)
      fail(ErrorKind::ClassMismatch, "type of " + b.name + " is not a predicate or kind");
    declared[b.name] = sort_from_type(b.type);
    types[b.name] = b.type;
  }

  std::map<std::string, SortExpr> alien_sorts;
  for (std::size_t i = 0; i < c.aliens.size(); ++i) {
    const Alien& a = c.aliens[i];
    for (const auto& v : sort_vars(a.sort))
      if (!v.empty() && v[0] == '?') fail(ErrorKind::SortMismatch, "alien sort is not ground");
    if (a.name != "y" + a.sort.to_string() + "_" + std::to_string(i))
      fail(ErrorKind::IllFormedTerm, "alien " + std::to_string(i) + " is misnamed " + a.name);
    if (declared.count(a.name) || alien_sorts.count(a.name))
      fail(ErrorKind::IllFormedTerm, "name " + a.name + " is declared twice");
    if (!a.term || a.term->is<node::FVar>() || well_applied(sig, a.term))
      fail(ErrorKind::IllFormedTerm, "alien " + a.name + " stands for an algebraic term");
    for (const auto& v : free_vars(a.term))
      if (!declared.count(v)) fail(ErrorKind::UnboundVariable, "alien " + a.name + " mentions " + v);
    for (std::size_t k = 0; k < i; ++k)
      if (alpha_eq(c.aliens[k].term, a.term))
        fail(ErrorKind::IllFormedTerm, "aliens " + c.aliens[k].name + " and " + a.name + " coincide");
    alien_sorts[a.name] = a.sort;
  }

  std::set<std::string> used;
  auto scan = [&](const AlgTerm& t) {
    std::vector<const AlgTerm*> vs;
    vars_of(t, vs);
    for (const AlgTerm* v : vs) {
      std::optional<SortExpr> s;
      if (auto it = alien_sorts.find(v->name); it != alien_sorts.end()) {
        s = it->second;
      } else if (auto it2 = declared.find(v->name); it2 != declared.end()) {
        s = it2->second;
      } else {
        fail(ErrorKind::UnboundVariable, "undeclared variable " + v->name);
      }
      if (!s || *s != v->sort) fail(ErrorKind::SortMismatch, "variable " + v->name + " used at the wrong sort");
      used.insert(v->name);
    }
  };
  auto scan_eq = [&](const AlgEquation& e) {
    scan(e.lhs);
    scan(e.rhs);
  };
  scan_eq(c.goal);
  for (const auto& h : c.hypotheses) {
    scan_eq(h.eq);
    auto it = types.find(h.source);
    if (it == types.end()) fail(ErrorKind::UnboundVariable, "hypothesis source " + h.source + " is not bound");
    Term src = whnf(it->second);
    const auto* e = src->as<node::Eqn>();
    if (!e) fail(ErrorKind::TypeMismatch, "hypothesis source " + h.source + " is not an equation");
    if (sort_from_type(e->ty) != h.eq.sort ||
        !alpha_eq(normalize(e->lhs), normalize(unabstract(sig, c.aliens, h.eq.lhs, h.eq.sort))) ||
        !alpha_eq(normalize(e->rhs), normalize(unabstract(sig, c.aliens, h.eq.rhs, h.eq.sort))))
      fail(ErrorKind::TypeMismatch, "hypothesis does not match its source " + h.source);
  }
  for (const auto& s : c.trace.steps) {
    scan(s.lhs);
    scan(s.rhs);
  }
  for (const auto& a : c.aliens)
    if (!used.count(a.name)) fail(ErrorKind::IllFormedTerm, "alien " + a.name + " is never used");

  std::vector<AlgEquation> hyps;
  for (const auto& h : c.hypotheses) hyps.push_back(h.eq);
  replayed = replay(sig, hyps, c.goal, c.trace);
}

}  // namespace

VerifyResult verify(const Certificate& c) {
  VerifyResult r;
  ReplayResult replayed;
  try {
    check(c, replayed);
  } catch (const Failure& f) {
    return {false, f.kind, std::nullopt, f.message};
  } catch (const KernelError& e) {
    return {false, e.kind(), std::nullopt, e.what()};
  }
  if (!replayed.ok) {
    bool goal = replayed.message == "last step does not conclude the goal";
    return {false, goal ? ErrorKind::GoalMismatch : ErrorKind::InvalidStep, replayed.failed_step,
            replayed.message};
  }
  return r;
}

VerifyResult verify(const std::string& text) {
  try {
    return verify(parse_certificate(text));
  } catch (const KernelError& e) {
    return {false, e.kind(), std::nullopt, e.what()};
  }
}

}  // namespace ccic
