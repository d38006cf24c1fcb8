#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ccic/signature.hpp"
#include "ccic/term.hpp"

namespace ccic {

struct Span {
  int line = 0;
  int col = 0;
  int end_line = 0;
  int end_col = 0;
  std::string to_string() const;
};

// Source positions of parsed term nodes.
using SourceMap = std::unordered_map<const TermNode*, Span>;

// Level of a free variable in scope, nullopt if unbound.
using Scope = std::function<std::optional<VarLevel>(const std::string&)>;

// Concrete syntax; the grammar is in docs/grammar.md. ASCII output.
std::string print(const Term& t);
std::string print(const SymbolDecl& d);  // "forall a. list(a) * nat -> list(a)"
std::string print_arity(const SymbolDecl& d);

// Throws KernelError(ParseError) on syntax errors and (UnboundVariable) on
// unknown names.
Term parse_term(const std::string& text, const Scope& scope, const Signature& sig,
                SourceMap* spans = nullptr);
// Parses "[forall a b.] s1 * ... * sn -> s" into a defined symbol `name`.
SymbolDecl parse_arity(const std::string& name, const std::string& text);

// Surface file declarations.
struct Declaration {
  enum class Kind { Symbol, Def, Axiom, Check, Convert };
  Kind kind = Kind::Check;
  std::string name;
  Annot annot = Annot::U;
  Term type;   // def, axiom, check
  Term term;   // def, check, convert (left)
  Term other;  // convert (right)
  SymbolDecl symbol;
  Span span;
};

struct SourceFile {
  std::vector<Declaration> decls;
  Signature signature;
  SourceMap spans;
};

// Names in scope are earlier axioms and defs; defs are inlined.
SourceFile parse_file(const std::string& text);

}  // namespace ccic
