#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccic/syntax.hpp"
#include "ccic/typer.hpp"

namespace ccic {

struct CheckOutcome {
  bool ok = true;
  std::vector<Certificate> certificates;
  std::size_t checked = 0;  // declarations accepted
  // On failure:
  ErrorKind kind = ErrorKind::TypeMismatch;
  std::string message;
  std::optional<Span> span;
};

// Checks the declarations in order; axioms extend the context. Stops at the
// first failure.
CheckOutcome check_source(const SourceFile& file, const TyperOptions& opts = {});

// "line:col: Kind: message" for a failed outcome.
std::string describe(const CheckOutcome& o);

}  // namespace ccic
