#pragma once

#include <string>
#include <vector>

#include "ccic/signature.hpp"
#include "ccic/trace.hpp"

namespace ccic {

struct CertBinding {
  std::string name;
  Term type;
};

struct CertHypothesis {
  AlgEquation eq;
  std::string source;  // binding whose type is the equation
};

// Self-contained record of one theory call.
struct Certificate {
  std::vector<SymbolDecl> symbols;  // user symbols it mentions
  std::vector<CertBinding> context;
  std::vector<CertHypothesis> hypotheses;
  AlgEquation goal;
  std::vector<Alien> aliens;
  ProofTrace trace;
};

// Canonical JSON: version, context, hypotheses, goal, aliens, trace.
std::string emit(const Certificate& c);
// Throws KernelError(ParseError) on malformed input.
Certificate parse_certificate(const std::string& text);

struct VerifyResult {
  bool ok = true;
  ErrorKind kind = ErrorKind::InvalidStep;
  std::optional<std::size_t> step;
  std::string message;
};

// Parses and checks a certificate with trace replay only.
VerifyResult verify(const std::string& text);
VerifyResult verify(const Certificate& c);

}  // namespace ccic
