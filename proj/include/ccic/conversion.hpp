#pragma once

#include <string>
#include <vector>

#include "ccic/algebraize.hpp"
#include "ccic/certificate.hpp"
#include "ccic/context.hpp"
#include "ccic/reduction.hpp"
#include "ccic/signature.hpp"

namespace ccic {

struct ConversionOptions {
  // Off: pure βι conversion (no Ded, Unsat or extracted equations).
  bool theory = true;
  // Annotation of the bindings equations are extracted from.
  Annot extract_annot = Annot::R;
  ReductionOptions reduction;
  // Test hook: skip normalizing the context in convertible().
  bool normalize_context = true;
  // Debug: names of the rules that fired, in order.
  std::vector<std::string>* rule_trace = nullptr;
};

struct ExtractedEq {
  AlgEquation eq;
  std::string source;
};

struct ConversionResult {
  bool ok = false;
  std::vector<Certificate> certificates;
  explicit operator bool() const { return ok; }
};

// Sorts of the first-order variables of Γ.
VarSorts context_sorts(const Context& ctx);

// Object term whose normal form is algebraic at some sort.
bool in_o_plus(const Signature& sig, const Context& ctx, const Term& t,
               const ReductionOptions& opts = {});

// Eq(Γ) after normalizing the binding types.
std::vector<ExtractedEq> extract_eqs(const Signature& sig, const Context& ctx,
                                     const ConversionOptions& opts = {});
// Eq(Γ) read off the binding types as they are (weak head reduction only).
std::vector<ExtractedEq> extract_eqs_weak(const Signature& sig, const Context& ctx,
                                          const ConversionOptions& opts = {});

// Syntax-oriented conversion of βι-normal t and u.
ConversionResult weak_convertible(const Signature& sig, const Context& ctx, const Term& t,
                                  const Term& u, const ConversionOptions& opts = {});

// Normalizes Γ, t and u, then weak_convertible.
ConversionResult convertible(const Signature& sig, const Context& ctx, const Term& t,
                             const Term& u, const ConversionOptions& opts = {});

Context normalize_context(const Context& ctx, const ReductionOptions& opts = {});

}  // namespace ccic
