#pragma once

#include <cstdint>
#include <optional>

#include "ccic/term.hpp"

namespace ccic {

enum class RedexKind { Beta, IotaNat, IotaList, IotaWord, Delta };

struct ReductionOptions {
  bool beta = true;
  bool iota = true;
  // Unfold `@` to its Elim-based definition.
  bool delta = true;
  std::uint64_t fuel = 1'000'000;
};

// Body of the built-in `@`: λT:Prop. λl l':list T. Elim(l, list, [T], Q,
// [l', λx l'' L. cons T x L]).
const Term& append_definition();

// Contracts the redex at the root of t, if any.
std::optional<Term> contract(const Term& t, const ReductionOptions& opts = {},
                             RedexKind* kind = nullptr);

// One leftmost-outermost step; nullopt iff t is normal.
std::optional<Term> step(const Term& t, const ReductionOptions& opts = {},
                         RedexKind* kind = nullptr);

// Weak head normal form.
Term whnf(const Term& t, const ReductionOptions& opts = {});

// Full normal form. Throws FuelExhausted once opts.fuel contractions are
// spent.
Term normalize(const Term& t, const ReductionOptions& opts = {});

// β-only normal form.
Term normalize_beta(const Term& t, std::uint64_t fuel = 1'000'000);

// No applied type-level variable and no Elim whose scrutinee has free
// (or loose bound) variables.
bool is_weak(const Term& t);

// Arity of a constructor including type parameters.
int constructor_arity(Inductive ind, int index);
int constructor_count(Inductive ind);

}  // namespace ccic
