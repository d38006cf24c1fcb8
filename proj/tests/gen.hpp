#pragma once

#include <random>
#include <vector>

#include "ccic/context.hpp"
#include "ccic/signature.hpp"
#include "ccic/term.hpp"
#include "oracle.hpp"

namespace gen {

using Rng = std::mt19937_64;

// A linear query over nat unknowns x0..x{n-1}, kept both as oracle rows and
// as solver terms.
struct LinearQuery {
  std::size_t vars = 0;
  std::vector<oracle::Equation> hyps;
  oracle::Equation goal;
  std::vector<ccic::AlgEquation> alg_hyps;
  ccic::AlgEquation alg_goal;
};

// Up to 4 unknowns, side coefficients and constants in 0..5, 0..3 hypotheses.
LinearQuery linear_query(Rng& rng);

// Mixed nat / list(nat) query with ground interpretation.
struct MixedQuery {
  std::vector<ccic::AlgEquation> alg_hyps;
  ccic::AlgEquation alg_goal;
  std::vector<std::pair<oracle::GroundTerm, oracle::GroundTerm>> hyps;
  std::pair<oracle::GroundTerm, oracle::GroundTerm> goal;
};

MixedQuery mixed_query(Rng& rng);

oracle::GroundTerm ground(const ccic::AlgTerm& t);

// Well-typed kernel terms over a fixed context.
struct TypedTerm {
  ccic::Term term;
  ccic::Term type;
};

// Context: n m : nat, l : list nat, w : word n, P : nat -> Prop,
// f : nat -> nat, h :r n = m.
ccic::Context base_context();

// A term whose type is nat, list nat or a Π over them, at most `depth`
// deep. Contains β- and ι-redexes.
TypedTerm typed_term(Rng& rng, int depth);
// Same, but guaranteed to contain a redex.
TypedTerm reducible_term(Rng& rng, int depth);

}  // namespace gen
