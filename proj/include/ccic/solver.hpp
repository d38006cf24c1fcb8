#pragma once

#include <vector>

#include "ccic/signature.hpp"
#include "ccic/trace.hpp"

namespace ccic {

struct SolverResult {
  bool holds = false;
  ProofTrace trace;  // empty unless holds
};

// E |= goal in Presburger arithmetic combined with free constructors and
// uninterpreted defined symbols. The trace replays against (hyps, goal).
// Throws SortMismatch for ill-sorted queries.
SolverResult entails(const Signature& sig, const std::vector<AlgEquation>& hyps,
                     const AlgEquation& goal);

// E |= 0 = S(0); the trace ends with a Clash step.
SolverResult is_unsat(const Signature& sig, const std::vector<AlgEquation>& hyps);

}  // namespace ccic
