#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ccic/signature.hpp"

namespace ccic {

using BigInt = boost::multiprecision::cpp_int;

// Affine form over nat atoms: sum coef*atom + constant. Atoms are keyed by a
// canonical rendering of the non-arithmetic nat term.
struct LinearForm {
  std::map<std::string, BigInt> coef;
  BigInt constant = 0;

  LinearForm& add(const LinearForm& o, const BigInt& k = 1);
  bool is_zero() const { return coef.empty() && constant == 0; }
  bool operator==(const LinearForm& o) const {
    return coef == o.coef && constant == o.constant;
  }
};

// 0 -> 0, S t -> t + 1, a + b -> a + b, anything else is an atom.
LinearForm linearize(const AlgTerm& t);
std::string atom_key(const AlgTerm& t);

enum class StepKind { Hyp, Refl, Sym, Trans, Congr, Inject, LinComb, NonNeg, Clash, Absurd, Enum };

const char* to_string(StepKind k);
std::optional<StepKind> step_kind_from_string(const std::string& s);

using Coefficient = std::pair<std::int64_t, std::size_t>;  // (coef, premise)

struct Step {
  StepKind kind = StepKind::Refl;
  // Conclusion lhs = rhs at sort.
  AlgTerm lhs;
  AlgTerm rhs;
  SortExpr sort;

  std::size_t index = 0;      // Hyp: hypothesis index; Inject: argument position
  std::string symbol;         // Congr: symbol; Inject: constructor
  // Sym {p}, Trans {p, q}, Inject {p}, Clash {p}, Absurd {p}, Enum: the system
  std::vector<std::size_t> refs;
  std::vector<std::optional<std::size_t>> args;  // Congr: per-argument premise
  std::int64_t scale = 1;     // LinComb: multiplier of the conclusion
  // LinComb, NonNeg, arithmetic Clash; Enum: the bounding combination
  std::vector<Coefficient> combination;

  // Premises in citation order.
  std::vector<std::size_t> premises() const;
};

struct ProofTrace {
  std::vector<Step> steps;
};

struct ReplayResult {
  bool ok = true;
  std::optional<std::size_t> failed_step;
  std::string message;
  explicit operator bool() const { return ok; }
};

AlgEquation falsum();  // 0 = S(0) at nat

// Replays a trace against hypotheses and goal. Every step must be locally
// valid, sort-correct, cited by a later step (or be the last one), and the
// last step must conclude the goal.
ReplayResult replay(const Signature& sig, const std::vector<AlgEquation>& hyps,
                    const AlgEquation& goal, const ProofTrace& trace);

// Largest box an Enum step may ask replay to walk.
constexpr std::uint64_t kEnumLimit = 1u << 21;

// Whether sum(coef * atom) = rhs has an integer solution for every row at
// once (atoms range over all of Z).
bool integer_solvable(const std::vector<std::pair<std::map<std::string, BigInt>, BigInt>>& rows);

// Keeps the steps step `last` depends on, renumbered, with `last` at the end.
ProofTrace prune(const ProofTrace& trace, std::size_t last);

}  // namespace ccic
