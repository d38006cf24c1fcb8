#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ccic/signature.hpp"

namespace ccic {

// Sort of a free variable, if it is a first-order variable.
using VarSorts = std::function<std::optional<SortExpr>(const std::string&)>;
// Equivalence deciding when two aliens share an abstraction variable.
using AlienOracle = std::function<bool(const Term&, const Term&)>;

// "y<sort>_<k>", k counting aliens of the pool in first-occurrence order.
std::string alien_name(const SortExpr& s, std::size_t k);

class AlienPool {
 public:
  explicit AlienPool(AlienOracle oracle) : oracle_(std::move(oracle)) {}

  // Abstraction variable of t at sort s; reuses the variable of an existing
  // alien of sort s the oracle relates to t.
  AlgTerm abstract(const Term& t, const SortExpr& s);
  const std::vector<Alien>& aliens() const { return aliens_; }

 private:
  AlienOracle oracle_;
  std::vector<Alien> aliens_;
};

// Algebraisation of t at sort s: sorted variables at their own sort,
// well-applied symbols whose codomain matches s (type arguments erased),
// aliens otherwise.
AlgTerm algebraise(const Signature& sig, const VarSorts& vars, const Term& t,
                   const SortExpr& s, AlienPool& pool);

struct AlgebraicCap {
  AlgTerm cap;
  std::vector<Alien> aliens;
  // The whole term is an alien.
  bool empty = false;
};

// Maximal algebraic context of t at s; aliens are compared syntactically.
AlgebraicCap algebraic_cap(const Signature& sig, const VarSorts& vars, const Term& t,
                           const SortExpr& s);

// Sort a term announces: a variable's sort, or the codomain of a
// well-applied symbol instantiated by the sorts of its type arguments.
std::optional<SortExpr> natural_sort(const Signature& sig, const VarSorts& vars, const Term& t);

// t has an empty alien set at its natural sort.
bool is_algebraic(const Signature& sig, const VarSorts& vars, const Term& t);

}  // namespace ccic
