#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ccic {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RatMatrix = std::vector<std::vector<Rational>>;
using IntMatrix = std::vector<std::vector<BigInt>>;

// Some z >= 0 with M z = r, or nullopt if none exists. Exact phase-1
// simplex with Bland's rule.
std::optional<std::vector<Rational>> nonneg_solution(const RatMatrix& m,
                                                     const std::vector<Rational>& r);

// For A x = b that has a rational solution: nullopt if it also has an
// integer solution, otherwise y with yA integral and yb not an integer.
// Uses a column Hermite reduction of A.
std::optional<std::vector<Rational>> integer_infeasibility(const IntMatrix& a,
                                                           const std::vector<BigInt>& b);

// Least common multiple of the denominators.
BigInt common_denominator(const std::vector<Rational>& v);

}  // namespace ccic
