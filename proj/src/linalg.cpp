#include "ccic/linalg.hpp"

#include <boost/integer/common_factor.hpp>

namespace ccic {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

BigInt common_denominator(const std::vector<Rational>& v) {
  BigInt d = 1;
  for (const auto& x : v) d = boost::integer::lcm(d, BigInt(denominator(x)));
  return d;
}

std::optional<std::vector<Rational>> nonneg_solution(const RatMatrix& m,
                                                     const std::vector<Rational>& r) {
  const std::size_t rows = m.size();
  const std::size_t n = rows ? m[0].size() : 0;
  const std::size_t cols = n + rows;  // originals then artificials
  RatMatrix t(rows, std::vector<Rational>(cols + 1, 0));
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    Rational sign = r[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * m[i][j];
    t[i][n + i] = 1;
    t[i][cols] = sign * r[i];
    basis[i] = n + i;
  }
  // Reduced costs of the phase-1 objective (sum of artificials).
  std::vector<Rational> cost(cols + 1, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < n || j == cols) cost[j] -= t[i][j];

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = rows;
    Rational best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) break;  // unbounded; cannot happen for phase 1
    Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    Rational f = cost[enter];
    for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  if (cost[cols] != 0) return std::nullopt;
  std::vector<Rational> z(n, 0);
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] < n) z[basis[i]] = t[i][cols];
  return z;
}

namespace {

// Extended gcd: g = s*a + t*b.
void ext_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
  BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  g = r0;
  s = s0;
  t = t0;
}

}  // namespace

std::optional<std::vector<Rational>> integer_infeasibility(const IntMatrix& a,
                                                           const std::vector<BigInt>& b) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  IntMatrix h = a;
  std::vector<std::size_t> pivot_rows;
  std::size_t p = 0;
  for (std::size_t i = 0; i < m && p < n; ++i) {
    for (std::size_t j = p + 1; j < n; ++j) {
      if (h[i][j] == 0) continue;
      BigInt g, s, t;
      ext_gcd(h[i][p], h[i][j], g, s, t);
      BigInt u = h[i][p] / g, v = h[i][j] / g;
      // Unimodular update of columns p and j: [s -v; t u].
      for (std::size_t k = 0; k < m; ++k) {
        BigInt cp = h[k][p], cj = h[k][j];
        h[k][p] = s * cp + t * cj;
        h[k][j] = -v * cp + u * cj;
      }
    }
    if (h[i][p] == 0) continue;
    if (h[i][p] < 0)
      for (std::size_t k = 0; k < m; ++k) h[k][p] = -h[k][p];
    pivot_rows.push_back(i);
    ++p;
  }
  const std::size_t rank = pivot_rows.size();
  // Forward substitution for H_P z = b_P.
  std::vector<Rational> z(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    Rational acc = Rational(b[pivot_rows[k]]);
    for (std::size_t l = 0; l < k; ++l) acc -= Rational(h[pivot_rows[k]][l]) * z[l];
    z[k] = acc / Rational(h[pivot_rows[k]][k]);
  }
  for (std::size_t j = 0; j < rank; ++j) {
    if (denominator(z[j]) == 1) continue;
    // y_P H_P = e_j: back substitution on the transpose.
    std::vector<Rational> yp(rank, 0);
    for (std::size_t k = rank; k-- > 0;) {
      Rational acc = k == j ? 1 : 0;
      for (std::size_t l = k + 1; l < rank; ++l)
        acc -= yp[l] * Rational(h[pivot_rows[l]][k]);
      yp[k] = acc / Rational(h[pivot_rows[k]][k]);
    }
    std::vector<Rational> y(m, 0);
    for (std::size_t k = 0; k < rank; ++k) y[pivot_rows[k]] = yp[k];
    return y;
  }
  return std::nullopt;
}

}  // namespace ccic
