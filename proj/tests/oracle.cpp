#include "oracle.hpp"

#include <optional>
#include <set>

namespace oracle {

namespace {

using Matrix = std::vector<std::vector<Rat>>;

// Row echelon form in place; returns the pivot columns.
std::vector<std::size_t> echelon(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rat f = m[row][c];
    for (auto& v : m[row]) v /= f;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      Rat g = m[r][c];
      for (std::size_t k = 0; k < m[r].size(); ++k) m[r][k] -= g * m[row][k];
    }
    piv.push_back(c);
    ++row;
  }
  return piv;
}

Matrix to_rat(const std::vector<std::vector<Int>>& a, std::size_t cols) {
  Matrix m;
  for (const auto& r : a) {
    std::vector<Rat> row(cols, 0);
    for (std::size_t j = 0; j < r.size(); ++j) row[j] = Rat(r[j]);
    m.push_back(std::move(row));
  }
  return m;
}

std::size_t rank(const std::vector<std::vector<Int>>& a, std::size_t cols) {
  Matrix m = to_rat(a, cols);
  return echelon(m, cols).size();
}

// Basis of {v : a v = 0}.
std::vector<std::vector<Rat>> kernel(const std::vector<std::vector<Int>>& a, std::size_t cols) {
  Matrix m = to_rat(a, cols);
  auto piv = echelon(m, cols);
  std::set<std::size_t> pivset(piv.begin(), piv.end());
  std::vector<std::vector<Rat>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (pivset.count(f)) continue;
    std::vector<Rat> v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

// Some rational solution of a x = b.
std::optional<std::vector<Rat>> solve(const std::vector<std::vector<Int>>& a,
                                      const std::vector<Int>& b, std::size_t cols) {
  Matrix m = to_rat(a, cols + 1);
  for (std::size_t i = 0; i < m.size(); ++i) m[i][cols] = Rat(b[i]);
  auto piv = echelon(m, cols + 1);
  if (!piv.empty() && piv.back() == cols) return std::nullopt;
  std::vector<Rat> x(cols, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = m[r][cols];
  return x;
}

Rat det(Matrix m) {
  const std::size_t n = m.size();
  Rat d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rat f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (cur.size() == k) {
    f(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, f);
    cur.pop_back();
  }
}

// gcd of the k x k minors.
Int minor_gcd(const std::vector<std::vector<Int>>& a, std::size_t cols, std::size_t k) {
  Int g = 0;
  std::vector<std::size_t> rs, cs;
  subsets(a.size(), k, 0, rs, [&](const std::vector<std::size_t>& rows) {
    subsets(cols, k, 0, cs, [&](const std::vector<std::size_t>& cols_) {
      Matrix m(k, std::vector<Rat>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = Rat(a[rows[i]][cols_[j]]);
      Int d = boost::multiprecision::numerator(det(m));
      g = gcd(g, abs(d));
    });
  });
  return g;
}

std::vector<std::vector<Int>> columns(const std::vector<std::vector<Int>>& a,
                                      const std::vector<std::size_t>& cs) {
  std::vector<std::vector<Int>> out;
  for (const auto& r : a) {
    std::vector<Int> row;
    for (std::size_t c : cs) row.push_back(r[c]);
    out.push_back(std::move(row));
  }
  return out;
}

Int floor_of(const Rat& q) {
  Int n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
  Int f = n / d;
  if (n % d != 0 && n < 0) --f;
  return f;
}

}  // namespace

bool integer_solvable(const std::vector<std::vector<Int>>& a, const std::vector<Int>& b) {
  if (a.empty()) return true;
  const std::size_t cols = a[0].size();
  std::vector<std::vector<Int>> aug = a;
  for (std::size_t i = 0; i < a.size(); ++i) aug[i].push_back(b[i]);
  std::size_t r = rank(a, cols);
  if (rank(aug, cols + 1) != r) return false;
  if (r == 0) return true;
  return minor_gcd(a, cols, r) == minor_gcd(aug, cols + 1, r);
}

bool nat_entails(std::size_t n, const std::vector<Equation>& hyps, const Equation& goal) {
  std::vector<std::vector<Int>> a;
  std::vector<Int> b;
  for (const auto& h : hyps) {
    a.push_back(h.coef);
    a.back().resize(n, 0);
    b.push_back(-h.constant);
  }

  // Unknowns on the support of a nonnegative kernel ray: the extreme rays
  // have minimal supports, i.e. column sets with a one-dimensional kernel.
  std::vector<bool> unbounded(n, false);
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> cur;
    subsets(n, k, 0, cur, [&](const std::vector<std::size_t>& s) {
      auto ker = kernel(columns(a, s), s.size());
      if (ker.size() != 1) return;
      int sign = 0;
      for (const auto& v : ker[0]) {
        int vs = v > 0 ? 1 : v < 0 ? -1 : 0;
        if (vs == 0 || (sign != 0 && vs != sign)) return;
        sign = vs;
      }
      for (std::size_t j : s) unbounded[j] = true;
    });
  }

  // Vertices: basic solutions with independent columns.
  std::vector<std::vector<Rat>> vertices;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> cur;
    subsets(n, k, 0, cur, [&](const std::vector<std::size_t>& s) {
      auto sub = columns(a, s);
      if (rank(sub, s.size()) != s.size()) return;
      auto x = solve(sub, b, s.size());
      if (!x) return;
      std::vector<Rat> v(n, 0);
      for (std::size_t i = 0; i < s.size(); ++i) {
        if ((*x)[i] < 0) return;
        v[s[i]] = (*x)[i];
      }
      vertices.push_back(std::move(v));
    });
  }
  if (vertices.empty()) return true;

  std::vector<std::size_t> boxed, free;
  std::vector<Int> limit;
  for (std::size_t j = 0; j < n; ++j) {
    if (unbounded[j]) {
      free.push_back(j);
      continue;
    }
    Rat hi = 0;
    for (const auto& v : vertices) hi = std::max(hi, v[j]);
    boxed.push_back(j);
    limit.push_back(floor_of(hi));
  }

  auto free_part = columns(a, free);
  std::vector<std::vector<Int>> feasible;
  std::vector<Int> point(boxed.size(), 0);
  for (;;) {
    std::vector<Int> rest = b;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < boxed.size(); ++k) rest[i] -= a[i][boxed[k]] * point[k];
    bool ok;
    if (free.empty()) {
      ok = true;
      for (const auto& r : rest) ok = ok && r == 0;
    } else {
      ok = integer_solvable(free_part, rest);
    }
    if (ok) feasible.push_back(point);
    std::size_t k = 0;
    for (; k < boxed.size(); ++k) {
      if (point[k] < limit[k]) {
        ++point[k];
        break;
      }
      point[k] = 0;
    }
    if (k == boxed.size()) break;
  }
  if (feasible.empty()) return true;

  std::vector<Int> g = goal.coef;
  g.resize(n, 0);
  for (const auto& p : feasible) {
    std::vector<Int> rest = b;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < boxed.size(); ++k) rest[i] -= a[i][boxed[k]] * p[k];
    std::vector<Rat> xu(free.size(), 0);
    if (!free.empty() && !a.empty()) xu = *solve(free_part, rest, free.size());
    Rat v = Rat(goal.constant);
    for (std::size_t k = 0; k < boxed.size(); ++k) v += Rat(g[boxed[k]] * p[k]);
    for (std::size_t k = 0; k < free.size(); ++k) v += Rat(g[free[k]]) * xu[k];
    if (v != 0) return false;
  }
  std::vector<std::vector<Rat>> dirs;
  if (a.empty()) {
    for (std::size_t k = 0; k < free.size(); ++k) {
      dirs.emplace_back(free.size(), 0);
      dirs.back()[k] = 1;
    }
  } else {
    dirs = kernel(free_part, free.size());
  }
  for (const auto& d : dirs) {
    Rat v = 0;
    for (std::size_t k = 0; k < free.size(); ++k) v += Rat(g[free[k]]) * d[k];
    if (v != 0) return false;
  }
  return true;
}

Value eval(const GroundTerm& t, const std::map<std::string, Value>& env) {
  if (t.var) return env.at(t.head);
  Value v;
  if (t.head == "0") return v;
  if (t.head == "S") {
    v = eval(t.args[0], env);
    v.num += 1;
    return v;
  }
  if (t.head == "+") {
    v = eval(t.args[0], env);
    v.num += eval(t.args[1], env).num;
    return v;
  }
  v.is_list = true;
  if (t.head == "nil") return v;
  if (t.head == "cons") {
    v.items.push_back(eval(t.args[0], env).num);
    auto tail = eval(t.args[1], env).items;
    v.items.insert(v.items.end(), tail.begin(), tail.end());
    return v;
  }
  if (t.head == "@") {
    v.items = eval(t.args[0], env).items;
    auto tail = eval(t.args[1], env).items;
    v.items.insert(v.items.end(), tail.begin(), tail.end());
    return v;
  }
  throw std::runtime_error("oracle: unknown symbol " + t.head);
}

namespace {

void collect(const GroundTerm& t, std::map<std::string, bool>& vars) {
  if (t.var) vars[t.head] = t.list_var;
  for (const auto& a : t.args) collect(a, vars);
}

std::vector<Value> domain(bool list, const SearchSpace& sp) {
  std::vector<Value> out;
  if (!list) {
    for (int k = 0; k <= sp.nat_max; ++k) out.push_back(Value{false, k, {}});
    return out;
  }
  std::vector<std::vector<Int>> layer{{}};
  out.push_back(Value{true, 0, {}});
  for (int len = 1; len <= sp.list_len; ++len) {
    std::vector<std::vector<Int>> next;
    for (const auto& l : layer)
      for (int x = 0; x <= sp.item_max; ++x) {
        auto m = l;
        m.push_back(x);
        out.push_back(Value{true, 0, m});
        next.push_back(std::move(m));
      }
    layer = std::move(next);
  }
  return out;
}

}  // namespace

bool find_counterexample(const std::vector<std::pair<GroundTerm, GroundTerm>>& hyps,
                         const std::pair<GroundTerm, GroundTerm>& goal, const SearchSpace& space,
                         std::map<std::string, Value>* witness) {
  std::map<std::string, bool> vars;
  for (const auto& [l, r] : hyps) {
    collect(l, vars);
    collect(r, vars);
  }
  collect(goal.first, vars);
  collect(goal.second, vars);
  std::vector<std::pair<std::string, std::vector<Value>>> doms;
  for (const auto& [name, list] : vars) doms.emplace_back(name, domain(list, space));
  std::map<std::string, Value> env;
  std::function<bool(std::size_t)> go = [&](std::size_t k) {
    if (k == doms.size()) {
      for (const auto& [l, r] : hyps)
        if (!(eval(l, env) == eval(r, env))) return false;
      if (eval(goal.first, env) == eval(goal.second, env)) return false;
      if (witness) *witness = env;
      return true;
    }
    for (const auto& v : doms[k].second) {
      env[doms[k].first] = v;
      if (go(k + 1)) return true;
    }
    return false;
  };
  return go(0);
}

}  // namespace oracle
