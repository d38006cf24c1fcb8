#include "ccic/solver.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "ccic/linalg.hpp"

namespace ccic {

namespace {

// Largest box the solver walks before giving up on enumeration.
constexpr std::uint64_t kSolverEnumLimit = 200000;

struct Unsat {
  std::size_t step;
};

std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw KernelError(ErrorKind::InvalidStep, "proof coefficient exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

bool has_flexible(const SortExpr& s) {
  for (const auto& v : sort_vars(s))
    if (v[0] == '?') return true;
  return false;
}

using Lin = std::map<std::size_t, BigInt>;  // atom node -> coefficient

struct AffineRow {
  Lin coef;
  BigInt constant = 0;
  std::size_t step = 0;
};

class Solver {
 public:
  explicit Solver(const Signature& sig) : sig_(sig) {}

  std::size_t intern(const AlgTerm& t, const SortExpr& s);
  void assume(std::size_t i, const AlgEquation& e);
  void saturate();
  bool same_class(std::size_t a, std::size_t b) { return find(a) == find(b); }
  std::size_t explain(std::size_t a, std::size_t b);
  std::size_t add(Step s) {
    steps_.push_back(std::move(s));
    return steps_.size() - 1;
  }
  const std::vector<Step>& steps() const { return steps_; }

 private:
  struct Node {
    AlgTerm term;
    SortExpr sort;
    std::vector<std::size_t> kids;
  };
  // Proof forest edge: `step` concludes node = parent, or parent = node when
  // flipped.
  struct Edge {
    std::optional<std::size_t> parent;
    std::size_t step = 0;
    bool flipped = false;
  };

  std::size_t find(std::size_t x) {
    while (uf_[x] != x) x = uf_[x] = uf_[uf_[x]];
    return x;
  }
  Step conclusion(StepKind k, std::size_t a, std::size_t b) const {
    Step s;
    s.kind = k;
    s.lhs = nodes_[a].term;
    s.rhs = nodes_[b].term;
    s.sort = nodes_[a].sort;
    return s;
  }
  bool is_nat(std::size_t n) const { return nodes_[n].sort.kind == SortExpr::Kind::Nat; }
  bool is_ctor_app(std::size_t n) const {
    return !nodes_[n].term.is_var && Signature::constructor_of(nodes_[n].term.name);
  }

  void merge(std::size_t a, std::size_t b, std::size_t step) { pending_.emplace_back(a, b, step); }
  void process();
  void union_classes(std::size_t a, std::size_t b, std::size_t step);
  void reroot(std::size_t x);
  std::size_t oriented(const Edge& e);
  void congruence();
  bool arithmetic();
  using Farkas = std::function<std::optional<std::vector<Rational>>(
      const std::vector<Rational>&, const Rational&, bool)>;
  bool enumerate(const std::vector<AffineRow>& rs, const std::vector<std::size_t>& atoms,
                 const Farkas& farkas, const std::function<bool(const Lin&, const BigInt&)>& fresh);
  AlgTerm affine_term(const Lin& f, const BigInt& k);
  const Lin& lin(std::size_t n, BigInt& constant);
  std::vector<AffineRow> rows();
  std::vector<Coefficient> combination(const std::vector<AffineRow>& rs,
                                       const std::vector<Rational>& y, BigInt& scale);

  const Signature& sig_;
  std::vector<Node> nodes_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::size_t> uf_;
  std::vector<std::optional<std::size_t>> ctor_rep_;
  std::vector<Edge> forest_;
  std::vector<Step> steps_;
  std::deque<std::tuple<std::size_t, std::size_t, std::size_t>> pending_;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> nat_edges_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> explained_;
  std::map<std::size_t, std::size_t> sym_of_;
  std::map<std::size_t, std::pair<Lin, BigInt>> lin_memo_;
  std::optional<std::size_t> zero_;
};

std::size_t Solver::intern(const AlgTerm& t, const SortExpr& s) {
  if (has_flexible(s))
    throw KernelError(ErrorKind::SortMismatch, "unresolved sort " + s.to_string());
  std::string key = atom_key(t) + "@" + s.to_string();
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  Node n{t, s, {}};
  if (t.is_var) {
    if (t.sort != s)
      throw KernelError(ErrorKind::SortMismatch,
                        t.name + " has sort " + t.sort.to_string() + ", not " + s.to_string());
  } else {
    const SymbolDecl* d = sig_.find(t.name);
    if (!d || d->args.size() != t.args.size())
      throw KernelError(ErrorKind::SortMismatch, "unknown symbol or arity: " + t.to_string());
    SortSubst inst;
    for (const auto& p : d->params) inst[p] = SortExpr::variable("?" + p);
    SortSubst xi;
    if (!unify(subst_sort(inst, d->result), s, xi))
      throw KernelError(ErrorKind::SortMismatch, t.to_string() + " is not of sort " + s.to_string());
    for (std::size_t i = 0; i < t.args.size(); ++i)
      n.kids.push_back(intern(t.args[i], subst_sort(xi, subst_sort(inst, d->args[i]))));
  }
  std::size_t id = nodes_.size();
  nodes_.push_back(std::move(n));
  index_.emplace(key, id);
  uf_.push_back(id);
  ctor_rep_.push_back(is_ctor_app(id) ? std::optional<std::size_t>(id) : std::nullopt);
  forest_.emplace_back();
  if (is_nat(id) && !zero_) zero_ = intern(AlgTerm::app("0"), SortExpr::nat());
  return id;
}

void Solver::assume(std::size_t i, const AlgEquation& e) {
  std::size_t a = intern(e.lhs, e.sort);
  std::size_t b = intern(e.rhs, e.sort);
  Step s = conclusion(StepKind::Hyp, a, b);
  s.index = i;
  merge(a, b, add(std::move(s)));
}

void Solver::reroot(std::size_t x) {
  std::optional<std::size_t> prev;
  Edge carried;
  std::optional<std::size_t> cur = x;
  while (cur) {
    Edge e = forest_[*cur];
    if (prev)
      forest_[*cur] = Edge{prev, carried.step, !carried.flipped};
    else
      forest_[*cur] = Edge{};
    prev = cur;
    carried = e;
    cur = e.parent;
  }
}

// Step concluding child = parent for a forest edge.
std::size_t Solver::oriented(const Edge& e) {
  if (!e.flipped) return e.step;
  if (auto it = sym_of_.find(e.step); it != sym_of_.end()) return it->second;
  Step s;
  s.kind = StepKind::Sym;
  s.lhs = steps_[e.step].rhs;
  s.rhs = steps_[e.step].lhs;
  s.sort = steps_[e.step].sort;
  s.refs = {e.step};
  std::size_t id = add(std::move(s));
  sym_of_[e.step] = id;
  return id;
}

std::size_t Solver::explain(std::size_t a, std::size_t b) {
  if (auto it = explained_.find({a, b}); it != explained_.end()) return it->second;
  std::size_t result;
  if (a == b) {
    result = add(conclusion(StepKind::Refl, a, a));
  } else {
    std::vector<std::size_t> up_a{a}, up_b{b};
    for (auto p = forest_[a].parent; p; p = forest_[*p].parent) up_a.push_back(*p);
    for (auto p = forest_[b].parent; p; p = forest_[*p].parent) up_b.push_back(*p);
    std::set<std::size_t> on_a(up_a.begin(), up_a.end());
    std::size_t lca = 0;
    std::size_t kb = 0;
    for (; kb < up_b.size(); ++kb)
      if (on_a.count(up_b[kb])) {
        lca = up_b[kb];
        break;
      }
    // a = ... = lca, then lca = ... = b.
    std::vector<std::size_t> chain;
    for (std::size_t k = 0; up_a[k] != lca; ++k) chain.push_back(oriented(forest_[up_a[k]]));
    for (std::size_t k = kb; k-- > 0;) {
      Edge e = forest_[up_b[k]];
      e.flipped = !e.flipped;
      chain.push_back(oriented(e));
    }
    result = chain[0];
    for (std::size_t k = 1; k < chain.size(); ++k) {
      Step s;
      s.kind = StepKind::Trans;
      s.lhs = steps_[result].lhs;
      s.rhs = steps_[chain[k]].rhs;
      s.sort = steps_[result].sort;
      s.refs = {result, chain[k]};
      result = add(std::move(s));
    }
  }
  explained_[{a, b}] = result;
  return result;
}

void Solver::union_classes(std::size_t a, std::size_t b, std::size_t step) {
  reroot(a);
  forest_[a] = Edge{b, step, false};
  if (is_nat(a)) nat_edges_.emplace_back(a, b, step);
  std::size_t ra = find(a), rb = find(b);
  uf_[ra] = rb;
  auto ca = ctor_rep_[ra], cb = ctor_rep_[rb];
  if (!ca) return;
  if (!cb) {
    ctor_rep_[rb] = ca;
    return;
  }
  const Node& na = nodes_[*ca];
  const Node& nb = nodes_[*cb];
  std::size_t e = explain(*ca, *cb);
  if (na.term.name != nb.term.name) {
    Step s;
    s.kind = StepKind::Clash;
    AlgEquation f = falsum();
    s.lhs = f.lhs;
    s.rhs = f.rhs;
    s.sort = f.sort;
    s.refs = {e};
    throw Unsat{add(std::move(s))};
  }
  for (std::size_t k = 0; k < na.kids.size(); ++k) {
    std::size_t x = na.kids[k], y = nb.kids[k];
    if (find(x) == find(y)) continue;
    Step s = conclusion(StepKind::Inject, x, y);
    s.symbol = na.term.name;
    s.index = k;
    s.refs = {e};
    merge(x, y, add(std::move(s)));
  }
}

void Solver::congruence() {
  std::map<std::string, std::size_t> table;
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    const Node& nd = nodes_[n];
    if (nd.term.is_var || nd.kids.empty()) continue;
    std::string key = nd.term.name + "@" + nd.sort.to_string();
    for (std::size_t k : nd.kids) key += "," + std::to_string(find(k));
    auto [it, fresh] = table.emplace(key, n);
    if (fresh || find(it->second) == find(n)) continue;
    std::size_t m = it->second;
    Step s = conclusion(StepKind::Congr, m, n);
    s.symbol = nd.term.name;
    for (std::size_t k = 0; k < nd.kids.size(); ++k) {
      std::size_t x = nodes_[m].kids[k], y = nd.kids[k];
      s.args.push_back(x == y ? std::nullopt : std::optional<std::size_t>(explain(x, y)));
    }
    merge(m, n, add(std::move(s)));
    return;
  }
}

void Solver::process() {
  for (;;) {
    while (!pending_.empty()) {
      auto [a, b, s] = pending_.front();
      pending_.pop_front();
      if (find(a) != find(b)) union_classes(a, b, s);
    }
    congruence();
    if (pending_.empty()) return;
  }
}

const Lin& Solver::lin(std::size_t n, BigInt& constant) {
  auto it = lin_memo_.find(n);
  if (it == lin_memo_.end()) {
    const Node& nd = nodes_[n];
    Lin f;
    BigInt c = 0;
    if (!nd.term.is_var && nd.term.name == "0") {
    } else if (!nd.term.is_var && nd.term.name == "S") {
      BigInt k;
      f = lin(nd.kids[0], k);
      c = k + 1;
    } else if (!nd.term.is_var && nd.term.name == "+") {
      BigInt k1, k2;
      f = lin(nd.kids[0], k1);
      for (const auto& [a, v] : lin(nd.kids[1], k2)) {
        f[a] += v;
        if (f[a] == 0) f.erase(a);
      }
      c = k1 + k2;
    } else {
      f[n] = 1;
    }
    it = lin_memo_.emplace(n, std::make_pair(std::move(f), c)).first;
  }
  constant = it->second.second;
  return it->second.first;
}

std::vector<AffineRow> Solver::rows() {
  std::vector<AffineRow> out;
  for (const auto& [a, b, s] : nat_edges_) {
    AffineRow r;
    BigInt ca, cb;
    r.coef = lin(a, ca);
    for (const auto& [x, v] : lin(b, cb)) {
      r.coef[x] -= v;
      if (r.coef[x] == 0) r.coef.erase(x);
    }
    r.constant = ca - cb;
    r.step = s;
    if (!r.coef.empty() || r.constant != 0) out.push_back(std::move(r));
  }
  return out;
}

std::vector<Coefficient> Solver::combination(const std::vector<AffineRow>& rs,
                                             const std::vector<Rational>& y, BigInt& scale) {
  scale = common_denominator(y);
  std::vector<Coefficient> out;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (y[i] == 0) continue;
    Rational v = y[i] * Rational(scale);
    out.emplace_back(to_int64(boost::multiprecision::numerator(v)), rs[i].step);
  }
  return out;
}

// One round of ℕ reasoning; true iff it queued new equalities.
bool Solver::arithmetic() {
  std::vector<AffineRow> rs = rows();
  std::vector<std::size_t> atoms;
  {
    std::set<std::size_t> seen;
    for (const auto& r : rs)
      for (const auto& [a, v] : r.coef) seen.insert(a);
    atoms.assign(seen.begin(), seen.end());
  }
  const std::size_t m = rs.size();
  AlgEquation bottom = falsum();

  // y with yA >= low and y.c = target (y.c <= target when `at_most`), as
  // M z = r over z = (y+, y-, slack).
  auto farkas = [&](const std::vector<Rational>& low, const Rational& target,
                    bool at_most = false) -> std::optional<std::vector<Rational>> {
    const std::size_t n = atoms.size();
    RatMatrix mat(n + 1, std::vector<Rational>(2 * m + n + 1, 0));
    if (at_most) mat[n][2 * m + n] = 1;
    std::vector<Rational> rhs(n + 1, 0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        auto it = rs[i].coef.find(atoms[j]);
        if (it == rs[i].coef.end()) continue;
        mat[j][i] = Rational(it->second);
        mat[j][m + i] = -Rational(it->second);
      }
      mat[j][2 * m + j] = -1;
      rhs[j] = low[j];
    }
    for (std::size_t i = 0; i < m; ++i) {
      mat[n][i] = Rational(rs[i].constant);
      mat[n][m + i] = -Rational(rs[i].constant);
    }
    rhs[n] = target;
    auto z = nonneg_solution(mat, rhs);
    if (!z) return std::nullopt;
    std::vector<Rational> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = (*z)[i] - (*z)[m + i];
    return y;
  };

  if (m > 0) {
    if (auto y = farkas(std::vector<Rational>(atoms.size(), 0), 1)) {
      Step s;
      s.kind = StepKind::Clash;
      s.lhs = bottom.lhs;
      s.rhs = bottom.rhs;
      s.sort = bottom.sort;
      BigInt scale;
      s.combination = combination(rs, *y, scale);
      throw Unsat{add(std::move(s))};
    }
    IntMatrix a(m, std::vector<BigInt>(atoms.size(), 0));
    std::vector<BigInt> b(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < atoms.size(); ++j) {
        auto it = rs[i].coef.find(atoms[j]);
        if (it != rs[i].coef.end()) a[i][j] = it->second;
      }
      b[i] = -rs[i].constant;
    }
    if (auto y = integer_infeasibility(a, b)) {
      Step s;
      s.kind = StepKind::Clash;
      s.lhs = bottom.lhs;
      s.rhs = bottom.rhs;
      s.sort = bottom.sort;
      BigInt scale;
      s.combination = combination(rs, *y, scale);
      throw Unsat{add(std::move(s))};
    }
  }

  bool changed = false;
  std::set<std::size_t> settled;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    std::size_t atom = atoms[j];
    if (settled.count(atom) || find(atom) == find(*zero_)) continue;
    std::vector<Rational> low(atoms.size(), 0);
    low[j] = 1;
    auto y = farkas(low, 0);
    if (!y) continue;
    BigInt scale;
    std::vector<Coefficient> combo = combination(rs, *y, scale);
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      Rational f = 0;
      for (std::size_t i = 0; i < m; ++i) {
        auto it = rs[i].coef.find(atoms[k]);
        if (it != rs[i].coef.end()) f += (*y)[i] * Rational(it->second);
      }
      if (f <= 0 || settled.count(atoms[k])) continue;
      settled.insert(atoms[k]);
      if (find(atoms[k]) == find(*zero_)) continue;
      Step s = conclusion(StepKind::NonNeg, atoms[k], *zero_);
      s.combination = combo;
      merge(atoms[k], *zero_, add(std::move(s)));
      changed = true;
    }
  }
  if (changed) return true;

  // Equality propagation: reduce every nat node modulo the row space.
  struct Reduced {
    std::map<std::size_t, Rational> coef;
    Rational constant;
    std::vector<Rational> combo;  // over rs
  };
  std::vector<Reduced> basis;
  std::vector<std::size_t> pivots;
  auto reduce = [&](Reduced r) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      auto it = r.coef.find(pivots[k]);
      if (it == r.coef.end()) continue;
      Rational f = it->second;
      for (const auto& [x, v] : basis[k].coef) {
        r.coef[x] -= f * v;
        if (r.coef[x] == 0) r.coef.erase(x);
      }
      r.constant -= f * basis[k].constant;
      for (std::size_t i = 0; i < m; ++i) r.combo[i] -= f * basis[k].combo[i];
    }
    return r;
  };
  for (std::size_t i = 0; i < m; ++i) {
    Reduced r;
    for (const auto& [x, v] : rs[i].coef) r.coef[x] = Rational(v);
    r.constant = Rational(rs[i].constant);
    r.combo.assign(m, 0);
    r.combo[i] = 1;
    r = reduce(std::move(r));
    if (r.coef.empty()) continue;
    std::size_t p = r.coef.begin()->first;
    Rational f = r.coef.begin()->second;
    for (auto& [x, v] : r.coef) v /= f;
    r.constant /= f;
    for (auto& v : r.combo) v /= f;
    for (auto& other : basis) {
      auto it = other.coef.find(p);
      if (it == other.coef.end()) continue;
      Rational g = it->second;
      for (const auto& [x, v] : r.coef) {
        other.coef[x] -= g * v;
        if (other.coef[x] == 0) other.coef.erase(x);
      }
      other.constant -= g * r.constant;
      for (std::size_t k = 0; k < m; ++k) other.combo[k] -= g * r.combo[k];
    }
    basis.push_back(std::move(r));
    pivots.push_back(p);
  }

  std::map<std::string, std::pair<std::size_t, Reduced>> groups;
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    if (!is_nat(n)) continue;
    Reduced r;
    BigInt c;
    for (const auto& [x, v] : lin(n, c)) r.coef[x] = Rational(v);
    r.constant = Rational(c);
    r.combo.assign(m, 0);
    r = reduce(std::move(r));
    std::string key = r.constant.str();
    for (const auto& [x, v] : r.coef) key += ";" + std::to_string(x) + ":" + v.str();
    auto it = groups.find(key);
    if (it == groups.end()) {
      groups.emplace(key, std::make_pair(n, std::move(r)));
      continue;
    }
    std::size_t u = it->second.first;
    if (find(u) == find(n)) continue;
    // reduce(n) = lin(n) + combo.rows, so lin(u) - lin(n) = (combo_n - combo_u).rows.
    std::vector<Rational> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = it->second.second.combo[i] - r.combo[i];
    for (auto& v : y) v = -v;
    Step s = conclusion(StepKind::LinComb, u, n);
    BigInt scale;
    s.combination = combination(rs, y, scale);
    s.scale = to_int64(scale);
    merge(u, n, add(std::move(s)));
    changed = true;
  }
  if (changed || m == 0) return changed;
  return enumerate(rs, atoms, farkas, [&](const Lin& f, const BigInt& c) {
    Reduced r;
    for (const auto& [x, v] : f) r.coef[x] = Rational(v);
    r.constant = Rational(-c);
    r.combo.assign(m, 0);
    return !reduce(std::move(r)).coef.empty();
  });
}

// Sum of atoms with multiplicity plus k, as a term.
AlgTerm Solver::affine_term(const Lin& f, const BigInt& k) {
  std::optional<AlgTerm> t;
  for (const auto& [x, v] : f)
    for (BigInt i = 0; i < v; ++i)
      t = t ? AlgTerm::app("+", {*t, nodes_[x].term}) : nodes_[x].term;
  AlgTerm out = t ? *t : AlgTerm::app("0");
  for (BigInt i = 0; i < k; ++i) out = AlgTerm::app("S", {out});
  return out;
}

// Atoms bounded by the rows range over a finite box; walk it and keep the
// points where the rest of the system has an integer solution. No point
// means unsat; otherwise each equation of their affine hull is derived.
bool Solver::enumerate(const std::vector<AffineRow>& rs, const std::vector<std::size_t>& atoms,
                       const Farkas& farkas, const std::function<bool(const Lin&, const BigInt&)>& fresh) {
  const std::size_t m = rs.size();
  std::vector<Rational> total(m, 0);
  bool any = false;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    std::vector<Rational> low(atoms.size(), 0);
    low[j] = 1;
    auto y = farkas(low, 0, true);
    if (!y) continue;
    any = true;
    for (std::size_t i = 0; i < m; ++i) total[i] += (*y)[i];
  }
  if (!any) return false;
  BigInt scale;
  std::vector<Coefficient> combo = combination(rs, total, scale);
  Lin bound;
  BigInt bound_constant = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (total[i] == 0) continue;
    BigInt c = boost::multiprecision::numerator(total[i] * Rational(scale));
    for (const auto& [x, v] : rs[i].coef) {
      bound[x] += c * v;
      if (bound[x] == 0) bound.erase(x);
    }
    bound_constant += c * rs[i].constant;
  }
  std::vector<std::size_t> box;
  std::vector<BigInt> limit;
  BigInt size = 1;
  for (const auto& [x, v] : bound) {
    if (v <= 0) return false;
    box.push_back(x);
    limit.push_back(-bound_constant / v);
    size *= limit.back() + 1;
    if (size > kSolverEnumLimit) return false;
  }
  if (box.empty() || bound_constant > 0) return false;

  std::map<std::size_t, BigInt> point;
  for (std::size_t x : box) point[x] = 0;
  std::vector<std::vector<BigInt>> feasible;
  for (;;) {
    std::vector<std::pair<std::map<std::string, BigInt>, BigInt>> residual;
    bool dead = false;
    for (const auto& r : rs) {
      std::map<std::string, BigInt> rest;
      BigInt k = r.constant;
      for (const auto& [x, v] : r.coef) {
        auto it = point.find(x);
        if (it != point.end())
          k += v * it->second;
        else
          rest[std::to_string(x)] = v;
      }
      if (rest.empty()) {
        if (k != 0) {
          dead = true;
          break;
        }
      } else {
        residual.emplace_back(std::move(rest), -k);
      }
    }
    if (!dead && integer_solvable(residual)) {
      std::vector<BigInt> p;
      for (std::size_t x : box) p.push_back(point[x]);
      feasible.push_back(std::move(p));
    }
    std::size_t j = 0;
    for (; j < box.size(); ++j) {
      BigInt& v = point[box[j]];
      if (v < limit[j]) {
        ++v;
        break;
      }
      v = 0;
    }
    if (j == box.size()) break;
  }

  std::vector<std::size_t> refs;
  for (const auto& r : rs) refs.push_back(r.step);
  if (feasible.empty()) {
    AlgEquation bottom = falsum();
    Step s;
    s.kind = StepKind::Enum;
    s.lhs = bottom.lhs;
    s.rhs = bottom.rhs;
    s.sort = bottom.sort;
    s.refs = refs;
    s.combination = combo;
    throw Unsat{add(std::move(s))};
  }

  // Directions spanned by the feasible points, in echelon form.
  const std::size_t n = box.size();
  std::vector<std::vector<Rational>> span;
  std::vector<std::size_t> lead;
  for (std::size_t k = 1; k < feasible.size() && span.size() < n; ++k) {
    std::vector<Rational> d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = Rational(feasible[k][j] - feasible[0][j]);
    for (std::size_t b = 0; b < span.size(); ++b) {
      Rational f = d[lead[b]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) d[j] -= f * span[b][j];
    }
    std::size_t l = 0;
    while (l < n && d[l] == 0) ++l;
    if (l == n) continue;
    Rational f = d[l];
    for (auto& v : d) v /= f;
    for (auto& row : span) {
      Rational g = row[l];
      if (g == 0) continue;
      for (std::size_t j = 0; j < n; ++j) row[j] -= g * d[j];
    }
    span.push_back(std::move(d));
    lead.push_back(l);
  }
  // Normals: one per coordinate not leading a direction.
  bool changed = false;
  for (std::size_t free = 0; free < n; ++free) {
    if (std::find(lead.begin(), lead.end(), free) != lead.end()) continue;
    std::vector<Rational> w(n, 0);
    w[free] = 1;
    for (std::size_t b = 0; b < span.size(); ++b) w[lead[b]] = -span[b][free];
    BigInt den = common_denominator(w);
    Lin pos, neg;
    BigInt rhs = 0;
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = w[j] * Rational(den);
      BigInt iv = boost::multiprecision::numerator(v);
      if (iv > 0) pos[box[j]] = iv;
      if (iv < 0) neg[box[j]] = -iv;
      rhs += iv * feasible[0][j];
    }
    Lin whole = pos;
    for (const auto& [x, v] : neg) whole[x] = -v;
    if (!fresh(whole, rhs)) continue;
    AlgTerm l = affine_term(pos, rhs < 0 ? BigInt(-rhs) : BigInt(0));
    AlgTerm r = affine_term(neg, rhs > 0 ? rhs : BigInt(0));
    std::size_t a = intern(l, SortExpr::nat());
    std::size_t b = intern(r, SortExpr::nat());
    if (find(a) == find(b)) continue;
    Step s = conclusion(StepKind::Enum, a, b);
    s.refs = refs;
    s.combination = combo;
    merge(a, b, add(std::move(s)));
    changed = true;
  }
  return changed;
}

void Solver::saturate() {
  do {
    process();
  } while (arithmetic());
}

}  // namespace

SolverResult entails(const Signature& sig, const std::vector<AlgEquation>& hyps,
                     const AlgEquation& goal) {
  Solver s(sig);
  std::size_t l = s.intern(goal.lhs, goal.sort);
  std::size_t r = s.intern(goal.rhs, goal.sort);
  for (std::size_t i = 0; i < hyps.size(); ++i) s.assume(i, hyps[i]);
  std::size_t last;
  try {
    s.saturate();
    if (!s.same_class(l, r)) return {};
    last = s.explain(l, r);
  } catch (const Unsat& u) {
    Step a;
    a.kind = StepKind::Absurd;
    a.lhs = goal.lhs;
    a.rhs = goal.rhs;
    a.sort = goal.sort;
    a.refs = {u.step};
    last = s.add(std::move(a));
  }
  ProofTrace all{s.steps()};
  return {true, prune(all, last)};
}

SolverResult is_unsat(const Signature& sig, const std::vector<AlgEquation>& hyps) {
  Solver s(sig);
  try {
    for (std::size_t i = 0; i < hyps.size(); ++i) s.assume(i, hyps[i]);
    s.saturate();
  } catch (const Unsat& u) {
    ProofTrace all{s.steps()};
    return {true, prune(all, u.step)};
  }
  return {};
}

}  // namespace ccic
