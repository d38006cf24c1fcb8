#include "ccic/trace.hpp"

#include <functional>
#include <set>

namespace ccic {

LinearForm& LinearForm::add(const LinearForm& o, const BigInt& k) {
  for (const auto& [a, c] : o.coef) {
    BigInt v = coef[a] + k * c;
    if (v == 0)
      coef.erase(a);
    else
      coef[a] = v;
  }
  constant += k * o.constant;
  return *this;
}

std::string atom_key(const AlgTerm& t) {
  if (t.is_var) return t.name + ":" + t.sort.to_string();
  std::string s = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) s += (i ? "," : "") + atom_key(t.args[i]);
  return s + ")";
}

LinearForm linearize(const AlgTerm& t) {
  LinearForm f;
  if (!t.is_var) {
    if (t.name == "0" && t.args.empty()) return f;
    if (t.name == "S" && t.args.size() == 1) {
      f = linearize(t.args[0]);
      f.constant += 1;
      return f;
    }
    if (t.name == "+" && t.args.size() == 2) {
      f = linearize(t.args[0]);
      f.add(linearize(t.args[1]));
      return f;
    }
  }
  f.coef[atom_key(t)] = 1;
  return f;
}

const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::Hyp: return "hyp";
    case StepKind::Refl: return "refl";
    case StepKind::Sym: return "sym";
    case StepKind::Trans: return "trans";
    case StepKind::Congr: return "congr";
    case StepKind::Inject: return "inject";
    case StepKind::LinComb: return "lincomb";
    case StepKind::NonNeg: return "nonneg";
    case StepKind::Clash: return "clash";
    case StepKind::Absurd: return "absurd";
    case StepKind::Enum: return "enum";
  }
  return "?";
}

std::optional<StepKind> step_kind_from_string(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(StepKind::Enum); ++i)
    if (s == to_string(static_cast<StepKind>(i))) return static_cast<StepKind>(i);
  return std::nullopt;
}

std::vector<std::size_t> Step::premises() const {
  std::vector<std::size_t> out = refs;
  for (const auto& a : args)
    if (a) out.push_back(*a);
  for (const auto& [c, p] : combination) out.push_back(p);
  return out;
}

AlgEquation falsum() {
  return {AlgTerm::app("0"), AlgTerm::app("S", {AlgTerm::app("0")}), SortExpr::nat()};
}

namespace {

struct Invalid {
  std::string why;
};

bool same(const Step& s, const AlgEquation& e) {
  return s.lhs == e.lhs && s.rhs == e.rhs && s.sort == e.sort;
}

bool ground_sort(const SortExpr& s) {
  for (const auto& v : sort_vars(s))
    if (!v.empty() && v[0] == '?') return false;
  return true;
}

bool is_nat(const SortExpr& s) { return s.kind == SortExpr::Kind::Nat; }

bool is_constructor_app(const AlgTerm& t) {
  return !t.is_var && Signature::constructor_of(t.name).has_value();
}

// Sum of c_i * (lin(lhs_i) - lin(rhs_i)).
LinearForm combine(const std::vector<Step>& steps, const std::vector<Coefficient>& combo) {
  LinearForm f;
  for (const auto& [c, p] : combo) {
    const Step& q = steps[p];
    if (!is_nat(q.sort)) throw Invalid{"premise of arithmetic step is not a nat equation"};
    if (c == 0) throw Invalid{"zero coefficient"};
    LinearForm d = linearize(q.lhs);
    d.add(linearize(q.rhs), -1);
    f.add(d, c);
  }
  return f;
}

// Every point of the box cut out by `bound` (a combination with positive
// coefficients and nonpositive constant) at which `system` stays integer
// solvable in the remaining atoms.
void enumerate_box(const std::vector<Step>& steps, const Step& s, const LinearForm& bound,
                   const std::function<void(const std::map<std::string, BigInt>&)>& visit) {
  std::vector<std::string> atoms;
  std::vector<BigInt> limit;
  BigInt total = 1;
  for (const auto& [a, c] : bound.coef) {
    atoms.push_back(a);
    limit.push_back(-bound.constant / c);
    total *= limit.back() + 1;
    if (total > kEnumLimit) throw Invalid{"enumeration box too large"};
  }
  std::vector<LinearForm> system;
  for (std::size_t r : s.refs) {
    const Step& q = steps[r];
    if (!is_nat(q.sort)) throw Invalid{"enum premise is not a nat equation"};
    LinearForm d = linearize(q.lhs);
    d.add(linearize(q.rhs), -1);
    system.push_back(std::move(d));
  }
  std::map<std::string, BigInt> point;
  for (const auto& a : atoms) point[a] = 0;
  for (;;) {
    std::vector<std::pair<std::map<std::string, BigInt>, BigInt>> rows;
    bool dead = false;
    for (const auto& e : system) {
      std::map<std::string, BigInt> rest;
      BigInt k = e.constant;
      for (const auto& [a, c] : e.coef) {
        auto it = point.find(a);
        if (it != point.end())
          k += c * it->second;
        else
          rest[a] = c;
      }
      if (rest.empty()) {
        if (k != 0) dead = true;
      } else {
        rows.emplace_back(std::move(rest), -k);
      }
      if (dead) break;
    }
    if (!dead && integer_solvable(rows)) visit(point);
    std::size_t j = 0;
    for (; j < atoms.size(); ++j) {
      BigInt& v = point[atoms[j]];
      if (v < limit[j]) {
        ++v;
        break;
      }
      v = 0;
    }
    if (j == atoms.size()) return;
  }
}

void check_step(const Signature& sig, const std::vector<AlgEquation>& hyps,
                const std::vector<Step>& steps, std::size_t i) {
  const Step& s = steps[i];
  if (!ground_sort(s.sort)) throw Invalid{"unification variable in sort"};
  if (!has_sort(sig, s.lhs, s.sort) || !has_sort(sig, s.rhs, s.sort))
    throw Invalid{"conclusion is not sort-correct at " + s.sort.to_string()};
  for (std::size_t p : s.premises())
    if (p >= i) throw Invalid{"premise " + std::to_string(p) + " is not an earlier step"};

  auto need = [](bool c, const char* why) {
    if (!c) throw Invalid{why};
  };
  auto refs = [&](std::size_t n) { need(s.refs.size() == n, "wrong number of premises"); };
  auto no_extra = [&](bool refs_ok, bool args_ok, bool combo_ok) {
    need(refs_ok || s.refs.empty(), "unexpected premises");
    need(args_ok || s.args.empty(), "unexpected argument premises");
    need(combo_ok || s.combination.empty(), "unexpected combination");
  };

  switch (s.kind) {
    case StepKind::Hyp:
      no_extra(false, false, false);
      need(s.index < hyps.size(), "hypothesis index out of range");
      need(same(s, hyps[s.index]), "conclusion differs from the hypothesis");
      break;
    case StepKind::Refl:
      no_extra(false, false, false);
      need(s.lhs == s.rhs, "refl with distinct sides");
      break;
    case StepKind::Sym: {
      no_extra(true, false, false);
      refs(1);
      const Step& p = steps[s.refs[0]];
      need(p.lhs == s.rhs && p.rhs == s.lhs && p.sort == s.sort, "sym mismatch");
      break;
    }
    case StepKind::Trans: {
      no_extra(true, false, false);
      refs(2);
      const Step& p = steps[s.refs[0]];
      const Step& q = steps[s.refs[1]];
      need(p.sort == s.sort && q.sort == s.sort, "trans sort mismatch");
      need(p.rhs == q.lhs, "trans premises do not chain");
      need(p.lhs == s.lhs && q.rhs == s.rhs, "trans conclusion mismatch");
      break;
    }
    case StepKind::Congr: {
      no_extra(false, true, false);
      need(!s.lhs.is_var && !s.rhs.is_var, "congr over a variable");
      need(s.lhs.name == s.symbol && s.rhs.name == s.symbol, "congr symbol mismatch");
      need(s.lhs.args.size() == s.args.size() && s.rhs.args.size() == s.args.size(),
           "congr arity mismatch");
      for (std::size_t k = 0; k < s.args.size(); ++k) {
        if (!s.args[k]) {
          need(s.lhs.args[k] == s.rhs.args[k], "congr argument differs without premise");
          continue;
        }
        const Step& p = steps[*s.args[k]];
        need(p.lhs == s.lhs.args[k] && p.rhs == s.rhs.args[k], "congr premise mismatch");
        need(has_sort(sig, p.lhs, p.sort), "congr premise sort mismatch");
      }
      break;
    }
    case StepKind::Inject: {
      no_extra(true, false, false);
      refs(1);
      const Step& p = steps[s.refs[0]];
      need(s.symbol == "S" || s.symbol == "cons", "inject on a non-injective symbol");
      need(!p.lhs.is_var && !p.rhs.is_var && p.lhs.name == s.symbol && p.rhs.name == s.symbol,
           "inject premise is not a constructor equation");
      need(s.index < p.lhs.args.size() && p.lhs.args.size() == p.rhs.args.size(),
           "inject position out of range");
      need(p.lhs.args[s.index] == s.lhs && p.rhs.args[s.index] == s.rhs,
           "inject conclusion mismatch");
      SortExpr expect = p.sort;
      if (s.symbol == "cons" && s.index == 0) {
        need(p.sort.kind == SortExpr::Kind::List, "cons equation not at a list sort");
        expect = p.sort.args[0];
      }
      need(s.sort == expect, "inject sort mismatch");
      break;
    }
    case StepKind::LinComb: {
      no_extra(false, false, true);
      need(is_nat(s.sort), "lincomb conclusion is not nat");
      need(s.scale != 0, "zero scale");
      LinearForm goal = linearize(s.lhs);
      goal.add(linearize(s.rhs), -1);
      LinearForm scaled;
      scaled.add(goal, s.scale);
      need(scaled == combine(steps, s.combination), "affine identity does not hold");
      break;
    }
    case StepKind::NonNeg: {
      no_extra(false, false, true);
      need(!s.combination.empty(), "nonneg without premises");
      need(is_nat(s.sort), "nonneg conclusion is not nat");
      need(s.rhs == AlgTerm::app("0"), "nonneg conclusion must be atom = 0");
      LinearForm atom = linearize(s.lhs);
      need(atom.constant == 0 && atom.coef.size() == 1 && atom.coef.begin()->second == 1,
           "nonneg conclusion lhs is not an atom");
      LinearForm f = combine(steps, s.combination);
      need(f.constant == 0, "nonneg combination has a nonzero constant");
      int sign = 0;
      for (const auto& [a, c] : f.coef) {
        int cs = c > 0 ? 1 : -1;
        need(sign == 0 || sign == cs, "nonneg combination is not sign-definite");
        sign = cs;
      }
      need(f.coef.count(atom.coef.begin()->first) == 1, "atom does not occur in combination");
      break;
    }
    case StepKind::Clash: {
      need(same(s, falsum()), "clash must conclude 0 = S(0)");
      if (!s.refs.empty()) {
        no_extra(true, false, false);
        refs(1);
        const Step& p = steps[s.refs[0]];
        need(is_constructor_app(p.lhs) && is_constructor_app(p.rhs),
             "clash premise is not a constructor equation");
        auto a = Signature::constructor_of(p.lhs.name);
        auto b = Signature::constructor_of(p.rhs.name);
        need(a->first == b->first && a->second != b->second, "constructors do not clash");
      } else {
        no_extra(false, false, true);
        need(!s.combination.empty(), "clash without premises");
        LinearForm f = combine(steps, s.combination);
        bool bad = false;
        if (f.coef.empty()) {
          bad = f.constant != 0;
        } else {
          BigInt g = 0;
          bool pos = true, neg = true;
          for (const auto& [a, c] : f.coef) {
            g = gcd(g, abs(c));
            pos = pos && c > 0;
            neg = neg && c < 0;
          }
          if (f.constant % g != 0) bad = true;
          if (pos && f.constant > 0) bad = true;
          if (neg && f.constant < 0) bad = true;
        }
        need(bad, "arithmetic combination is satisfiable");
      }
      break;
    }
    case StepKind::Absurd: {
      no_extra(true, false, false);
      refs(1);
      need(same(steps[s.refs[0]], falsum()), "absurd premise is not 0 = S(0)");
      break;
    }
    case StepKind::Enum: {
      no_extra(true, false, true);
      need(is_nat(s.sort), "enum conclusion is not nat");
      need(!s.combination.empty(), "enum without a bounding combination");
      LinearForm bound = combine(steps, s.combination);
      need(!bound.coef.empty() && bound.constant <= 0, "bounding combination is not a box");
      for (const auto& [a, c] : bound.coef) need(c > 0, "bounding combination is not a box");
      LinearForm concl = linearize(s.lhs);
      concl.add(linearize(s.rhs), -1);
      for (const auto& [a, c] : concl.coef)
        need(bound.coef.count(a) == 1, "enum conclusion mentions an unbounded atom");
      enumerate_box(steps, s, bound, [&](const std::map<std::string, BigInt>& point) {
        BigInt v = concl.constant;
        for (const auto& [a, c] : concl.coef) v += c * point.at(a);
        need(v == 0, "enum conclusion fails at a feasible point");
      });
      break;
    }
  }
}

}  // namespace

ReplayResult replay(const Signature& sig, const std::vector<AlgEquation>& hyps,
                    const AlgEquation& goal, const ProofTrace& trace) {
  ReplayResult r;
  const auto& steps = trace.steps;
  if (steps.empty()) return {false, std::nullopt, "empty trace"};
  std::vector<bool> used(steps.size(), false);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    try {
      check_step(sig, hyps, steps, i);
    } catch (const Invalid& e) {
      return {false, i, e.why};
    }
    for (std::size_t p : steps[i].premises()) used[p] = true;
  }
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    if (!used[i]) return {false, i, "step is never used"};
  if (!same(steps.back(), goal))
    return {false, steps.size() - 1, "last step does not conclude the goal"};
  return r;
}

bool integer_solvable(
    const std::vector<std::pair<std::map<std::string, BigInt>, BigInt>>& rows) {
  std::map<std::string, std::size_t> col;
  for (const auto& [r, b] : rows)
    for (const auto& [a, c] : r) col.emplace(a, col.size());
  const std::size_t n = col.size();
  std::vector<std::vector<BigInt>> m(rows.size(), std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [a, c] : rows[i].first) m[i][col[a]] = c;
  // Column operations bring m to lower echelon form; solve y forward.
  std::vector<BigInt> y;
  std::size_t rank = 0;
  auto column_axpy = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    for (auto& row : m) row[dst] -= q * row[src];
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& row = m[i];
    for (;;) {
      std::size_t piv = n;
      std::size_t count = 0;
      for (std::size_t j = rank; j < n; ++j) {
        if (row[j] == 0) continue;
        ++count;
        if (piv == n || abs(row[j]) < abs(row[piv])) piv = j;
      }
      if (count <= 1) {
        if (piv != n && piv != rank)
          for (auto& r : m) std::swap(r[piv], r[rank]);
        break;
      }
      for (std::size_t j = rank; j < n; ++j)
        if (j != piv && row[j] != 0) column_axpy(j, piv, row[j] / row[piv]);
    }
    BigInt acc = rows[i].second;
    for (std::size_t k = 0; k < rank; ++k) acc -= row[k] * y[k];
    if (rank < n && row[rank] != 0) {
      if (acc % row[rank] != 0) return false;
      y.push_back(acc / row[rank]);
      ++rank;
    } else if (acc != 0) {
      return false;
    }
  }
  return true;
}

ProofTrace prune(const ProofTrace& trace, std::size_t last) {
  ProofTrace out;
  std::vector<bool> live(last + 1, false);
  live[last] = true;
  for (std::size_t i = last + 1; i-- > 0;)
    if (live[i])
      for (std::size_t p : trace.steps[i].premises()) live[p] = true;
  std::vector<std::size_t> remap(last + 1, 0);
  for (std::size_t i = 0; i <= last; ++i) {
    if (!live[i]) continue;
    remap[i] = out.steps.size();
    Step s = trace.steps[i];
    for (auto& p : s.refs) p = remap[p];
    for (auto& a : s.args)
      if (a) a = remap[*a];
    for (auto& c : s.combination) c.second = remap[c.second];
    out.steps.push_back(std::move(s));
  }
  return out;
}

}  // namespace ccic
