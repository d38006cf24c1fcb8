#include "suites.hpp"

#include <set>

#include "ccic/conversion.hpp"
#include "ccic/reduction.hpp"
#include "ccic/solver.hpp"
#include "ccic/syntax.hpp"
#include "ccic/typer.hpp"
#include "gen.hpp"

namespace suites {

using namespace ccic;

namespace {

std::string show(const AlgEquation& e) { return e.lhs.to_string() + " = " + e.rhs.to_string(); }

std::string show(const std::vector<AlgEquation>& hyps, const AlgEquation& goal) {
  std::string s;
  for (const auto& h : hyps) s += show(h) + ", ";
  return s + "|- " + show(goal);
}

// Kernel context with the query's variables and r-annotated hypotheses.
Context query_context(const Signature& sig, const std::vector<AlgEquation>& hyps,
                      const AlgEquation& goal) {
  std::map<std::string, SortExpr> vars;
  std::function<void(const AlgTerm&)> collect = [&](const AlgTerm& t) {
    if (t.is_var) vars.emplace(t.name, t.sort);
    for (const auto& a : t.args) collect(a);
  };
  for (const auto& h : hyps) {
    collect(h.lhs);
    collect(h.rhs);
  }
  collect(goal.lhs);
  collect(goal.rhs);
  Context g;
  for (const auto& [x, s] : vars) g.push(x, Annot::U, embed_sort(s));
  for (std::size_t i = 0; i < hyps.size(); ++i)
    g.push("p" + std::to_string(i), Annot::R,
           mk_eqn(embed_term(sig, hyps[i].lhs, hyps[i].sort), embed_term(sig, hyps[i].rhs, hyps[i].sort),
                  embed_sort(hyps[i].sort)));
  return g;
}

}  // namespace

Result solver_vs_oracle(int count, std::uint64_t seed) {
  Result r;
  gen::Rng rng(seed);
  Signature sig;
  for (int i = 0; i < count; ++i) {
    gen::LinearQuery q = gen::linear_query(rng);
    ++r.total;
    bool expect = oracle::nat_entails(q.vars, q.hyps, q.goal);
    SolverResult got = entails(sig, q.alg_hyps, q.alg_goal);
    if (got.holds != expect) {
      r.fail(show(q.alg_hyps, q.alg_goal) + ": solver " + (got.holds ? "true" : "false") +
             ", oracle " + (expect ? "true" : "false"));
      continue;
    }
    if (got.holds) {
      ReplayResult rep = replay(sig, q.alg_hyps, q.alg_goal, got.trace);
      if (!rep.ok) {
        r.fail(show(q.alg_hyps, q.alg_goal) + ": trace does not replay: " + rep.message);
        continue;
      }
    }
    ++r.passed;
  }
  return r;
}

Result true_answers_survive(int count, std::uint64_t seed) {
  Result r;
  gen::Rng rng(seed);
  Signature sig;
  oracle::SearchSpace space;
  int attempts = 0;
  while (r.total < count && attempts < 200 * count) {
    ++attempts;
    gen::MixedQuery q = gen::mixed_query(rng);
    if (!entails(sig, q.alg_hyps, q.alg_goal).holds) continue;
    ++r.total;
    std::map<std::string, oracle::Value> cex;
    if (oracle::find_counterexample(q.hyps, q.goal, space, &cex)) {
      std::string w;
      for (const auto& [x, v] : cex) {
        w += " " + x + "=";
        if (!v.is_list) {
          w += v.num.str();
        } else {
          w += "[";
          for (const auto& i : v.items) w += i.str() + ";";
          w += "]";
        }
      }
      r.fail(show(q.alg_hyps, q.alg_goal) + ": counterexample" + w);
      continue;
    }
    ++r.passed;
  }
  return r;
}

Result conversion_laws(int count, std::uint64_t seed) {
  Result r;
  gen::Rng rng(seed);
  Signature sig;
  Context g = gen::base_context();
  auto conv = [&](const Term& a, const Term& b) { return convertible(sig, g, a, b).ok; };
  for (int i = 0; i < count; ++i) {
    gen::TypedTerm a = gen::typed_term(rng, 4);
    gen::TypedTerm b = gen::typed_term(rng, 4);
    ++r.total;
    try {
      infer(sig, g, a.term);
      infer(sig, g, b.term);
      if (!conv(a.term, a.term)) {
        r.fail("not reflexive: " + print(a.term));
        continue;
      }
      // Chain a ~ a' ~ nf(a) through a one-step reduct.
      auto one = step(a.term);
      Term mid = one ? *one : a.term;
      Term nf = normalize(a.term);
      if (!conv(a.term, mid) || !conv(mid, nf) || !conv(a.term, nf)) {
        r.fail("reduction chain not convertible: " + print(a.term));
        continue;
      }
      if (!conv(nf, mid) || !conv(nf, a.term)) {
        r.fail("not symmetric on a reduction chain: " + print(a.term));
        continue;
      }
      if (alpha_eq(a.type, b.type) && conv(a.term, b.term) != conv(b.term, a.term)) {
        r.fail("not symmetric: " + print(a.term) + " vs " + print(b.term));
        continue;
      }
    } catch (const KernelError& e) {
      r.fail(std::string("error on generated term: ") + e.what());
      continue;
    }
    ++r.passed;
  }
  return r;
}

Result subject_reduction(int count, std::uint64_t seed) {
  Result r;
  gen::Rng rng(seed);
  Signature sig;
  Context g = gen::base_context();
  for (int i = 0; i < count; ++i) {
    gen::TypedTerm t = gen::reducible_term(rng, 4);
    ++r.total;
    std::string at = print(t.term);
    try {
      check(sig, g, t.term, t.type);
      Term cur = t.term;
      int steps = 0;
      while (auto next = step(cur)) {
        cur = *next;
        at = print(cur);
        check(sig, g, cur, t.type);
        if (++steps > 10000) throw std::runtime_error("no normal form");
      }
      if (steps == 0) {
        r.fail("generated term has no redex: " + print(t.term));
        continue;
      }
    } catch (const KernelError& e) {
      r.fail("at " + at + ": " + e.what());
      continue;
    }
    ++r.passed;
  }
  return r;
}

Result class_preservation(int count, std::uint64_t seed) {
  Result r;
  gen::Rng rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Term P = mk_fvar("P", VarLevel::Predicate);
  for (int i = 0; i < count; ++i) {
    ++r.total;
    Term t;
    std::string x;
    VarLevel level = VarLevel::Object;
    Term u;
    gen::TypedTerm a = gen::typed_term(rng, 3);
    gen::TypedTerm b = gen::typed_term(rng, 3);
    Term nat_arg = gen::typed_term(rng, 2).term;
    switch (pick(0, 3)) {
      case 0:
        // Object term, object variable.
        t = a.term;
        u = b.term;
        break;
      case 1:
        // Predicate over an object: P a, a = a', forall y, P y -> P a.
        t = pick(0, 1) ? mk_app(P, nat_arg)
                       : mk_eqn(a.term, a.term, a.type);
        t = mk_prod("y", Annot::U, mk_nat(), mk_arrow(mk_app(P, mk_bvar(0)), t));
        u = b.term;
        break;
      case 2:
        // Kind mentioning an object: nat -> word n -> Prop.
        t = mk_arrow(mk_nat(), mk_arrow(mk_word(mk_fvar("n", VarLevel::Object)), mk_prop()));
        u = b.term;
        break;
      default:
        // Predicate variable P replaced by a predicate λy. y = n.
        t = mk_arrow(mk_app(P, nat_arg), mk_app(P, mk_fvar("m", VarLevel::Object)));
        x = "P";
        level = VarLevel::Predicate;
        u = mk_abs("y", Annot::U, mk_nat(),
                   mk_eqn(mk_bvar(0), mk_fvar("n", VarLevel::Object), mk_nat()));
        break;
    }
    if (x.empty()) {
      static const char* vars[] = {"n", "m", "l", "f"};
      std::vector<std::string> present;
      for (const char* v : vars)
        if (occurs_free(v, t)) present.push_back(v);
      if (present.empty()) present.push_back("n");
      x = present[pick(0, static_cast<int>(present.size()) - 1)];
    }
    auto before = class_of(t);
    if (!before || !class_of(u)) {
      r.fail("ill-constructed generated case: " + print(t));
      continue;
    }
    try {
      Term s = substitute(t, x, level, u);
      auto after = class_of(s);
      if (after != before) {
        r.fail("class changed: " + print(t) + " [" + print(u) + "/" + x + "]");
        continue;
      }
    } catch (const KernelError& e) {
      r.fail(std::string("substitution rejected: ") + e.what());
      continue;
    }
    ++r.passed;
  }
  return r;
}

std::vector<Certificate> certificate_corpus(int count, std::uint64_t seed) {
  std::vector<Certificate> out;
  gen::Rng rng(seed);
  Signature sig;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count && attempts < 100 * count) {
    ++attempts;
    std::vector<AlgEquation> hyps;
    AlgEquation goal;
    if (attempts % 2) {
      gen::LinearQuery q = gen::linear_query(rng);
      hyps = q.alg_hyps;
      goal = q.alg_goal;
    } else {
      gen::MixedQuery q = gen::mixed_query(rng);
      hyps = q.alg_hyps;
      goal = q.alg_goal;
    }
    if (!entails(sig, hyps, goal).holds) continue;
    Context g = query_context(sig, hyps, goal);
    ConversionResult c = convertible(sig, g, embed_term(sig, goal.lhs, goal.sort),
                                     embed_term(sig, goal.rhs, goal.sort));
    for (auto& cert : c.certificates) out.push_back(std::move(cert));
  }
  return out;
}

}  // namespace suites
