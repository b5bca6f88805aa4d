// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#include "ilp/search.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ilp {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Provable: return "Provable";
    case Outcome::NotProvable: return "NotProvable";
    case Outcome::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Backward search.
//
// Strategy: saturate with the invertible single-premise rules in keeping
// form (sequents only grow), then branch on the invertible two-premise
// rules, and at saturated open sequents try the modal rules, one candidate
// diagonal at a time.  For the modal rules the principal formulas are
// always the *maximal* usable set: every X|>Y on the left whose side
// sequent (Y => B) is provable.  A larger principal set only enlarges the
// succedent of the left premise, so the maximal choice dominates all
// others.
//
// Failures carry a `solid` flag: a solid failure was established without
// any path-repetition cutoff (and without running out of budget), so it is
// a fact about the sequent alone and may be memoized.
// ---------------------------------------------------------------------------

struct Res {
  Drv proof;   // null: failed
  bool solid;  // meaningful for failures
};

struct Prover {
  System sys;
  std::uint64_t budget;
  std::uint64_t expanded = 0;
  bool budget_hit = false;
  std::unordered_map<Sequent, Drv, SequentHash> proved;
  std::unordered_set<Sequent, SequentHash> refuted;
  std::vector<Sequent> path;

  Res prove_rec(const Sequent& s);
  Res expand(const Sequent& s);
  Res unary(Rule rule, const Sequent& conc, const Sequent& prem, Fml principal,
            int component);
  Res binary(Rule rule, const Sequent& conc, const Sequent& p1, const Sequent& p2,
             Fml principal);
};

Res Prover::prove_rec(const Sequent& s) {
  if (budget_hit) return {nullptr, false};
  if (++expanded > budget) {
    budget_hit = true;
    return {nullptr, false};
  }

  if (auto it = proved.find(s); it != proved.end()) return {it->second, true};
  if (refuted.count(s)) return {nullptr, true};

  // Closure by the initial sequents (plus weakening).
  if (Fml common = s.ant.first_common(s.suc)) {
    Drv d = weaken_to(mk_init(common), s);
    proved.emplace(s, d);
    return {d, true};
  }
  if (s.ant.contains(Formula::mk_bot())) {
    Drv d = weaken_to(mk_initbot(), s);
    proved.emplace(s, d);
    return {d, true};
  }

  for (const Sequent& anc : path)
    if (anc == s) return {nullptr, false};  // cutoff: not memoizable

  path.push_back(s);
  Res r = expand(s);
  path.pop_back();

  if (r.proof) {
    proved.emplace(s, r.proof);
  } else if (r.solid && !budget_hit) {
    refuted.insert(s);
  }
  return r;
}

Res Prover::unary(Rule rule, const Sequent& conc, const Sequent& prem,
                  Fml principal, int component) {
  Res sub = prove_rec(prem);
  if (!sub.proof) return sub;
  return {mk_logical(rule, conc, {sub.proof}, principal, component), true};
}

Res Prover::binary(Rule rule, const Sequent& conc, const Sequent& p1,
                   const Sequent& p2, Fml principal) {
  Res r1 = prove_rec(p1);
  if (!r1.proof && r1.solid) return {nullptr, true};
  Res r2 = prove_rec(p2);
  if (!r2.proof && r2.solid) return {nullptr, true};
  if (r1.proof && r2.proof)
    return {mk_logical(rule, conc, {r1.proof, r2.proof}, principal), true};
  return {nullptr, false};
}

Res Prover::expand(const Sequent& s) {
  // --- invertible single-premise rules (saturation, keeping form) ---
  for (Fml f : s.ant) {
    switch (f->kind()) {
      case Kind::Neg:
        if (!s.suc.contains(f->lhs()))
          return unary(Rule::NegL, s, Sequent{s.ant, s.suc.with(f->lhs())}, f, 0);
        break;
      case Kind::And: {
        Fml a = f->lhs(), b = f->rhs();
        bool need_a = !s.ant.contains(a), need_b = !s.ant.contains(b);
        if (need_a || need_b) {
          Sequent s1{s.ant.with(a), s.suc};
          Sequent s2{s1.ant.with(b), s.suc};
          Res sub = prove_rec(s2);
          if (!sub.proof) return sub;
          Drv d = sub.proof;
          if (!(s1 == s2)) d = mk_logical(Rule::AndL, s1, {d}, f, 2);
          if (!(s == s1)) d = mk_logical(Rule::AndL, s, {d}, f, 1);
          return {d, true};
        }
        break;
      }
      default:
        break;
    }
  }
  for (Fml f : s.suc) {
    switch (f->kind()) {
      case Kind::Neg:
        if (!s.ant.contains(f->lhs()))
          return unary(Rule::NegR, s, Sequent{s.ant.with(f->lhs()), s.suc}, f, 0);
        break;
      case Kind::Or: {
        Fml a = f->lhs(), b = f->rhs();
        bool need_a = !s.suc.contains(a), need_b = !s.suc.contains(b);
        if (need_a || need_b) {
          Sequent s1{s.ant, s.suc.with(a)};
          Sequent s2{s.ant, s1.suc.with(b)};
          Res sub = prove_rec(s2);
          if (!sub.proof) return sub;
          Drv d = sub.proof;
          if (!(s1 == s2)) d = mk_logical(Rule::OrR, s1, {d}, f, 2);
          if (!(s == s1)) d = mk_logical(Rule::OrR, s, {d}, f, 1);
          return {d, true};
        }
        break;
      }
      case Kind::Imp: {
        Fml a = f->lhs(), b = f->rhs();
        if (!s.ant.contains(a) || !s.suc.contains(b))
          return unary(Rule::ImpR, s, Sequent{s.ant.with(a), s.suc.with(b)}, f, 0);
        break;
      }
      default:
        break;
    }
  }

  // --- invertible two-premise rules ---
  for (Fml f : s.suc) {
    if (f->kind() == Kind::And && !s.suc.contains(f->lhs()) &&
        !s.suc.contains(f->rhs()))
      return binary(Rule::AndR, s, Sequent{s.ant, s.suc.with(f->lhs())},
                    Sequent{s.ant, s.suc.with(f->rhs())}, f);
  }
  for (Fml f : s.ant) {
    if (f->kind() == Kind::Or && !s.ant.contains(f->lhs()) &&
        !s.ant.contains(f->rhs()))
      return binary(Rule::OrL, s, Sequent{s.ant.with(f->lhs()), s.suc},
                    Sequent{s.ant.with(f->rhs()), s.suc}, f);
    if (f->kind() == Kind::Imp && !s.suc.contains(f->lhs()) &&
        !s.ant.contains(f->rhs()))
      return binary(Rule::ImpL, s, Sequent{s.ant, s.suc.with(f->lhs())},
                    Sequent{s.ant.with(f->rhs()), s.suc}, f);
  }

  // --- saturated open sequent: modal rules ---
  bool tainted = false;
  FSet rhd_ant = rhd_part(s.ant);

  for (Fml diag : s.suc) {
    if (diag->kind() != Kind::Rhd) continue;
    Fml a = diag->lhs(), b = diag->rhs();

    // Maximal principal set: every X|>Y on the left with (Y => B) provable.
    std::vector<Fml> pok;
    std::vector<Drv> sides;
    for (Fml xy : rhd_ant) {
      Res side = prove_rec(Sequent{FSet({xy->rhs()}), FSet({b})});
      if (side.proof) {
        pok.push_back(xy);
        sides.push_back(side.proof);
      } else if (!side.solid) {
        tainted = true;
      }
    }
    FSet xs;
    for (Fml p : pok) xs.insert(p->lhs());

    if (sys == System::ILmPs) {
      Sequent left{rhd_ant.with(diag).with(a), xs};
      Res rl = prove_rec(left);
      if (rl.proof) {
        std::vector<Drv> prem;
        prem.push_back(rl.proof);
        prem.insert(prem.end(), sides.begin(), sides.end());
        Drv node =
            mk_modal(Rule::RhdP, Sequent{rhd_ant, FSet({diag})}, prem, diag, pok);
        return {weaken_to(node, s), true};
      }
      if (!rl.solid) tainted = true;
    } else {
      // ILms interpretability rule.
      Sequent left{FSet({a}), xs};
      Res rl = prove_rec(left);
      if (rl.proof) {
        std::vector<Drv> prem;
        prem.push_back(rl.proof);
        prem.insert(prem.end(), sides.begin(), sides.end());
        Drv node = mk_modal(Rule::Rhd, Sequent{FSet(pok), FSet({diag})}, prem,
                            diag, pok);
        return {weaken_to(node, s), true};
      }
      if (!rl.solid) tainted = true;

      // ILms box rule, for box-shaped diagonals.
      Fml body = nullptr;
      if (is_box_shape(diag, &body)) {
        FSet box_gamma;
        FSet prem_ant;
        for (Fml g : s.ant) {
          Fml gb = nullptr;
          if (is_box_shape(g, &gb)) {
            box_gamma.insert(g);
            prem_ant.insert(g);
            prem_ant.insert(gb);
          }
        }
        prem_ant.insert(diag);
        Res rb = prove_rec(Sequent{prem_ant, FSet({body})});
        if (rb.proof) {
          Drv node = mk_box_rule(Sequent{box_gamma, FSet({diag})}, rb.proof);
          return {weaken_to(node, s), true};
        }
        if (!rb.solid) tainted = true;
      }
    }
  }

  return {nullptr, !tainted};
}

void assert_box_free(const Sequent& goal) {
  ILP_ASSERT(box_free(goal), "prove: goal must be box-free (expand [] first)");
}

}  // namespace

Verdict prove(System system, const Sequent& goal, std::uint64_t budget) {
  assert_box_free(goal);
  Prover pv{system, budget};
  Res r = pv.prove_rec(goal);
  Verdict v;
  v.expanded = pv.expanded;
  if (r.proof) {
    v.outcome = Outcome::Provable;
    v.proof = Proof{system, r.proof};
  } else if (pv.budget_hit && !r.solid) {
    v.outcome = Outcome::BudgetExceeded;
  } else {
    v.outcome = Outcome::NotProvable;
  }
  return v;
}

Verdict decide(System system, Fml f, std::uint64_t budget) {
  return prove(system, Sequent{FSet(), FSet({expand_box(f)})}, budget);
}

Verdict decide(Fml f, std::uint64_t budget) {
  return decide(System::ILmPs, f, budget);
}

// ---------------------------------------------------------------------------
// Forward least-fixpoint oracle.
//
// Derivable sequents are upward closed under weakening, so the derivable set
// is represented by its antichain of minimal elements.  Rules are applied
// forward to (tuples of) minimal elements in "dropping" form; conclusions
// from non-minimal premises are subsumed by conclusions from minimal ones
// combined with weakening, which the subset test absorbs.
// ---------------------------------------------------------------------------

namespace {

struct Antichain {
  std::vector<Sequent> mins;

  bool covers(const Sequent& s) const {
    for (const Sequent& m : mins)
      if (m.subset_of(s)) return true;
    return false;
  }

  bool insert(const Sequent& s) {
    if (covers(s)) return false;
    mins.erase(std::remove_if(mins.begin(), mins.end(),
                              [&](const Sequent& m) { return s.subset_of(m); }),
               mins.end());
    mins.push_back(s);
    return true;
  }
};

}  // namespace

bool prove_fixpoint_oracle(System system, const Sequent& goal) {
  assert_box_free(goal);

  FSet closure_set;
  auto add_subs = [&](Fml f) {
    for (Fml g : subformulas(f)) closure_set.insert(g);
  };
  for (Fml f : goal.ant) add_subs(f);
  for (Fml f : goal.suc) add_subs(f);
  std::vector<Fml> closure(closure_set.begin(), closure_set.end());
  ILP_ASSERT(closure.size() <= 40, "oracle: subformula closure too large");

  std::vector<Fml> rhds;
  for (Fml f : closure)
    if (f->kind() == Kind::Rhd) rhds.push_back(f);
  ILP_ASSERT(rhds.size() <= 12, "oracle: too many |>-subformulas");

  Antichain M;
  M.insert(Sequent{FSet({Formula::mk_bot()}), FSet()});
  for (Fml a : closure) M.insert(Sequent{FSet({a}), FSet({a})});

  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<Sequent> snap = M.mins;
    std::vector<Sequent> out;

    // Single-premise logical rules, dropping form.
    for (const Sequent& m : snap) {
      for (Fml f : closure) {
        switch (f->kind()) {
          case Kind::Neg:
            out.push_back({m.ant.with(f), m.suc.without(f->lhs())});
            out.push_back({m.ant.without(f->lhs()), m.suc.with(f)});
            break;
          case Kind::And:
            out.push_back({m.ant.without(f->lhs()).with(f), m.suc});
            out.push_back({m.ant.without(f->rhs()).with(f), m.suc});
            break;
          case Kind::Or:
            out.push_back({m.ant, m.suc.without(f->lhs()).with(f)});
            out.push_back({m.ant, m.suc.without(f->rhs()).with(f)});
            break;
          case Kind::Imp:
            out.push_back(
                {m.ant.without(f->lhs()), m.suc.without(f->rhs()).with(f)});
            break;
          default:
            break;
        }
      }
    }

    // Two-premise logical rules over pairs of minimal elements.  Membership
    // of the active components is required; otherwise the conclusion is
    // subsumed by a single-premise consequence of one premise alone.
    for (const Sequent& m1 : snap) {
      for (const Sequent& m2 : snap) {
        for (Fml f : closure) {
          Fml a = nullptr, b = nullptr;
          switch (f->kind()) {
            case Kind::And:
              a = f->lhs();
              b = f->rhs();
              if (m1.suc.contains(a) && m2.suc.contains(b))
                out.push_back({m1.ant.unite(m2.ant),
                               m1.suc.without(a).unite(m2.suc.without(b)).with(f)});
              break;
            case Kind::Or:
              a = f->lhs();
              b = f->rhs();
              if (m1.ant.contains(a) && m2.ant.contains(b))
                out.push_back({m1.ant.without(a).unite(m2.ant.without(b)).with(f),
                               m1.suc.unite(m2.suc)});
              break;
            case Kind::Imp:
              a = f->lhs();
              b = f->rhs();
              if (m1.suc.contains(a) && m2.ant.contains(b))
                out.push_back({m1.ant.unite(m2.ant.without(b)).with(f),
                               m1.suc.without(a).unite(m2.suc)});
              break;
            default:
              break;
          }
        }
      }
    }

    // Modal rules: enumerate conclusions directly.
    for (Fml diag : rhds) {
      Fml a = diag->lhs(), b = diag->rhs();
      // Which potential principals have a derivable side sequent?
      std::vector<Fml> ok;
      for (Fml xy : rhds)
        if (M.covers(Sequent{FSet({xy->rhs()}), FSet({b})})) ok.push_back(xy);

      if (system == System::ILmPs) {
        // Conclusion (R => diag) for any R not containing diag; principals
        // are exactly the members of R with derivable sides.
        std::size_t k = rhds.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
          FSet r_set;
          bool skip = false;
          for (std::size_t i = 0; i < k; ++i) {
            if (!(mask & (std::size_t(1) << i))) continue;
            if (rhds[i] == diag) {
              skip = true;
              break;
            }
            r_set.insert(rhds[i]);
          }
          if (skip) continue;
          FSet xs;
          for (Fml xy : ok)
            if (r_set.contains(xy)) xs.insert(xy->lhs());
          Sequent left{r_set.with(diag).with(a), xs};
          if (M.covers(left)) out.push_back({r_set, FSet({diag})});
        }
      } else {
        // ILms: conclusion antecedent is exactly the principal set, all of
        // whose members need derivable sides.
        std::size_t k = ok.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
          FSet p_set;
          FSet xs;
          bool skip = false;
          for (std::size_t i = 0; i < k; ++i) {
            if (!(mask & (std::size_t(1) << i))) continue;
            if (ok[i] == diag) {
              skip = true;
              break;
            }
            p_set.insert(ok[i]);
            xs.insert(ok[i]->lhs());
          }
          if (skip) continue;
          Sequent left{FSet({a}), xs};
          if (M.covers(left)) out.push_back({p_set, FSet({diag})});
        }
      }
    }

    if (system == System::ILms) {
      // Box rule: conclusion ([]Gamma => []A) from ([]Gamma, Gamma, []A => A).
      std::vector<std::pair<Fml, Fml>> boxes;  // (box, body)
      for (Fml f : closure) {
        Fml body = nullptr;
        if (is_box_shape(f, &body)) boxes.emplace_back(f, body);
      }
      ILP_ASSERT(boxes.size() <= 12, "oracle: too many box-subformulas");
      for (auto [boxa, body] : boxes) {
        std::size_t k = boxes.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
          FSet gamma;
          FSet prem_ant;
          for (std::size_t i = 0; i < k; ++i) {
            if (!(mask & (std::size_t(1) << i))) continue;
            gamma.insert(boxes[i].first);
            prem_ant.insert(boxes[i].first);
            prem_ant.insert(boxes[i].second);
          }
          prem_ant.insert(boxa);
          if (M.covers(Sequent{prem_ant, FSet({body})}))
            out.push_back({gamma, FSet({boxa})});
        }
      }
    }

    for (const Sequent& c : out)
      if (M.insert(c)) changed = true;
  }

  return M.covers(goal);
}

bool oracle_decide(System system, Fml f) {
  return prove_fixpoint_oracle(system, Sequent{FSet(), FSet({expand_box(f)})});
}

}  // namespace ilp
