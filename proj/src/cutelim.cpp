// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#include "ilp/cutelim.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace ilp {
namespace {

// Keeping-form premise sequents for applying `rule` (with the given
// principal/component) so that the conclusion becomes exactly `c`.
std::vector<Sequent> premise_schemas(Rule rule, Fml p, int component,
                                     const Sequent& c) {
  switch (rule) {
    case Rule::NegL:
      return {Sequent{c.ant, c.suc.with(p->lhs())}};
    case Rule::NegR:
      return {Sequent{c.ant.with(p->lhs()), c.suc}};
    case Rule::AndL:
      return {Sequent{c.ant.with(component == 1 ? p->lhs() : p->rhs()), c.suc}};
    case Rule::OrR:
      return {Sequent{c.ant, c.suc.with(component == 1 ? p->lhs() : p->rhs())}};
    case Rule::AndR:
      return {Sequent{c.ant, c.suc.with(p->lhs())},
              Sequent{c.ant, c.suc.with(p->rhs())}};
    case Rule::OrL:
      return {Sequent{c.ant.with(p->lhs()), c.suc},
              Sequent{c.ant.with(p->rhs()), c.suc}};
    case Rule::ImpL:
      return {Sequent{c.ant, c.suc.with(p->lhs())},
              Sequent{c.ant.with(p->rhs()), c.suc}};
    case Rule::ImpR:
      return {Sequent{c.ant.with(p->lhs()), c.suc.with(p->rhs())}};
    default:
      throw InternalError("premise_schemas: not a logical rule");
  }
}

bool is_logical(Rule r) {
  switch (r) {
    case Rule::NegL: case Rule::NegR: case Rule::AndL: case Rule::AndR:
    case Rule::OrL: case Rule::OrR: case Rule::ImpL: case Rule::ImpR:
      return true;
    default:
      return false;
  }
}

FSet lhs_set(const std::vector<Fml>& principals) {
  FSet out;
  for (Fml p : principals) out.insert(p->lhs());
  return out;
}

// The last rule of `pi` introduces `a` on the right.
bool left_ready(const Drv& pi, Fml a) {
  switch (pi->rule) {
    case Rule::NegR: case Rule::AndR: case Rule::OrR: case Rule::ImpR:
      return pi->principal == a;
    case Rule::RhdP:
      return pi->principal == a;  // suc is the singleton {diagonal}
    default:
      return false;
  }
}

// The last rule of `sigma` introduces `a` on the left (for RhdP any
// occurrence of `a` in the all-|> antecedent counts; the principal and
// non-principal positions are distinguished by the caller).
bool right_ready(const Drv& sigma, Fml a) {
  switch (sigma->rule) {
    case Rule::NegL: case Rule::AndL: case Rule::OrL: case Rule::ImpL:
      return sigma->principal == a;
    case Rule::RhdP:
    case Rule::InitBot:
      return true;
    default:
      return false;
  }
}

class Reducer {
public:
  explicit Reducer(ReduceStats* stats) : stats_(stats) {}

  Drv reduce(const Drv& pi, const Drv& sigma, Fml a) {
    // Lexicographic measure: (cut-formula size, height sum).  Every nested
    // reduction must be strictly smaller than its parent.
    const std::pair<std::uint64_t, std::uint64_t> m{
        a->node_count(), height(pi) + height(sigma)};
    if (!stack_.empty()) {
      ILP_ASSERT(m < stack_.back(),
                 "cut reduction measure failed to decrease");
    }
    stack_.push_back(m);
    if (stats_ != nullptr) {
      ++stats_->reduce_calls;
      stats_->max_depth = std::max<std::uint64_t>(stats_->max_depth, stack_.size());
    }
    Drv out = reduce_impl(pi, sigma, a);
    stack_.pop_back();
    return out;
  }

private:
  // --- case analysis ---------------------------------------------------------

  Drv reduce_impl(const Drv& pi, const Drv& sigma, Fml a) {
    ILP_ASSERT(pi->conclusion.suc.contains(a), "reduce: cut formula not in left succedent");
    ILP_ASSERT(sigma->conclusion.ant.contains(a), "reduce: cut formula not in right antecedent");
    const Sequent t{pi->conclusion.ant.unite(sigma->conclusion.ant.without(a)),
                    pi->conclusion.suc.without(a).unite(sigma->conclusion.suc)};

    // Axiom endings: the other proof already proves the target.
    if (pi->rule == Rule::Init) return weaken_to(sigma, t);
    if (sigma->rule == Rule::Init) return weaken_to(pi, t);

    // The cut formula was introduced by weakening: drop the cut.
    if (pi->rule == Rule::WR && pi->principal == a) {
      const Drv& p0 = pi->premises[0];
      if (!p0->conclusion.suc.contains(a)) return weaken_to(p0, t);
      return weaken_to(reduce(p0, sigma, a), t);
    }
    if (sigma->rule == Rule::WL && sigma->principal == a) {
      const Drv& s0 = sigma->premises[0];
      if (!s0->conclusion.ant.contains(a)) return weaken_to(s0, t);
      return weaken_to(reduce(pi, s0, a), t);
    }

    // Permute the cut above the last rule of pi / sigma until the cut
    // formula is principal on both sides.
    if (!left_ready(pi, a)) return permute_left(pi, sigma, a, t);
    if (!right_ready(sigma, a)) return permute_right(pi, sigma, a, t);
    if (sigma->rule == Rule::RhdP && !in_principals(sigma, a)) {
      return permute_modal_context(pi, sigma, a, t);
    }

    // Principal cut.
    switch (a->kind()) {
      case Kind::Neg: return principal_neg(pi, sigma, a, t);
      case Kind::And: return principal_and(pi, sigma, a, t);
      case Kind::Or: return principal_or(pi, sigma, a, t);
      case Kind::Imp: return principal_imp(pi, sigma, a, t);
      case Kind::Rhd: return weaken_to(principal_rhd(pi, sigma, a), t);
      default:
        // Atomic cut formulas are always resolved by the axiom/weakening
        // cases above (no logical rule introduces them on the right).
        throw InternalError("reduce: principal cut on atomic formula");
    }
  }

  static bool in_principals(const Drv& d, Fml a) {
    return std::find(d->principals.begin(), d->principals.end(), a) !=
           d->principals.end();
  }

  // pi does not end with a right-introduction of `a`: push the cut into
  // every premise of pi that still carries `a` on the right, then reapply
  // pi's last rule over the cut target.
  Drv permute_left(const Drv& pi, const Drv& sigma, Fml a, const Sequent& t) {
    if (pi->rule == Rule::WL || pi->rule == Rule::WR) {
      const Drv& p0 = pi->premises[0];
      Drv rho = p0->conclusion.suc.contains(a) ? reduce(p0, sigma, a) : p0;
      return weaken_to(rho, t);
    }
    ILP_ASSERT(is_logical(pi->rule), "permute_left: unexpected rule");
    auto schemas = premise_schemas(pi->rule, pi->principal, pi->component, t);
    std::vector<Drv> prem;
    for (std::size_t i = 0; i < pi->premises.size(); ++i) {
      const Drv& p = pi->premises[i];
      Drv rho = p->conclusion.suc.contains(a) ? reduce(p, sigma, a) : p;
      prem.push_back(weaken_to(rho, schemas[i]));
    }
    return mk_logical(pi->rule, t, std::move(prem), pi->principal, pi->component);
  }

  // Mirror image on sigma's side (`a` on the left).
  Drv permute_right(const Drv& pi, const Drv& sigma, Fml a, const Sequent& t) {
    if (sigma->rule == Rule::WL || sigma->rule == Rule::WR) {
      const Drv& s0 = sigma->premises[0];
      Drv rho = s0->conclusion.ant.contains(a) ? reduce(pi, s0, a) : s0;
      return weaken_to(rho, t);
    }
    ILP_ASSERT(is_logical(sigma->rule), "permute_right: unexpected rule");
    auto schemas = premise_schemas(sigma->rule, sigma->principal, sigma->component, t);
    std::vector<Drv> prem;
    for (std::size_t i = 0; i < sigma->premises.size(); ++i) {
      const Drv& s = sigma->premises[i];
      Drv rho = s->conclusion.ant.contains(a) ? reduce(pi, s, a) : s;
      prem.push_back(weaken_to(rho, schemas[i]));
    }
    return mk_logical(sigma->rule, t, std::move(prem), sigma->principal, sigma->component);
  }

  // sigma ends in the persistence rule and the cut formula sits in its
  // modal context (not among the principals): cut into the left premise and
  // reapply the rule.  pi ends in the persistence rule too (its succedent
  // is the singleton {a}), so the merged antecedent stays all-|>.
  Drv permute_modal_context(const Drv& pi, const Drv& sigma, Fml a, const Sequent& t) {
    ILP_ASSERT(pi->rule == Rule::RhdP, "modal context cut: left proof shape");
    Fml d = sigma->principal;  // sigma's diagonal C|>D
    Drv left = reduce(pi, sigma->premises[0], a);
    left = weaken_to(left, Sequent{t.ant.with(d).with(d->lhs()), lhs_set(sigma->principals)});
    std::vector<Drv> prem{left};
    prem.insert(prem.end(), sigma->premises.begin() + 1, sigma->premises.end());
    return mk_modal(Rule::RhdP, t, std::move(prem), d, sigma->principals);
  }

  // Premise of pi with the residual copy of `a` cut away; conclusion is
  // exactly (p.ant ∪ sigma.ant∖a => p.suc∖a ∪ sigma.suc).
  Drv cleaned_left(const Drv& p, const Drv& sigma, Fml a) {
    if (p->conclusion.suc.contains(a)) return reduce(p, sigma, a);
    return weaken_to(p, Sequent{p->conclusion.ant.unite(sigma->conclusion.ant.without(a)),
                                p->conclusion.suc.unite(sigma->conclusion.suc)});
  }

  Drv cleaned_right(const Drv& pi, const Drv& s, Fml a) {
    if (s->conclusion.ant.contains(a)) return reduce(pi, s, a);
    return weaken_to(s, Sequent{pi->conclusion.ant.unite(s->conclusion.ant),
                                pi->conclusion.suc.without(a).unite(s->conclusion.suc)});
  }

  Drv principal_neg(const Drv& pi, const Drv& sigma, Fml a, const Sequent& t) {
    Drv p0 = cleaned_left(pi->premises[0], sigma, a);    // (..., E => ...)
    Drv s0 = cleaned_right(pi, sigma->premises[0], a);   // (... => ..., E)
    return weaken_to(reduce(s0, p0, a->lhs()), t);
  }

  Drv principal_and(const Drv& pi, const Drv& sigma, Fml a, const Sequent& t) {
    const int i = sigma->component;  // AndL component choice
    Fml part = i == 1 ? a->lhs() : a->rhs();
    Drv pcomp = cleaned_left(pi->premises[i == 1 ? 0 : 1], sigma, a);
    Drv s0 = cleaned_right(pi, sigma->premises[0], a);
    return weaken_to(reduce(pcomp, s0, part), t);
  }

  Drv principal_or(const Drv& pi, const Drv& sigma, Fml a, const Sequent& t) {
    const int i = pi->component;  // OrR component choice
    Fml part = i == 1 ? a->lhs() : a->rhs();
    Drv p0 = cleaned_left(pi->premises[0], sigma, a);
    Drv scomp = cleaned_right(pi, sigma->premises[i == 1 ? 0 : 1], a);
    return weaken_to(reduce(p0, scomp, part), t);
  }

  Drv principal_imp(const Drv& pi, const Drv& sigma, Fml a, const Sequent& t) {
    Drv p0 = cleaned_left(pi->premises[0], sigma, a);    // (..., E => ..., G)
    Drv s1 = cleaned_right(pi, sigma->premises[0], a);   // (... => ..., E)
    Drv s2 = cleaned_right(pi, sigma->premises[1], a);   // (..., G => ...)
    Drv rho = reduce(s1, p0, a->lhs());
    return weaken_to(reduce(rho, s2, a->rhs()), t);
  }

  // --- principal |> cut ------------------------------------------------------
  //
  // pi   ends RhdP with diagonal E|>F:  (Om1, X_i|>Y_i         => E|>F)
  // sigma ends RhdP with E|>F principal: (Om2, E|>F, Z_j|>W_j  => C|>D)
  //
  // The reduction unfolds pi's modal step inside sigma's left premise: the
  // auxiliary lemma below removes the hypothesis E|>F from pi's left
  // premise, replacing every modal step that used it by pi's own principal
  // decomposition; the final node reapplies the persistence rule with the
  // combined principal family {X_i|>Y_i} ∪ {Z_j|>W_j}.
  struct StarCtx {
    const Drv& pi;  // cut-free proof of (Om1, X_i|>Y_i => E|>F) ending RhdP
    Fml cutf;       // E|>F
  };

  Drv principal_rhd(const Drv& pi, const Drv& sigma, Fml a) {
    ILP_ASSERT(pi->rule == Rule::RhdP && sigma->rule == Rule::RhdP,
               "principal |> cut: rule shapes");
    if (stats_ != nullptr) ++stats_->principal_rhd_cuts;
    Fml e = a->lhs();
    Fml f = a->rhs();
    Fml d1 = sigma->principal;  // C|>D

    // Side premise of sigma consuming the cut formula: (F => D).
    Drv side_f;
    for (std::size_t j = 0; j < sigma->principals.size(); ++j) {
      if (sigma->principals[j] == a) { side_f = sigma->premises[1 + j]; break; }
    }
    ILP_ASSERT(side_f != nullptr, "principal |> cut: no side premise for cut formula");

    // Clean the residual E|>F in sigma's left premise (same size, smaller
    // height), then remove the hypothesis E|>F itself.
    Drv tau1 = reduce(pi, sigma->premises[0], a);
    StarCtx cx{pi, a};
    Drv pi_star = lemma_star(cx, FSet(), pi->premises[0]);
    Drv left0 = reduce(tau1, pi_star, e);

    std::vector<Fml> fin_principals;
    std::vector<Drv> fin_sides;
    for (std::size_t i = 0; i < pi->principals.size(); ++i) {
      fin_principals.push_back(pi->principals[i]);
      // (Y_i => B=F) against (F => D) gives (Y_i => D).
      Drv s = reduce(pi->premises[1 + i], side_f, f);
      fin_sides.push_back(weaken_to(
          s, Sequent{FSet({pi->principals[i]->rhs()}), FSet({d1->rhs()})}));
    }
    for (std::size_t j = 0; j < sigma->principals.size(); ++j) {
      if (sigma->principals[j] == a) continue;
      fin_principals.push_back(sigma->principals[j]);
      fin_sides.push_back(sigma->premises[1 + j]);
    }

    const Sequent t{pi->conclusion.ant.unite(sigma->conclusion.ant.without(a)),
                    FSet({d1})};
    Drv left = weaken_to(
        left0, Sequent{t.ant.with(d1).with(d1->lhs()), lhs_set(fin_principals)});
    std::vector<Drv> prem{left};
    prem.insert(prem.end(), fin_sides.begin(), fin_sides.end());
    return mk_modal(Rule::RhdP, t, std::move(prem), d1, fin_principals);
  }

  // For a node S = (cutf, Gamma => Delta) inside pi's left premise whose
  // antecedent still carries the hypothesis cutf = E|>F, builds a cut-free
  // proof of (Om1, X_i|>Y_i, Theta, Gamma => Delta): the hypothesis is
  // replaced by pi's own principal family.  Theta collects diagonals of
  // modal steps already unfolded further down, so a repeated unfolding of
  // the same diagonal closes by an axiom; the recursion terminates because
  // either Theta grows inside the fixed set of explicit diagonals or the
  // subtree shrinks.
  Drv lemma_star(const StarCtx& cx, const FSet& theta, const Drv& s) {
    const Sequent& sc = s->conclusion;
    ILP_ASSERT(sc.ant.contains(cx.cutf), "lemma_star: hypothesis not present");
    ILP_ASSERT(++star_depth_ < 100000, "lemma_star: runaway recursion");
    struct DepthGuard {
      std::uint64_t& d;
      ~DepthGuard() { --d; }
    } guard{star_depth_};

    const Sequent goal{
        cx.pi->conclusion.ant.unite(theta).unite(sc.ant.without(cx.cutf)),
        sc.suc};

    switch (s->rule) {
      case Rule::Init:
        // (cutf => cutf): pi itself proves (Om1, X_i|>Y_i => cutf).
        return weaken_to(cx.pi, goal);
      case Rule::InitBot:
        throw InternalError("lemma_star: bottom axiom cannot carry the hypothesis");
      case Rule::WL:
        if (s->principal == cx.cutf &&
            !s->premises[0]->conclusion.ant.contains(cx.cutf)) {
          return weaken_to(s->premises[0], goal);
        }
        [[fallthrough]];
      case Rule::WR: {
        const Drv& p0 = s->premises[0];
        Drv rho = p0->conclusion.ant.contains(cx.cutf) ? lemma_star(cx, theta, p0) : p0;
        return weaken_to(rho, goal);
      }
      case Rule::NegL: case Rule::NegR: case Rule::AndL: case Rule::AndR:
      case Rule::OrL: case Rule::OrR: case Rule::ImpL: case Rule::ImpR: {
        auto schemas = premise_schemas(s->rule, s->principal, s->component, goal);
        std::vector<Drv> prem;
        for (std::size_t i = 0; i < s->premises.size(); ++i) {
          const Drv& p = s->premises[i];
          Drv rho = p->conclusion.ant.contains(cx.cutf) ? lemma_star(cx, theta, p) : p;
          prem.push_back(weaken_to(rho, schemas[i]));
        }
        return mk_logical(s->rule, goal, std::move(prem), s->principal, s->component);
      }
      case Rule::RhdP:
        return lemma_star_modal(cx, theta, s, goal);
      default:
        throw InternalError("lemma_star: unexpected rule in cut-free ILmPs proof");
    }
  }

  Drv lemma_star_modal(const StarCtx& cx, const FSet& theta, const Drv& s,
                       const Sequent& goal) {
    const Sequent& sc = s->conclusion;
    Fml d = s->principal;  // S's diagonal E'|>F'
    if (!in_principals(s, cx.cutf)) {
      // Hypothesis in the modal context only: recurse into the left premise
      // and reapply the rule with the enlarged context.
      Drv left = lemma_star(cx, theta, s->premises[0]);
      left = weaken_to(left,
                       Sequent{goal.ant.with(d).with(d->lhs()), lhs_set(s->principals)});
      std::vector<Drv> prem{left};
      prem.insert(prem.end(), s->premises.begin() + 1, s->premises.end());
      return mk_modal(Rule::RhdP, goal, std::move(prem), d, s->principals);
    }
    if (theta.contains(d)) {
      // This diagonal was already unfolded below: it is a hypothesis now.
      return weaken_to(mk_init(d), goal);
    }

    Fml e = cx.cutf->lhs();
    Fml f = cx.cutf->rhs();
    // Unfold: remove the hypothesis from pi's left premise with d recorded,
    // remove it from S's left premise, and join the two on E.
    Drv pp = lemma_star(cx, theta.with(d), cx.pi->premises[0]);
    Drv tau = lemma_star(cx, theta, s->premises[0]);
    Drv left0 = reduce(tau, pp, e);

    Drv side_f;
    for (std::size_t j = 0; j < s->principals.size(); ++j) {
      if (s->principals[j] == cx.cutf) { side_f = s->premises[1 + j]; break; }
    }
    ILP_ASSERT(side_f != nullptr, "lemma_star: missing side premise");

    std::vector<Fml> fin_principals;
    std::vector<Drv> fin_sides;
    for (std::size_t i = 0; i < cx.pi->principals.size(); ++i) {
      fin_principals.push_back(cx.pi->principals[i]);
      Drv sp = reduce(cx.pi->premises[1 + i], side_f, f);  // (Y_i => F')
      fin_sides.push_back(weaken_to(
          sp, Sequent{FSet({cx.pi->principals[i]->rhs()}), FSet({d->rhs()})}));
    }
    for (std::size_t j = 0; j < s->principals.size(); ++j) {
      if (s->principals[j] == cx.cutf) continue;
      fin_principals.push_back(s->principals[j]);
      fin_sides.push_back(s->premises[1 + j]);
    }

    Drv left = weaken_to(
        left0, Sequent{goal.ant.with(d).with(d->lhs()), lhs_set(fin_principals)});
    std::vector<Drv> prem{left};
    prem.insert(prem.end(), fin_sides.begin(), fin_sides.end());
    return mk_modal(Rule::RhdP, goal, std::move(prem), d, fin_principals);
  }

  ReduceStats* stats_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> stack_;
  std::uint64_t star_depth_ = 0;
};

Drv eliminate_rec(const Drv& n, Reducer& red) {
  std::vector<Drv> prem;
  prem.reserve(n->premises.size());
  bool changed = false;
  for (const Drv& p : n->premises) {
    Drv q = eliminate_rec(p, red);
    changed = changed || q != p;
    prem.push_back(std::move(q));
  }
  if (n->rule == Rule::Cut) {
    // Both subproofs are cut-free here (topmost cuts reduce first); the
    // reduction's conclusion is exactly the cut node's conclusion.
    return red.reduce(prem[0], prem[1], n->principal);
  }
  if (!changed) return n;
  return Derivation::make(n->rule, n->conclusion, std::move(prem), n->principal,
                          n->component, n->principals);
}

}  // namespace

Drv reduce_cut(const Drv& pi, const Drv& sigma, Fml cut_formula, ReduceStats* stats) {
  ILP_ASSERT(is_cut_free(pi) && is_cut_free(sigma), "reduce_cut: inputs must be cut-free");
  Reducer red(stats);
  return red.reduce(pi, sigma, cut_formula);
}

Proof eliminate_cuts(const Proof& p, ReduceStats* stats) {
  ILP_ASSERT(p.system == System::ILmPs, "cut elimination is implemented for ILmPs");
  Reducer red(stats);
  Proof out;
  out.system = p.system;
  out.root = eliminate_rec(p.root, red);
  return out;
}

}  // namespace ilp
