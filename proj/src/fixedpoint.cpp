// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#include "ilp/fixedpoint.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "ilp/corpus.hpp"

namespace ilp {
namespace {

bool mentions(Fml f, std::string_view p) {
  switch (f->kind()) {
    case Kind::Var: return f->var() == p;
    case Kind::Bot: return false;
    case Kind::Neg:
    case Kind::Box: return mentions(f->lhs(), p);
    default: return mentions(f->lhs(), p) || mentions(f->rhs(), p);
  }
}

/// Replaces every occurrence of the subformula m in f by r.
Fml replace_all(Fml f, Fml m, Fml r) {
  if (f == m) return r;
  switch (f->kind()) {
    case Kind::Var:
    case Kind::Bot: return f;
    case Kind::Neg: return Formula::mk_neg(replace_all(f->lhs(), m, r));
    case Kind::Box: return Formula::mk_box(replace_all(f->lhs(), m, r));
    case Kind::And:
      return Formula::mk_and(replace_all(f->lhs(), m, r),
                             replace_all(f->rhs(), m, r));
    case Kind::Or:
      return Formula::mk_or(replace_all(f->lhs(), m, r),
                            replace_all(f->rhs(), m, r));
    case Kind::Imp:
      return Formula::mk_imp(replace_all(f->lhs(), m, r),
                             replace_all(f->rhs(), m, r));
    case Kind::Rhd:
      return Formula::mk_rhd(replace_all(f->lhs(), m, r),
                             replace_all(f->rhs(), m, r));
  }
  ILP_ASSERT(false, "replace_all: unreachable kind");
  return f;
}

/// Outermost-leftmost modal subformula of f that contains p, or nullptr.
Fml find_modal_hull(Fml f, std::string_view p) {
  if (!mentions(f, p)) return nullptr;
  switch (f->kind()) {
    case Kind::Var:
    case Kind::Bot: return nullptr;
    case Kind::Box:
    case Kind::Rhd: return f;
    case Kind::Neg: return find_modal_hull(f->lhs(), p);
    default: {
      Fml l = find_modal_hull(f->lhs(), p);
      return l != nullptr ? l : find_modal_hull(f->rhs(), p);
    }
  }
}

std::string fresh_name(const std::set<std::string>& taken, int& counter) {
  for (;;) {
    std::string name = "q" + std::to_string(counter++);
    if (taken.find(name) == taken.end()) return name;
  }
}

/// The recursion behind fixpoint(): eliminates the occurrences of p one
/// outermost modal subformula at a time.
///
///   - If p does not occur in a, a is its own fixed point.
///   - Otherwise let M be the outermost-leftmost modal subformula
///     containing p, and let B be a with every occurrence of M replaced by
///     a fresh variable q (so a = B[q := M], with strictly fewer
///     occurrences of p).  Recursively take F_B with F_B <-> B(F_B, q) for
///     every q.  The remaining equation in q is the single-headed
///     M(F_B(q)), whose left component is the only place q occurs; its
///     fixed point H is obtained by substituting true for q there.  Then
///     F := F_B[q := H] satisfies F <-> a(F): instantiating q := H in the
///     recursive equivalence gives F <-> B(F, H), and H <-> M(F_B(H))
///     together with its necessitation allow H to be replaced by M(F) at
///     the q-positions of B, which lie outside every |>-right component.
Fml build(Fml a, const std::string& p, const std::set<std::string>& taken,
          int& counter) {
  if (!mentions(a, p)) return a;
  Fml m = find_modal_hull(a, p);
  ILP_ASSERT(m != nullptr, "modalized occurrence of the fixed-point variable");

  std::string qn = fresh_name(taken, counter);
  Fml q = Formula::mk_var(qn);
  Fml b = replace_all(a, m, q);
  Fml fb = build(b, p, taken, counter);

  // F_B with the parameter q set to true, i.e. F_B(true).
  Fml fb_top = subst(fb, qn, Formula::top());
  Fml h = nullptr;
  if (m->kind() == Kind::Box) {
    h = Formula::mk_box(subst(m->lhs(), p, fb_top));
  } else {
    ILP_ASSERT(m->kind() == Kind::Rhd, "modal hull is [] or |>");
    h = Formula::mk_rhd(subst(m->lhs(), p, fb_top), m->rhs());
  }
  return subst(fb, qn, h);
}

std::set<std::string> var_set(Fml f) {
  std::vector<std::string> v = vars(f);
  return std::set<std::string>(v.begin(), v.end());
}

}  // namespace

Fml fixpoint_rhd(Fml a_of_p, Fml b, const std::string& p) {
  Fml whole = Formula::mk_rhd(a_of_p, b);
  if (!is_left_modalized(whole, p)) {
    throw std::invalid_argument("fixpoint_rhd: " + p +
                                " is not left-modalized in " + print(whole));
  }
  return Formula::mk_rhd(subst(a_of_p, p, Formula::top()), b);
}

FixpointResult fixpoint(Fml a_of_p, const std::string& p,
                        std::uint64_t budget) {
  if (!is_left_modalized(a_of_p, p)) {
    throw std::invalid_argument("fixpoint: " + p +
                                " is not left-modalized in " + print(a_of_p));
  }

  std::set<std::string> taken = var_set(a_of_p);
  int counter = 0;
  Fml f = build(a_of_p, p, taken, counter);

  FixpointResult out;
  out.fixpoint = f;

  std::set<std::string> allowed = taken;
  allowed.erase(p);
  std::set<std::string> got = var_set(f);
  out.variable_condition =
      std::includes(allowed.begin(), allowed.end(), got.begin(), got.end());

  Fml a_of_f = subst(a_of_p, p, f);
  out.equivalence_verdict =
      decide(System::ILmPs, Formula::mk_iff(f, a_of_f), budget);

  if (!out.variable_condition) {
    throw FixpointVerificationError(
        "fixed point violates the variable condition: " + print(f));
  }
  if (out.equivalence_verdict.outcome != Outcome::Provable) {
    throw FixpointVerificationError(
        "fixed point failed verification (" +
        std::string(outcome_name(out.equivalence_verdict.outcome)) +
        "): F = " + print(f) + " for A = " + print(a_of_p));
  }
  return out;
}

FppRefutationReport refute_fpp_witness(int max_size, std::uint64_t budget) {
  FppRefutationReport rep;
  for (Fml f : enumerate_formulas({}, max_size)) {
    Fml rhs = Formula::mk_rhd(Formula::top(), Formula::mk_neg(f));
    Verdict v = decide(System::ILmPs, Formula::mk_iff(f, rhs), budget);
    ++rep.checked;
    switch (v.outcome) {
      case Outcome::NotProvable: ++rep.not_provable; break;
      case Outcome::Provable: rep.provable_witnesses.push_back(f); break;
      case Outcome::BudgetExceeded: rep.budget_exceeded.push_back(f); break;
    }
  }
  return rep;
}

}  // namespace ilp
