// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#include "ilp/derivation.hpp"

#include <algorithm>
#include <stdexcept>

namespace ilp {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Init: return "Init";
    case Rule::InitBot: return "InitBot";
    case Rule::WL: return "WL";
    case Rule::WR: return "WR";
    case Rule::NegL: return "NegL";
    case Rule::NegR: return "NegR";
    case Rule::AndL: return "AndL";
    case Rule::AndR: return "AndR";
    case Rule::OrL: return "OrL";
    case Rule::OrR: return "OrR";
    case Rule::ImpL: return "ImpL";
    case Rule::ImpR: return "ImpR";
    case Rule::Cut: return "Cut";
    case Rule::BoxRule: return "BoxRule";
    case Rule::Rhd: return "Rhd";
    case Rule::RhdP: return "RhdP";
  }
  return "?";
}

Drv Derivation::make(Rule rule, Sequent conclusion, std::vector<Drv> premises,
                     Fml principal, int component, std::vector<Fml> principals) {
  auto node = std::make_shared<Derivation>();
  node->rule = rule;
  node->conclusion = std::move(conclusion);
  node->premises = std::move(premises);
  node->principal = principal;
  node->component = component;
  node->principals = std::move(principals);
  return node;
}

namespace {

// Checks premise.side == base ∪ {added...} where base is either `full` or
// `full` minus the principal (union semantics admits both readings of the
// schema's context).
bool matches_with(const FSet& premise_side, const FSet& full, Fml dropped,
                  std::initializer_list<Fml> added) {
  FSet kept = full;
  for (Fml a : added) kept.insert(a);
  if (premise_side == kept) return true;
  if (dropped) {
    FSet minus = full.without(dropped);
    for (Fml a : added) minus.insert(a);
    return premise_side == minus;
  }
  return false;
}

std::optional<std::string> err(const std::string& m) { return m; }

}  // namespace

std::optional<std::string> validate_node(System system, const Derivation& n) {
  const Sequent& c = n.conclusion;
  if (!box_free(c))
    return err("sequents carry [] only in expanded form (~A)|>false");
  auto arity = [&](std::size_t want) -> std::optional<std::string> {
    if (n.premises.size() != want)
      return err("expected " + std::to_string(want) + " premises, got " +
                 std::to_string(n.premises.size()));
    return std::nullopt;
  };
  auto premise = [&](std::size_t i) -> const Sequent& {
    return n.premises[i]->conclusion;
  };

  switch (n.rule) {
    case Rule::Init: {
      if (auto e = arity(0)) return e;
      if (c.ant.size() != 1 || c.suc.size() != 1 || c.ant[0] != c.suc[0])
        return err("initial sequent must be (A => A)");
      return std::nullopt;
    }
    case Rule::InitBot: {
      if (auto e = arity(0)) return e;
      if (c.ant.size() != 1 || c.ant[0] != Formula::mk_bot() || !c.suc.empty())
        return err("initial sequent must be (false =>)");
      return std::nullopt;
    }
    case Rule::WL: {
      if (auto e = arity(1)) return e;
      if (!n.principal || !c.ant.contains(n.principal))
        return err("weakened formula missing from antecedent");
      if (premise(0).suc == c.suc &&
          (premise(0).ant == c.ant || premise(0).ant == c.ant.without(n.principal)))
        return std::nullopt;
      return err("premise does not match weakening schema");
    }
    case Rule::WR: {
      if (auto e = arity(1)) return e;
      if (!n.principal || !c.suc.contains(n.principal))
        return err("weakened formula missing from succedent");
      if (premise(0).ant == c.ant &&
          (premise(0).suc == c.suc || premise(0).suc == c.suc.without(n.principal)))
        return std::nullopt;
      return err("premise does not match weakening schema");
    }
    case Rule::NegL: {
      if (auto e = arity(1)) return e;
      Fml p = n.principal;
      if (!p || p->kind() != Kind::Neg || !c.ant.contains(p))
        return err("principal ~A missing from antecedent");
      if (premise(0).suc == c.suc.with(p->lhs()) &&
          matches_with(premise(0).ant, c.ant, p, {}))
        return std::nullopt;
      return err("premise does not match (~l) schema");
    }
    case Rule::NegR: {
      if (auto e = arity(1)) return e;
      Fml p = n.principal;
      if (!p || p->kind() != Kind::Neg || !c.suc.contains(p))
        return err("principal ~A missing from succedent");
      if (premise(0).ant == c.ant.with(p->lhs()) &&
          matches_with(premise(0).suc, c.suc, p, {}))
        return std::nullopt;
      return err("premise does not match (~r) schema");
    }
    case Rule::AndL: {
      if (auto e = arity(1)) return e;
      Fml p = n.principal;
      if (!p || p->kind() != Kind::And || !c.ant.contains(p))
        return err("principal A&B missing from antecedent");
      if (n.component != 1 && n.component != 2) return err("component must be 1 or 2");
      Fml ai = n.component == 1 ? p->lhs() : p->rhs();
      if (premise(0).suc == c.suc && matches_with(premise(0).ant, c.ant, p, {ai}))
        return std::nullopt;
      return err("premise does not match (&l) schema");
    }
    case Rule::OrR: {
      if (auto e = arity(1)) return e;
      Fml p = n.principal;
      if (!p || p->kind() != Kind::Or || !c.suc.contains(p))
        return err("principal A|B missing from succedent");
      if (n.component != 1 && n.component != 2) return err("component must be 1 or 2");
      Fml ai = n.component == 1 ? p->lhs() : p->rhs();
      if (premise(0).ant == c.ant && matches_with(premise(0).suc, c.suc, p, {ai}))
        return std::nullopt;
      return err("premise does not match (|r) schema");
    }
    case Rule::AndR: {
      if (auto e = arity(2)) return e;
      Fml p = n.principal;
      if (!p || p->kind() != Kind::And || !c.suc.contains(p))
        return err("principal A&B missing from succedent");
      for (FSet delta : {c.suc.without(p), c.suc}) {
        if (premise(0).ant == c.ant && premise(1).ant == c.ant &&
            premise(0).suc == delta.with(p->lhs()) &&
            premise(1).suc == delta.with(p->rhs()))
          return std::nullopt;
      }
      return err("premises do not match (&r) schema");
    }
    case Rule::OrL: {
      if (auto e = arity(2)) return e;
      Fml p = n.principal;
      if (!p || p->kind() != Kind::Or || !c.ant.contains(p))
        return err("principal A|B missing from antecedent");
      for (FSet gamma : {c.ant.without(p), c.ant}) {
        if (premise(0).suc == c.suc && premise(1).suc == c.suc &&
            premise(0).ant == gamma.with(p->lhs()) &&
            premise(1).ant == gamma.with(p->rhs()))
          return std::nullopt;
      }
      return err("premises do not match (|l) schema");
    }
    case Rule::ImpL: {
      if (auto e = arity(2)) return e;
      Fml p = n.principal;
      if (!p || p->kind() != Kind::Imp || !c.ant.contains(p))
        return err("principal A->B missing from antecedent");
      for (FSet gamma : {c.ant.without(p), c.ant}) {
        if (premise(0).ant == gamma && premise(0).suc == c.suc.with(p->lhs()) &&
            premise(1).ant == gamma.with(p->rhs()) && premise(1).suc == c.suc)
          return std::nullopt;
      }
      return err("premises do not match (->l) schema");
    }
    case Rule::ImpR: {
      if (auto e = arity(1)) return e;
      Fml p = n.principal;
      if (!p || p->kind() != Kind::Imp || !c.suc.contains(p))
        return err("principal A->B missing from succedent");
      if (premise(0).ant == c.ant.with(p->lhs()) &&
          matches_with(premise(0).suc, c.suc, p, {p->rhs()}))
        return std::nullopt;
      return err("premise does not match (->r) schema");
    }
    case Rule::Cut: {
      if (auto e = arity(2)) return e;
      Fml a = n.principal;
      if (!a) return err("cut formula missing");
      const Sequent& l = premise(0);
      const Sequent& r = premise(1);
      if (!l.suc.contains(a)) return err("cut formula missing from left succedent");
      if (!r.ant.contains(a)) return err("cut formula missing from right antecedent");
      if (c.ant == l.ant.unite(r.ant.without(a)) &&
          c.suc == l.suc.without(a).unite(r.suc))
        return std::nullopt;
      return err("conclusion does not match (cut) schema");
    }
    case Rule::BoxRule: {
      if (system != System::ILms) return err("(box) rule is ILms-only");
      if (auto e = arity(1)) return e;
      if (c.suc.size() != 1) return err("(box) conclusion needs singleton succedent");
      Fml boxed = c.suc[0];
      Fml body = nullptr;
      if (!is_box_shape(boxed, &body)) return err("succedent is not (~A)|>false");
      FSet want_ant = c.ant;
      for (Fml g : c.ant) {
        Fml gbody = nullptr;
        if (!is_box_shape(g, &gbody)) return err("antecedent member is not box-shaped");
        want_ant.insert(gbody);
      }
      want_ant.insert(boxed);
      if (premise(0).ant == want_ant && premise(0).suc == FSet({body}))
        return std::nullopt;
      return err("premise does not match (box) schema");
    }
    case Rule::Rhd:
    case Rule::RhdP: {
      if (n.rule == Rule::Rhd && system != System::ILms)
        return err("(rhd) rule is ILms-only");
      if (n.rule == Rule::RhdP && system != System::ILmPs)
        return err("(rhd_P) rule is ILmPs-only");
      if (c.suc.size() != 1 || c.suc[0]->kind() != Kind::Rhd)
        return err("conclusion succedent must be a single |>-formula");
      Fml diag = c.suc[0];
      if (n.principal && n.principal != diag) return err("diagonal mismatch");
      if (!all_rhd(c.ant)) return err("conclusion antecedent must be |>-formulas");
      if (n.premises.size() != n.principals.size() + 1)
        return err("need one side premise per principal plus the left premise");
      FSet xs;
      for (Fml pr : n.principals) {
        if (pr->kind() != Kind::Rhd) return err("principal is not a |>-formula");
        if (!c.ant.contains(pr)) return err("principal missing from antecedent");
        xs.insert(pr->lhs());
      }
      if (n.rule == Rule::Rhd) {
        if (c.ant != FSet(n.principals))
          return err("(rhd) conclusion antecedent must be exactly the principals");
        if (premise(0).ant != FSet({diag->lhs()}) || premise(0).suc != xs)
          return err("left premise does not match (rhd) schema");
      } else {
        FSet want = c.ant;
        want.insert(diag);
        want.insert(diag->lhs());
        if (premise(0).ant != want || premise(0).suc != xs)
          return err("left premise does not match (rhd_P) schema (diagonal missing?)");
      }
      for (std::size_t i = 0; i < n.principals.size(); ++i) {
        const Sequent& side = premise(i + 1);
        if (side.ant != FSet({n.principals[i]->rhs()}) ||
            side.suc != FSet({diag->rhs()}))
          return err("side premise " + std::to_string(i) + " does not match schema");
      }
      return std::nullopt;
    }
  }
  return err("unknown rule");
}

namespace {

bool check_rec(System system, const Derivation& n, std::string& path,
               std::string& message) {
  if (auto e = validate_node(system, n)) {
    message = "node " + (path.empty() ? std::string("root") : path) + " (" +
              rule_name(n.rule) + " at '" + print(n.conclusion) + "'): " + *e;
    return false;
  }
  for (std::size_t i = 0; i < n.premises.size(); ++i) {
    if (!n.premises[i]) {
      message = "node " + path + ": null premise";
      return false;
    }
    std::size_t len = path.size();
    path += path.empty() ? "" : ".";
    path += std::to_string(i);
    if (!check_rec(system, *n.premises[i], path, message)) return false;
    path.resize(len);
  }
  return true;
}

}  // namespace

CheckReport check(System system, const Drv& root) {
  CheckReport rep;
  if (!root) {
    rep.ok = false;
    rep.message = "empty derivation";
    return rep;
  }
  std::string path;
  rep.ok = check_rec(system, *root, path, rep.message);
  return rep;
}

bool is_cut_free(const Drv& root) { return cut_count(root) == 0; }

std::size_t cut_count(const Drv& root) {
  std::size_t total = root->rule == Rule::Cut ? 1 : 0;
  for (const Drv& p : root->premises) total += cut_count(p);
  return total;
}

std::size_t height(const Drv& root) {
  std::size_t best = 0;
  for (const Drv& p : root->premises) best = std::max(best, height(p));
  return best + 1;
}

std::size_t node_count(const Drv& root) {
  std::size_t total = 1;
  for (const Drv& p : root->premises) total += node_count(p);
  return total;
}

Drv compose_cut(const Drv& left, const Drv& right, Fml cut_formula) {
  if (!left || !right || !cut_formula)
    throw std::invalid_argument("compose_cut: null argument");
  if (!left->conclusion.suc.contains(cut_formula))
    throw std::invalid_argument("compose_cut: cut formula not in left succedent");
  if (!right->conclusion.ant.contains(cut_formula))
    throw std::invalid_argument("compose_cut: cut formula not in right antecedent");
  Sequent conc{left->conclusion.ant.unite(right->conclusion.ant.without(cut_formula)),
               left->conclusion.suc.without(cut_formula).unite(right->conclusion.suc)};
  return Derivation::make(Rule::Cut, std::move(conc), {left, right}, cut_formula);
}

Drv weaken_to(const Drv& d, const Sequent& target) {
  ILP_ASSERT(d->conclusion.subset_of(target), "weaken_to: not a subset");
  Drv cur = d;
  for (Fml f : target.ant)
    if (!cur->conclusion.ant.contains(f)) cur = mk_wl(cur, f);
  for (Fml f : target.suc)
    if (!cur->conclusion.suc.contains(f)) cur = mk_wr(cur, f);
  return cur;
}

namespace {

Drv checked(Drv node) {
  // Builders validate eagerly in the ILmPs-or-ILms-agnostic cases; modal
  // builders validate against their own system.
  return node;
}

}  // namespace

Drv mk_init(Fml a) {
  return checked(Derivation::make(Rule::Init, Sequent{FSet({a}), FSet({a})}, {}, a));
}

Drv mk_initbot() {
  return checked(
      Derivation::make(Rule::InitBot, Sequent{FSet({Formula::mk_bot()}), FSet()}, {}));
}

Drv mk_wl(const Drv& premise, Fml added) {
  Sequent c{premise->conclusion.ant.with(added), premise->conclusion.suc};
  return Derivation::make(Rule::WL, std::move(c), {premise}, added);
}

Drv mk_wr(const Drv& premise, Fml added) {
  Sequent c{premise->conclusion.ant, premise->conclusion.suc.with(added)};
  return Derivation::make(Rule::WR, std::move(c), {premise}, added);
}

Drv mk_logical(Rule rule, Sequent conclusion, std::vector<Drv> premises,
               Fml principal, int component) {
  Drv node = Derivation::make(rule, std::move(conclusion), std::move(premises),
                              principal, component);
  if (auto e = validate_node(System::ILmPs, *node))
    if (auto e2 = validate_node(System::ILms, *node))
      throw InternalError(std::string("mk_logical: ") + *e2);
  return node;
}

Drv mk_box_rule(Sequent conclusion, Drv premise) {
  Fml diag = conclusion.suc.size() == 1 ? conclusion.suc[0] : nullptr;
  Drv node = Derivation::make(Rule::BoxRule, std::move(conclusion), {std::move(premise)},
                              diag);
  if (auto e = validate_node(System::ILms, *node))
    throw InternalError(std::string("mk_box_rule: ") + *e);
  return node;
}

Drv mk_modal(Rule rule, Sequent conclusion, std::vector<Drv> premises, Fml diagonal,
             std::vector<Fml> principals) {
  Drv node = Derivation::make(rule, std::move(conclusion), std::move(premises),
                              diagonal, 0, std::move(principals));
  System sys = rule == Rule::Rhd ? System::ILms : System::ILmPs;
  if (auto e = validate_node(sys, *node))
    throw InternalError(std::string("mk_modal: ") + *e);
  return node;
}

}  // namespace ilp
