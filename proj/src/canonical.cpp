// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#include "ilp/canonical.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ilp/sequent.hpp"

namespace ilp {
namespace {

struct IdLess {
  bool operator()(Fml a, Fml b) const { return a->id() < b->id(); }
};

using FmlSet = std::set<Fml, IdLess>;

void close_subformulas_tilde(FmlSet& phi) {
  std::vector<Fml> work(phi.begin(), phi.end());
  while (!work.empty()) {
    Fml f = work.back();
    work.pop_back();
    for (Fml g : subformulas(f))
      if (phi.insert(g).second) work.push_back(g);
    Fml t = tilde(f);
    if (phi.insert(t).second) work.push_back(t);
  }
}

std::vector<Fml> rhd_sides(const FmlSet& phi) {
  FmlSet sides;
  sides.insert(Formula::mk_bot());
  for (Fml f : phi)
    if (f->kind() == Kind::Rhd) {
      sides.insert(f->lhs());
      sides.insert(f->rhs());
    }
  return {sides.begin(), sides.end()};
}

// Right-nested disjunction of the given formulas in their list order; null
// is never returned for a nonempty list.
Fml right_nested_or(const std::vector<Fml>& parts) {
  ILP_ASSERT(!parts.empty(), "disjunction needs at least one disjunct");
  Fml disj = nullptr;
  for (std::size_t i = parts.size(); i-- > 0;)
    disj = disj ? Formula::mk_or(parts[i], disj) : parts[i];
  return disj;
}

}  // namespace

// ---------------------------------------------------------------------------
// Adequate sets
// ---------------------------------------------------------------------------

bool AdequateSet::contains(Fml f) const {
  auto it = std::lower_bound(formulas.begin(), formulas.end(), f, IdLess{});
  return it != formulas.end() && *it == f;
}

std::size_t AdequateSet::index_of(Fml f) const {
  auto it = std::lower_bound(formulas.begin(), formulas.end(), f, IdLess{});
  ILP_ASSERT(it != formulas.end() && *it == f,
             "formula is not in the adequate set: " + print(f));
  return static_cast<std::size_t>(it - formulas.begin());
}

AdequateSet adequate_closure(const std::vector<Fml>& seed) {
  FmlSet phi(seed.begin(), seed.end());
  phi.insert(Formula::mk_bot());
  std::vector<Fml> rr;
  std::size_t prev = 0;
  while (phi.size() != prev) {
    close_subformulas_tilde(phi);
    rr = rhd_sides(phi);
    ILP_ASSERT(rr.size() <= 10,
               "adequate closure: the |>-range is too large for condition (6)");
    prev = phi.size();
    // (3) all |>-combinations over the range.
    for (Fml b : rr)
      for (Fml c : rr) phi.insert(Formula::mk_rhd(b, c));
    // (4) boxes of every |> formula (including those just added).
    {
      std::vector<Fml> cur(phi.begin(), phi.end());
      for (Fml f : cur)
        if (f->kind() == Kind::Rhd) phi.insert(Formula::mk_box(f));
    }
    // (5) boxed negations of the range.
    for (Fml b : rr) phi.insert(Formula::mk_box(tilde(b)));
    // (6) boxed implications into canonical nonempty subsets of the range:
    // duplicate-free, ascending enumeration order, right-nested.
    const std::uint64_t total = std::uint64_t{1} << rr.size();
    for (Fml b : rr) {
      for (std::uint64_t mask = 1; mask < total; ++mask) {
        std::vector<Fml> parts;
        for (std::size_t i = 0; i < rr.size(); ++i)
          if ((mask >> i) & 1) parts.push_back(rr[i]);
        phi.insert(Formula::mk_box(Formula::mk_imp(b, right_nested_or(parts))));
      }
    }
  }
  close_subformulas_tilde(phi);
  AdequateSet out;
  out.formulas.assign(phi.begin(), phi.end());
  out.rhd_range = rr;
  return out;
}

// ---------------------------------------------------------------------------
// Canonical model construction
// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Consistency results are reusable across builds: the key is the sorted
// id-vector of the (box-expanded) antecedent.
std::map<std::vector<std::uint32_t>, bool>& consistency_memo() {
  static std::map<std::vector<std::uint32_t>, bool> memo;
  return memo;
}

class Builder {
 public:
  Builder(Fml target, std::uint64_t budget)
      : target_(target), budget_(budget), phi_(adequate_closure({target})) {
    n_ = phi_.formulas.size();
    lhs_.assign(n_, kNone);
    rhs_.assign(n_, kNone);
    tilde_.assign(n_, kNone);
    atom_slot_.assign(n_, kNone);
    for (std::size_t i = 0; i < n_; ++i) {
      Fml f = phi_.formulas[i];
      switch (f->kind()) {
        case Kind::Var:
        case Kind::Box:
        case Kind::Rhd:
          atom_slot_[i] = atoms_.size();
          atoms_.push_back(i);
          break;
        default:
          break;
      }
      switch (f->kind()) {
        case Kind::Neg:
        case Kind::Box:
          lhs_[i] = phi_.index_of(f->lhs());
          break;
        case Kind::And:
        case Kind::Or:
        case Kind::Imp:
        case Kind::Rhd:
          lhs_[i] = phi_.index_of(f->lhs());
          rhs_[i] = phi_.index_of(f->rhs());
          break;
        default:
          break;
      }
      if (f->kind() == Kind::Box) boxes_.push_back(i);
      if (f->kind() == Kind::Rhd) rhds_.push_back(i);
      tilde_[i] = phi_.index_of(tilde(f));
    }
    eval_order_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) eval_order_[i] = i;
    std::stable_sort(eval_order_.begin(), eval_order_.end(),
                     [&](std::size_t a, std::size_t b) {
                       return phi_.formulas[a]->node_count() <
                              phi_.formulas[b]->node_count();
                     });
    lit_true_.assign(n_, nullptr);
    lit_false_.assign(n_, nullptr);
    for (std::size_t i : atoms_) {
      lit_true_[i] = expand_box(phi_.formulas[i]);
      lit_false_[i] = Formula::mk_neg(lit_true_[i]);
    }
  }

  void seed() { add_world({tilde(target_)}, "falsifying root"); }

  void repair() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t g = 0; g < member_.size(); ++g) {
        changed |= repair_boxes(g);
        changed |= repair_rhd_falsity(g);
        changed |= repair_s_witnesses(g);
      }
    }
  }

  CanonicalModel finish() {
    const std::size_t worlds = member_.size();
    const std::vector<Fml>& rr = phi_.rhd_range;
    const std::size_t tags = rr.size();
    std::vector<std::size_t> rr_idx;
    rr_idx.reserve(tags);
    for (Fml e : rr) rr_idx.push_back(phi_.index_of(e));
    const std::size_t n = worlds * tags;

    // Precompute the order and its refinement per tag.
    std::vector<std::vector<bool>> pg(worlds, std::vector<bool>(worlds));
    for (std::size_t g = 0; g < worlds; ++g)
      for (std::size_t d = 0; d < worlds; ++d) pg[g][d] = prec(g, d);
    std::vector<std::vector<std::vector<bool>>> pc(
        worlds, std::vector<std::vector<bool>>(worlds,
                                               std::vector<bool>(tags)));
    for (std::size_t g = 0; g < worlds; ++g)
      for (std::size_t d = 0; d < worlds; ++d)
        for (std::size_t c = 0; c < tags; ++c)
          pc[g][d][c] = pg[g][d] && prec_c_extra(g, d, rr_idx[c]);

    CanonicalModel out;
    out.phi = phi_;
    VeltmanModel& m = out.model;
    m.names.reserve(n);
    for (std::size_t g = 0; g < worlds; ++g)
      for (std::size_t j = 0; j < tags; ++j)
        m.names.push_back("g" + std::to_string(g) + "b" + std::to_string(j));
    m.R = empty_relation(n);
    for (std::size_t g = 0; g < worlds; ++g)
      for (std::size_t d = 0; d < worlds; ++d) {
        if (!pg[g][d]) continue;
        for (std::size_t j = 0; j < tags; ++j)
          for (std::size_t c = 0; c < tags; ++c)
            m.R[g * tags + j][d * tags + c] = true;
      }
    m.S.assign(n, empty_relation(n));
    for (std::size_t g = 0; g < worlds; ++g)
      for (std::size_t j = 0; j < tags; ++j) {
        Relation& sw = m.S[g * tags + j];
        for (std::size_t d = 0; d < worlds; ++d) {
          if (!pg[g][d]) continue;
          for (std::size_t c = 0; c < tags; ++c) {
            const bool critical = pc[g][d][c];
            for (std::size_t t = 0; t < worlds; ++t) {
              const bool allowed =
                  !critical || member_[t][tilde_[rr_idx[c]]];
              if (!allowed) continue;
              for (std::size_t e = 0; e < tags; ++e)
                sw[d * tags + c][t * tags + e] = true;
            }
          }
        }
      }
    for (std::size_t i = 0; i < n_; ++i) {
      if (phi_.formulas[i]->kind() != Kind::Var) continue;
      std::vector<bool> where(n, false);
      for (std::size_t g = 0; g < worlds; ++g)
        if (member_[g][i])
          for (std::size_t j = 0; j < tags; ++j) where[g * tags + j] = true;
      m.valuation.emplace(phi_.formulas[i]->var(), std::move(where));
    }
    m.validate();

    out.membership.reserve(n);
    for (std::size_t g = 0; g < worlds; ++g)
      for (std::size_t j = 0; j < tags; ++j) out.membership.push_back(member_[g]);

    const auto bot_it =
        std::find(rr.begin(), rr.end(), Formula::mk_bot());
    ILP_ASSERT(bot_it != rr.end(), "the |>-range must contain false");
    out.designated = static_cast<std::size_t>(bot_it - rr.begin());

    out.report.phi_size = n_;
    out.report.rhd_range_size = tags;
    out.report.world_count = n;
    out.report.consistency_checks = prover_calls_;
    out.report.frame_ok = satisfies_p_frame_condition(m);

    const auto evs = eval_many(m, phi_.formulas);
    bool truth_ok = true;
    for (std::size_t i = 0; i < n_ && truth_ok; ++i)
      for (std::size_t g = 0; g < worlds && truth_ok; ++g)
        for (std::size_t j = 0; j < tags && truth_ok; ++j)
          truth_ok = evs[i][g * tags + j] == member_[g][i];
    out.report.truth_lemma_ok = truth_ok;

    ILP_ASSERT(out.report.truth_lemma_ok,
               "canonical model failed the truth-lemma scan");
    ILP_ASSERT(out.report.frame_ok,
               "canonical model violates the P frame condition");
    ILP_ASSERT(!eval(m, out.designated, target_),
               "designated world must falsify the target");
    return out;
  }

 private:
  // ---- consistency ----

  bool consistent(std::vector<Fml> items) {
    FSet ant(std::move(items));
    std::vector<std::uint32_t> key;
    key.reserve(ant.size());
    for (Fml f : ant) key.push_back(f->id());
    auto& memo = consistency_memo();
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    ++prover_calls_;
    const Verdict v = prove(System::ILmPs, Sequent{ant, FSet{}}, budget_);
    if (v.outcome == Outcome::BudgetExceeded)
      throw std::runtime_error(
          "budget exceeded during canonical consistency checking");
    const bool ok = v.outcome == Outcome::NotProvable;
    memo.emplace(std::move(key), ok);
    return ok;
  }

  std::vector<Fml> as_antecedent(
      const std::vector<Fml>& core,
      const std::vector<std::pair<std::size_t, bool>>& lits) const {
    std::vector<Fml> items;
    items.reserve(core.size() + lits.size());
    for (Fml c : core) items.push_back(expand_box(c));
    for (const auto& [slot, val] : lits) {
      const std::size_t i = atoms_[slot];
      items.push_back(val ? lit_true_[i] : lit_false_[i]);
    }
    return items;
  }

  // Deterministic extension of a consistent core to a full atom assignment
  // (false tried before true at every atom).
  std::optional<std::vector<bool>> try_extend(const std::vector<Fml>& core) {
    std::vector<std::pair<std::size_t, bool>> lits;
    if (!consistent(as_antecedent(core, lits))) return std::nullopt;
    const std::size_t m = atoms_.size();
    std::vector<bool> out(m, false);
    const auto go = [&](auto&& self, std::size_t k) -> bool {
      if (k == m) return true;
      for (const bool val : {false, true}) {
        lits.emplace_back(k, val);
        if (consistent(as_antecedent(core, lits))) {
          out[k] = val;
          if (self(self, k + 1)) return true;
        }
        lits.pop_back();
      }
      return false;
    };
    if (!go(go, 0)) return std::nullopt;
    return out;
  }

  // ---- worlds ----

  std::vector<bool> derive(const std::vector<bool>& atom_vals) const {
    std::vector<bool> mem(n_, false);
    for (const std::size_t i : eval_order_) {
      switch (phi_.formulas[i]->kind()) {
        case Kind::Var:
        case Kind::Box:
        case Kind::Rhd:
          mem[i] = atom_vals[atom_slot_[i]];
          break;
        case Kind::Bot:
          break;
        case Kind::Neg:
          mem[i] = !mem[lhs_[i]];
          break;
        case Kind::And:
          mem[i] = mem[lhs_[i]] && mem[rhs_[i]];
          break;
        case Kind::Or:
          mem[i] = mem[lhs_[i]] || mem[rhs_[i]];
          break;
        case Kind::Imp:
          mem[i] = !mem[lhs_[i]] || mem[rhs_[i]];
          break;
      }
    }
    return mem;
  }

  std::size_t add_world(const std::vector<Fml>& core, const char* why) {
    auto a = try_extend(core);
    ILP_ASSERT(a.has_value(),
               std::string("canonical repair core is unsatisfiable (") + why +
                   ")");
    ILP_ASSERT(!seen_.count(*a),
               std::string("canonical repair recreated an existing world (") +
                   why + ")");
    std::vector<bool> mem = derive(*a);
    for (Fml c : core)
      ILP_ASSERT(mem[phi_.index_of(c)], "extension must realize its core");
    seen_.insert(*a);
    member_.push_back(std::move(mem));
    ILP_ASSERT(member_.size() <= 20000, "canonical model exceeded the world cap");
    return member_.size() - 1;
  }

  // ---- the order and its refinements ----

  bool prec(std::size_t g, std::size_t d) const {
    bool has_new = false;
    for (const std::size_t bi : boxes_) {
      if (member_[g][bi]) {
        if (!member_[d][bi] || !member_[d][lhs_[bi]]) return false;
      } else if (member_[d][bi]) {
        has_new = true;
      }
    }
    return has_new;
  }

  // The extra clause of the E-refined order: B |> E in world g forces ~B in
  // world d (E given as an index into phi).
  bool prec_c_extra(std::size_t g, std::size_t d, std::size_t e) const {
    for (const std::size_t ri : rhds_)
      if (rhs_[ri] == e && member_[g][ri] && !member_[d][tilde_[lhs_[ri]]])
        return false;
    return true;
  }

  bool prec_c(std::size_t g, std::size_t d, std::size_t e) const {
    return prec(g, d) && prec_c_extra(g, d, e);
  }

  std::vector<Fml> box_core(std::size_t g) const {
    std::vector<Fml> core;
    for (const std::size_t bi : boxes_)
      if (member_[g][bi]) {
        core.push_back(phi_.formulas[bi]);
        core.push_back(phi_.formulas[lhs_[bi]]);
      }
    return core;
  }

  // ---- repair rules ----

  // (a) Every box absent from g needs a successor keeping the box while
  // refuting its body (the Loeb-style existence property).
  bool repair_boxes(std::size_t g) {
    bool changed = false;
    for (const std::size_t bi : boxes_) {
      if (member_[g][bi]) continue;
      bool found = false;
      for (std::size_t d = 0; d < member_.size() && !found; ++d)
        found = member_[d][bi] && member_[d][tilde_[lhs_[bi]]] && prec(g, d);
      if (found) continue;
      std::vector<Fml> core = box_core(g);
      core.push_back(phi_.formulas[bi]);
      core.push_back(phi_.formulas[tilde_[lhs_[bi]]]);
      add_world(core, "box witness");
      changed = true;
    }
    return changed;
  }

  // (b) Every C |> D absent from g needs a D-refined successor containing C.
  // The witness is the rule-(a) world for the box [](C -> B_1 v ... v B_k)
  // where the B_j are exactly the left sides |>-related to D inside g
  // (or []~C when there are none); that box cannot be a member of g.
  bool repair_rhd_falsity(std::size_t g) {
    bool changed = false;
    for (const std::size_t ri : rhds_) {
      if (member_[g][ri]) continue;
      const std::size_t c = lhs_[ri], dtag = rhs_[ri];
      bool found = false;
      for (std::size_t d = 0; d < member_.size() && !found; ++d)
        found = member_[d][c] && prec_c(g, d, dtag);
      if (found) continue;
      std::vector<Fml> bs;
      for (const std::size_t rj : rhds_)
        if (rhs_[rj] == dtag && member_[g][rj])
          bs.push_back(phi_.formulas[lhs_[rj]]);
      std::sort(bs.begin(), bs.end(), IdLess{});
      bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
      const Fml box =
          bs.empty()
              ? Formula::mk_box(tilde(phi_.formulas[c]))
              : Formula::mk_box(Formula::mk_imp(phi_.formulas[c],
                                                right_nested_or(bs)));
      const std::size_t bi = phi_.index_of(box);
      ILP_ASSERT(!member_[g][bi],
                 "witness box for a |>-falsity must be absent from the world");
      std::vector<Fml> core = box_core(g);
      core.push_back(box);
      core.push_back(phi_.formulas[tilde_[lhs_[bi]]]);
      add_world(core, "rhd falsity witness");
      changed = true;
    }
    return changed;
  }

  // (c) Every C |> D inside g whose E-refined successors can reach C needs a
  // world containing both D and ~E.
  bool repair_s_witnesses(std::size_t g) {
    bool changed = false;
    for (const std::size_t ri : rhds_) {
      if (!member_[g][ri]) continue;
      const std::size_t c = lhs_[ri], dtag = rhs_[ri];
      for (Fml e_f : phi_.rhd_range) {
        const std::size_t e = phi_.index_of(e_f);
        bool trigger = false;
        for (std::size_t d = 0; d < member_.size() && !trigger; ++d)
          trigger = member_[d][c] && prec_c(g, d, e);
        if (!trigger) continue;
        bool have = false;
        for (std::size_t t = 0; t < member_.size() && !have; ++t)
          have = member_[t][dtag] && member_[t][tilde_[e]];
        if (have) continue;
        add_world({phi_.formulas[dtag], phi_.formulas[tilde_[e]]},
                  "S witness");
        changed = true;
      }
    }
    return changed;
  }

  // ---- data ----

  Fml target_;
  std::uint64_t budget_;
  AdequateSet phi_;
  std::size_t n_ = 0;
  std::vector<std::size_t> lhs_, rhs_, tilde_, atom_slot_;
  std::vector<std::size_t> atoms_, boxes_, rhds_;
  std::vector<std::size_t> eval_order_;
  std::vector<Fml> lit_true_, lit_false_;

  std::vector<std::vector<bool>> member_;
  std::set<std::vector<bool>> seen_;
  std::uint64_t prover_calls_ = 0;
};

}  // namespace

CanonicalModel build_canonical(Fml a, std::uint64_t budget) {
  const Verdict v = decide(a, budget);
  if (v.outcome == Outcome::Provable)
    throw std::invalid_argument(
        "cannot build a countermodel for a theorem: " + print(a));
  if (v.outcome == Outcome::BudgetExceeded)
    throw std::runtime_error(
        "budget exceeded while deciding the countermodel target");
  Builder b(a, budget);
  b.seed();
  b.repair();
  return b.finish();
}

Countermodel countermodel(Fml a, Stage stage, std::uint64_t budget) {
  CanonicalModel cm = build_canonical(a, budget);
  Countermodel out;
  out.stage = stage;
  out.report = cm.report;
  auto [mini, des] = minimize_countermodel(cm.model, cm.designated, a);
  out.veltman = std::move(mini);
  out.veltman_world = des;
  if (stage == Stage::Canonical) return out;

  auto [simp, sdes] = simplify(out.veltman, out.veltman_world);
  ILP_ASSERT(!eval(simp, sdes, a),
             "path unfolding must preserve falsification");
  out.simplified = std::move(simp);
  out.simplified_world = sdes;
  if (stage == Stage::Simplified) return out;

  auto [lvl, ldes] = level_product(out.simplified, out.simplified_world, a);
  ILP_ASSERT(!eval(lvl, ldes, a),
             "level product must preserve falsification");
  out.level = std::move(lvl);
  out.level_world = ldes;
  return out;
}

}  // namespace ilp
