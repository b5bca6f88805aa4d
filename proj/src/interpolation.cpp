// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#include "ilp/interpolation.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace ilp {
namespace {

// Block assignment for one premise: formulas the rule introduces get the
// block recorded in `added` (the principal's block, or the diagonal's);
// everything else persists from the conclusion and inherits its block.
// The `added` map is consulted first: formulas are hash-consed, so a
// rule-introduced formula can coincide with an unrelated conclusion member
// (e.g. the left component X of a side formula X|>Y equal to the |>-rule's
// own diagonal), and then the rule role is the one the construction needs;
// genuinely persisting formulas never carry an `added` entry.
struct AddedBlocks {
  std::unordered_map<const Formula*, int> ant, suc;
};

Separation split_premise(const Separation& par, const Sequent& prem,
                         const AddedBlocks& added) {
  Separation out;
  for (Fml f : prem.ant) {
    int block;
    if (auto it = added.ant.find(f); it != added.ant.end()) {
      block = it->second;
    } else if (par.first.ant.contains(f)) {
      block = 1;
    } else {
      ILP_ASSERT(par.second.ant.contains(f),
                 "interpolation: unassigned antecedent formula");
      block = 2;
    }
    (block == 1 ? out.first.ant : out.second.ant).insert(f);
  }
  for (Fml f : prem.suc) {
    int block;
    if (auto it = added.suc.find(f); it != added.suc.end()) {
      block = it->second;
    } else if (par.first.suc.contains(f)) {
      block = 1;
    } else {
      ILP_ASSERT(par.second.suc.contains(f),
                 "interpolation: unassigned succedent formula");
      block = 2;
    }
    (block == 1 ? out.first.suc : out.second.suc).insert(f);
  }
  return out;
}

int block_of_ant(const Separation& sep, Fml f) {
  if (sep.first.ant.contains(f)) return 1;
  ILP_ASSERT(sep.second.ant.contains(f), "interpolation: principal outside both blocks");
  return 2;
}

int block_of_suc(const Separation& sep, Fml f) {
  if (sep.first.suc.contains(f)) return 1;
  ILP_ASSERT(sep.second.suc.contains(f), "interpolation: principal outside both blocks");
  return 2;
}

Fml disjoin(const std::vector<Fml>& parts) {
  if (parts.empty()) return Formula::mk_bot();
  Fml out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = Formula::mk_or(out, parts[i]);
  return out;
}

class Maehara {
public:
  Fml run(const Drv& n, const Separation& sep) {
    switch (n->rule) {
      case Rule::Init: {
        Fml a = n->conclusion.ant[0];
        const int bl = block_of_ant(sep, a);
        const int br = block_of_suc(sep, a);
        if (bl == 1 && br == 1) return Formula::mk_bot();
        if (bl == 1 && br == 2) return a;
        if (bl == 2 && br == 1) return Formula::mk_neg(a);
        return Formula::mk_neg(Formula::mk_bot());
      }
      case Rule::InitBot:
        return block_of_ant(sep, Formula::mk_bot()) == 1
                   ? Formula::mk_bot()
                   : Formula::mk_neg(Formula::mk_bot());
      case Rule::WL:
      case Rule::WR:
        return run(n->premises[0], split_premise(sep, n->premises[0]->conclusion, {}));
      case Rule::NegL: {
        AddedBlocks add;
        add.suc[n->principal->lhs()] = block_of_ant(sep, n->principal);
        return run(n->premises[0], split_premise(sep, n->premises[0]->conclusion, add));
      }
      case Rule::NegR: {
        AddedBlocks add;
        add.ant[n->principal->lhs()] = block_of_suc(sep, n->principal);
        return run(n->premises[0], split_premise(sep, n->premises[0]->conclusion, add));
      }
      case Rule::AndL: {
        AddedBlocks add;
        Fml part = n->component == 1 ? n->principal->lhs() : n->principal->rhs();
        add.ant[part] = block_of_ant(sep, n->principal);
        return run(n->premises[0], split_premise(sep, n->premises[0]->conclusion, add));
      }
      case Rule::OrR: {
        AddedBlocks add;
        Fml part = n->component == 1 ? n->principal->lhs() : n->principal->rhs();
        add.suc[part] = block_of_suc(sep, n->principal);
        return run(n->premises[0], split_premise(sep, n->premises[0]->conclusion, add));
      }
      case Rule::ImpR: {
        AddedBlocks add;
        const int b = block_of_suc(sep, n->principal);
        add.ant[n->principal->lhs()] = b;
        add.suc[n->principal->rhs()] = b;
        return run(n->premises[0], split_premise(sep, n->premises[0]->conclusion, add));
      }
      case Rule::AndR: {
        const int b = block_of_suc(sep, n->principal);
        AddedBlocks a1, a2;
        a1.suc[n->principal->lhs()] = b;
        a2.suc[n->principal->rhs()] = b;
        return combine_two(n, sep, b, a1, a2);
      }
      case Rule::OrL: {
        const int b = block_of_ant(sep, n->principal);
        AddedBlocks a1, a2;
        a1.ant[n->principal->lhs()] = b;
        a2.ant[n->principal->rhs()] = b;
        return combine_two(n, sep, b, a1, a2);
      }
      case Rule::ImpL: {
        const int b = block_of_ant(sep, n->principal);
        AddedBlocks a1, a2;
        a1.suc[n->principal->lhs()] = b;
        a2.ant[n->principal->rhs()] = b;
        return combine_two(n, sep, b, a1, a2);
      }
      case Rule::BoxRule:
        return box_rule(n, sep);
      case Rule::Rhd:
      case Rule::RhdP:
        return modal(n, sep);
      case Rule::Cut:
        throw InternalError("interpolation requires a cut-free proof");
    }
    throw InternalError("interpolation: unknown rule");
  }

private:
  // Two-premise logical rule: block-1 principal disjoins the premise
  // interpolants, block-2 conjoins them.
  Fml combine_two(const Drv& n, const Separation& sep, int principal_block,
                  const AddedBlocks& a1, const AddedBlocks& a2) {
    Fml c1 = run(n->premises[0], split_premise(sep, n->premises[0]->conclusion, a1));
    Fml c2 = run(n->premises[1], split_premise(sep, n->premises[1]->conclusion, a2));
    return principal_block == 1 ? Formula::mk_or(c1, c2) : Formula::mk_and(c1, c2);
  }

  Fml box_rule(const Drv& n, const Separation& sep) {
    Fml boxed = n->conclusion.suc[0];
    Fml body = nullptr;
    ILP_ASSERT(is_box_shape(boxed, &body), "interpolation: (box) succedent shape");
    const int bd = block_of_suc(sep, boxed);
    AddedBlocks add;
    add.ant[boxed] = bd;
    add.suc[body] = bd;
    for (Fml g : n->conclusion.ant) {
      Fml gbody = nullptr;
      ILP_ASSERT(is_box_shape(g, &gbody), "interpolation: (box) antecedent shape");
      if (add.ant.find(gbody) == add.ant.end())
        add.ant[gbody] = block_of_ant(sep, g);
    }
    Fml d = run(n->premises[0], split_premise(sep, n->premises[0]->conclusion, add));
    if (bd == 2) {
      // C := [] D, written (~D)|>false.
      return Formula::mk_rhd(Formula::mk_neg(d), Formula::mk_bot());
    }
    // C := ~ [] ~D, written ~((~~D)|>false).
    return Formula::mk_neg(
        Formula::mk_rhd(Formula::mk_neg(Formula::mk_neg(d)), Formula::mk_bot()));
  }

  // The |> rules of both systems share the interpolant construction; only
  // the left-premise shape differs (handled by the generic splitter).
  Fml modal(const Drv& n, const Separation& sep) {
    Fml diag = n->conclusion.suc[0];
    const int bd = block_of_suc(sep, diag);

    // Left premise: the diagonal and its left component join the diagonal's
    // block; each lhs in the succedent joins block 1 if any principal with
    // that lhs sits in block 1, else block 2.
    AddedBlocks add;
    add.ant[diag] = bd;
    add.ant[diag->lhs()] = bd;
    for (Fml pr : n->principals) {
      const int b = block_of_ant(sep, pr);
      auto it = add.suc.find(pr->lhs());
      if (it == add.suc.end()) {
        add.suc[pr->lhs()] = b;
      } else if (b == 1) {
        it->second = 1;
      }
    }
    Fml d = run(n->premises[0], split_premise(sep, n->premises[0]->conclusion, add));

    // Side premises of principals in the block opposite the diagonal feed
    // the interpolant's right component.
    std::vector<Fml> parts;
    for (std::size_t i = 0; i < n->principals.size(); ++i) {
      Fml pr = n->principals[i];
      if (block_of_ant(sep, pr) == bd) continue;
      AddedBlocks sadd;
      sadd.ant[pr->rhs()] = block_of_ant(sep, pr);
      sadd.suc[diag->rhs()] = bd;
      const Drv& side = n->premises[1 + i];
      Fml e = run(side, split_premise(sep, side->conclusion, sadd));
      parts.push_back(bd == 1 ? Formula::mk_neg(e) : e);
    }
    Fml eprime = disjoin(parts);
    if (bd == 1) return Formula::mk_neg(Formula::mk_rhd(d, eprime));
    return Formula::mk_rhd(Formula::mk_neg(d), eprime);
  }
};

void validate_partition(const Sequent& conc, const Separation& sep) {
  ILP_ASSERT(sep.first.ant.unite(sep.second.ant) == conc.ant,
             "separation antecedent blocks must partition the sequent");
  ILP_ASSERT(sep.first.suc.unite(sep.second.suc) == conc.suc,
             "separation succedent blocks must partition the sequent");
  for (Fml f : sep.first.ant)
    ILP_ASSERT(!sep.second.ant.contains(f), "separation blocks overlap");
  for (Fml f : sep.first.suc)
    ILP_ASSERT(!sep.second.suc.contains(f), "separation blocks overlap");
}

}  // namespace

Fml maehara([[maybe_unused]] System system, const Drv& proof, const Separation& sep) {
  ILP_ASSERT(proof != nullptr, "maehara: empty proof");
  ILP_ASSERT(is_cut_free(proof), "maehara: proof must be cut-free");
  validate_partition(proof->conclusion, sep);
  return Maehara().run(proof, sep);
}

InterpolantResult interpolate(System system, Fml a, Fml b, std::uint64_t budget) {
  Fml ax = expand_box(a);
  Fml bx = expand_box(b);
  const Sequent goal{FSet({ax}), FSet({bx})};
  Verdict v = prove(system, goal, budget);
  InterpolantResult out;
  out.outcome = v.outcome;
  if (v.outcome != Outcome::Provable) return out;

  Separation sep{Sequent{FSet({ax}), FSet()}, Sequent{FSet(), FSet({bx})}};
  out.interpolant = maehara(system, v.proof->root, sep);

  // Built-in soundness check: both halves must be derivable.
  Verdict lw = prove(system, Sequent{FSet({ax}), FSet({out.interpolant})}, budget);
  Verdict rw = prove(system, Sequent{FSet({out.interpolant}), FSet({bx})}, budget);
  ILP_ASSERT(lw.outcome == Outcome::Provable,
             "interpolant does not follow from the antecedent: " + print(out.interpolant));
  ILP_ASSERT(rw.outcome == Outcome::Provable,
             "interpolant does not entail the consequent: " + print(out.interpolant));
  out.left_proof = std::move(lw.proof);
  out.right_proof = std::move(rw.proof);
  return out;
}

}  // namespace ilp
