// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.
//
// search.hpp: backward proof search for the sequent systems ILms / ILmPs,
// returning checkable cut-free proof objects, together with an independent
// bottom-up derivability oracle used for cross-validation.

#pragma once

#include <cstdint>
#include <optional>

#include "ilp/derivation.hpp"

namespace ilp {

enum class Outcome { Provable, NotProvable, BudgetExceeded };

const char* outcome_name(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::NotProvable;
  std::optional<Proof> proof;  // present iff outcome == Provable
  std::uint64_t expanded = 0;  // number of search nodes visited
  bool provable() const { return outcome == Outcome::Provable; }
};

inline constexpr std::uint64_t kDefaultBudget = 20'000'000;

/// Proves the sequent in the given system.  The goal must be box-free
/// (primitive [] is expressed as (~A)|>false inside sequents).
Verdict prove(System system, const Sequent& goal,
              std::uint64_t budget = kDefaultBudget);

/// Decides theoremhood of a formula: expands primitive boxes and proves
/// (=> f).  For ILmPs this decides the logic itself; for ILms it decides
/// cut-free derivability.
Verdict decide(System system, Fml f, std::uint64_t budget = kDefaultBudget);
Verdict decide(Fml f, std::uint64_t budget = kDefaultBudget);

/// Independent oracle: forward least-fixpoint closure of the cut-free rules
/// over the subformula space of the goal, maintained as an antichain of
/// minimal derivable sequents.  Intended for small goals only (the subformula
/// closure must stay small; guarded by assertions).
bool prove_fixpoint_oracle(System system, const Sequent& goal);

/// Oracle analogue of decide().
bool oracle_decide(System system, Fml f);

}  // namespace ilp
