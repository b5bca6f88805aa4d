// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.
//
// interpolation.hpp: Craig interpolants extracted from cut-free proofs by
// block-splitting the sequent (Maehara's method), for both ILms and ILmPs.

#pragma once

#include <optional>

#include "ilp/derivation.hpp"
#include "ilp/search.hpp"

namespace ilp {

/// A partition of one sequent into two blocks.  Every antecedent member
/// belongs to exactly one of first.ant / second.ant, and every succedent
/// member to exactly one of first.suc / second.suc.
struct Separation {
  Sequent first, second;
};

/// Extracts the interpolant C for a cut-free proof under the given
/// partition of its conclusion:
///   first.ant => first.suc, C      and      C, second.ant => second.suc
/// are derivable, and every variable of C occurs in both blocks.
Fml maehara(System system, const Drv& proof, const Separation& sep);

struct InterpolantResult {
  Outcome outcome = Outcome::NotProvable;
  Fml interpolant = nullptr;          // set iff outcome == Provable
  std::optional<Proof> left_proof;    // proof of (A => C)
  std::optional<Proof> right_proof;   // proof of (C => B)
};

/// Decides (A => B) in `system` (boxes expanded), extracts the interpolant,
/// and re-proves both halves as a built-in soundness check.
InterpolantResult interpolate(System system, Fml a, Fml b,
                              std::uint64_t budget = kDefaultBudget);

}  // namespace ilp
