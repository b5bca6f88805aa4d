// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.
//
// cutelim.hpp: cut elimination for ILmPs derivations.  A single cut between
// cut-free subproofs is reduced by a terminating recursion whose measure is
// the pair (cut-formula size, height sum), decreasing lexicographically at
// every nested reduction step; the instrumentation asserts this.

#pragma once

#include <cstdint>

#include "ilp/derivation.hpp"

namespace ilp {

struct ReduceStats {
  std::uint64_t reduce_calls = 0;         // reduction steps performed
  std::uint64_t principal_rhd_cuts = 0;   // principal |>/|> reductions
  std::uint64_t max_depth = 0;            // deepest nesting of reductions
};

/// Reduces one cut: pi proves (... => ..., A), sigma proves (A, ... => ...),
/// both cut-free and checkable in ILmPs.  Returns a cut-free proof of
/// (pi.ant ∪ sigma.ant∖A  =>  pi.suc∖A ∪ sigma.suc).
Drv reduce_cut(const Drv& pi, const Drv& sigma, Fml cut_formula,
               ReduceStats* stats = nullptr);

/// Removes every cut from an ILmPs proof, topmost cuts first.  The
/// conclusion is preserved exactly.
Proof eliminate_cuts(const Proof& p, ReduceStats* stats = nullptr);

}  // namespace ilp
