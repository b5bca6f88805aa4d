// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.
//
// embedding.hpp: structural translation of the interpretability language
// into a bimodal language with one transitive conversely-well-founded
// modality [0] and one unrestricted modality [1], plus the matching model
// transfer and a frame witnessing that guarded fixed points are not unique.

#pragma once

#include <string>
#include <vector>

#include "ilp/formula.hpp"
#include "ilp/semantics.hpp"

namespace ilp {

/// Structural translation:
///   chi(false)  = false,            chi(p) = p,
///   boolean connectives map homomorphically,
///   chi([]A)    = [0]chi(A),
///   chi(A |> B) = [0](chi(A) -> <1>chi(B)).
BiFml chi(Fml a);

/// Reads a simplified model as a bimodal one over the same worlds: the
/// modal order becomes [0]-accessibility, the witness relation becomes
/// [1]-accessibility, and the valuation is unchanged.  Every formula then
/// agrees with its translation world by world.  When the witness relation
/// is chain-free (no x S y S z), [1][1]false is valid on the result.
BimodalModel transfer(const SimplifiedModel& m);

/// Two worlds x, y with x [0] y and y [1] x.  Under every valuation of the
/// given variables, every formula A satisfies A <-> ~[0]~[1]A at world 0,
/// so no formula can satisfy A <-> [0]~[1]A there.  The variables are
/// installed with all-false rows; callers adjust the valuation.
BimodalModel fpp_failure_frame(const std::vector<std::string>& vars);

}  // namespace ilp
