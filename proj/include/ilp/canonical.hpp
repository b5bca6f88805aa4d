// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.
//
// canonical.hpp: finite canonical countermodels for the |>-logic with
// persistence.  Given a non-theorem A, build a model over worlds that are
// maximal consistent subsets of a finite adequate formula set, certify it by
// scanning the truth lemma over the whole set, and expose the staged
// countermodel pipeline (canonical -> minimize -> path unfolding ->
// level product).

#ifndef ILP_CANONICAL_HPP
#define ILP_CANONICAL_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ilp/formula.hpp"
#include "ilp/search.hpp"
#include "ilp/semantics.hpp"

namespace ilp {

// ---------------------------------------------------------------------------
// Adequate sets
// ---------------------------------------------------------------------------

/// A finite formula set Phi closed the way the canonical construction needs:
///   (1) closed under subformulas and under the involutive negation ~
///       (~A strips a leading negation, otherwise prefixes one);
///   (2) false is in Phi_rhd;
///   (3) B, C in Phi_rhd implies B |> C in Phi;
///   (4) B |> C in Phi implies [](B |> C) in Phi;
///   (5) B in Phi_rhd implies []~B in Phi;
///   (6) B, C_1..C_n in Phi_rhd implies [](B -> C_1 | ... | C_n) in Phi,
///       where the disjunction ranges over canonical subsets of Phi_rhd:
///       duplicate-free, in a fixed enumeration order, right-nested;
/// with Phi_rhd = {B : some B |> C or C |> B is in Phi}.
struct AdequateSet {
  std::vector<Fml> formulas;   // sorted by formula id, duplicate-free
  std::vector<Fml> rhd_range;  // Phi_rhd, sorted by formula id

  bool contains(Fml f) const;
  std::size_t index_of(Fml f) const;  // position in formulas; throws if absent
};

/// Compute the least adequate set containing all of `seed` (fixpoint of the
/// closure rules above; terminates because Phi_rhd never grows beyond the
/// subformula closure of the seed plus false).
AdequateSet adequate_closure(const std::vector<Fml>& seed);

// ---------------------------------------------------------------------------
// Canonical models
// ---------------------------------------------------------------------------

/// Statistics and certification results for one canonical build.
struct CanonicalReport {
  std::size_t phi_size = 0;        // |Phi|
  std::size_t rhd_range_size = 0;  // |Phi_rhd|
  std::size_t world_count = 0;     // worlds in the final model
  std::uint64_t consistency_checks = 0;  // prover calls made (after memo)
  bool truth_lemma_ok = false;     // membership == truth for all of Phi
  bool frame_ok = false;           // Veltman conditions + P frame condition
};

/// A canonical countermodel: a Veltman-style model whose worlds are the
/// maximal consistent subsets built around a falsifying set for A, plus the
/// world / pair bookkeeping needed to certify it.
struct CanonicalModel {
  VeltmanModel model;
  std::size_t designated = 0;  // world where the target formula fails
  AdequateSet phi;
  // worlds[w][i] == true iff phi.formulas[i] is a member of world w's set.
  std::vector<std::vector<bool>> membership;
  CanonicalReport report;
};

/// Build a certified canonical countermodel for a non-theorem A:
/// throws std::invalid_argument if A is provable (decided internally) and
/// InternalError if certification fails.  Deterministic.
CanonicalModel build_canonical(Fml a, std::uint64_t budget = kDefaultBudget);

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

enum class Stage { Canonical, Simplified, Level };

/// One staged countermodel for a non-theorem.
struct Countermodel {
  Stage stage = Stage::Canonical;
  // Canonical stage: the (minimized) Veltman-style model.
  VeltmanModel veltman;
  std::size_t veltman_world = 0;
  // Simplified stage (and beyond): path unfolding of the veltman model.
  SimplifiedModel simplified;
  std::size_t simplified_world = 0;
  // Level stage: level product of the simplified model.
  SimplifiedModel level;
  std::size_t level_world = 0;
  CanonicalReport report;
};

/// Full pipeline: build canonical, greedily minimize, then (for the
/// requested stage) unfold to a simplified model and take the level product.
/// Every produced stage falsifies A at its designated world; this is
/// re-checked on construction.
Countermodel countermodel(Fml a, Stage stage,
                          std::uint64_t budget = kDefaultBudget);

}  // namespace ilp

#endif  // ILP_CANONICAL_HPP
