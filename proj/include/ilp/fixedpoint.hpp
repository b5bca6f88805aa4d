// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.
//
// fixedpoint.hpp: explicit fixed points for left-modalized formulas in the
// persistent system (ILmPs), verified post hoc by the decision procedure,
// together with a refutation sweep showing that merely modalized formulas
// (the schema F <-> true |> ~F) admit no fixed point.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilp/formula.hpp"
#include "ilp/search.hpp"

namespace ilp {

/// Thrown when a computed fixed point fails its prover-backed verification.
/// Distinct from std::invalid_argument (which signals a precondition
/// violation on the input): this error indicates a bug in the construction,
/// since the fixed-point theorem guarantees existence for valid inputs.
class FixpointVerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Single |>-headed case: the fixed point of p |-> A(p) |> B is A(true) |> B.
///
/// Precondition: p is left-modalized in A(p) |> B, i.e. p does not occur in
/// B nor in the right component of any |>- or []-subformula of A.  Throws
/// std::invalid_argument otherwise.  The construction itself is returned
/// unverified; use fixpoint() for the verified entry point.
Fml fixpoint_rhd(Fml a_of_p, Fml b, const std::string& p = "p");

struct FixpointResult {
  Fml fixpoint = nullptr;      // F with |- F <-> A(F) in ILmPs
  Verdict equivalence_verdict; // decision of F <-> A(F)
  bool variable_condition = false;  // vars(F) subset of vars(A) \ {p}
};

/// Computes a fixed point F of p |-> A(p), for p left-modalized in A, by
/// recursion on the modal subformulas containing p (each outermost such
/// subformula is reduced to the fixpoint_rhd case and the results are
/// recombined by substitution).  The candidate is then verified: the
/// decision procedure must prove F <-> A(F) in ILmPs and vars(F) must be
/// contained in vars(A) \ {p}.  Both outcomes are reported in the result;
/// if either fails, FixpointVerificationError is thrown.
///
/// Throws std::invalid_argument when p is not left-modalized in A.
FixpointResult fixpoint(Fml a_of_p, const std::string& p,
                        std::uint64_t budget = kDefaultBudget);

struct FppRefutationReport {
  std::uint64_t checked = 0;       // variable-free formulas examined
  std::uint64_t not_provable = 0;  // F with decide(F <-> true |> ~F) = NotProvable
  std::vector<Fml> provable_witnesses;  // would-be fixed points (expected empty)
  std::vector<Fml> budget_exceeded;     // undecided within budget (expected empty)
  bool all_refuted() const {
    return provable_witnesses.empty() && budget_exceeded.empty();
  }
};

/// Sweeps every variable-free formula F of size <= max_size and confirms
/// that F <-> true |> ~F is not provable in ILmPs: the map
/// A |-> true |> ~A is modalized but not left-modalized in A, and no
/// formula is a fixed point of it.
FppRefutationReport refute_fpp_witness(int max_size,
                                       std::uint64_t budget = kDefaultBudget);

}  // namespace ilp
