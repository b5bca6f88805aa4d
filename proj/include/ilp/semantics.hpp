// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#ifndef ILP_SEMANTICS_HPP
#define ILP_SEMANTICS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ilp/formula.hpp"

namespace ilp {

// ---------------------------------------------------------------------------
// Relations
// ---------------------------------------------------------------------------

/// Binary relation over world indices 0..n-1, as an adjacency matrix.
using Relation = std::vector<std::vector<bool>>;

Relation empty_relation(std::size_t n);
bool relation_transitive(const Relation& r);
/// True iff the relation has no directed cycle (general DFS check; the
/// relation need not be transitive).  On finite frames this is exactly
/// converse well-foundedness.
bool relation_acyclic(const Relation& r);
Relation relation_union(const Relation& a, const Relation& b);
Relation transitive_closure(Relation r);

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------
//
// Worlds are indices into `names`.  A valuation maps a variable to the set of
// worlds where it holds, as a vector<bool> indexed by world.

using ValuationMap = std::map<std::string, std::vector<bool>>;

/// Veltman-style model: R transitive and conversely well-founded, and one
/// relation S_w per world with S_w contained in R[w] x W, where
/// R[w] = {x : w R x}.  S[w][x][y] holds iff x S_w y.
struct VeltmanModel {
  std::vector<std::string> names;
  Relation R;
  std::vector<Relation> S;
  ValuationMap valuation;

  std::size_t size() const { return names.size(); }
  /// Throws std::invalid_argument unless: names nonempty and unique, all
  /// matrices are size x size, R is transitive and acyclic, and
  /// S[w][x][y] implies R[w][x].
  void validate() const;
};

/// Simplified model: a single relation S with no frame condition at all;
/// R transitive and conversely well-founded as always.
struct SimplifiedModel {
  std::vector<std::string> names;
  Relation R;
  Relation S;
  ValuationMap valuation;

  std::size_t size() const { return names.size(); }
  void validate() const;
};

/// Bimodal model for the [0]/[1] language: R0 transitive and conversely
/// well-founded (the Loeb modality), R1 arbitrary.
struct BimodalModel {
  std::vector<std::string> names;
  Relation R0;
  Relation R1;
  ValuationMap valuation;

  std::size_t size() const { return names.size(); }
  void validate() const;
};

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Which witness clause the simplified |> satisfies.  The normative reading
/// is `WitnessAnywhere`:
///   w ||- A |> B  iff  for all x with w R x and x ||- A
///                      there is y with x S y and y ||- B.
/// `WitnessUnderRoot` additionally requires w R y for the witness; it is
/// retained only for comparison and is not used by any pipeline.
enum class SimplifiedClause { WitnessAnywhere, WitnessUnderRoot };

/// Truth of f at every world (index-aligned with names).  Throws
/// std::invalid_argument if f mentions a variable missing from the valuation.
std::vector<bool> eval_all(const VeltmanModel& m, Fml f);
std::vector<bool> eval_all(const SimplifiedModel& m, Fml f,
                           SimplifiedClause clause = SimplifiedClause::WitnessAnywhere);
std::vector<bool> eval_all(const BimodalModel& m, BiFml f);

bool eval(const VeltmanModel& m, std::size_t world, Fml f);
bool eval(const SimplifiedModel& m, std::size_t world, Fml f,
          SimplifiedClause clause = SimplifiedClause::WitnessAnywhere);
bool eval(const BimodalModel& m, std::size_t world, BiFml f);

/// Evaluate many formulas over one model, sharing the subformula cache.
/// Returns one truth vector per input formula, in input order.
std::vector<std::vector<bool>> eval_many(const VeltmanModel& m,
                                         const std::vector<Fml>& fs);

// ---------------------------------------------------------------------------
// Frame validity and frame conditions
// ---------------------------------------------------------------------------

/// True iff f holds at every world under every valuation of vars(f) over the
/// model's worlds (the model's own valuation is ignored).  Exhaustive over
/// 2^(worlds * vars) valuations; throws std::invalid_argument when that
/// exponent exceeds 24.
bool frame_validates(const VeltmanModel& frame, Fml f);
bool frame_validates(const SimplifiedModel& frame, Fml f,
                     SimplifiedClause clause = SimplifiedClause::WitnessAnywhere);
bool frame_validates(const BimodalModel& frame, BiFml f);

/// The first-order frame condition matching axiom P on Veltman-style frames:
///   for all w, x, y, z:  w R x, x R y and y S_w z  imply  y S_x z.
bool satisfies_p_frame_condition(const VeltmanModel& m);

/// Condition (dagger): there are no x, y, z with x S y and y S z.
bool satisfies_dagger(const SimplifiedModel& m);

/// Correspondence check for one frame: returns true iff
///   (every instance A |> B -> [](A |> B), with A and B drawn from a fixed
///    pool of formulas over p and q, is valid in the frame)
/// agrees with satisfies_p_frame_condition.
bool frame_correspondence_P(const VeltmanModel& frame);

// ---------------------------------------------------------------------------
// Enumeration and random generation
// ---------------------------------------------------------------------------

/// All transitive acyclic relations on n worlds, reduced up to isomorphism by
/// keeping exactly the lexicographically minimal adjacency matrix in each
/// world-permutation orbit.  Deterministic order.
std::vector<Relation> enumerate_strict_orders(std::size_t n);

/// All Veltman frames with exactly n worlds (valuation empty), reduced up to
/// isomorphism by lexicographic minimality of the combined (R, S) adjacency
/// key over world permutations.  Deterministic order.  Intended for n <= 3.
std::vector<VeltmanModel> enumerate_veltman_frames(std::size_t n);

/// Seeded random simplified frame with 1..max_worlds worlds: R is a random
/// strict order (forward edges on the index order, transitively closed),
/// S is an unconstrained random relation, valuation empty.
SimplifiedModel random_simplified_frame(std::mt19937_64& gen,
                                        std::size_t max_worlds);

/// A model together with a distinguished world.
struct CountermodelHit {
  SimplifiedModel model;
  std::size_t world = 0;
};

/// Smallest-first brute-force search for a simplified model falsifying f at
/// some world.  World counts 1..max_worlds; R ranges over canonical strict
/// orders, S over all relations, valuations over vars(f).  Deterministic:
/// the first hit in enumeration order is returned.
std::optional<CountermodelHit> countermodel_search(Fml f,
                                                   std::size_t max_worlds);

// ---------------------------------------------------------------------------
// Model transformations
// ---------------------------------------------------------------------------

/// Submodel on the given worlds (indices must be sorted and unique); frame
/// conditions and the P frame condition are preserved by restriction.
VeltmanModel restrict_worlds(const VeltmanModel& m,
                             const std::vector<std::size_t>& keep);

/// Greedily delete worlds (never the designated one) while f stays false at
/// the designated world.  Returns the shrunk model and the designated
/// world's new index.
std::pair<VeltmanModel, std::size_t> minimize_countermodel(
    const VeltmanModel& m, std::size_t world, Fml f);

/// Unfold a Veltman-style model into a simplified model over all nonempty
/// R-paths: R' is proper path extension, and a path of length > 1 ending
/// ... x, y is S'-related exactly to the singleton paths <z> with y S_x z.
/// Truth at a path is truth at its last element, for every formula.
/// Precondition (std::invalid_argument): m satisfies the P frame condition.
/// The result satisfies condition (dagger).  Returns the unfolded model and
/// the index of the singleton path <world>.
std::pair<SimplifiedModel, std::size_t> simplify(const VeltmanModel& m,
                                                 std::size_t world);

/// Level product: worlds (x, k) for k = 0..degree(f); (x,k) R* (y,k) iff
/// x R y, and (x,k+1) S* (y,k) iff x S y (S* drops exactly one level).
/// Truth of B at (x,k) agrees with truth at x whenever degree(B) <= k, so
/// the designated world is (world, degree(f)).  The result has S*
/// transitive and R* union S* acyclic.
/// Precondition (std::invalid_argument): m satisfies condition (dagger).
std::pair<SimplifiedModel, std::size_t> level_product(const SimplifiedModel& m,
                                                      std::size_t world,
                                                      Fml f);

}  // namespace ilp

#endif  // ILP_SEMANTICS_HPP
