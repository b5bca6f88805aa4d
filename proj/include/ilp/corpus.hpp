// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.
//
// corpus.hpp: deterministic formula enumeration and seeded sampling, used by
// tests, the self-test command, and the acceptance harness.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ilp/formula.hpp"

namespace ilp {

/// All distinct formulas of syntactic size <= max_size over the listed
/// variables plus `false`.  Size is the node count of the unexpanded
/// formula: atoms, `~`, `[]` and each binary connective count 1.  `<>` and
/// `<->` are sugar and are not enumerated.  Deterministic order: by size,
/// then by construction (false, variables, ~, [], &, |, ->, |>).
std::vector<Fml> enumerate_formulas(const std::vector<std::string>& vars,
                                    int max_size);

/// Deterministic pseudo-random sample of `count` elements (with
/// replacement) from `pool`, driven by the given seed.
std::vector<Fml> sample_formulas(const std::vector<Fml>& pool, std::size_t count,
                                 std::uint64_t seed);

/// Deterministic sample of `count` formulas over {p} ∪ others, each of
/// connective depth <= max_depth, in which p occurs and is left-modalized
/// (every occurrence under a modal operator and outside all |>-right
/// components).  Inputs for the fixed-point machinery.
std::vector<Fml> sample_left_modalized(const std::string& p,
                                       const std::vector<std::string>& others,
                                       int max_depth, std::size_t count,
                                       std::uint64_t seed);

}  // namespace ilp
