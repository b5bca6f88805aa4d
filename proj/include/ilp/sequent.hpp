// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.
//
// sequent.hpp: duplicate-free formula sets and two-sided sequents.
// "Gamma, A" follows union semantics throughout; sequents used by the
// proof systems are in box-free normal form.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ilp/formula.hpp"

namespace ilp {

/// Sorted (by intern id), duplicate-free set of formulas.
class FSet {
public:
  FSet() = default;
  explicit FSet(std::vector<Fml> items);

  bool contains(Fml f) const;
  /// Inserts f; returns true if it was absent.
  bool insert(Fml f);
  void erase(Fml f);

  FSet with(Fml f) const;
  FSet without(Fml f) const;
  FSet unite(const FSet& o) const;
  bool subset_of(const FSet& o) const;
  /// First common element with o, or nullptr.
  Fml first_common(const FSet& o) const;

  bool empty() const { return v_.empty(); }
  std::size_t size() const { return v_.size(); }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  Fml operator[](std::size_t i) const { return v_[i]; }

  bool operator==(const FSet& o) const { return v_ == o.v_; }
  std::size_t hash() const;

private:
  std::vector<Fml> v_;
};

struct Sequent {
  FSet ant, suc;

  bool operator==(const Sequent& o) const { return ant == o.ant && suc == o.suc; }
  std::size_t hash() const { return ant.hash() * 0x9e3779b97f4a7c15ull + suc.hash(); }
  /// Componentwise subset.
  bool subset_of(const Sequent& o) const {
    return ant.subset_of(o.ant) && suc.subset_of(o.suc);
  }
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const { return s.hash(); }
};

/// "p, q => r" style rendering (canonical formula printing, set order).
std::string print(const Sequent& s);

/// True iff every member of the set is a Rhd formula.
bool all_rhd(const FSet& fs);

/// The Rhd-shaped members of the set.
FSet rhd_part(const FSet& fs);

/// True iff no member (on either side) contains a Box constructor.
bool box_free(const Sequent& s);

}  // namespace ilp
