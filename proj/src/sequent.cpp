// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#include "ilp/sequent.hpp"

#include <algorithm>

namespace ilp {

FSet::FSet(std::vector<Fml> items) : v_(std::move(items)) {
  std::sort(v_.begin(), v_.end(), fml_less);
  v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
}

bool FSet::contains(Fml f) const {
  return std::binary_search(v_.begin(), v_.end(), f, fml_less);
}

bool FSet::insert(Fml f) {
  auto it = std::lower_bound(v_.begin(), v_.end(), f, fml_less);
  if (it != v_.end() && *it == f) return false;
  v_.insert(it, f);
  return true;
}

void FSet::erase(Fml f) {
  auto it = std::lower_bound(v_.begin(), v_.end(), f, fml_less);
  if (it != v_.end() && *it == f) v_.erase(it);
}

FSet FSet::with(Fml f) const {
  FSet out = *this;
  out.insert(f);
  return out;
}

FSet FSet::without(Fml f) const {
  FSet out = *this;
  out.erase(f);
  return out;
}

FSet FSet::unite(const FSet& o) const {
  FSet out;
  out.v_.reserve(v_.size() + o.v_.size());
  std::set_union(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(),
                 std::back_inserter(out.v_), fml_less);
  return out;
}

bool FSet::subset_of(const FSet& o) const {
  return std::includes(o.v_.begin(), o.v_.end(), v_.begin(), v_.end(), fml_less);
}

Fml FSet::first_common(const FSet& o) const {
  auto a = v_.begin();
  auto b = o.v_.begin();
  while (a != v_.end() && b != o.v_.end()) {
    if (*a == *b) return *a;
    if (fml_less(*a, *b))
      ++a;
    else
      ++b;
  }
  return nullptr;
}

std::size_t FSet::hash() const {
  std::size_t h = 0x811c9dc5u;
  for (Fml f : v_) h = (h ^ f->id()) * 0x01000193u;
  return h;
}

std::string print(const Sequent& s) {
  std::string out;
  bool first = true;
  for (Fml f : s.ant) {
    if (!first) out += ", ";
    out += print(f);
    first = false;
  }
  out += out.empty() ? "=>" : " =>";
  first = true;
  for (Fml f : s.suc) {
    out += first ? " " : ", ";
    out += print(f);
    first = false;
  }
  return out;
}

bool all_rhd(const FSet& fs) {
  for (Fml f : fs)
    if (f->kind() != Kind::Rhd) return false;
  return true;
}

FSet rhd_part(const FSet& fs) {
  FSet out;
  for (Fml f : fs)
    if (f->kind() == Kind::Rhd) out.insert(f);
  return out;
}

bool box_free(const Sequent& s) {
  for (Fml f : s.ant)
    if (has_box(f)) return false;
  for (Fml f : s.suc)
    if (has_box(f)) return false;
  return true;
}

}  // namespace ilp
