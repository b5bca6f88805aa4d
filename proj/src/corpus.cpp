// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#include "ilp/corpus.hpp"

#include <algorithm>
#include <random>

namespace ilp {

std::vector<Fml> enumerate_formulas(const std::vector<std::string>& vars,
                                    int max_size) {
  ILP_ASSERT(max_size >= 1, "enumerate_formulas: max_size must be positive");
  std::vector<std::vector<Fml>> by_size(static_cast<std::size_t>(max_size) + 1);
  by_size[1].push_back(Formula::mk_bot());
  for (const std::string& v : vars) by_size[1].push_back(Formula::mk_var(v));

  for (int n = 2; n <= max_size; ++n) {
    auto& out = by_size[n];
    for (Fml f : by_size[n - 1]) {
      out.push_back(Formula::mk_neg(f));
      out.push_back(Formula::mk_box(f));
    }
    for (int i = 1; i <= n - 2; ++i) {
      for (Fml a : by_size[i]) {
        for (Fml b : by_size[n - 1 - i]) {
          out.push_back(Formula::mk_and(a, b));
          out.push_back(Formula::mk_or(a, b));
          out.push_back(Formula::mk_imp(a, b));
          out.push_back(Formula::mk_rhd(a, b));
        }
      }
    }
  }

  std::vector<Fml> all;
  for (int n = 1; n <= max_size; ++n)
    all.insert(all.end(), by_size[n].begin(), by_size[n].end());
  return all;
}

std::vector<Fml> sample_formulas(const std::vector<Fml>& pool, std::size_t count,
                                 std::uint64_t seed) {
  ILP_ASSERT(!pool.empty(), "sample_formulas: empty pool");
  std::mt19937_64 gen(seed);
  std::vector<Fml> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(pool[gen() % pool.size()]);
  return out;
}

namespace {

/// Random formula of modal/connective depth <= depth.  `modal` tracks
/// whether the position is in scope of some [] or |>; `banned` whether it
/// lies inside a |>-right component (sticky for the whole subtree).  p may
/// be placed exactly when modal && !banned, which keeps every occurrence
/// left-modalized.
Fml gen_left_modalized(std::mt19937_64& gen, const std::string& p,
                       const std::vector<std::string>& others, int depth,
                       bool modal, bool banned) {
  const bool p_ok = modal && !banned;
  auto leaf = [&]() -> Fml {
    std::uint64_t n = gen() % (others.size() + (p_ok ? 2 : 1));
    if (n < others.size()) return Formula::mk_var(others[n]);
    if (n == others.size()) return Formula::mk_bot();
    return Formula::mk_var(p);
  };
  if (depth <= 0) return leaf();
  switch (gen() % 8) {
    case 0: return leaf();
    case 1:
      return Formula::mk_neg(
          gen_left_modalized(gen, p, others, depth - 1, modal, banned));
    case 2:
      return Formula::mk_and(
          gen_left_modalized(gen, p, others, depth - 1, modal, banned),
          gen_left_modalized(gen, p, others, depth - 1, modal, banned));
    case 3:
      return Formula::mk_or(
          gen_left_modalized(gen, p, others, depth - 1, modal, banned),
          gen_left_modalized(gen, p, others, depth - 1, modal, banned));
    case 4:
      return Formula::mk_imp(
          gen_left_modalized(gen, p, others, depth - 1, modal, banned),
          gen_left_modalized(gen, p, others, depth - 1, modal, banned));
    case 5:
      return Formula::mk_box(
          gen_left_modalized(gen, p, others, depth - 1, true, banned));
    default:
      return Formula::mk_rhd(
          gen_left_modalized(gen, p, others, depth - 1, true, banned),
          gen_left_modalized(gen, p, others, depth - 1, true, true));
  }
}

}  // namespace

std::vector<Fml> sample_left_modalized(const std::string& p,
                                       const std::vector<std::string>& others,
                                       int max_depth, std::size_t count,
                                       std::uint64_t seed) {
  ILP_ASSERT(max_depth >= 1, "sample_left_modalized: max_depth must be positive");
  std::mt19937_64 gen(seed);
  std::vector<Fml> out;
  out.reserve(count);
  int guard = 0;
  while (out.size() < count) {
    Fml f = gen_left_modalized(gen, p, others, max_depth, false, false);
    std::vector<std::string> vs = vars(f);
    bool has_p = std::find(vs.begin(), vs.end(), p) != vs.end();
    if (has_p) {
      ILP_ASSERT(is_left_modalized(f, p),
                 "generator must keep the fixed-point variable left-modalized");
      out.push_back(f);
      guard = 0;
    } else {
      ILP_ASSERT(++guard < 100000, "sample_left_modalized: rejection stall");
    }
  }
  return out;
}

}  // namespace ilp
