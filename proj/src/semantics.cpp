// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#include "ilp/semantics.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace ilp {
namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_matrix(const Relation& r, std::size_t n, const std::string& what) {
  require(r.size() == n, what + ": relation has wrong row count");
  for (const auto& row : r)
    require(row.size() == n, what + ": relation has wrong column count");
}

void check_names(const std::vector<std::string>& names) {
  require(!names.empty(), "model must have at least one world");
  std::set<std::string> seen(names.begin(), names.end());
  require(seen.size() == names.size(), "world names must be unique");
}

void check_valuation(const ValuationMap& val, std::size_t n) {
  for (const auto& [var, worlds] : val)
    require(worlds.size() == n,
            "valuation for '" + var + "' has wrong world count");
}

const std::vector<bool>& lookup_var(const ValuationMap& val,
                                    const std::string& name) {
  auto it = val.find(name);
  if (it == val.end())
    throw std::invalid_argument("unknown variable in valuation: " + name);
  return it->second;
}

}  // namespace

// ---------------------------------------------------------------------------
// Relations
// ---------------------------------------------------------------------------

Relation empty_relation(std::size_t n) {
  return Relation(n, std::vector<bool>(n, false));
}

bool relation_transitive(const Relation& r) {
  const std::size_t n = r.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!r[x][y]) continue;
      for (std::size_t z = 0; z < n; ++z)
        if (r[y][z] && !r[x][z]) return false;
    }
  return true;
}

bool relation_acyclic(const Relation& r) {
  const std::size_t n = r.size();
  // 0 = unvisited, 1 = on the current DFS path, 2 = done.
  std::vector<int> color(n, 0);
  const auto dfs = [&](auto&& self, std::size_t x) -> bool {
    color[x] = 1;
    for (std::size_t y = 0; y < n; ++y) {
      if (!r[x][y]) continue;
      if (color[y] == 1) return false;
      if (color[y] == 0 && !self(self, y)) return false;
    }
    color[x] = 2;
    return true;
  };
  for (std::size_t x = 0; x < n; ++x)
    if (color[x] == 0 && !dfs(dfs, x)) return false;
  return true;
}

Relation relation_union(const Relation& a, const Relation& b) {
  ILP_ASSERT(a.size() == b.size(), "relation_union: size mismatch");
  Relation out = a;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y)
      if (b[x][y]) out[x][y] = true;
  return out;
}

Relation transitive_closure(Relation r) {
  const std::size_t n = r.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t x = 0; x < n; ++x) {
      if (!r[x][k]) continue;
      for (std::size_t y = 0; y < n; ++y)
        if (r[k][y]) r[x][y] = true;
    }
  return r;
}

// ---------------------------------------------------------------------------
// Model validation
// ---------------------------------------------------------------------------

void VeltmanModel::validate() const {
  check_names(names);
  const std::size_t n = size();
  check_matrix(R, n, "R");
  require(relation_transitive(R), "R must be transitive");
  require(relation_acyclic(R), "R must be conversely well-founded");
  require(S.size() == n, "S family must have one relation per world");
  for (std::size_t w = 0; w < n; ++w) {
    check_matrix(S[w], n, "S_w");
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (S[w][x][y])
          require(R[w][x], "S_w must relate only R-successors of w");
  }
  check_valuation(valuation, n);
}

void SimplifiedModel::validate() const {
  check_names(names);
  const std::size_t n = size();
  check_matrix(R, n, "R");
  require(relation_transitive(R), "R must be transitive");
  require(relation_acyclic(R), "R must be conversely well-founded");
  check_matrix(S, n, "S");
  check_valuation(valuation, n);
}

void BimodalModel::validate() const {
  check_names(names);
  const std::size_t n = size();
  check_matrix(R0, n, "R0");
  require(relation_transitive(R0), "R0 must be transitive");
  require(relation_acyclic(R0), "R0 must be conversely well-founded");
  check_matrix(R1, n, "R1");
  check_valuation(valuation, n);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

// One evaluator per model flavour; each caches truth vectors per subformula
// so shared subformulas are computed once.

struct VeltmanEval {
  const VeltmanModel& m;
  std::unordered_map<Fml, std::vector<bool>> cache;

  const std::vector<bool>& run(Fml f) {
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
    const std::size_t n = m.size();
    std::vector<bool> v(n, false);
    switch (f->kind()) {
      case Kind::Var:
        v = lookup_var(m.valuation, f->var());
        break;
      case Kind::Bot:
        break;
      case Kind::Neg: {
        const auto& a = run(f->lhs());
        for (std::size_t w = 0; w < n; ++w) v[w] = !a[w];
        break;
      }
      case Kind::And: {
        const auto a = run(f->lhs());
        const auto& b = run(f->rhs());
        for (std::size_t w = 0; w < n; ++w) v[w] = a[w] && b[w];
        break;
      }
      case Kind::Or: {
        const auto a = run(f->lhs());
        const auto& b = run(f->rhs());
        for (std::size_t w = 0; w < n; ++w) v[w] = a[w] || b[w];
        break;
      }
      case Kind::Imp: {
        const auto a = run(f->lhs());
        const auto& b = run(f->rhs());
        for (std::size_t w = 0; w < n; ++w) v[w] = !a[w] || b[w];
        break;
      }
      case Kind::Box: {
        const auto& a = run(f->lhs());
        for (std::size_t w = 0; w < n; ++w) {
          bool all = true;
          for (std::size_t x = 0; x < n && all; ++x)
            if (m.R[w][x] && !a[x]) all = false;
          v[w] = all;
        }
        break;
      }
      case Kind::Rhd: {
        const auto a = run(f->lhs());
        const auto& b = run(f->rhs());
        for (std::size_t w = 0; w < n; ++w) {
          bool ok = true;
          for (std::size_t x = 0; x < n && ok; ++x) {
            if (!m.R[w][x] || !a[x]) continue;
            bool witness = false;
            for (std::size_t y = 0; y < n && !witness; ++y)
              if (m.S[w][x][y] && b[y]) witness = true;
            ok = witness;
          }
          v[w] = ok;
        }
        break;
      }
    }
    return cache.emplace(f, std::move(v)).first->second;
  }
};

struct SimplifiedEval {
  const SimplifiedModel& m;
  SimplifiedClause clause;
  std::unordered_map<Fml, std::vector<bool>> cache;

  const std::vector<bool>& run(Fml f) {
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
    const std::size_t n = m.size();
    std::vector<bool> v(n, false);
    switch (f->kind()) {
      case Kind::Var:
        v = lookup_var(m.valuation, f->var());
        break;
      case Kind::Bot:
        break;
      case Kind::Neg: {
        const auto& a = run(f->lhs());
        for (std::size_t w = 0; w < n; ++w) v[w] = !a[w];
        break;
      }
      case Kind::And: {
        const auto a = run(f->lhs());
        const auto& b = run(f->rhs());
        for (std::size_t w = 0; w < n; ++w) v[w] = a[w] && b[w];
        break;
      }
      case Kind::Or: {
        const auto a = run(f->lhs());
        const auto& b = run(f->rhs());
        for (std::size_t w = 0; w < n; ++w) v[w] = a[w] || b[w];
        break;
      }
      case Kind::Imp: {
        const auto a = run(f->lhs());
        const auto& b = run(f->rhs());
        for (std::size_t w = 0; w < n; ++w) v[w] = !a[w] || b[w];
        break;
      }
      case Kind::Box: {
        const auto& a = run(f->lhs());
        for (std::size_t w = 0; w < n; ++w) {
          bool all = true;
          for (std::size_t x = 0; x < n && all; ++x)
            if (m.R[w][x] && !a[x]) all = false;
          v[w] = all;
        }
        break;
      }
      case Kind::Rhd: {
        const auto a = run(f->lhs());
        const auto& b = run(f->rhs());
        for (std::size_t w = 0; w < n; ++w) {
          bool ok = true;
          for (std::size_t x = 0; x < n && ok; ++x) {
            if (!m.R[w][x] || !a[x]) continue;
            bool witness = false;
            for (std::size_t y = 0; y < n && !witness; ++y) {
              if (!m.S[x][y] || !b[y]) continue;
              if (clause == SimplifiedClause::WitnessUnderRoot && !m.R[w][y])
                continue;
              witness = true;
            }
            ok = witness;
          }
          v[w] = ok;
        }
        break;
      }
    }
    return cache.emplace(f, std::move(v)).first->second;
  }
};

struct BimodalEval {
  const BimodalModel& m;
  std::unordered_map<BiFml, std::vector<bool>> cache;

  const std::vector<bool>& run(BiFml f) {
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
    const std::size_t n = m.size();
    std::vector<bool> v(n, false);
    switch (f->kind()) {
      case BiKind::Var:
        v = lookup_var(m.valuation, f->var());
        break;
      case BiKind::Bot:
        break;
      case BiKind::Neg: {
        const auto& a = run(f->lhs());
        for (std::size_t w = 0; w < n; ++w) v[w] = !a[w];
        break;
      }
      case BiKind::And: {
        const auto a = run(f->lhs());
        const auto& b = run(f->rhs());
        for (std::size_t w = 0; w < n; ++w) v[w] = a[w] && b[w];
        break;
      }
      case BiKind::Or: {
        const auto a = run(f->lhs());
        const auto& b = run(f->rhs());
        for (std::size_t w = 0; w < n; ++w) v[w] = a[w] || b[w];
        break;
      }
      case BiKind::Imp: {
        const auto a = run(f->lhs());
        const auto& b = run(f->rhs());
        for (std::size_t w = 0; w < n; ++w) v[w] = !a[w] || b[w];
        break;
      }
      case BiKind::BoxK: {
        const auto& a = run(f->lhs());
        const Relation& r = f->modality() == 0 ? m.R0 : m.R1;
        for (std::size_t w = 0; w < n; ++w) {
          bool all = true;
          for (std::size_t x = 0; x < n && all; ++x)
            if (r[w][x] && !a[x]) all = false;
          v[w] = all;
        }
        break;
      }
    }
    return cache.emplace(f, std::move(v)).first->second;
  }
};

}  // namespace

std::vector<bool> eval_all(const VeltmanModel& m, Fml f) {
  VeltmanEval e{m, {}};
  return e.run(f);
}

std::vector<bool> eval_all(const SimplifiedModel& m, Fml f,
                           SimplifiedClause clause) {
  SimplifiedEval e{m, clause, {}};
  return e.run(f);
}

std::vector<bool> eval_all(const BimodalModel& m, BiFml f) {
  BimodalEval e{m, {}};
  return e.run(f);
}

bool eval(const VeltmanModel& m, std::size_t world, Fml f) {
  ILP_ASSERT(world < m.size(), "eval: world out of range");
  return eval_all(m, f)[world];
}

bool eval(const SimplifiedModel& m, std::size_t world, Fml f,
          SimplifiedClause clause) {
  ILP_ASSERT(world < m.size(), "eval: world out of range");
  return eval_all(m, f, clause)[world];
}

bool eval(const BimodalModel& m, std::size_t world, BiFml f) {
  ILP_ASSERT(world < m.size(), "eval: world out of range");
  return eval_all(m, f)[world];
}

std::vector<std::vector<bool>> eval_many(const VeltmanModel& m,
                                         const std::vector<Fml>& fs) {
  VeltmanEval e{m, {}};
  std::vector<std::vector<bool>> out;
  out.reserve(fs.size());
  for (Fml f : fs) out.push_back(e.run(f));
  return out;
}

// ---------------------------------------------------------------------------
// Frame validity
// ---------------------------------------------------------------------------

namespace {

// Iterate all valuations of the given variables over n worlds; `body` gets a
// ValuationMap and returns false to stop early.  Returns true iff body never
// returned false.
template <typename Body>
bool for_all_valuations(const std::vector<std::string>& vs, std::size_t n,
                        Body body) {
  const std::size_t bits = vs.size() * n;
  require(bits <= 24, "frame too large for exhaustive valuation enumeration");
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    ValuationMap val;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      std::vector<bool> where(n, false);
      for (std::size_t w = 0; w < n; ++w)
        where[w] = (mask >> (i * n + w)) & 1;
      val.emplace(vs[i], std::move(where));
    }
    if (!body(val)) return false;
  }
  return true;
}

}  // namespace

bool frame_validates(const VeltmanModel& frame, Fml f) {
  VeltmanModel work = frame;
  return for_all_valuations(vars(f), frame.size(), [&](ValuationMap val) {
    work.valuation = std::move(val);
    const auto truth = eval_all(work, f);
    return std::all_of(truth.begin(), truth.end(), [](bool b) { return b; });
  });
}

bool frame_validates(const SimplifiedModel& frame, Fml f,
                     SimplifiedClause clause) {
  SimplifiedModel work = frame;
  return for_all_valuations(vars(f), frame.size(), [&](ValuationMap val) {
    work.valuation = std::move(val);
    const auto truth = eval_all(work, f, clause);
    return std::all_of(truth.begin(), truth.end(), [](bool b) { return b; });
  });
}

bool frame_validates(const BimodalModel& frame, BiFml f) {
  BimodalModel work = frame;
  return for_all_valuations(vars(f), frame.size(), [&](ValuationMap val) {
    work.valuation = std::move(val);
    const auto truth = eval_all(work, f);
    return std::all_of(truth.begin(), truth.end(), [](bool b) { return b; });
  });
}

// ---------------------------------------------------------------------------
// Frame conditions
// ---------------------------------------------------------------------------

bool satisfies_p_frame_condition(const VeltmanModel& m) {
  const std::size_t n = m.size();
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t x = 0; x < n; ++x) {
      if (!m.R[w][x]) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (!m.R[x][y]) continue;
        for (std::size_t z = 0; z < n; ++z)
          if (m.S[w][y][z] && !m.S[x][y][z]) return false;
      }
    }
  return true;
}

bool satisfies_dagger(const SimplifiedModel& m) {
  const std::size_t n = m.size();
  for (std::size_t y = 0; y < n; ++y) {
    bool has_in = false;
    for (std::size_t x = 0; x < n && !has_in; ++x)
      if (m.S[x][y]) has_in = true;
    if (!has_in) continue;
    for (std::size_t z = 0; z < n; ++z)
      if (m.S[y][z]) return false;
  }
  return true;
}

bool frame_correspondence_P(const VeltmanModel& frame) {
  const Fml p = Formula::mk_var("p");
  const Fml q = Formula::mk_var("q");
  const std::vector<Fml> pool = {
      p,          q,
      Formula::mk_neg(p),    Formula::mk_neg(q),
      Formula::mk_and(p, q), Formula::mk_or(p, q),
      Formula::mk_imp(p, q)};
  bool all_valid = true;
  for (Fml a : pool) {
    for (Fml b : pool) {
      const Fml rhd = Formula::mk_rhd(a, b);
      const Fml axiom_p = Formula::mk_imp(rhd, Formula::mk_box(rhd));
      if (!frame_validates(frame, axiom_p)) {
        all_valid = false;
        break;
      }
    }
    if (!all_valid) break;
  }
  return all_valid == satisfies_p_frame_condition(frame);
}

// ---------------------------------------------------------------------------
// Enumeration and random generation
// ---------------------------------------------------------------------------

namespace {

Relation relation_from_mask(std::uint64_t mask, std::size_t n) {
  Relation r = empty_relation(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if ((mask >> (x * n + y)) & 1) r[x][y] = true;
  return r;
}

// Flatten a list of matrices into one bit string for canonical comparison.
std::vector<bool> adjacency_key(const std::vector<const Relation*>& rels) {
  std::vector<bool> key;
  for (const Relation* r : rels)
    for (const auto& row : *r)
      for (bool b : row) key.push_back(b);
  return key;
}

std::vector<std::vector<std::size_t>> all_permutations(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Relation permute_relation(const Relation& r,
                          const std::vector<std::size_t>& perm) {
  const std::size_t n = r.size();
  Relation out = empty_relation(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (r[x][y]) out[perm[x]][perm[y]] = true;
  return out;
}

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));
  return names;
}

}  // namespace

std::vector<Relation> enumerate_strict_orders(std::size_t n) {
  ILP_ASSERT(n >= 1 && n * n <= 25, "enumerate_strict_orders: n too large");
  const auto perms = all_permutations(n);
  std::vector<Relation> out;
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Relation r = relation_from_mask(mask, n);
    if (!relation_transitive(r) || !relation_acyclic(r)) continue;
    const auto key = adjacency_key({&r});
    bool minimal = true;
    for (const auto& perm : perms) {
      Relation pr = permute_relation(r, perm);
      if (adjacency_key({&pr}) < key) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(std::move(r));
  }
  return out;
}

std::vector<VeltmanModel> enumerate_veltman_frames(std::size_t n) {
  ILP_ASSERT(n >= 1 && n <= 3, "enumerate_veltman_frames: n too large");
  const auto perms = all_permutations(n);
  std::vector<VeltmanModel> out;
  const std::uint64_t r_total = std::uint64_t{1} << (n * n);
  for (std::uint64_t r_mask = 0; r_mask < r_total; ++r_mask) {
    Relation r = relation_from_mask(r_mask, n);
    if (!relation_transitive(r) || !relation_acyclic(r)) continue;
    // Positions (w, x, y) allowed in S_w: those with w R x.
    std::vector<std::array<std::size_t, 3>> slots;
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t x = 0; x < n; ++x) {
        if (!r[w][x]) continue;
        for (std::size_t y = 0; y < n; ++y) slots.push_back({w, x, y});
      }
    ILP_ASSERT(slots.size() < 30, "enumerate_veltman_frames: S space too large");
    const std::uint64_t s_total = std::uint64_t{1} << slots.size();
    for (std::uint64_t s_mask = 0; s_mask < s_total; ++s_mask) {
      std::vector<Relation> s(n, empty_relation(n));
      for (std::size_t i = 0; i < slots.size(); ++i)
        if ((s_mask >> i) & 1) s[slots[i][0]][slots[i][1]][slots[i][2]] = true;
      // Canonical representative: the combined (R, S_0.., S_{n-1}) key must
      // be lexicographically minimal over all world permutations.
      std::vector<const Relation*> parts = {&r};
      for (const auto& sw : s) parts.push_back(&sw);
      const auto key = adjacency_key(parts);
      bool minimal = true;
      for (const auto& perm : perms) {
        Relation pr = permute_relation(r, perm);
        std::vector<Relation> ps(n, empty_relation(n));
        for (std::size_t w = 0; w < n; ++w)
          ps[perm[w]] = permute_relation(s[w], perm);
        std::vector<const Relation*> pparts = {&pr};
        for (const auto& sw : ps) pparts.push_back(&sw);
        if (adjacency_key(pparts) < key) {
          minimal = false;
          break;
        }
      }
      if (!minimal) continue;
      VeltmanModel m;
      m.names = default_names(n);
      m.R = std::move(r);
      m.S = std::move(s);
      m.validate();
      out.push_back(std::move(m));
      // r and s were moved; rebuild r for the next s_mask iteration.
      r = relation_from_mask(r_mask, n);
    }
  }
  return out;
}

SimplifiedModel random_simplified_frame(std::mt19937_64& gen,
                                        std::size_t max_worlds) {
  ILP_ASSERT(max_worlds >= 1, "random_simplified_frame: need a world");
  const std::size_t n = 1 + gen() % max_worlds;
  SimplifiedModel m;
  m.names = default_names(n);
  m.R = empty_relation(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (gen() & 1) m.R[x][y] = true;
  m.R = transitive_closure(std::move(m.R));
  m.S = empty_relation(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (gen() & 1) m.S[x][y] = true;
  m.validate();
  return m;
}

std::optional<CountermodelHit> countermodel_search(Fml f,
                                                   std::size_t max_worlds) {
  const std::vector<std::string> vs = vars(f);
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    const auto orders = enumerate_strict_orders(n);
    const std::size_t s_bits = n * n;
    ILP_ASSERT(s_bits <= 25 && vs.size() * n <= 24,
               "countermodel_search: space too large");
    const std::uint64_t s_total = std::uint64_t{1} << s_bits;
    for (const Relation& r : orders) {
      for (std::uint64_t s_mask = 0; s_mask < s_total; ++s_mask) {
        SimplifiedModel m;
        m.names = default_names(n);
        m.R = r;
        m.S = relation_from_mask(s_mask, n);
        std::optional<CountermodelHit> hit;
        for_all_valuations(vs, n, [&](ValuationMap val) {
          m.valuation = std::move(val);
          const auto truth = eval_all(m, f);
          for (std::size_t w = 0; w < n; ++w)
            if (!truth[w]) {
              hit = CountermodelHit{m, w};
              return false;
            }
          return true;
        });
        if (hit) return hit;
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Model transformations
// ---------------------------------------------------------------------------

VeltmanModel restrict_worlds(const VeltmanModel& m,
                             const std::vector<std::size_t>& keep) {
  ILP_ASSERT(!keep.empty(), "restrict_worlds: must keep at least one world");
  ILP_ASSERT(std::is_sorted(keep.begin(), keep.end()) &&
                 std::adjacent_find(keep.begin(), keep.end()) == keep.end(),
             "restrict_worlds: indices must be sorted and unique");
  ILP_ASSERT(keep.back() < m.size(), "restrict_worlds: index out of range");
  const std::size_t k = keep.size();
  VeltmanModel out;
  out.names.reserve(k);
  for (std::size_t i : keep) out.names.push_back(m.names[i]);
  out.R = empty_relation(k);
  out.S.assign(k, empty_relation(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      out.R[a][b] = m.R[keep[a]][keep[b]];
      for (std::size_t c = 0; c < k; ++c)
        out.S[a][b][c] = m.S[keep[a]][keep[b]][keep[c]];
    }
  for (const auto& [var, worlds] : m.valuation) {
    std::vector<bool> where(k, false);
    for (std::size_t a = 0; a < k; ++a) where[a] = worlds[keep[a]];
    out.valuation.emplace(var, std::move(where));
  }
  return out;
}

std::pair<VeltmanModel, std::size_t> minimize_countermodel(
    const VeltmanModel& m, std::size_t world, Fml f) {
  ILP_ASSERT(world < m.size(), "minimize_countermodel: world out of range");
  ILP_ASSERT(!eval(m, world, f),
             "minimize_countermodel: formula must start out false");
  VeltmanModel cur = m;
  std::size_t des = world;
  bool improved = true;
  while (improved && cur.size() > 1) {
    improved = false;
    for (std::size_t drop = 0; drop < cur.size(); ++drop) {
      if (drop == des) continue;
      std::vector<std::size_t> keep;
      keep.reserve(cur.size() - 1);
      for (std::size_t i = 0; i < cur.size(); ++i)
        if (i != drop) keep.push_back(i);
      VeltmanModel cand = restrict_worlds(cur, keep);
      const std::size_t cand_des = des < drop ? des : des - 1;
      if (!eval(cand, cand_des, f)) {
        cur = std::move(cand);
        des = cand_des;
        improved = true;
        break;
      }
    }
  }
  ILP_ASSERT(!eval(cur, des, f), "minimize_countermodel: falsity lost");
  return {std::move(cur), des};
}

std::pair<SimplifiedModel, std::size_t> simplify(const VeltmanModel& m,
                                                 std::size_t world) {
  ILP_ASSERT(world < m.size(), "simplify: world out of range");
  if (!satisfies_p_frame_condition(m))
    throw std::invalid_argument(
        "simplify: model must satisfy the P frame condition");
  const std::size_t n = m.size();

  // All nonempty R-paths, in DFS preorder from each start world.
  std::vector<std::vector<std::size_t>> paths;
  std::vector<std::size_t> path;
  const auto dfs = [&](auto&& self, std::size_t last) -> void {
    paths.push_back(path);
    ILP_ASSERT(paths.size() <= 1'000'000, "simplify: path space too large");
    for (std::size_t next = 0; next < n; ++next) {
      if (!m.R[last][next]) continue;
      path.push_back(next);
      self(self, next);
      path.pop_back();
    }
  };
  for (std::size_t start = 0; start < n; ++start) {
    path.assign(1, start);
    dfs(dfs, start);
  }

  SimplifiedModel out;
  const std::size_t k = paths.size();
  out.names.reserve(k);
  for (const auto& p : paths) {
    std::string name = m.names[p[0]];
    for (std::size_t i = 1; i < p.size(); ++i) name += "," + m.names[p[i]];
    out.names.push_back(std::move(name));
  }
  {
    std::set<std::string> uniq(out.names.begin(), out.names.end());
    ILP_ASSERT(uniq.size() == k, "simplify: path names collide");
  }
  out.R = empty_relation(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (paths[a].size() >= paths[b].size()) continue;
      out.R[a][b] = std::equal(paths[a].begin(), paths[a].end(),
                               paths[b].begin());
    }
  out.S = empty_relation(k);
  for (std::size_t a = 0; a < k; ++a) {
    const auto& pa = paths[a];
    if (pa.size() < 2) continue;
    for (std::size_t b = 0; b < k; ++b) {
      if (paths[b].size() != 1) continue;
      out.S[a][b] = m.S[pa[pa.size() - 2]][pa.back()][paths[b][0]];
    }
  }
  for (const auto& [var, worlds] : m.valuation) {
    std::vector<bool> where(k, false);
    for (std::size_t a = 0; a < k; ++a) where[a] = worlds[paths[a].back()];
    out.valuation.emplace(var, std::move(where));
  }
  out.validate();
  ILP_ASSERT(satisfies_dagger(out), "simplify: output must satisfy (dagger)");

  std::size_t designated = k;
  for (std::size_t a = 0; a < k; ++a)
    if (paths[a].size() == 1 && paths[a][0] == world) {
      designated = a;
      break;
    }
  ILP_ASSERT(designated < k, "simplify: designated path missing");
  return {std::move(out), designated};
}

std::pair<SimplifiedModel, std::size_t> level_product(const SimplifiedModel& m,
                                                      std::size_t world,
                                                      Fml f) {
  ILP_ASSERT(world < m.size(), "level_product: world out of range");
  if (!satisfies_dagger(m))
    throw std::invalid_argument(
        "level_product: model must satisfy condition (dagger)");
  const std::size_t n = m.size();
  const int d = degree(f);
  const std::size_t levels = static_cast<std::size_t>(d) + 1;
  const auto idx = [&](std::size_t x, std::size_t lvl) {
    return x * levels + lvl;
  };

  SimplifiedModel out;
  const std::size_t k = n * levels;
  out.names.reserve(k);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t lvl = 0; lvl < levels; ++lvl)
      out.names.push_back(m.names[x] + "@" + std::to_string(lvl));
  out.R = empty_relation(k);
  out.S = empty_relation(k);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (m.R[x][y])
        for (std::size_t lvl = 0; lvl < levels; ++lvl)
          out.R[idx(x, lvl)][idx(y, lvl)] = true;
      if (m.S[x][y])
        for (std::size_t lvl = 1; lvl < levels; ++lvl)
          out.S[idx(x, lvl)][idx(y, lvl - 1)] = true;
    }
  for (const auto& [var, worlds] : m.valuation) {
    std::vector<bool> where(k, false);
    for (std::size_t x = 0; x < n; ++x)
      if (worlds[x])
        for (std::size_t lvl = 0; lvl < levels; ++lvl)
          where[idx(x, lvl)] = true;
    out.valuation.emplace(var, std::move(where));
  }
  out.validate();
  ILP_ASSERT(relation_transitive(out.S),
             "level_product: S* must be transitive");
  ILP_ASSERT(relation_acyclic(relation_union(out.R, out.S)),
             "level_product: R* union S* must be acyclic");
  return {std::move(out), idx(world, levels - 1)};
}

}  // namespace ilp
