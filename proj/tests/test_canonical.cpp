// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilp/canonical.hpp"
#include "ilp/corpus.hpp"
#include "ilp/formula.hpp"
#include "ilp/json_io.hpp"
#include "ilp/search.hpp"
#include "ilp/semantics.hpp"

namespace {

ilp::Fml F(const std::string& text) { return ilp::parse(text); }

}  // namespace

TEST_CASE("adequate closure satisfies its closure conditions") {
  using namespace ilp;
  const Fml seed = F("[](p -> q) -> (p |> q)");
  const AdequateSet phi = adequate_closure({seed});

  CHECK(phi.contains(seed));
  CHECK(phi.contains(Formula::mk_bot()));
  CHECK(std::is_sorted(phi.formulas.begin(), phi.formulas.end(),
                       [](Fml a, Fml b) { return a->id() < b->id(); }));

  // Subformula and negation-mate closure.
  for (Fml f : phi.formulas) {
    for (Fml g : subformulas(f)) CHECK(phi.contains(g));
    CHECK(phi.contains(tilde(f)));
  }

  // The |>-range holds false and both sides of the seed's |> subformula.
  auto in_range = [&](Fml f) {
    return std::find(phi.rhd_range.begin(), phi.rhd_range.end(), f) !=
           phi.rhd_range.end();
  };
  CHECK(in_range(Formula::mk_bot()));
  CHECK(in_range(F("p")));
  CHECK(in_range(F("q")));
  CHECK(phi.rhd_range.size() == 3);

  // All |>-combinations over the range, their boxes, and boxed negations.
  for (Fml b : phi.rhd_range)
    for (Fml c : phi.rhd_range) {
      CHECK(phi.contains(Formula::mk_rhd(b, c)));
      CHECK(phi.contains(Formula::mk_box(Formula::mk_rhd(b, c))));
    }
  for (Fml f : phi.formulas)
    if (f->kind() == Kind::Rhd) CHECK(phi.contains(Formula::mk_box(f)));
  for (Fml b : phi.rhd_range)
    CHECK(phi.contains(Formula::mk_box(tilde(b))));

  // Boxed implications into every duplicate-free ascending subset of the
  // range, right-nested.
  const std::size_t k = phi.rhd_range.size();
  for (Fml b : phi.rhd_range) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      Fml disj = nullptr;
      for (std::size_t i = k; i-- > 0;)
        if ((mask >> i) & 1)
          disj = disj ? Formula::mk_or(phi.rhd_range[i], disj)
                      : phi.rhd_range[i];
      CHECK(phi.contains(Formula::mk_box(Formula::mk_imp(b, disj))));
    }
  }

  SUBCASE("closure is idempotent") {
    const AdequateSet again = adequate_closure(phi.formulas);
    CHECK(again.formulas == phi.formulas);
    CHECK(again.rhd_range == phi.rhd_range);
  }
}

TEST_CASE("canonical model for a bare atom is a single reflexive-free point") {
  using namespace ilp;
  const CanonicalModel cm = build_canonical(F("p"));
  CHECK(cm.model.size() == 1);
  CHECK(cm.report.truth_lemma_ok);
  CHECK(cm.report.frame_ok);
  CHECK(cm.report.world_count == 1);
  CHECK(cm.report.consistency_checks > 0);
  CHECK_FALSE(eval(cm.model, cm.designated, F("p")));
}

TEST_CASE("canonical model refutes reflexivity of the box") {
  using namespace ilp;
  const Fml a = F("[]p -> p");
  REQUIRE(decide(a).outcome == Outcome::NotProvable);
  const CanonicalModel cm = build_canonical(a);
  CHECK(cm.report.truth_lemma_ok);
  CHECK(cm.report.frame_ok);
  CHECK_FALSE(eval(cm.model, cm.designated, a));
  // Membership rows carry the designated world's refutation: the target is
  // marked false there.
  CHECK_FALSE(cm.membership[cm.designated][cm.phi.index_of(a)]);
}

TEST_CASE("theorems are rejected by the countermodel builder") {
  using namespace ilp;
  CHECK_THROWS_AS((void)build_canonical(F("p -> p")), std::invalid_argument);
  CHECK_THROWS_AS((void)build_canonical(F("[](p -> q) -> ([]p -> []q)")),
                  std::invalid_argument);
}

TEST_CASE("canonical countermodels for classic non-theorems") {
  using namespace ilp;
  const std::vector<std::string> targets = {
      "[](p -> q) -> (p |> q)",
      "((p |> q) & (q |> false)) -> (p |> false)",
      "(p |> q) -> (<>p -> <>q)",
      "<>p |> p",
  };
  for (const auto& text : targets) {
    CAPTURE(text);
    const Fml a = F(text);
    REQUIRE(decide(a).outcome == Outcome::NotProvable);
    const auto t0 = std::chrono::steady_clock::now();
    const CanonicalModel cm = build_canonical(a);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    MESSAGE(text << ": worlds=" << cm.report.world_count
                 << " phi=" << cm.report.phi_size
                 << " checks=" << cm.report.consistency_checks << " (" << ms
                 << " ms)");
    CHECK(cm.report.truth_lemma_ok);
    CHECK(cm.report.frame_ok);
    CHECK_FALSE(eval(cm.model, cm.designated, a));
  }
}

TEST_CASE("countermodel pipeline preserves falsification at every stage") {
  using namespace ilp;
  const Fml a = F("[](p -> q) -> (p |> q)");

  const Countermodel full = countermodel(a, Stage::Level);
  CHECK_FALSE(eval(full.veltman, full.veltman_world, a));
  CHECK(satisfies_p_frame_condition(full.veltman));
  CHECK_FALSE(eval(full.simplified, full.simplified_world, a));
  CHECK(satisfies_dagger(full.simplified));
  CHECK_FALSE(eval(full.level, full.level_world, a));

  // The level stage keeps the chain-freedom needed downstream and its frame
  // shape: transitive S, acyclic combined reachability.
  CHECK(relation_transitive(full.level.S));
  CHECK(relation_acyclic(relation_union(full.level.R, full.level.S)));

  SUBCASE("construction is deterministic") {
    const Countermodel again = countermodel(a, Stage::Level);
    CHECK(model_to_json(full.veltman) == model_to_json(again.veltman));
    CHECK(model_to_json(full.simplified) == model_to_json(again.simplified));
    CHECK(model_to_json(full.level) == model_to_json(again.level));
    CHECK(full.veltman_world == again.veltman_world);
  }

  SUBCASE("intermediate stages stop where asked") {
    const Countermodel c1 = countermodel(a, Stage::Canonical);
    CHECK_FALSE(eval(c1.veltman, c1.veltman_world, a));
    CHECK(c1.simplified.names.empty());
    const Countermodel c2 = countermodel(a, Stage::Simplified);
    CHECK_FALSE(eval(c2.simplified, c2.simplified_world, a));
    CHECK(c2.level.names.empty());
  }
}

TEST_CASE("canonical construction scales over a single-variable slice") {
  using namespace ilp;
  // A slice of the one-variable corpus: for every non-theorem among the
  // first formulas, the canonical countermodel must certify itself.
  const std::vector<Fml> pool = enumerate_formulas({"p"}, 4);
  std::size_t built = 0;
  std::uint64_t checks = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (Fml f : pool) {
    if (decide(f).outcome != Outcome::NotProvable) continue;
    const CanonicalModel cm = build_canonical(f);
    CHECK(cm.report.truth_lemma_ok);
    CHECK(cm.report.frame_ok);
    CHECK_FALSE(eval(cm.model, cm.designated, f));
    ++built;
    checks += cm.report.consistency_checks;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  MESSAGE("slice: " << built << " countermodels, " << checks
                    << " prover calls, " << ms << " ms");
  CHECK(built > 0);
}
