// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "ilp/corpus.hpp"
#include "ilp/fixedpoint.hpp"
#include "ilp/formula.hpp"
#include "ilp/search.hpp"

using namespace ilp;

namespace {

Fml P() { return Formula::mk_var("p"); }

bool var_condition(Fml fixed, Fml a, const std::string& p) {
  std::vector<std::string> va = vars(a);
  std::set<std::string> allowed(va.begin(), va.end());
  allowed.erase(p);
  for (const std::string& v : vars(fixed))
    if (allowed.find(v) == allowed.end()) return false;
  return true;
}

}  // namespace

TEST_CASE("single |>-headed fixed points substitute true on the left") {
  // p |-> (~p) |> false, the |>-form of the box: F = (~true) |> false.
  Fml f = fixpoint_rhd(Formula::mk_neg(P()), Formula::mk_bot());
  CHECK(f == parse("~true |> false"));
  CHECK(decide(Formula::mk_iff(f, Formula::mk_rhd(Formula::mk_neg(f),
                                                  Formula::mk_bot())))
            .provable());

  // p absent on the left: the map is constant and F is its own value.
  Fml g = fixpoint_rhd(parse("q"), parse("r"));
  CHECK(g == parse("q |> r"));

  // p |-> (p & q) |> r: F = (true & q) |> r, and |- F <-> (F & q) |> r.
  Fml h = fixpoint_rhd(parse("p & q"), parse("r"));
  CHECK(h == parse("(true & q) |> r"));
  Fml unfolded = Formula::mk_rhd(Formula::mk_and(h, parse("q")), parse("r"));
  CHECK(decide(Formula::mk_iff(h, unfolded)).provable());
}

TEST_CASE("fixpoint_rhd rejects occurrences outside the left component") {
  // p in the right component of the head.
  CHECK_THROWS_AS(fixpoint_rhd(parse("q"), parse("~p")), std::invalid_argument);
  // p in a |>-right inside the left component.
  CHECK_THROWS_AS(fixpoint_rhd(parse("q |> p"), parse("r")),
                  std::invalid_argument);
  // p inside a box on the left is fine.
  Fml f = fixpoint_rhd(parse("[]p"), parse("r"));
  CHECK(f == parse("[]true |> r"));
}

TEST_CASE("fixed point of the box is verified") {
  FixpointResult r = fixpoint(parse("[]p"), "p");
  CHECK(r.equivalence_verdict.provable());
  CHECK(r.variable_condition);
  // The construction lands on []true, i.e. (~true) |> false after
  // unfolding the box abbreviation.
  CHECK(expand_box(r.fixpoint) == parse("~true |> false"));
  CHECK(decide(Formula::mk_iff(r.fixpoint, Formula::mk_box(r.fixpoint)))
            .provable());
}

TEST_CASE("constant maps are their own fixed points") {
  Fml a = parse("q |> false");
  FixpointResult r = fixpoint(a, "p");
  CHECK(r.fixpoint == a);
  CHECK(r.equivalence_verdict.provable());
  CHECK(r.variable_condition);
}

TEST_CASE("non-left-modalized inputs are rejected") {
  // The FPP failure schema: p on the right of |>.
  CHECK_THROWS_AS(fixpoint(parse("true |> ~p"), "p"), std::invalid_argument);
  // p outside every modal operator.
  CHECK_THROWS_AS(fixpoint(parse("p & []p"), "p"), std::invalid_argument);
  CHECK_THROWS_AS(fixpoint(parse("p"), "p"), std::invalid_argument);
}

TEST_CASE("composed fixed points across several modal occurrences") {
  for (const char* txt : {
           "[]p & (p |> q)",
           "[]p | (p |> q)",
           "([]p |> q) -> (p |> q)",
           "(p |> q) & ((p & q) |> false)",
           "[](p & []p)",
           "~[]p",
           "(~p |> false) |> q",
           "[]p -> ([]p |> q)",
       }) {
    CAPTURE(txt);
    Fml a = parse(txt);
    FixpointResult r = fixpoint(a, "p");
    CHECK(r.equivalence_verdict.provable());
    CHECK(r.variable_condition);
    CHECK(var_condition(r.fixpoint, a, "p"));
  }
}

TEST_CASE("sampled left-modalized maps all admit verified fixed points") {
  std::vector<Fml> pool = sample_left_modalized("p", {"q", "r"}, 3, 30, 2026);
  REQUIRE(pool.size() == 30);
  for (Fml a : pool) {
    CAPTURE(print(a));
    REQUIRE(is_left_modalized(a, "p"));
    FixpointResult r = fixpoint(a, "p");
    CHECK(r.equivalence_verdict.provable());
    CHECK(r.variable_condition);
  }
}

TEST_CASE("substitution under a box respects left-modalized contexts") {
  // |- [](A <-> B) -> (C(A) <-> C(B)) for p left-modalized in C(p).
  struct Inst {
    const char* c;
    const char* a;
    const char* b;
  };
  for (const Inst& inst : {
           Inst{"p |> r", "q", "q & q"},
           Inst{"[]p", "q | r", "r | q"},
           Inst{"(p & q) |> r", "~~q", "q"},
           Inst{"[]p -> (p |> q)", "q -> r", "~r -> ~q"},
       }) {
    CAPTURE(inst.c);
    Fml c = parse(inst.c);
    Fml a = parse(inst.a);
    Fml b = parse(inst.b);
    REQUIRE(is_left_modalized(c, "p"));
    Fml iff = Formula::mk_iff(a, b);
    Fml goal = Formula::mk_imp(Formula::mk_box(iff),
                               Formula::mk_iff(subst(c, "p", a),
                                               subst(c, "p", b)));
    CHECK(decide(goal).provable());
  }
}

TEST_CASE("no variable-free formula is a fixed point of true |> ~F") {
  FppRefutationReport rep = refute_fpp_witness(4);
  CHECK(rep.checked > 20);
  CHECK(rep.not_provable == rep.checked);
  CHECK(rep.all_refuted());
}

TEST_CASE("fixed-point computation is deterministic") {
  Fml a = parse("[]p & (p |> q)");
  FixpointResult r1 = fixpoint(a, "p");
  FixpointResult r2 = fixpoint(a, "p");
  CHECK(r1.fixpoint == r2.fixpoint);  // interned: pointer equality
  CHECK(print(r1.fixpoint) == print(r2.fixpoint));
}
