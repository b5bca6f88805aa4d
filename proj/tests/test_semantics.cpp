// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilp/corpus.hpp"
#include "ilp/formula.hpp"
#include "ilp/json_io.hpp"
#include "ilp/search.hpp"
#include "ilp/semantics.hpp"

using namespace ilp;

namespace {

Fml F(const std::string& s) { return parse(s); }

// Two-world refutation of J1: w sees x, S_w empty, p and q true at x only.
VeltmanModel j1_model() {
  VeltmanModel m;
  m.names = {"w", "x"};
  m.R = empty_relation(2);
  m.R[0][1] = true;
  m.S = {empty_relation(2), empty_relation(2)};
  m.valuation["p"] = {false, true};
  m.valuation["q"] = {false, true};
  m.validate();
  return m;
}

// Four worlds w R x R y (R transitive), z isolated; S_w = {(y, z)} and S_x
// configurable: with (y, z) in S_x the P frame condition holds, without it
// it fails.
VeltmanModel diamond_model(bool fcp_holds) {
  VeltmanModel m;
  m.names = {"w", "x", "y", "z"};
  m.R = empty_relation(4);
  m.R[0][1] = m.R[1][2] = m.R[0][2] = true;
  m.S.assign(4, empty_relation(4));
  m.S[0][2][3] = true;
  if (fcp_holds) m.S[1][2][3] = true;
  m.valuation["p"] = {false, false, true, false};
  m.valuation["q"] = {false, false, false, true};
  m.validate();
  return m;
}

}  // namespace

TEST_CASE("relation helpers") {
  Relation r = empty_relation(3);
  r[0][1] = r[1][2] = true;
  CHECK(!relation_transitive(r));
  r = transitive_closure(r);
  CHECK(relation_transitive(r));
  CHECK(r[0][2]);
  CHECK(relation_acyclic(r));

  Relation cyc = empty_relation(2);
  cyc[0][1] = cyc[1][0] = true;
  CHECK(!relation_acyclic(cyc));
  Relation self = empty_relation(1);
  self[0][0] = true;
  CHECK(!relation_acyclic(self));

  Relation u = relation_union(r, empty_relation(3));
  CHECK(u == r);
}

TEST_CASE("model validation rejects malformed input") {
  VeltmanModel m = j1_model();
  SUBCASE("non-transitive R") {
    m.names = {"w", "x", "y"};
    m.R = empty_relation(3);
    m.R[0][1] = m.R[1][2] = true;  // missing (0,2)
    m.S.assign(3, empty_relation(3));
    m.valuation.clear();
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  }
  SUBCASE("cyclic R") {
    m.R[1][0] = true;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  }
  SUBCASE("S_w outside R[w] x W") {
    m.S[0][0][1] = true;  // first component w itself, but not w R w
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  }
  SUBCASE("duplicate names") {
    m.names = {"w", "w"};
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  }
  SUBCASE("valuation sized wrong") {
    m.valuation["p"] = {true};
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  }
  SUBCASE("unknown variable at eval time") {
    CHECK_THROWS_AS(eval(m, 0, F("r")), std::invalid_argument);
  }
}

TEST_CASE("two-world model refutes J1 but satisfies its antecedent") {
  VeltmanModel m = j1_model();
  CHECK(eval(m, 0, F("[](p -> q)")));
  CHECK(!eval(m, 0, F("p |> q")));
  CHECK(!eval(m, 0, F("[](p -> q) -> (p |> q)")));
  // The necessitation [](J1) also fails at a root seeing w; here just check
  // the box-free evaluator basics at x.
  CHECK(eval(m, 1, F("p & q")));
  CHECK(eval(m, 1, F("[] false")));
}

TEST_CASE("brute-force search finds classic non-theorem countermodels") {
  struct Case {
    const char* text;
    std::size_t max_worlds;
  };
  const std::vector<Case> cases = {
      {"[](p -> q) -> (p |> q)", 2},           // J1
      {"(p |> q) & (q |> r) -> (p |> r)", 3},  // J2
      {"(p |> q) -> (<>p -> <>q)", 3},         // J4
      {"<>p |> p", 3},                         // J5
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    Fml f = F(c.text);
    auto hit = countermodel_search(f, c.max_worlds);
    REQUIRE(hit.has_value());
    hit->model.validate();
    CHECK(!eval(hit->model, hit->world, f));
    // Searching again is deterministic.
    auto again = countermodel_search(f, c.max_worlds);
    REQUIRE(again.has_value());
    CHECK(model_to_json(hit->model).dump() == model_to_json(again->model).dump());
    CHECK(hit->world == again->world);
    // Agreement with the decision procedure.
    CHECK(decide(f).outcome == Outcome::NotProvable);
  }
}

TEST_CASE("simplified frames validate P and the theorem axioms") {
  std::mt19937_64 gen(2026);
  const std::vector<Fml> instances = {
      F("(p |> q) -> [](p |> q)"),                            // P
      F("[](p -> q) -> ([]p -> []q)"),                        // distribution
      F("[]([]p -> p) -> []p"),                               // Loeb
      F("(p |> r) & (q |> r) -> ((p | q) |> r)"),             // J3
      F("[]p <-> (~p |> false)"),                             // J6
      F("[](p <-> q) -> ((p |> r) <-> (q |> r))"),            // E2
  };
  for (int i = 0; i < 30; ++i) {
    SimplifiedModel frame = random_simplified_frame(gen, 4);
    for (Fml inst : instances) {
      CAPTURE(print(inst));
      CHECK(frame_validates(frame, inst));
    }
  }
}

TEST_CASE("P frame condition characterizes validity of P") {
  VeltmanModel good = diamond_model(true);
  VeltmanModel bad = diamond_model(false);
  CHECK(satisfies_p_frame_condition(good));
  CHECK(!satisfies_p_frame_condition(bad));
  const Fml p_axiom = F("(p |> q) -> [](p |> q)");
  CHECK(frame_validates(good, p_axiom));
  CHECK(!frame_validates(bad, p_axiom));
  CHECK(frame_correspondence_P(good));
  CHECK(frame_correspondence_P(bad));
}

TEST_CASE("frame enumeration is canonical and P-correspondence holds on it") {
  const auto frames1 = enumerate_veltman_frames(1);
  CHECK(frames1.size() == 1);
  const auto frames2 = enumerate_veltman_frames(2);
  CHECK(frames2.size() == 5);
  for (const auto& fr : frames2) {
    fr.validate();
    CHECK(frame_correspondence_P(fr));
  }
}

TEST_CASE("dagger detection") {
  SimplifiedModel m;
  m.names = {"a", "b", "c"};
  m.R = empty_relation(3);
  m.R[0][1] = m.R[0][2] = m.R[1][2] = true;
  m.S = empty_relation(3);
  m.S[0][1] = true;
  m.validate();
  CHECK(satisfies_dagger(m));
  m.S[1][2] = true;  // now a S b S c
  CHECK(!satisfies_dagger(m));
}

TEST_CASE("simplified witness clauses differ") {
  SimplifiedModel m;
  m.names = {"w", "x", "y"};
  m.R = empty_relation(3);
  m.R[0][1] = true;  // y is not an R-successor of w
  m.S = empty_relation(3);
  m.S[1][2] = true;
  m.valuation["p"] = {false, true, false};
  m.valuation["q"] = {false, false, true};
  m.validate();
  const Fml f = F("p |> q");
  CHECK(eval(m, 0, f, SimplifiedClause::WitnessAnywhere));
  CHECK(!eval(m, 0, f, SimplifiedClause::WitnessUnderRoot));
}

TEST_CASE("path unfolding preserves truth at path ends") {
  VeltmanModel m = diamond_model(true);
  auto [unfolded, designated] = simplify(m, 0);
  unfolded.validate();
  CHECK(satisfies_dagger(unfolded));
  // Paths: one per R-path; the diamond model has w, wx, wxy, wy, x, xy, y, z.
  CHECK(unfolded.size() == 8);
  CHECK(unfolded.names[designated] == "w");

  // Truth of every small formula at a path equals truth at its last world.
  // Path names are comma-joined world lists, so the last world is the piece
  // after the final comma.
  const auto pool = enumerate_formulas({"p", "q"}, 4);
  std::vector<std::size_t> last_world(unfolded.size());
  for (std::size_t a = 0; a < unfolded.size(); ++a) {
    const std::string& nm = unfolded.names[a];
    const auto cut = nm.rfind(',');
    const std::string last = cut == std::string::npos ? nm : nm.substr(cut + 1);
    bool found = false;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m.names[i] == last) {
        last_world[a] = i;
        found = true;
      }
    REQUIRE(found);
  }
  for (Fml f : pool) {
    const auto base = eval_all(m, f);
    const auto lifted = eval_all(unfolded, f);
    for (std::size_t a = 0; a < unfolded.size(); ++a) {
      if (lifted[a] != base[last_world[a]]) {
        CAPTURE(print(f));
        CAPTURE(unfolded.names[a]);
        CHECK(lifted[a] == base[last_world[a]]);
      }
    }
  }

  SUBCASE("precondition: P frame condition required") {
    VeltmanModel bad = diamond_model(false);
    CHECK_THROWS_AS(simplify(bad, 0), std::invalid_argument);
  }
}

TEST_CASE("level product preserves truth at high-enough levels") {
  VeltmanModel m = diamond_model(true);
  auto [unfolded, des] = simplify(m, 0);
  const Fml target = F("(p |> q) -> [](p |> q)");
  auto [prod, prod_des] = level_product(unfolded, des, target);
  prod.validate();
  CHECK(relation_transitive(prod.S));
  CHECK(relation_acyclic(relation_union(prod.R, prod.S)));
  CHECK(prod.size() == unfolded.size() * (degree(target) + 1));
  CHECK(prod.names[prod_des] == unfolded.names[des] + "@1");

  const auto pool = enumerate_formulas({"p", "q"}, 4);
  const std::size_t levels = degree(target) + 1;
  for (Fml f : pool) {
    const int d = degree(f);
    if (d >= static_cast<int>(levels)) continue;
    const auto base = eval_all(unfolded, f);
    const auto lifted = eval_all(prod, f);
    for (std::size_t x = 0; x < unfolded.size(); ++x)
      for (std::size_t lvl = static_cast<std::size_t>(d); lvl < levels; ++lvl) {
        if (lifted[x * levels + lvl] != base[x]) {
          CAPTURE(print(f));
          CAPTURE(unfolded.names[x]);
          CAPTURE(lvl);
          CHECK(lifted[x * levels + lvl] == base[x]);
        }
      }
  }

  SUBCASE("precondition: dagger required") {
    SimplifiedModel chain;
    chain.names = {"a", "b", "c"};
    chain.R = empty_relation(3);
    chain.S = empty_relation(3);
    chain.S[0][1] = chain.S[1][2] = true;
    chain.validate();
    CHECK_THROWS_AS(level_product(chain, 0, target), std::invalid_argument);
  }
}

TEST_CASE("countermodel minimization keeps falsity and shrinks") {
  // Pad the two-world J1 refutation with two junk worlds.
  VeltmanModel m;
  m.names = {"w", "x", "j1", "j2"};
  m.R = empty_relation(4);
  m.R[0][1] = m.R[2][3] = true;
  m.S.assign(4, empty_relation(4));
  m.valuation["p"] = {false, true, true, false};
  m.valuation["q"] = {false, true, false, true};
  m.validate();
  const Fml j1 = F("[](p -> q) -> (p |> q)");
  REQUIRE(!eval(m, 0, j1));
  auto [small, des] = minimize_countermodel(m, 0, j1);
  small.validate();
  CHECK(!eval(small, des, j1));
  CHECK(small.size() == 2);
  CHECK(small.names[des] == "w");
}

TEST_CASE("bimodal evaluation and the fixed-point failure frame") {
  BimodalModel m;
  m.names = {"x", "y"};
  m.R0 = empty_relation(2);
  m.R0[0][1] = true;
  m.R1 = empty_relation(2);
  m.R1[1][0] = true;
  m.validate();

  const BiFml p = BiFormula::mk_var("p");
  const std::vector<BiFml> samples = {
      p,
      BiFormula::mk_boxk(1, p),
      BiFormula::mk_imp(p, BiFormula::mk_boxk(0, p)),
      BiFormula::mk_bot(),
      BiFormula::mk_or(p, BiFormula::mk_neg(p)),
  };
  for (BiFml a : samples) {
    for (int mask = 0; mask < 4; ++mask) {
      m.valuation["p"] = {(mask & 1) != 0, (mask & 2) != 0};
      // x always satisfies a <-> ~[0]~[1]a ...
      const BiFml dia_form = BiFormula::mk_neg(
          BiFormula::mk_boxk(0, BiFormula::mk_neg(BiFormula::mk_boxk(1, a))));
      const BiFml box_form = BiFormula::mk_boxk(0, BiFormula::mk_neg(
          BiFormula::mk_boxk(1, a)));
      CHECK(eval(m, 0, BiFormula::mk_and(BiFormula::mk_imp(a, dia_form),
                                         BiFormula::mk_imp(dia_form, a))));
      // ... hence never a <-> [0]~[1]a.
      CHECK(!eval(m, 0, BiFormula::mk_and(BiFormula::mk_imp(a, box_form),
                                          BiFormula::mk_imp(box_form, a))));
    }
  }
}

TEST_CASE("model JSON round-trips bit-exactly and DOT mentions the edges") {
  VeltmanModel vm = diamond_model(true);
  SimplifiedModel sm;
  {
    auto [u, d] = simplify(vm, 0);
    sm = u;
  }
  BimodalModel bm;
  bm.names = {"x", "y"};
  bm.R0 = empty_relation(2);
  bm.R0[0][1] = true;
  bm.R1 = empty_relation(2);
  bm.R1[1][0] = true;
  bm.valuation["p"] = {true, false};
  bm.validate();

  const std::string v1 = to_pretty_string(model_to_json(vm));
  const AnyModel v2 = model_from_json(nlohmann::json::parse(v1));
  REQUIRE(v2.kind == "veltman");
  CHECK(to_pretty_string(model_to_json(v2.veltman)) == v1);

  const std::string s1 = to_pretty_string(model_to_json(sm));
  const AnyModel s2 = model_from_json(nlohmann::json::parse(s1));
  REQUIRE(s2.kind == "simplified");
  CHECK(to_pretty_string(model_to_json(s2.simplified)) == s1);

  const std::string b1 = to_pretty_string(model_to_json(bm));
  const AnyModel b2 = model_from_json(nlohmann::json::parse(b1));
  REQUIRE(b2.kind == "bimodal");
  CHECK(to_pretty_string(model_to_json(b2.bimodal)) == b1);

  CHECK(model_to_dot(vm).find("style=dashed, label=\"S_w\"") != std::string::npos);
  CHECK(model_to_dot(sm).find("style=dashed, label=\"S\"") != std::string::npos);
  CHECK(model_to_dot(bm).find("style=dashed, label=\"R1\"") != std::string::npos);
  CHECK(model_to_dot(vm).find("\"w\" -> \"x\";") != std::string::npos);

  SUBCASE("malformed input is rejected") {
    nlohmann::json j = model_to_json(sm);
    j["kind"] = "unknown";
    CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
    nlohmann::json k = model_to_json(sm);
    k["R"].push_back({"w", "nope"});
    CHECK_THROWS_AS(model_from_json(k), std::invalid_argument);
  }
}
