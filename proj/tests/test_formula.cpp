// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.
//
// Unit tests for the syntax layer.  Expected values are frozen from
// hand-computed oracles; the degree recursion is cross-checked against an
// independent reimplementation kept local to this file.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <string>
#include <vector>

#include "ilp/formula.hpp"

using namespace ilp;

namespace {

// Independent degree oracle: written directly from the recursion
// d(p)=d(false)=0, d(~A)=d(A), binaries max, d([]A)=d(A),
// d(A|>B)=max(d(A),d(B)+1), without sharing code with the library.
int degree_oracle(Fml f) {
  std::function<int(Fml)> go = [&](Fml g) -> int {
    switch (g->kind()) {
      case Kind::Var:
      case Kind::Bot:
        return 0;
      case Kind::Neg:
      case Kind::Box:
        return go(g->lhs());
      case Kind::Rhd: {
        int a = go(g->lhs());
        int b = go(g->rhs()) + 1;
        return a > b ? a : b;
      }
      default: {
        int a = go(g->lhs());
        int b = go(g->rhs());
        return a > b ? a : b;
      }
    }
  };
  return go(f);
}

}  // namespace

TEST_CASE("parser precedence and sugar") {
  // Axiom P reading: |> binds tighter than ->.
  Fml p = Formula::mk_var("p"), q = Formula::mk_var("q"), r = Formula::mk_var("r");
  CHECK(parse("p |> q -> [](p |> q)") ==
        Formula::mk_imp(Formula::mk_rhd(p, q), Formula::mk_box(Formula::mk_rhd(p, q))));
  CHECK(parse("false") == Formula::mk_bot());
  CHECK(parse("true") == Formula::mk_neg(Formula::mk_bot()));
  // Frozen precedence example: ~ binds tighter than &, & tighter than |.
  CHECK(parse("~p & q | r") ==
        Formula::mk_or(Formula::mk_and(Formula::mk_neg(p), q), r));
  // -> right-associative; <-> desugars; <> desugars.
  CHECK(parse("p -> q -> r") == Formula::mk_imp(p, Formula::mk_imp(q, r)));
  CHECK(parse("p <-> q") == Formula::mk_iff(p, q));
  CHECK(parse("<>p") == Formula::mk_neg(Formula::mk_box(Formula::mk_neg(p))));
  // |> is non-associative.
  CHECK_THROWS_AS(parse("p |> q |> r"), ParseError);
  CHECK_NOTHROW(parse("(p |> q) |> r"));
  CHECK_NOTHROW(parse("p |> (q |> r)"));
  // Errors carry positions.
  try {
    parse("p -> ");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(parse("p @ q"), ParseError);
  CHECK_THROWS_AS(parse("(p"), ParseError);
  CHECK_THROWS_AS(parse("p q"), ParseError);
}

TEST_CASE("printer round-trips") {
  // parse(print(f)) == f over a corpus of shapes.
  std::vector<std::string> inputs = {
      "p", "false", "true", "~p", "[]p", "p & q", "p | q", "p -> q",
      "p |> q", "~p & q | r", "p |> q -> [](p |> q)", "(p -> q) -> r",
      "p & (q & r)", "p & q & r", "(p |> q) |> r", "p |> (q |> r)",
      "[](p -> q) -> (q |> r -> p |> r)", "~[]~p", "~(p & q)",
      "p | q |> r & ~p", "((p))", "[][]p", "~~p", "true |> ~true",
  };
  for (const auto& s : inputs) {
    Fml f = parse(s);
    CHECK(parse(print(f)) == f);
    // Printing is canonical: printing the reparse reproduces the string.
    CHECK(print(parse(print(f))) == print(f));
  }
  // Spot canonical forms.
  CHECK(print(parse("~p & q | r")) == "~p & q | r");
  CHECK(print(parse("p|>q->[](p|>q)")) == "p |> q -> [](p |> q)");
  CHECK(print(parse("true")) == "true");
  CHECK(print(Formula::mk_neg(Formula::mk_bot())) == "true");
  CHECK(print(parse("p & (q & r)")) == "p & (q & r)");
  CHECK(print(parse("<>p")) == "~[]~p");
}

TEST_CASE("subformulas") {
  Fml p = Formula::mk_var("p"), q = Formula::mk_var("q");
  auto sub1 = subformulas(Formula::mk_rhd(p, q));
  CHECK(sub1.size() == 3);  // {p|>q, p, q}
  auto sub2 = subformulas(Formula::mk_box(p));
  CHECK(sub2.size() == 2);  // {[]p, p}
  auto sub3 = subformulas(Formula::mk_imp(p, Formula::mk_neg(p)));
  CHECK(sub3.size() == 3);  // {p->~p, ~p, p}
  // Size bounded by node count.
  Fml f = parse("[](p -> q) -> (q |> r -> p |> r)");
  CHECK(subformulas(f).size() <= f->node_count());
}

TEST_CASE("tilde") {
  Fml p = Formula::mk_var("p");
  CHECK(tilde(Formula::mk_neg(p)) == p);
  CHECK(tilde(p) == Formula::mk_neg(p));
  CHECK(tilde(Formula::mk_neg(Formula::mk_neg(p))) == Formula::mk_neg(p));
  // Involution on {A, ~A} for non-negated A.
  CHECK(tilde(tilde(p)) == p);
}

TEST_CASE("vars") {
  CHECK(vars(parse("p |> q")) == std::vector<std::string>{"p", "q"});
  CHECK(vars(parse("false")).empty());
  CHECK(vars(parse("[](p -> p)")) == std::vector<std::string>{"p"});
}

TEST_CASE("modalization") {
  CHECK(is_modalized(parse("[]p"), "p"));
  CHECK(is_left_modalized(parse("[]p"), "p"));
  CHECK(is_modalized(parse("q |> p"), "p"));
  CHECK_FALSE(is_left_modalized(parse("q |> p"), "p"));
  CHECK_FALSE(is_modalized(parse("p & []p"), "p"));
  // Absent variable is vacuously (left-)modalized.
  CHECK(is_modalized(parse("q"), "p"));
  CHECK(is_left_modalized(parse("q"), "p"));
  // Right-side occurrence under a deeper |>.
  CHECK_FALSE(is_left_modalized(parse("[](q |> (p & q))"), "p"));
  CHECK(is_left_modalized(parse("(p & q) |> q"), "p"));
}

TEST_CASE("degree") {
  CHECK(degree(parse("p")) == 0);
  CHECK(degree(parse("p |> q")) == 1);
  // Frozen from the hand recursion: left nesting does not raise the degree,
  // right nesting does.
  CHECK(degree(parse("(p |> q) |> r")) == 1);
  CHECK(degree(parse("p |> (q |> r)")) == 2);
  CHECK(degree(parse("[]p")) == 0);
  CHECK(degree(parse("[](p |> q)")) == 1);
  // Cross-check against the independent oracle on a corpus.
  std::vector<std::string> corpus = {
      "p", "false", "~p", "[]p", "p |> q", "(p |> q) |> r", "p |> (q |> r)",
      "((p |> q) |> q) |> q", "p |> (q |> (r |> p))", "[](p |> (q |> r))",
      "p & (q |> r)", "~(p |> ~(q |> r))", "(p |> q) -> (q |> r)",
  };
  for (const auto& s : corpus) {
    Fml f = parse(s);
    CHECK(degree(f) == static_cast<std::uint32_t>(degree_oracle(f)));
  }
}

TEST_CASE("expand_box") {
  Fml p = Formula::mk_var("p");
  CHECK(expand_box(Formula::mk_box(p)) ==
        Formula::mk_rhd(Formula::mk_neg(p), Formula::mk_bot()));
  CHECK(expand_box(parse("p |> q")) == parse("p |> q"));
  // Innermost-first on [][]p.
  CHECK(expand_box(parse("[][]p")) == parse("(~(~p |> false)) |> false"));
  // Idempotent and variable-preserving.
  std::vector<std::string> corpus = {"[][]p", "[](p -> []q)", "p |> []q",
                                     "<>p", "[]p & ~[]~q"};
  for (const auto& s : corpus) {
    Fml f = parse(s);
    Fml e = expand_box(f);
    CHECK(expand_box(e) == e);
    CHECK_FALSE(has_box(e));
    CHECK(vars(e) == vars(f));
  }
}

TEST_CASE("box shape recognition") {
  Fml body = nullptr;
  CHECK(is_box_shape(parse("~p |> false"), &body));
  CHECK(body == parse("p"));
  CHECK_FALSE(is_box_shape(parse("p |> false")));
  CHECK_FALSE(is_box_shape(parse("~p |> q")));
}

TEST_CASE("subst") {
  CHECK(subst(parse("p |> (q & p)"), "p", parse("[]r")) == parse("[]r |> (q & []r)"));
  CHECK(subst(parse("q"), "p", parse("r")) == parse("q"));
}

TEST_CASE("interning gives structural identity") {
  CHECK(parse("p -> (q | r)") == parse("p -> (q | r)"));
  CHECK(parse("p") != parse("q"));
  Fml f = parse("p & q");
  CHECK(f->node_count() == 3);
  CHECK(parse("[](p |> q)")->node_count() == 4);
}

TEST_CASE("bimodal formulas") {
  BiFml p = BiFormula::mk_var("p");
  BiFml f = BiFormula::mk_boxk(0, BiFormula::mk_imp(p, BiFormula::mk_diamond1(p)));
  CHECK(print(f) == "[0](p -> ~[1]~p)");
  CHECK(vars(f) == std::vector<std::string>{"p"});
  CHECK(BiFormula::mk_boxk(0, p) == BiFormula::mk_boxk(0, p));
  CHECK(BiFormula::mk_boxk(0, p) != BiFormula::mk_boxk(1, p));
}
