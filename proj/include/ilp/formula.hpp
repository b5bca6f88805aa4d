// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.
//
// formula.hpp: interned formula terms for the interpretability-logic
// workbench, with the parser, canonical printer, and the structural
// analyses (subformulas, ~, variables, modalization, degree, box
// expansion) everything else is built on.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ilp {

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

/// Thrown on malformed textual input; `pos` is a 0-based byte offset.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what), pos_(pos) {}
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

/// Internal invariant violation (an implementation bug, never user error).
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

#define ILP_ASSERT(cond, msg)                                              \
  do {                                                                     \
    if (!(cond))                                                           \
      throw ::ilp::InternalError(std::string("assertion failed: ") + msg + \
                                 " [" #cond "]");                          \
  } while (0)

// ---------------------------------------------------------------------------
// Formula
// ---------------------------------------------------------------------------

enum class Kind : std::uint8_t { Var, Bot, Neg, And, Or, Imp, Box, Rhd };

class Formula;
/// Interned handle: pointer equality coincides with structural equality.
using Fml = const Formula*;

/// Immutable hash-consed formula node.  Box is a primitive constructor (the
/// finite adequate-set machinery needs it); the sequent systems work on
/// box-free normal forms produced by expand_box.  Construct only through the
/// mk_* factories; nodes live for the whole process.
class Formula {
public:
  Kind kind() const { return kind_; }
  const std::string& var() const { return var_; }
  Fml lhs() const { return lhs_; }  // Neg/Box: the single child
  Fml rhs() const { return rhs_; }
  /// Dense intern index; used as a deterministic total order on formulas.
  std::uint32_t id() const { return id_; }
  /// Number of constructor nodes ("size" of the formula).
  std::uint32_t node_count() const { return nodes_; }

  static Fml mk_var(std::string_view name);
  static Fml mk_bot();
  static Fml mk_neg(Fml f);
  static Fml mk_and(Fml a, Fml b);
  static Fml mk_or(Fml a, Fml b);
  static Fml mk_imp(Fml a, Fml b);
  static Fml mk_box(Fml f);
  static Fml mk_rhd(Fml a, Fml b);

  // Abbreviations (never constructors of their own).
  static Fml top();                  // ~false
  static Fml mk_diamond(Fml f);      // ~[]~f
  static Fml mk_iff(Fml a, Fml b);   // (a->b)&(b->a)

  Formula(const Formula&) = delete;
  Formula& operator=(const Formula&) = delete;

private:
  Formula() = default;
  friend struct FormulaInterner;

  Kind kind_ = Kind::Bot;
  std::uint32_t id_ = 0;
  std::uint32_t nodes_ = 1;
  Fml lhs_ = nullptr;
  Fml rhs_ = nullptr;
  std::string var_;
};

/// Deterministic total order (intern order).
inline bool fml_less(Fml a, Fml b) { return a->id() < b->id(); }

// ---------------------------------------------------------------------------
// Parsing and printing
// ---------------------------------------------------------------------------

/// Parses the ASCII grammar `~ & | -> <-> [] <> |> true false` with
/// precedence (tightest to loosest) ~,[],<> ; & ; | ; |> ; -> ; <->.
/// `|>` is non-associative: chains must be parenthesized.  `<->` desugars
/// to the conjunction of both implications, `<>f` to `~[]~f`, `true` to
/// `~false`.  Throws ParseError.
Fml parse(std::string_view text);

/// Canonical minimal-parenthesis printer; parse(print(f)) == f, and
/// print(parse(s)) == s whenever s is itself canonical output.
std::string print(Fml f);

// ---------------------------------------------------------------------------
// Structural analyses
// ---------------------------------------------------------------------------

/// All subformulas including f itself, deduplicated, in intern order.
std::vector<Fml> subformulas(Fml f);

/// ~A: strips one outer negation if present, otherwise prefixes one.
Fml tilde(Fml f);

/// Propositional variables occurring in f, sorted by name.
std::vector<std::string> vars(Fml f);

/// True iff every occurrence of p in f is inside some [] or |>.
bool is_modalized(Fml f, std::string_view p);

/// True iff is_modalized(f, p) and no subformula B|>C of f has p in C.
bool is_left_modalized(Fml f, std::string_view p);

/// Modal |>-nesting degree: d(var)=d(false)=0, d(~A)=d(A), binary Boolean
/// connectives take max, d([]A)=d(A), d(A|>B)=max(d(A), d(B)+1).
/// Computed on the box-primitive form.
std::uint32_t degree(Fml f);

/// Rewrites every []g, innermost first, to (~g)|>false; result is box-free.
Fml expand_box(Fml f);

/// Capture-free substitution of g for the variable p in f.
Fml subst(Fml f, std::string_view p, Fml g);

/// True iff f contains a Box constructor.
bool has_box(Fml f);

/// True iff f has the shape (~g)|>false (the box abbreviation); if so and
/// body is non-null, *body receives g.
bool is_box_shape(Fml f, Fml* body = nullptr);

// ---------------------------------------------------------------------------
// Bimodal formulas (for the GL(x)K embedding)
// ---------------------------------------------------------------------------

enum class BiKind : std::uint8_t { Var, Bot, Neg, And, Or, Imp, BoxK };

class BiFormula;
using BiFml = const BiFormula*;

/// Formulas over two unary modalities [0] and [1]; no |>.  <1>f is sugar
/// for ~[1]~f.  Interned like Formula.
class BiFormula {
public:
  BiKind kind() const { return kind_; }
  const std::string& var() const { return var_; }
  BiFml lhs() const { return lhs_; }
  BiFml rhs() const { return rhs_; }
  int modality() const { return modality_; }  // BoxK only: 0 or 1
  std::uint32_t id() const { return id_; }

  static BiFml mk_var(std::string_view name);
  static BiFml mk_bot();
  static BiFml mk_neg(BiFml f);
  static BiFml mk_and(BiFml a, BiFml b);
  static BiFml mk_or(BiFml a, BiFml b);
  static BiFml mk_imp(BiFml a, BiFml b);
  static BiFml mk_boxk(int modality, BiFml f);
  static BiFml mk_diamond1(BiFml f);  // ~[1]~f

  BiFormula(const BiFormula&) = delete;
  BiFormula& operator=(const BiFormula&) = delete;

private:
  BiFormula() = default;
  friend struct BiFormulaInterner;

  BiKind kind_ = BiKind::Bot;
  int modality_ = 0;
  std::uint32_t id_ = 0;
  BiFml lhs_ = nullptr;
  BiFml rhs_ = nullptr;
  std::string var_;
};

/// Printer for bimodal formulas: `[0] [1] <1>` plus the shared ASCII set.
std::string print(BiFml f);

/// Variables of a bimodal formula, sorted by name.
std::vector<std::string> vars(BiFml f);

}  // namespace ilp
