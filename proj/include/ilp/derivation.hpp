// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.
//
// derivation.hpp: rule-annotated proof trees for the set-based sequent
// systems ILms and ILmPs, with a checker that validates every node as a
// literal instance of the rules.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ilp/sequent.hpp"

namespace ilp {

enum class System : std::uint8_t { ILms, ILmPs };

inline const char* system_name(System s) { return s == System::ILms ? "ILms" : "ILmPs"; }

enum class Rule : std::uint8_t {
  Init, InitBot, WL, WR, NegL, NegR, AndL, AndR, OrL, OrR, ImpL, ImpR,
  Cut, BoxRule, Rhd, RhdP
};

const char* rule_name(Rule r);

class Derivation;
using Drv = std::shared_ptr<const Derivation>;

/// One rule application; premises are the child derivations.  Immutable.
/// `principal` is the introduced/cut formula (diagonal for the modal
/// rules); `component` disambiguates the AndL/OrR conjunct choice;
/// `principals` lists X_i|>Y_i for Rhd/RhdP in premise order (duplicates
/// permitted, one side premise per entry).
class Derivation {
public:
  Rule rule;
  Sequent conclusion;
  std::vector<Drv> premises;
  Fml principal = nullptr;
  int component = 0;
  std::vector<Fml> principals;

  static Drv make(Rule rule, Sequent conclusion, std::vector<Drv> premises,
                  Fml principal = nullptr, int component = 0,
                  std::vector<Fml> principals = {});
};

/// Whole proof object: tree plus system tag.
struct Proof {
  System system = System::ILmPs;
  Drv root;
};

struct CheckReport {
  bool ok = true;
  std::string message;  // first violation: node path, rule, reason
};

/// Validates one node against its rule schema (children assumed correct).
/// Returns an error message, or nullopt if the node is a legal instance.
std::optional<std::string> validate_node(System system, const Derivation& node);

/// Full recursive check: every node a legal instance of `system`'s rules.
CheckReport check(System system, const Drv& root);
inline CheckReport check(const Proof& p) { return check(p.system, p.root); }

/// True iff no Cut node occurs.
bool is_cut_free(const Drv& root);

/// Number of Cut nodes.
std::size_t cut_count(const Drv& root);

/// Number of nodes on the longest root-leaf path ("length" of the proof).
std::size_t height(const Drv& root);

/// Total node count.
std::size_t node_count(const Drv& root);

/// Cut node with the multiplicative conclusion (Gamma, Sigma => Delta, Pi),
/// i.e. the two premises' side contexts are unioned.  Throws
/// std::invalid_argument unless cut_formula is in left's succedent and
/// right's antecedent.
Drv compose_cut(const Drv& left, const Drv& right, Fml cut_formula);

/// Wraps `d` in explicit WL/WR nodes until its conclusion equals `target`.
/// Requires d's conclusion to be a componentwise subset of target.
Drv weaken_to(const Drv& d, const Sequent& target);

// --- convenience builders (each validates the constructed node) -------------

Drv mk_init(Fml a);
Drv mk_initbot();
Drv mk_wl(const Drv& premise, Fml added);
Drv mk_wr(const Drv& premise, Fml added);
/// Generic single- or two-premise logical node with explicit conclusion.
Drv mk_logical(Rule rule, Sequent conclusion, std::vector<Drv> premises,
               Fml principal, int component = 0);
/// ILms box rule: conclusion (boxes => box); premise computed by schema.
Drv mk_box_rule(Sequent conclusion, Drv premise);
/// ILms (or ILmPs) modal rule node with explicit principal list.
Drv mk_modal(Rule rule, Sequent conclusion, std::vector<Drv> premises,
             Fml diagonal, std::vector<Fml> principals);

}  // namespace ilp
