// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.
//
// pymodule.cpp: thin python bindings over the core operations.  Formulas
// travel as canonical printer strings; proofs and models as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include <json.hpp>

#include "ilp/canonical.hpp"
#include "ilp/cutelim.hpp"
#include "ilp/derivation.hpp"
#include "ilp/embedding.hpp"
#include "ilp/fixedpoint.hpp"
#include "ilp/formula.hpp"
#include "ilp/interpolation.hpp"
#include "ilp/json_io.hpp"
#include "ilp/search.hpp"
#include "ilp/semantics.hpp"

namespace py = pybind11;

namespace {

using namespace ilp;

const char* outcome_slug(Outcome o) {
  switch (o) {
    case Outcome::Provable: return "provable";
    case Outcome::NotProvable: return "not_provable";
    case Outcome::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

System system_from_name(const std::string& s) {
  if (s == "ilms") return System::ILms;
  if (s == "ilmps") return System::ILmPs;
  throw std::invalid_argument("unknown system: " + s);
}

py::dict py_decide(const std::string& formula, const std::string& system,
                   std::uint64_t budget) {
  const Fml f = parse(formula);
  const Verdict v = decide(system_from_name(system), f, budget);
  py::dict d;
  d["formula"] = print(f);
  d["system"] = system_name(system_from_name(system));
  d["outcome"] = outcome_slug(v.outcome);
  d["expanded"] = v.expanded;
  if (v.provable()) d["proof_json"] = to_pretty_string(proof_to_json(*v.proof));
  return d;
}

py::dict py_eliminate_cuts(const std::string& proof_json) {
  const Proof p = proof_from_json(nlohmann::json::parse(proof_json));
  const CheckReport pre = check(p);
  if (!pre.ok)
    throw std::invalid_argument("input proof does not check: " + pre.message);
  ReduceStats stats;
  const std::size_t before = cut_count(p.root);
  const Proof q = eliminate_cuts(p, &stats);
  ILP_ASSERT(check(q).ok && is_cut_free(q.root) &&
                 q.root->conclusion == p.root->conclusion,
             "cut elimination must produce a checkable cut-free proof of the "
             "same end sequent");
  py::dict d;
  d["proof_json"] = to_pretty_string(proof_to_json(q));
  d["cuts_before"] = before;
  d["cuts_after"] = cut_count(q.root);
  d["reduce_calls"] = stats.reduce_calls;
  return d;
}

py::dict py_interpolate(const std::string& lhs, const std::string& rhs,
                        const std::string& system, std::uint64_t budget) {
  const InterpolantResult r =
      interpolate(system_from_name(system), parse(lhs), parse(rhs), budget);
  py::dict d;
  d["outcome"] = outcome_slug(r.outcome);
  if (r.outcome == Outcome::Provable) {
    d["interpolant"] = print(r.interpolant);
    d["left_proof_json"] = to_pretty_string(proof_to_json(*r.left_proof));
    d["right_proof_json"] = to_pretty_string(proof_to_json(*r.right_proof));
  }
  return d;
}

py::dict py_fixpoint(const std::string& formula, const std::string& var,
                     std::uint64_t budget) {
  const FixpointResult r = fixpoint(parse(formula), var, budget);
  py::dict d;
  d["fixpoint"] = print(r.fixpoint);
  d["equivalence_outcome"] = outcome_slug(r.equivalence_verdict.outcome);
  d["variable_condition"] = r.variable_condition;
  return d;
}

py::dict py_countermodel(const std::string& formula, const std::string& stage,
                         std::uint64_t budget) {
  const Fml f = parse(formula);
  const Verdict v = decide(f, budget);
  py::dict d;
  d["formula"] = print(f);
  d["outcome"] = outcome_slug(v.outcome);
  if (v.outcome != Outcome::NotProvable) return d;
  const Stage st = stage == "canonical"    ? Stage::Canonical
                   : stage == "simplified" ? Stage::Simplified
                   : stage == "level"      ? Stage::Level
                                           : throw std::invalid_argument(
                                                 "unknown stage: " + stage);
  const Countermodel cm = countermodel(f, st, budget);
  nlohmann::json mj;
  std::string world;
  if (st == Stage::Canonical) {
    mj = model_to_json(cm.veltman);
    world = cm.veltman.names[cm.veltman_world];
  } else if (st == Stage::Simplified) {
    mj = model_to_json(cm.simplified);
    world = cm.simplified.names[cm.simplified_world];
  } else {
    mj = model_to_json(cm.level);
    world = cm.level.names[cm.level_world];
  }
  (void)model_from_json(mj);
  d["stage"] = stage;
  d["model_json"] = to_pretty_string(mj);
  d["falsified_at"] = world;
  d["certified"] = cm.report.truth_lemma_ok && cm.report.frame_ok;
  return d;
}

py::dict py_check_model(const std::string& model_json,
                        const std::string& formula) {
  const AnyModel any = model_from_json(nlohmann::json::parse(model_json));
  py::dict d;
  d["kind"] = any.kind;
  d["valid"] = true;
  std::vector<std::string> names;
  if (any.kind == "veltman") {
    names = any.veltman.names;
    d["persistence_frame_condition"] = satisfies_p_frame_condition(any.veltman);
  } else if (any.kind == "simplified") {
    names = any.simplified.names;
    d["chain_free_witnesses"] = satisfies_dagger(any.simplified);
  } else {
    names = any.bimodal.names;
  }
  d["worlds"] = names.size();
  if (!formula.empty()) {
    const Fml f = parse(formula);
    std::vector<bool> values;
    if (any.kind == "veltman")
      values = eval_all(any.veltman, f);
    else if (any.kind == "simplified")
      values = eval_all(any.simplified, f);
    else
      values = eval_all(any.bimodal, chi(f));
    py::dict holds;
    for (std::size_t i = 0; i < names.size(); ++i)
      holds[py::str(names[i])] = static_cast<bool>(values[i]);
    d["holds_at"] = holds;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(pyilp, m) {
  m.doc() =
      "workbench for interpretability logics without J1/J4: decision "
      "procedure, cut elimination, interpolation, fixed points, certified "
      "countermodels, bimodal translation";

  m.def("canonical_form",
        [](const std::string& s) { return print(parse(s)); },
        py::arg("formula"), "parse and reprint in canonical syntax");
  m.def("variables",
        [](const std::string& s) { return vars(parse(s)); },
        py::arg("formula"), "sorted variable list");
  m.def("decide", &py_decide, py::arg("formula"), py::arg("system") = "ilmps",
        py::arg("budget") = kDefaultBudget,
        "decide theoremhood; includes proof_json when provable");
  m.def("eliminate_cuts", &py_eliminate_cuts, py::arg("proof_json"),
        "remove every cut from an ILmPs proof object");
  m.def("interpolate", &py_interpolate, py::arg("lhs"), py::arg("rhs"),
        py::arg("system") = "ilmps", py::arg("budget") = kDefaultBudget,
        "Craig interpolant for lhs -> rhs with both half proofs");
  m.def("fixpoint", &py_fixpoint, py::arg("formula"), py::arg("var") = "p",
        py::arg("budget") = kDefaultBudget,
        "verified explicit fixed point for a left-modalized body");
  m.def("countermodel", &py_countermodel, py::arg("formula"),
        py::arg("stage") = "simplified", py::arg("budget") = kDefaultBudget,
        "certified countermodel for a non-theorem");
  m.def("check_model", &py_check_model, py::arg("model_json"),
        py::arg("formula") = "",
        "validate a model and optionally evaluate a formula everywhere");
  m.def("translate",
        [](const std::string& s) { return print(chi(parse(s))); },
        py::arg("formula"), "structural translation into the bimodal language");
}
