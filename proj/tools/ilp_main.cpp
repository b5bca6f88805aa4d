// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.
//
// ilp_main.cpp: command-line front end.  Subcommands: decide, cutelim,
// interpolate, fixpoint, countermodel, translate, check-model, selftest.
// Exit codes: 0 theorem/success, 1 non-theorem/refuted, 2 budget exceeded,
// 64 usage or malformed input, 70 internal error.

#include <CLI11.hpp>

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ilp/canonical.hpp"
#include "ilp/corpus.hpp"
#include "ilp/cutelim.hpp"
#include "ilp/derivation.hpp"
#include "ilp/embedding.hpp"
#include "ilp/fixedpoint.hpp"
#include "ilp/formula.hpp"
#include "ilp/interpolation.hpp"
#include "ilp/json_io.hpp"
#include "ilp/search.hpp"
#include "ilp/semantics.hpp"

namespace {

using nlohmann::json;
using namespace ilp;

constexpr int kExitTheorem = 0;
constexpr int kExitNonTheorem = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

const char* outcome_slug(Outcome o) {
  switch (o) {
    case Outcome::Provable: return "provable";
    case Outcome::NotProvable: return "not_provable";
    case Outcome::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

System system_from_name(const std::string& s) {
  return s == "ilms" ? System::ILms : System::ILmPs;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return json::parse(in);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
  if (!out) throw std::invalid_argument("write failed: " + path);
}

/// Serializes a proof after confirming it reloads to a checkable object.
void emit_proof_file(const std::string& path, const Proof& p) {
  const json j = proof_to_json(p);
  const Proof back = proof_from_json(j);
  const CheckReport rep = check(back);
  ILP_ASSERT(rep.ok, "emitted proof must reload and re-check: " + rep.message);
  write_file(path, to_pretty_string(j));
}

void print_or_json(bool as_json, const json& j,
                   const std::string& text) {
  if (as_json)
    std::cout << to_pretty_string(j);
  else
    std::cout << text;
}

// ---------------------------------------------------------------------------
// decide
// ---------------------------------------------------------------------------

struct DecideArgs {
  std::string formula;
  std::string system = "ilmps";
  std::string emit_proof;
  std::uint64_t budget = kDefaultBudget;
  bool json_out = false;
};

int run_decide(const DecideArgs& a) {
  const Fml f = parse(a.formula);
  const System sys = system_from_name(a.system);
  const Verdict v = decide(sys, f, a.budget);
  json j{{"formula", print(f)},
         {"system", system_name(sys)},
         {"outcome", outcome_slug(v.outcome)},
         {"expanded", v.expanded}};
  std::ostringstream text;
  text << outcome_slug(v.outcome) << " in " << system_name(sys) << ": "
       << print(f) << "\n";
  if (v.outcome == Outcome::Provable && !a.emit_proof.empty()) {
    emit_proof_file(a.emit_proof, *v.proof);
    j["proof"] = a.emit_proof;
    text << "proof written to " << a.emit_proof << "\n";
  }
  print_or_json(a.json_out, j, text.str());
  switch (v.outcome) {
    case Outcome::Provable: return kExitTheorem;
    case Outcome::NotProvable: return kExitNonTheorem;
    case Outcome::BudgetExceeded: return kExitBudget;
  }
  return kExitInternal;
}

// ---------------------------------------------------------------------------
// cutelim
// ---------------------------------------------------------------------------

struct CutelimArgs {
  std::string input;
  std::string output;
  bool json_out = false;
};

int run_cutelim(const CutelimArgs& a) {
  const Proof p = proof_from_json(read_json_file(a.input));
  const CheckReport pre = check(p);
  if (!pre.ok)
    throw std::invalid_argument("input proof does not check: " + pre.message);
  if (p.system != System::ILmPs)
    throw std::invalid_argument(
        "cut elimination operates on ILmPs proofs only");
  ReduceStats stats;
  const std::size_t cuts_before = cut_count(p.root);
  const std::size_t nodes_before = node_count(p.root);
  const Proof q = eliminate_cuts(p, &stats);
  const CheckReport post = check(q);
  ILP_ASSERT(post.ok, "cut-free output must check: " + post.message);
  ILP_ASSERT(is_cut_free(q.root), "output must be cut-free");
  ILP_ASSERT(q.root->conclusion == p.root->conclusion,
             "cut elimination must preserve the end sequent");
  emit_proof_file(a.output, q);
  json j{{"input", a.input},
         {"output", a.output},
         {"end_sequent", print(p.root->conclusion)},
         {"cuts_before", cuts_before},
         {"cuts_after", cut_count(q.root)},
         {"nodes_before", nodes_before},
         {"nodes_after", node_count(q.root)},
         {"reduce_calls", stats.reduce_calls},
         {"principal_rhd_cuts", stats.principal_rhd_cuts}};
  std::ostringstream text;
  text << "eliminated " << cuts_before << " cut(s): " << nodes_before
       << " -> " << node_count(q.root) << " nodes, "
       << stats.reduce_calls << " reduction step(s)\n"
       << "cut-free proof written to " << a.output << "\n";
  print_or_json(a.json_out, j, text.str());
  return 0;
}

// ---------------------------------------------------------------------------
// interpolate
// ---------------------------------------------------------------------------

struct InterpolateArgs {
  std::string lhs, rhs;
  std::string system = "ilmps";
  std::string emit_dir;
  std::uint64_t budget = kDefaultBudget;
  bool json_out = false;
};

int run_interpolate(const InterpolateArgs& a) {
  const Fml lhs = parse(a.lhs);
  const Fml rhs = parse(a.rhs);
  const System sys = system_from_name(a.system);
  const InterpolantResult r = interpolate(sys, lhs, rhs, a.budget);
  json j{{"lhs", print(lhs)},
         {"rhs", print(rhs)},
         {"system", system_name(sys)},
         {"outcome", outcome_slug(r.outcome)}};
  if (r.outcome == Outcome::BudgetExceeded) {
    print_or_json(a.json_out, j, "budget exceeded\n");
    return kExitBudget;
  }
  if (r.outcome == Outcome::NotProvable) {
    print_or_json(a.json_out, j,
                  "not provable: " + print(lhs) + " -> " + print(rhs) + "\n");
    return kExitNonTheorem;
  }
  j["interpolant"] = print(r.interpolant);
  std::ostringstream text;
  text << "interpolant: " << print(r.interpolant) << "\n";
  if (!a.emit_dir.empty()) {
    std::filesystem::create_directories(a.emit_dir);
    const std::string left = a.emit_dir + "/left.json";
    const std::string right = a.emit_dir + "/right.json";
    emit_proof_file(left, *r.left_proof);
    emit_proof_file(right, *r.right_proof);
    j["left_proof"] = left;
    j["right_proof"] = right;
    text << "half proofs written to " << left << " and " << right << "\n";
  }
  print_or_json(a.json_out, j, text.str());
  return kExitTheorem;
}

// ---------------------------------------------------------------------------
// fixpoint
// ---------------------------------------------------------------------------

struct FixpointArgs {
  std::string formula;
  std::string var = "p";
  bool verify = false;
  std::uint64_t budget = kDefaultBudget;
  bool json_out = false;
};

int run_fixpoint(const FixpointArgs& a) {
  const Fml body = parse(a.formula);
  const FixpointResult r = fixpoint(body, a.var, a.budget);
  json j{{"formula", print(body)},
         {"var", a.var},
         {"fixpoint", print(r.fixpoint)}};
  std::ostringstream text;
  text << "fixpoint of " << a.var << " -> " << print(body) << ":\n  "
       << print(r.fixpoint) << "\n";
  if (a.verify) {
    const Fml applied = subst(body, a.var, r.fixpoint);
    j["equivalence"] = print(Formula::mk_iff(r.fixpoint, applied));
    j["equivalence_outcome"] = outcome_slug(r.equivalence_verdict.outcome);
    j["expanded"] = r.equivalence_verdict.expanded;
    j["variable_condition"] = r.variable_condition;
    text << "verified: equivalence " << outcome_slug(r.equivalence_verdict.outcome)
         << " (" << r.equivalence_verdict.expanded << " nodes expanded), "
         << "variable condition "
         << (r.variable_condition ? "holds" : "fails") << "\n";
  }
  print_or_json(a.json_out, j, text.str());
  return kExitTheorem;
}

// ---------------------------------------------------------------------------
// countermodel
// ---------------------------------------------------------------------------

struct CountermodelArgs {
  std::string formula;
  std::string stage = "simplified";
  std::string output;
  std::uint64_t budget = kDefaultBudget;
  bool json_out = false;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int run_countermodel(const CountermodelArgs& a) {
  const Fml f = parse(a.formula);
  const Verdict v = decide(f, a.budget);
  if (v.outcome == Outcome::Provable) {
    json j{{"formula", print(f)}, {"outcome", "provable"}};
    print_or_json(a.json_out, j,
                  "provable; no countermodel exists: " + print(f) + "\n");
    return kExitTheorem;
  }
  if (v.outcome == Outcome::BudgetExceeded) {
    json j{{"formula", print(f)}, {"outcome", "budget_exceeded"}};
    print_or_json(a.json_out, j, "budget exceeded\n");
    return kExitBudget;
  }
  const Stage stage = a.stage == "canonical"    ? Stage::Canonical
                      : a.stage == "simplified" ? Stage::Simplified
                                                : Stage::Level;
  const Countermodel cm = countermodel(f, stage, a.budget);
  json model_json;
  std::string dot;
  std::string world;
  std::size_t world_count = 0;
  if (stage == Stage::Canonical) {
    model_json = model_to_json(cm.veltman);
    dot = model_to_dot(cm.veltman);
    world = cm.veltman.names[cm.veltman_world];
    world_count = cm.veltman.size();
  } else if (stage == Stage::Simplified) {
    model_json = model_to_json(cm.simplified);
    dot = model_to_dot(cm.simplified);
    world = cm.simplified.names[cm.simplified_world];
    world_count = cm.simplified.names.size();
  } else {
    model_json = model_to_json(cm.level);
    dot = model_to_dot(cm.level);
    world = cm.level.names[cm.level_world];
    world_count = cm.level.names.size();
  }
  // Every emitted model must reload through its own parser.
  (void)model_from_json(model_json);
  json j{{"formula", print(f)},
         {"outcome", "not_provable"},
         {"stage", a.stage},
         {"worlds", world_count},
         {"falsified_at", world},
         {"certified", cm.report.truth_lemma_ok && cm.report.frame_ok}};
  std::ostringstream text;
  text << "not provable: " << print(f) << "\n"
       << "countermodel (" << a.stage << "): " << world_count
       << " world(s), falsified at " << world << "\n";
  if (!a.output.empty()) {
    write_file(a.output, ends_with(a.output, ".dot")
                             ? dot
                             : to_pretty_string(model_json));
    j["output"] = a.output;
    text << "model written to " << a.output << "\n";
  } else if (!a.json_out) {
    text << to_pretty_string(model_json);
  } else {
    j["model"] = model_json;
  }
  print_or_json(a.json_out, j, text.str());
  return kExitNonTheorem;
}

// ---------------------------------------------------------------------------
// translate
// ---------------------------------------------------------------------------

struct TranslateArgs {
  std::string formula;
  std::string transfer_path;
  std::string output;
  bool json_out = false;
};

int run_translate(const TranslateArgs& a) {
  const Fml f = parse(a.formula);
  const BiFml t = chi(f);
  json j{{"formula", print(f)}, {"translation", print(t)}};
  std::ostringstream text;
  text << print(t) << "\n";
  if (!a.transfer_path.empty()) {
    const AnyModel any = model_from_json(read_json_file(a.transfer_path));
    if (any.kind != "simplified")
      throw std::invalid_argument(
          "transfer expects a simplified model, got: " + any.kind);
    const BimodalModel b = transfer(any.simplified);
    // Agreement between the formula and its translation, world by world.
    for (Fml sub : subformulas(f))
      ILP_ASSERT(eval_all(any.simplified, sub) == eval_all(b, chi(sub)),
                 "transfer must agree with the source model");
    const json bj = model_to_json(b);
    (void)model_from_json(bj);
    j["transfer"] = bj;
    j["agreement"] = true;
    text << "transfer agrees on all " << subformulas(f).size()
         << " subformulas across " << b.names.size() << " world(s)\n";
    if (!a.output.empty()) {
      write_file(a.output, to_pretty_string(bj));
      j["output"] = a.output;
      text << "bimodal model written to " << a.output << "\n";
    } else if (!a.json_out) {
      text << to_pretty_string(bj);
    }
  }
  print_or_json(a.json_out, j, text.str());
  return kExitTheorem;
}

// ---------------------------------------------------------------------------
// check-model
// ---------------------------------------------------------------------------

struct CheckModelArgs {
  std::string input;
  std::string formula;
  std::string world;
  bool json_out = false;
};

int run_check_model(const CheckModelArgs& a) {
  const AnyModel any = model_from_json(read_json_file(a.input));
  json j{{"input", a.input}, {"kind", any.kind}, {"valid", true}};
  std::ostringstream text;
  std::vector<std::string> names;
  if (any.kind == "veltman") {
    names = any.veltman.names;
    j["worlds"] = names.size();
    j["persistence_frame_condition"] =
        satisfies_p_frame_condition(any.veltman);
  } else if (any.kind == "simplified") {
    names = any.simplified.names;
    j["worlds"] = names.size();
    j["chain_free_witnesses"] = satisfies_dagger(any.simplified);
  } else {
    names = any.bimodal.names;
    j["worlds"] = names.size();
  }
  text << "valid " << any.kind << " model with " << names.size()
       << " world(s)\n";
  if (any.kind == "veltman")
    text << "persistence frame condition: "
         << (j["persistence_frame_condition"].get<bool>() ? "holds" : "fails")
         << "\n";
  if (any.kind == "simplified")
    text << "chain-free witnesses: "
         << (j["chain_free_witnesses"].get<bool>() ? "yes" : "no") << "\n";

  int rc = kExitTheorem;
  if (!a.formula.empty()) {
    const Fml f = parse(a.formula);
    std::vector<bool> values;
    std::string shown = print(f);
    if (any.kind == "veltman") {
      values = eval_all(any.veltman, f);
    } else if (any.kind == "simplified") {
      values = eval_all(any.simplified, f);
    } else {
      const BiFml t = chi(f);
      shown = print(t);
      values = eval_all(any.bimodal, t);
    }
    json holds = json::object();
    text << "evaluation of " << shown << ":\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
      holds[names[i]] = static_cast<bool>(values[i]);
      text << "  " << names[i] << ": " << (values[i] ? "true" : "false")
           << "\n";
    }
    j["formula"] = shown;
    j["holds_at"] = holds;
    if (!a.world.empty()) {
      const auto it = std::find(names.begin(), names.end(), a.world);
      if (it == names.end())
        throw std::invalid_argument("unknown world: " + a.world);
      rc = values[static_cast<std::size_t>(it - names.begin())]
               ? kExitTheorem
               : kExitNonTheorem;
    }
  }
  print_or_json(a.json_out, j, text.str());
  return rc;
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

struct SelftestArgs {
  int max_size = 4;
  std::string vars = "p,q";
  std::uint64_t seed = 20260819;
  std::uint64_t budget = kDefaultBudget;
  bool json_out = false;
};

std::vector<std::string> split_vars(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int run_selftest(const SelftestArgs& a) {
  const std::vector<std::string> vars = split_vars(a.vars);
  if (vars.empty()) throw std::invalid_argument("--vars must list variables");
  json j{{"seed", a.seed}, {"max_size", a.max_size}, {"vars", vars}};
  std::ostringstream text;
  text << "seed: " << a.seed << "\n";
  bool all_ok = true;

  // 1. Decision procedure against the independent oracle, both systems.
  const auto pool = enumerate_formulas(vars, a.max_size);
  std::size_t provable = 0;
  std::size_t mismatches = 0;
  std::vector<Fml> refutable;
  for (Fml f : pool) {
    const Verdict v = decide(System::ILmPs, f, a.budget);
    if (v.outcome == Outcome::BudgetExceeded)
      throw std::runtime_error("budget exceeded in selftest decide sweep");
    if (v.provable())
      ++provable;
    else
      refutable.push_back(f);
    if (v.provable() != oracle_decide(System::ILmPs, f)) ++mismatches;
    const Verdict w = decide(System::ILms, f, a.budget);
    if (w.provable() != oracle_decide(System::ILms, f)) ++mismatches;
  }
  j["pool"] = pool.size();
  j["provable"] = provable;
  j["oracle_mismatches"] = mismatches;
  text << "decide vs oracle: " << pool.size() << " formulas, " << provable
       << " provable, " << mismatches << " mismatch(es)\n";
  all_ok = all_ok && mismatches == 0;

  // 2. Certified countermodels for a sample of non-theorems.
  std::size_t certified = 0;
  const auto sample = sample_formulas(refutable, 20, a.seed);
  for (Fml f : sample) {
    const CanonicalModel cm = build_canonical(f, a.budget);
    if (cm.report.truth_lemma_ok && cm.report.frame_ok &&
        !eval(cm.model, cm.designated, f))
      ++certified;
  }
  j["countermodels"] = sample.size();
  j["countermodels_certified"] = certified;
  text << "countermodels: " << certified << "/" << sample.size()
       << " certified\n";
  all_ok = all_ok && certified == sample.size();

  // 3. Persistence axiom instances on random simplified frames.
  std::mt19937_64 rng(a.seed);
  const auto lhs_sample = sample_formulas(pool, 8, a.seed ^ 1);
  const auto rhs_sample = sample_formulas(pool, 8, a.seed ^ 2);
  std::size_t frame_checks = 0, frame_failures = 0;
  for (int round = 0; round < 25; ++round) {
    const SimplifiedModel m = random_simplified_frame(rng, 4);
    for (std::size_t i = 0; i < lhs_sample.size(); ++i) {
      const Fml inst = Formula::mk_imp(
          Formula::mk_rhd(lhs_sample[i], rhs_sample[i]),
          Formula::mk_box(Formula::mk_rhd(lhs_sample[i], rhs_sample[i])));
      ++frame_checks;
      if (!frame_validates(m, inst)) ++frame_failures;
    }
  }
  j["persistence_checks"] = frame_checks;
  j["persistence_failures"] = frame_failures;
  text << "persistence on random frames: " << frame_checks << " checks, "
       << frame_failures << " failure(s)\n";
  all_ok = all_ok && frame_failures == 0;

  // 4. Fixed points for sampled left-modalized bodies.
  const auto bodies = sample_left_modalized("p", {"q"}, 3, 10, a.seed);
  std::size_t fixed_ok = 0;
  for (Fml body : bodies) {
    const FixpointResult r = fixpoint(body, "p", a.budget);
    if (r.equivalence_verdict.provable() && r.variable_condition) ++fixed_ok;
  }
  j["fixpoints"] = bodies.size();
  j["fixpoints_verified"] = fixed_ok;
  text << "fixed points: " << fixed_ok << "/" << bodies.size()
       << " verified\n";
  all_ok = all_ok && fixed_ok == bodies.size();

  // 5. Interpolation round trip on provable implications from the pool.
  std::size_t interp_tried = 0, interp_ok = 0;
  for (Fml f : sample_formulas(pool, 200, a.seed ^ 3)) {
    if (f->kind() != Kind::Imp) continue;
    const Verdict v = decide(System::ILmPs, f, a.budget);
    if (!v.provable()) continue;
    ++interp_tried;
    const InterpolantResult r =
        interpolate(System::ILmPs, f->lhs(), f->rhs(), a.budget);
    if (r.outcome == Outcome::Provable && r.interpolant != nullptr)
      ++interp_ok;
    if (interp_tried >= 10) break;
  }
  j["interpolations"] = interp_tried;
  j["interpolations_ok"] = interp_ok;
  text << "interpolation: " << interp_ok << "/" << interp_tried
       << " succeeded\n";
  all_ok = all_ok && interp_ok == interp_tried;

  j["ok"] = all_ok;
  text << (all_ok ? "selftest passed\n" : "selftest FAILED\n");
  print_or_json(a.json_out, j, text.str());
  return all_ok ? 0 : 1;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{
      "workbench for interpretability logics without J1/J4: decision "
      "procedure, proof objects, cut elimination, interpolation, fixed "
      "points, countermodels, bimodal translation"};
  app.require_subcommand(1);

  DecideArgs da;
  CLI::App* decide_cmd =
      app.add_subcommand("decide", "decide theoremhood of a formula");
  decide_cmd->add_option("formula", da.formula, "formula text")->required();
  decide_cmd->add_option("--system", da.system, "proof system")
      ->check(CLI::IsMember({"ilms", "ilmps"}))
      ->capture_default_str();
  decide_cmd->add_option("--emit-proof", da.emit_proof,
                         "write the proof object to this JSON file");
  decide_cmd->add_option("--budget", da.budget, "search node budget")
      ->capture_default_str();
  decide_cmd->add_flag("--json", da.json_out, "machine-readable output");

  CutelimArgs ca;
  CLI::App* cutelim_cmd = app.add_subcommand(
      "cutelim", "eliminate cuts from a proof object (ILmPs)");
  cutelim_cmd->add_option("proof", ca.input, "input proof JSON")->required();
  cutelim_cmd->add_option("-o,--output", ca.output, "output proof JSON")
      ->required();
  cutelim_cmd->add_flag("--json", ca.json_out, "machine-readable output");

  InterpolateArgs ia;
  CLI::App* interp_cmd = app.add_subcommand(
      "interpolate", "extract a Craig interpolant for lhs -> rhs");
  interp_cmd->add_option("lhs", ia.lhs, "antecedent formula")->required();
  interp_cmd->add_option("rhs", ia.rhs, "succedent formula")->required();
  interp_cmd->add_option("--system", ia.system, "proof system")
      ->check(CLI::IsMember({"ilms", "ilmps"}))
      ->capture_default_str();
  interp_cmd->add_option("--emit-proofs", ia.emit_dir,
                         "directory for the two half proofs");
  interp_cmd->add_option("--budget", ia.budget, "search node budget")
      ->capture_default_str();
  interp_cmd->add_flag("--json", ia.json_out, "machine-readable output");

  FixpointArgs fa;
  CLI::App* fix_cmd = app.add_subcommand(
      "fixpoint", "explicit fixed point for a left-modalized formula");
  fix_cmd->add_option("formula", fa.formula, "body A(p)")->required();
  fix_cmd->add_option("--var", fa.var, "fixed-point variable")
      ->capture_default_str();
  fix_cmd->add_flag("--verify", fa.verify,
                    "report the prover-backed verification");
  fix_cmd->add_option("--budget", fa.budget, "search node budget")
      ->capture_default_str();
  fix_cmd->add_flag("--json", fa.json_out, "machine-readable output");

  CountermodelArgs ma;
  CLI::App* counter_cmd = app.add_subcommand(
      "countermodel", "construct a certified countermodel for a non-theorem");
  counter_cmd->add_option("formula", ma.formula, "formula text")->required();
  counter_cmd->add_option("--stage", ma.stage, "construction stage")
      ->check(CLI::IsMember({"canonical", "simplified", "level"}))
      ->capture_default_str();
  counter_cmd->add_option("-o,--output", ma.output,
                          "write the model here (.json or .dot)");
  counter_cmd->add_option("--budget", ma.budget, "search node budget")
      ->capture_default_str();
  counter_cmd->add_flag("--json", ma.json_out, "machine-readable output");

  TranslateArgs ta;
  CLI::App* trans_cmd = app.add_subcommand(
      "translate", "translate into the bimodal language");
  trans_cmd->add_option("formula", ta.formula, "formula text")->required();
  trans_cmd->add_option("--transfer", ta.transfer_path,
                        "simplified model JSON to transfer alongside");
  trans_cmd->add_option("-o,--output", ta.output,
                        "write the transferred bimodal model here");
  trans_cmd->add_flag("--json", ta.json_out, "machine-readable output");

  CheckModelArgs ka;
  CLI::App* check_cmd = app.add_subcommand(
      "check-model", "validate a model file and optionally evaluate");
  check_cmd->add_option("model", ka.input, "model JSON file")->required();
  check_cmd->add_option("--formula", ka.formula,
                        "formula to evaluate at every world");
  check_cmd->add_option("--world", ka.world,
                        "exit 0/1 as the formula holds/fails here");
  check_cmd->add_flag("--json", ka.json_out, "machine-readable output");

  SelftestArgs sa;
  CLI::App* self_cmd = app.add_subcommand(
      "selftest", "cross-validate the core pipelines on a formula corpus");
  self_cmd->add_option("--max-size", sa.max_size, "formula size bound")
      ->capture_default_str();
  self_cmd->add_option("--vars", sa.vars, "comma-separated variables")
      ->capture_default_str();
  self_cmd->add_option("--seed", sa.seed, "sampling seed")
      ->capture_default_str();
  self_cmd->add_option("--budget", sa.budget, "search node budget")
      ->capture_default_str();
  self_cmd->add_flag("--json", sa.json_out, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand(decide_cmd)) return run_decide(da);
    if (app.got_subcommand(cutelim_cmd)) return run_cutelim(ca);
    if (app.got_subcommand(interp_cmd)) return run_interpolate(ia);
    if (app.got_subcommand(fix_cmd)) return run_fixpoint(fa);
    if (app.got_subcommand(counter_cmd)) return run_countermodel(ma);
    if (app.got_subcommand(trans_cmd)) return run_translate(ta);
    if (app.got_subcommand(check_cmd)) return run_check_model(ka);
    if (app.got_subcommand(self_cmd)) return run_selftest(sa);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    return what.find("budget") != std::string::npos ? kExitBudget
                                                    : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
