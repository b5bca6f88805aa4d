// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#include "ilp/json_io.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ilp {

namespace {

nlohmann::json fset_to_json(const FSet& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (Fml f : s) arr.push_back(print(f));
  return arr;
}

nlohmann::json node_to_json(const Drv& n) {
  nlohmann::json j;
  j["rule"] = rule_name(n->rule);
  j["sequent"] = {{"ant", fset_to_json(n->conclusion.ant)},
                  {"suc", fset_to_json(n->conclusion.suc)}};
  if (n->rule == Rule::Rhd || n->rule == Rule::RhdP) {
    nlohmann::json ps = nlohmann::json::array();
    for (Fml p : n->principals) ps.push_back(print(p));
    j["principals"] = ps;
    j["diagonal"] = print(n->principal);
  } else if (n->rule == Rule::Cut) {
    j["cut_formula"] = print(n->principal);
  } else if (n->principal) {
    j["principals"] = nlohmann::json::array({print(n->principal)});
  }
  if (n->rule == Rule::AndL || n->rule == Rule::OrR) j["component"] = n->component;
  nlohmann::json prem = nlohmann::json::array();
  for (const Drv& p : n->premises) prem.push_back(node_to_json(p));
  j["premises"] = prem;
  return j;
}

Rule rule_from_tag(const std::string& tag) {
  static const std::vector<Rule> all = {
      Rule::Init, Rule::InitBot, Rule::WL,   Rule::WR,   Rule::NegL, Rule::NegR,
      Rule::AndL, Rule::AndR,    Rule::OrL,  Rule::OrR,  Rule::ImpL, Rule::ImpR,
      Rule::Cut,  Rule::BoxRule, Rule::Rhd,  Rule::RhdP};
  for (Rule r : all)
    if (tag == rule_name(r)) return r;
  throw std::invalid_argument("unknown rule tag: " + tag);
}

FSet fset_from_json(const nlohmann::json& arr) {
  FSet s;
  for (const auto& e : arr) s.insert(parse(e.get<std::string>()));
  return s;
}

Drv node_from_json(const nlohmann::json& j) {
  Rule rule = rule_from_tag(j.at("rule").get<std::string>());
  Sequent conc{fset_from_json(j.at("sequent").at("ant")),
               fset_from_json(j.at("sequent").at("suc"))};
  std::vector<Drv> premises;
  for (const auto& p : j.at("premises")) premises.push_back(node_from_json(p));
  Fml principal = nullptr;
  std::vector<Fml> principals;
  if (rule == Rule::Cut) {
    principal = parse(j.at("cut_formula").get<std::string>());
  } else if (rule == Rule::Rhd || rule == Rule::RhdP) {
    principal = parse(j.at("diagonal").get<std::string>());
    for (const auto& p : j.at("principals")) principals.push_back(parse(p.get<std::string>()));
  } else if (j.contains("principals") && !j["principals"].empty()) {
    principal = parse(j["principals"].at(0).get<std::string>());
  }
  int component = j.value("component", 0);
  return Derivation::make(rule, std::move(conc), std::move(premises), principal,
                          component, std::move(principals));
}

}  // namespace

nlohmann::json proof_to_json(const Proof& p) {
  nlohmann::json j;
  j["system"] = system_name(p.system);
  j["root"] = node_to_json(p.root);
  return j;
}

Proof proof_from_json(const nlohmann::json& j) {
  std::string sys = j.at("system").get<std::string>();
  Proof p;
  if (sys == "ILms") {
    p.system = System::ILms;
  } else if (sys == "ILmPs") {
    p.system = System::ILmPs;
  } else {
    throw std::invalid_argument("unknown system: " + sys);
  }
  p.root = node_from_json(j.at("root"));
  return p;
}

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

namespace {

nlohmann::json pairs_to_json(const Relation& r,
                             const std::vector<std::string>& names) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t x = 0; x < r.size(); ++x)
    for (std::size_t y = 0; y < r.size(); ++y)
      if (r[x][y]) arr.push_back({names[x], names[y]});
  return arr;
}

nlohmann::json valuation_to_json(const ValuationMap& val,
                                 const std::vector<std::string>& names) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [var, worlds] : val) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t w = 0; w < worlds.size(); ++w)
      if (worlds[w]) arr.push_back(names[w]);
    j[var] = arr;
  }
  return j;
}

std::size_t world_index(const std::vector<std::string>& names,
                        const std::string& name) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw std::invalid_argument("unknown world name: " + name);
}

std::vector<std::string> names_from_json(const nlohmann::json& j) {
  std::vector<std::string> names;
  for (const auto& w : j.at("worlds")) names.push_back(w.get<std::string>());
  return names;
}

Relation pairs_from_json(const nlohmann::json& arr,
                         const std::vector<std::string>& names) {
  Relation r = empty_relation(names.size());
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("relation entries must be [from, to] pairs");
    r[world_index(names, pair[0].get<std::string>())]
     [world_index(names, pair[1].get<std::string>())] = true;
  }
  return r;
}

ValuationMap valuation_from_json(const nlohmann::json& j,
                                 const std::vector<std::string>& names) {
  ValuationMap val;
  if (!j.contains("valuation")) return val;
  for (const auto& [var, worlds] : j.at("valuation").items()) {
    std::vector<bool> where(names.size(), false);
    for (const auto& w : worlds)
      where[world_index(names, w.get<std::string>())] = true;
    val.emplace(var, std::move(where));
  }
  return val;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// Shared DOT skeleton: nodes labelled with their true variables, solid
// primary edges; extra dashed edges are appended by each caller.
std::string dot_nodes_and_solid(const std::vector<std::string>& names,
                                const ValuationMap& val, const Relation& solid) {
  std::string out = "digraph model {\n";
  for (std::size_t w = 0; w < names.size(); ++w) {
    std::string label = names[w];
    std::string trues;
    for (const auto& [var, worlds] : val)
      if (worlds[w]) trues += (trues.empty() ? "" : ",") + var;
    if (!trues.empty()) label += "\\n{" + trues + "}";
    out += "  \"" + dot_escape(names[w]) + "\" [label=\"" + dot_escape(label) +
           "\"];\n";
  }
  for (std::size_t x = 0; x < solid.size(); ++x)
    for (std::size_t y = 0; y < solid.size(); ++y)
      if (solid[x][y])
        out += "  \"" + dot_escape(names[x]) + "\" -> \"" +
               dot_escape(names[y]) + "\";\n";
  return out;
}

}  // namespace

nlohmann::json model_to_json(const VeltmanModel& m) {
  nlohmann::json j;
  j["kind"] = "veltman";
  j["worlds"] = m.names;
  j["R"] = pairs_to_json(m.R, m.names);
  nlohmann::json fam = nlohmann::json::object();
  for (std::size_t w = 0; w < m.size(); ++w)
    fam[m.names[w]] = pairs_to_json(m.S[w], m.names);
  j["S_family"] = fam;
  j["valuation"] = valuation_to_json(m.valuation, m.names);
  return j;
}

nlohmann::json model_to_json(const SimplifiedModel& m) {
  nlohmann::json j;
  j["kind"] = "simplified";
  j["worlds"] = m.names;
  j["R"] = pairs_to_json(m.R, m.names);
  j["S"] = pairs_to_json(m.S, m.names);
  j["valuation"] = valuation_to_json(m.valuation, m.names);
  return j;
}

nlohmann::json model_to_json(const BimodalModel& m) {
  nlohmann::json j;
  j["kind"] = "bimodal";
  j["worlds"] = m.names;
  j["R"] = pairs_to_json(m.R0, m.names);
  j["R1"] = pairs_to_json(m.R1, m.names);
  j["valuation"] = valuation_to_json(m.valuation, m.names);
  return j;
}

AnyModel model_from_json(const nlohmann::json& j) {
  AnyModel out;
  out.kind = j.at("kind").get<std::string>();
  const auto names = names_from_json(j);
  if (out.kind == "veltman") {
    VeltmanModel& m = out.veltman;
    m.names = names;
    m.R = pairs_from_json(j.at("R"), names);
    m.S.assign(names.size(), empty_relation(names.size()));
    if (j.contains("S_family"))
      for (const auto& [wname, pairs] : j.at("S_family").items())
        m.S[world_index(names, wname)] = pairs_from_json(pairs, names);
    m.valuation = valuation_from_json(j, names);
    m.validate();
  } else if (out.kind == "simplified") {
    SimplifiedModel& m = out.simplified;
    m.names = names;
    m.R = pairs_from_json(j.at("R"), names);
    m.S = j.contains("S") ? pairs_from_json(j.at("S"), names)
                          : empty_relation(names.size());
    m.valuation = valuation_from_json(j, names);
    m.validate();
  } else if (out.kind == "bimodal") {
    BimodalModel& m = out.bimodal;
    m.names = names;
    m.R0 = pairs_from_json(j.at("R"), names);
    m.R1 = j.contains("R1") ? pairs_from_json(j.at("R1"), names)
                            : empty_relation(names.size());
    m.valuation = valuation_from_json(j, names);
    m.validate();
  } else {
    throw std::invalid_argument("unknown model kind: " + out.kind);
  }
  return out;
}

std::string model_to_dot(const VeltmanModel& m) {
  std::string out = dot_nodes_and_solid(m.names, m.valuation, m.R);
  for (std::size_t w = 0; w < m.size(); ++w)
    for (std::size_t x = 0; x < m.size(); ++x)
      for (std::size_t y = 0; y < m.size(); ++y)
        if (m.S[w][x][y])
          out += "  \"" + dot_escape(m.names[x]) + "\" -> \"" +
                 dot_escape(m.names[y]) + "\" [style=dashed, label=\"S_" +
                 dot_escape(m.names[w]) + "\"];\n";
  return out + "}\n";
}

std::string model_to_dot(const SimplifiedModel& m) {
  std::string out = dot_nodes_and_solid(m.names, m.valuation, m.R);
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      if (m.S[x][y])
        out += "  \"" + dot_escape(m.names[x]) + "\" -> \"" +
               dot_escape(m.names[y]) + "\" [style=dashed, label=\"S\"];\n";
  return out + "}\n";
}

std::string model_to_dot(const BimodalModel& m) {
  std::string out = dot_nodes_and_solid(m.names, m.valuation, m.R0);
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      if (m.R1[x][y])
        out += "  \"" + dot_escape(m.names[x]) + "\" -> \"" +
               dot_escape(m.names[y]) + "\" [style=dashed, label=\"R1\"];\n";
  return out + "}\n";
}

std::string to_pretty_string(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace ilp
