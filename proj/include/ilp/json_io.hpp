// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.
//
// json_io.hpp: JSON (de)serialization for proof objects and models, plus
// DOT emission for models.  Formulas travel as canonical printer strings.

#pragma once

#include <string>

#include <json.hpp>

#include "ilp/derivation.hpp"
#include "ilp/semantics.hpp"

namespace ilp {

nlohmann::json proof_to_json(const Proof& p);
Proof proof_from_json(const nlohmann::json& j);

// Models.  Schema: {"kind": "veltman"|"simplified"|"bimodal",
// "worlds": [names], "R": [[from,to]...] (R0 for bimodal),
// "S_family": {world: [[x,y]...]} (veltman) / "S": [[x,y]...] (simplified) /
// "R1": [[x,y]...] (bimodal), "valuation": {var: [worlds]}}.
// All world references are names; emission order is deterministic.
nlohmann::json model_to_json(const VeltmanModel& m);
nlohmann::json model_to_json(const SimplifiedModel& m);
nlohmann::json model_to_json(const BimodalModel& m);

/// One loaded model of any kind; exactly the member matching `kind` is set.
struct AnyModel {
  std::string kind;  // "veltman" | "simplified" | "bimodal"
  VeltmanModel veltman;
  SimplifiedModel simplified;
  BimodalModel bimodal;
};

/// Parse and validate a model; throws std::invalid_argument on malformed
/// input (unknown kind, unknown world name, bad frame conditions).
AnyModel model_from_json(const nlohmann::json& j);

// DOT emission: R edges solid, S edges dashed (labelled "S_w" per family
// member for Veltman-style models; "R1" for the second bimodal relation).
// World labels list the variables true there.
std::string model_to_dot(const VeltmanModel& m);
std::string model_to_dot(const SimplifiedModel& m);
std::string model_to_dot(const BimodalModel& m);

/// Serialization used by the CLI: 2-space indent, trailing newline.
std::string to_pretty_string(const nlohmann::json& j);

}  // namespace ilp
