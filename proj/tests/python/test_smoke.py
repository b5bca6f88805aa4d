# SPDX-License-Identifier: Apache-2.0
# Copyright (c) 2026 the ilp authors. All rights reserved.
"""Smoke tests for the python bindings."""

import json

import pytest

import pyilp


def test_decide_theorem_and_non_theorem():
    r = pyilp.decide("(p |> q) -> [](p |> q)")
    assert r["outcome"] == "provable"
    assert r["expanded"] > 0
    assert pyilp.decide("[](p -> q) -> (p |> q)")["outcome"] == "not_provable"
    # The weaker system lacks persistence.
    assert pyilp.decide("(p |> q) -> [](p |> q)", system="ilms")["outcome"] \
        == "not_provable"


def test_budget_is_reported():
    r = pyilp.decide("[]([]p -> p) -> []p", budget=3)
    assert r["outcome"] == "budget_exceeded"


def test_proof_roundtrip_and_cut_elimination():
    r = pyilp.decide("[]([]p -> p) -> []p")
    assert r["outcome"] == "provable"
    proof = json.loads(r["proof_json"])
    assert "root" in proof
    out = pyilp.eliminate_cuts(r["proof_json"])
    assert out["cuts_before"] == 0 and out["cuts_after"] == 0


def test_interpolation():
    r = pyilp.interpolate("p & (q |> false)", "q |> p")
    assert r["outcome"] == "provable"
    assert pyilp.variables(r["interpolant"]) == ["q"]
    assert "root" in json.loads(r["left_proof_json"])


def test_fixpoint():
    r = pyilp.fixpoint("[](p -> q) |> q", var="p")
    assert r["equivalence_outcome"] == "provable"
    assert r["variable_condition"] is True
    assert pyilp.variables(r["fixpoint"]) == ["q"]
    with pytest.raises(ValueError):
        pyilp.fixpoint("q |> p", var="p")


def test_countermodel_and_check_model():
    r = pyilp.countermodel("<>p |> p", stage="level")
    assert r["outcome"] == "not_provable"
    assert r["certified"] is True
    model = json.loads(r["model_json"])
    assert model["kind"] == "simplified"
    chk = pyilp.check_model(r["model_json"], formula="<>p |> p")
    assert chk["valid"] is True
    assert chk["holds_at"][r["falsified_at"]] is False
    # Theorems have no countermodel.
    assert pyilp.countermodel("p -> p")["outcome"] == "provable"


def test_translate():
    assert pyilp.translate("p |> q") == "[0](p -> ~[1]~q)"
    assert pyilp.translate("[]p") == "[0]p"


def test_canonical_form_and_errors():
    assert pyilp.canonical_form("((p))") == "p"
    with pytest.raises(Exception):
        pyilp.decide("p q")
