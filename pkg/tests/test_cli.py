"""CLI surface: file parsing, reports, exit codes, determinism."""

from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

import pseudomv as pmv
from pseudomv.cli import (
    SpecFileError,
    load_algebra,
    parse_element_literal,
    parse_group,
)
from pseudomv.core import SamplerConfig


def run_cli(*args, env_extra=None):
    import os

    env = dict(os.environ)
    env.pop("PMV_SEED", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "pseudomv.cli", *args],
        capture_output=True,
        text=True,
        env=env,
        check=False,
    )


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


CHAIN3 = {"catalogue": {"kind": "chain", "params": [3]}}
BOOL2 = {"catalogue": {"kind": "boolean", "params": [2]}}
GAMMA_DYADIC = {"gamma": {"group": "D", "unit": "1"}}
GAMMA_LEXHEIS = {"gamma": {"group": "lex(Q,heis)", "unit": "(1,0,0,0)"}}


# ----------------------------------------------------------------------
# DSL parsing
# ----------------------------------------------------------------------

def test_parse_group_atoms():
    assert parse_group("Z").dsl == "Z"
    assert parse_group("Q").dsl == "Q"
    assert parse_group("D").dsl == "D"
    assert parse_group("H(6)").dsl == "H(6)"
    assert parse_group("heis").dsl == "heis"
    assert parse_group("semi_numeric").dsl == "semi_numeric"
    assert parse_group("lex(Q,heis)").dsl == "lex(Q,heis)"
    assert parse_group("prod(Z,D)").dsl == "prod(Z,D)"
    assert parse_group("lex(Q, lex(D, heis))").flat_arity == 5


def test_parse_group_rejects_garbage():
    for bad in ("ring", "lex(Q)", "lex(Q,heis", "Q,D", "H(x)"):
        with pytest.raises(SpecFileError):
            parse_group(bad)


def test_parse_element_literals():
    g = parse_group("lex(Q,heis)")
    assert parse_element_literal(g, "(1/2, 1, 0, -3/4)") == \
        (F(1, 2), (F(1), F(0), F(-3, 4)))
    z = parse_group("Z")
    assert parse_element_literal(z, "3") == 3
    with pytest.raises(SpecFileError):
        parse_element_literal(z, "1/2")
    s = parse_group("semi_numeric")
    assert parse_element_literal(s, "(2, 0)") == (2.0, 0.0)


def test_load_algebra_shapes(tmp_path):
    sampler = SamplerConfig()
    a = load_algebra(write(tmp_path, "c.json", CHAIN3), sampler, 1e-9)
    assert a.size == 4
    b = load_algebra(write(tmp_path, "g.json", GAMMA_DYADIC), sampler, 1e-9)
    assert b.backend == "gamma-interval"
    table = pmv.chain(2).table
    payload = {"finite": {"n": 3, "oplus": [list(r) for r in table.oplus],
                          "neg": list(table.neg), "tilde": list(table.tilde),
                          "zero": 0, "one": 2}}
    c = load_algebra(write(tmp_path, "f.json", payload), sampler, 1e-9)
    assert pmv.find_isomorphism(c, pmv.chain(2)) is not None


def test_serialized_catalogue_reparses_isomorphic(tmp_path):
    src = pmv.product(pmv.boolean(1), pmv.chain(2))
    payload = {"finite": {
        "n": src.size,
        "oplus": [list(r) for r in src.table.oplus],
        "neg": list(src.table.neg),
        "tilde": list(src.table.tilde),
        "zero": src.zero,
        "one": src.one,
    }}
    again = load_algebra(write(tmp_path, "rt.json", payload), SamplerConfig(), 1e-9)
    assert pmv.find_isomorphism(again, src) is not None


# ----------------------------------------------------------------------
# analyze
# ----------------------------------------------------------------------

def test_analyze_chain3_reports_no_root(tmp_path):
    proc = run_cli("analyze", write(tmp_path, "c3.json", CHAIN3),
                   "--samples", "200")
    assert proc.returncode == 0, proc.stderr
    payload = json.loads(proc.stdout)
    assert payload["sqrt"]["found"] is False
    assert "none" in payload["sqrt"]["construction"]
    assert payload["axioms"]["all_pass"] is True
    assert payload["algebra"]["representable"] is True
    assert payload["ideals"]["count"] == 2


def test_analyze_boolean2_classification(tmp_path):
    proc = run_cli("analyze", write(tmp_path, "b2.json", BOOL2),
                   "--samples", "200")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["sqrt"]["classification"] == "boolean"
    assert payload["sqrt"]["kind"] == "table"
    assert payload["decomposition"]["classification"] == "boolean"
    assert payload["properties"]["preserves_meet"] == "pass"


def test_analyze_gamma_dyadic_strict(tmp_path):
    proc = run_cli("analyze", write(tmp_path, "d.json", GAMMA_DYADIC),
                   "--samples", "300")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["sqrt"]["classification"] == "strict"
    assert payload["sqrt"]["strict"] is True
    assert payload["sqrt"]["r0"] == "1/2"
    assert payload["sqrt"]["kind"] == "closed-form-sym"
    assert payload["ideals"] is None


def test_analyze_axiom_failure_exits_2(tmp_path):
    table = pmv.chain(2).table
    rows = [list(r) for r in table.oplus]
    rows[1][1] = 1
    payload = {"finite": {"n": 3, "oplus": rows, "neg": list(table.neg),
                          "tilde": list(table.tilde), "zero": 0, "one": 2}}
    proc = run_cli("analyze", write(tmp_path, "bad.json", payload))
    assert proc.returncode == 2
    report = json.loads(proc.stdout)
    assert report["axioms"]["all_pass"] is False


def test_analyze_parse_error_exits_3(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json", encoding="utf-8")
    proc = run_cli("analyze", str(path))
    assert proc.returncode == 3
    assert proc.stdout == ""
    assert "error" in proc.stderr

    proc = run_cli("analyze", str(tmp_path / "missing.json"))
    assert proc.returncode == 3


def test_analyze_is_deterministic(tmp_path):
    path = write(tmp_path, "lh.json", GAMMA_LEXHEIS)
    a = run_cli("analyze", path, "--seed", "42", "--samples", "150")
    b = run_cli("analyze", path, "--seed", "42", "--samples", "150")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    c = run_cli("analyze", path, "--seed", "43", "--samples", "150")
    assert json.loads(c.stdout)["seed"] == 43


def test_env_seed_overrides_flag(tmp_path):
    path = write(tmp_path, "d.json", GAMMA_DYADIC)
    proc = run_cli("analyze", path, "--seed", "7", "--samples", "100",
                   env_extra={"PMV_SEED": "99"})
    assert json.loads(proc.stdout)["seed"] == 99


# ----------------------------------------------------------------------
# search
# ----------------------------------------------------------------------

def test_search_table_is_consistent():
    proc = run_cli("search", "--max-size", "4")
    assert proc.returncode == 0
    assert "0 inconsistent" in proc.stdout
    assert "chain(2)" in proc.stdout


def test_search_single_row():
    proc = run_cli("search", "--max-size", "2")
    assert proc.returncode == 0
    lines = [l for l in proc.stdout.splitlines() if l.startswith(("chain", "boolean"))]
    assert lines and all("True" in l for l in lines)


def test_search_ceiling_is_enforced():
    proc = run_cli("search", "--max-size", "7")
    assert proc.returncode == 1
    assert "ceiling" in proc.stderr


# ----------------------------------------------------------------------
# counterexamples, ladder, quotient
# ----------------------------------------------------------------------

def test_counterexamples_command():
    proc = run_cli("counterexamples", "--samples", "300")
    assert proc.returncode == 0, proc.stderr
    payload = json.loads(proc.stdout)
    scaling = payload["scaling_action"]
    assert scaling["root"]["square"] is True
    assert scaling["root"]["negation_compat"] is False
    assert scaling["negation_gap"]["violates"] is True
    assert abs(float(scaling["negation_gap"]["gap"]) - 0.0857864376269) < 1e-9
    assert payload["exp_action"]["coordinate_change_intertwines"] is True

    again = run_cli("counterexamples", "--samples", "300")
    assert again.stdout == proc.stdout


def test_ladder_command(tmp_path):
    proc = run_cli("ladder", write(tmp_path, "d.json", GAMMA_DYADIC),
                   "--depth", "5")
    assert proc.returncode == 0, proc.stderr
    payload = json.loads(proc.stdout)
    assert payload["ladder"] == ["1/2", "1/4", "1/8", "1/16", "1/32"]


def test_ladder_needs_gamma(tmp_path):
    proc = run_cli("ladder", write(tmp_path, "c.json", CHAIN3), "--depth", "3")
    assert proc.returncode == 3


def test_quotient_command(tmp_path):
    path = write(tmp_path, "b2.json", BOOL2)
    proc = run_cli("quotient", path, "--ideal", "0,1")
    assert proc.returncode == 0, proc.stderr
    payload = json.loads(proc.stdout)
    assert payload["ideal"]["normal"] is True
    assert payload["quotient"]["size"] == 2
    assert payload["quotient"]["checks"]["square"]["passed"] is True

    proc = run_cli("quotient", path, "--ideal", "0,3")
    assert proc.returncode == 1
    assert "not an ideal" in proc.stderr


def test_usage_error_exit_code():
    proc = run_cli("analyze")  # missing path
    assert proc.returncode == 3
