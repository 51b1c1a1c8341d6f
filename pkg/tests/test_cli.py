from __future__ import annotations

import json
import shutil

import pytest

from ssx.cli import main

VERDICT_EXIT = {"true": 0, "witness": 0, "false": 1, "no-witness": 1, "budget": 2}


@pytest.fixture
def work(fixtures, tmp_path):
    for p in fixtures.iterdir():
        if p.is_file():
            shutil.copy(p, tmp_path / p.name)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, _err = capsys.readouterr()
    report = json.loads(out)
    check_report(report, code)
    return code, report


def check_report(r: dict, code: int) -> None:
    assert {"command", "verdict", "timing_ms"} <= set(r)
    assert isinstance(r["timing_ms"], (int, float))
    if code == 3:
        assert r["verdict"] is None and r["error"]["message"]
        return
    assert VERDICT_EXIT[r["verdict"]] == code
    cert = r["certificate"]
    if r["verdict"] in ("false", "no-witness"):
        assert cert, "negative verdicts carry a certificate"


def test_spec_examples(capsys, work):
    assert run(capsys, "check", "cofibrant", work / "d2.ssj")[0] == 0
    assert run(capsys, "homotopy", work / "v0.smap", work / "v1.smap")[0] == 1
    code, r = run(capsys, "lift", "--square", work / "square_big.json", "--budget", 10)
    assert code == 2 and r["verdict"] == "budget"


CASES = [
    (["build", "simplex", 2, "-o", "{w}/o/d2.ssj", "--inclusion", "{w}/o/i.smap"], 0),
    (["build", "horn", 2, 1, "-o", "{w}/o/h.ssj"], 0),
    (["build", "horn", 2, "-o", "{w}/o/h.ssj"], 3),
    (["check", "cofibrant", "{w}/circle.ssj"], 0),
    (["check", "cofibration", "{w}/inc_bd1.smap", "--condition", "ii"], 0),
    (["check", "cofibration", "{w}/inc_h21.smap", "--condition", "iii"], 0),
    (["check", "cofibration", "{w}/fold.smap"], 1),
    (["check", "fibration", "{w}/d1_pt.smap"], 1),
    (["check", "fibration", "{w}/id_d1.smap", "--generators", "boundaries"], 0),
    (["check", "cofibrant", "{w}/bad_identity.ssj"], 3),
    (["check", "cofibrant", "{w}/bad_schema.ssj"], 3),
    (["check", "cofibrant", "{w}/missing.ssj"], 3),
    (["lift", "--square", "{w}/square_yes.json"], 0),
    (["lift", "--square", "{w}/square_no.json"], 1),
    (["factor", "{w}/inc_bd1.smap", "--stages", 1, "--maxdim", 1, "-o", "{w}/fac"], 0),
    (["sd", "{w}/d1.ssj", "-o", "{w}/o/sd.ssj", "--last-vertex", "{w}/o/lv.smap"], 0),
    (["ex", "{w}/circle.ssj", "--iters", 1, "-o", "{w}/ex"], 0),
    (["homotopy", "{w}/w0.smap", "{w}/w1.smap"], 0),
    (["homotopy", "{w}/w0.smap", "{w}/v1.smap"], 3),
    (["she", "{w}/inc_h21.smap", "--orient", 0], 0),
    (["she", "{w}/inc_bd1.smap", "--orient", 1], 1),
    (["mps", "{w}/inc_bd1.smap", "--cap", 2], 0),
    (["pi", "{w}/inc_bd1.smap", "{w}/d1.ssj", "--cap", 2], 0),
    (["eqext", "--i", "{w}/inc_bd1.smap", "--e", "{w}/id_bd1.smap", "--y1", "{w}/id_d1.smap"], 0),
    (["eqext", "--i", "{w}/inc_bd1.smap", "--e", "{w}/bd1_pt.smap", "--y1", "{w}/id_d1.smap"], 1),
    (["lu", "{w}/d0.ssj", "--cap", 4, "--semi-output", "{w}/o/u.json"], 0),
    (["t", "{w}/d1.ssj", "--srccap", 2, "--cap", 1], 0),
    (["report"], 0),
    (["frobnicate"], 3),
    ([], 3),
]


@pytest.mark.parametrize("argv,expected", CASES, ids=lambda c: " ".join(map(str, c)) if isinstance(c, list) else None)
def test_exit_code_contract(capsys, work, argv, expected):
    code, _ = run(capsys, *[str(a).format(w=work) for a in argv])
    assert code == expected


def test_lift_witness_is_a_diagonal(capsys, work):
    _, r = run(capsys, "lift", "--square", work / "square_yes.json")
    assert r["certificate"]["diagonal"] == {"(0)": "(0)", "(1)": "(1)", "(0,1)": "(0,1)"}


def test_build_output_round_trips(capsys, work):
    run(capsys, "build", "simplex", 1, "-o", work / "x.ssj")
    assert (work / "x.ssj").read_text() == (work / "d1.ssj").read_text()


def test_factor_writes_manifest(capsys, work):
    run(capsys, "factor", work / "inc_bd1.smap", "--stages", 2, "--maxdim", 1, "-o", work / "fac")
    man = json.loads((work / "fac" / "manifest.json").read_text())
    assert len(man["stages"]) == 3
    assert run(capsys, "check", "cofibration", work / "fac" / "first.smap")[0] == 0


def test_ex_tower_then_exfill(capsys, work):
    run(capsys, "ex", work / "circle.ssj", "--iters", 1, "-o", work / "ex")
    assert {p.name for p in (work / "ex").iterdir()} >= {"stage0.ssj", "stage1.ssj", "unit0.smap", "manifest.json"}
    code, r = run(capsys, "exfill", "--tower", work / "ex", "--horn", "2,1")
    assert code == 0 and r["certificate"]["restriction_failures"] == []
    assert run(capsys, "exfill", "--tower", work / "ex", "--horn", "2,1", "--stage", 0)[0] == 3


def test_stdout_is_only_json(capsys, work):
    main(["sd", str(work / "d2.ssj"), "-o", str(work / "s.ssj"), "-v"])
    out, _ = capsys.readouterr()
    json.loads(out)
