import json
import os
import subprocess

import pytest

import sigmainv


def test_builtins_validate():
    names = sigmainv.builtin_names()
    assert set(names) == {"circle", "torus", "wedge-s1-s2", "trefoil", "bs12"}
    for n in names:
        assert sigmainv.validate(n)["ok"]


def test_circle_membership():
    for xi in ([1], [-1]):
        v = sigmainv.decide("circle", xi, 1)
        assert v["status"] == "yes"
        assert "certificate" in v


def test_bs12_discrepancy():
    assert sigmainv.decide("bs12", [-1], 2)["status"] == "yes"
    no = sigmainv.decide("bs12", [1], 1)
    assert no["status"] == "no"
    assert no["witness"]["degree"] == 1
    assert sigmainv.decide("bs12", [1], 2, ring="Q")["status"] == "yes"


def test_scan_and_verify_roundtrip():
    rep = sigmainv.scan("bs12", 1)
    statuses = {tuple(v["direction"]): v["status"] for v in rep["verdicts"]}
    assert statuses[(1,)] == "no"
    assert statuses[(-1,)] == "yes"
    check = sigmainv.verify_report(json.dumps(rep))
    assert check["ok"]
    assert check["verified"] == check["yes"] == 1


def test_homology_lambda_trefoil():
    h = sigmainv.homology_lambda("trefoil", ring="Q")
    assert h[1]["free_rank"] == 0
    assert h[1]["factors"] == ["1*t^(0) + -1*t^(1) + 1*t^(2)"]


def test_movability():
    cycle = json.dumps([{"row": 0, "terms": [[[0], 1]]}])
    r = sigmainv.movable_to_infinity("wedge-s1-s2", 0, cycle, [1])
    assert r["status"] == "movable"
    r2 = sigmainv.movable_to_infinity("wedge-s1-s2", 2, cycle, [1], ring="Q")
    assert r2["status"] == "not-movable"


def test_cat_bound():
    b = sigmainv.cat_upper_bound("circle", [1], 1)
    assert b["bound"] == 0 and not b["conditional"]


def test_dominate_circle():
    d = sigmainv.dominate("circle", window="6")
    hom = {h["degree"]: h for h in d["homology"]}
    assert hom[0]["free_rank"] == 1 and not hom[0]["torsion"]
    assert hom[1]["free_rank"] == 0


def test_presentation_complex():
    cjson = sigmainv.presentation_complex(
        ["a", "t"], ["tat^-1a^-2"], {"a": [0], "t": [1]}, 1
    )
    v = sigmainv.validate(cjson)
    assert v["ok"]


@pytest.mark.skipif("SIGMA_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_exit_codes(tmp_path):
    cli = os.environ["SIGMA_CLI"]
    # undecided decisions exit with 2
    undecidable = {
        "ring": {"coefficients": "Z", "deck_rank": 1},
        "ranks": [1, 2],
        "boundaries": [
            {
                "degree": 1,
                "entries": [
                    {"row": 0, "col": 0, "terms": [[[0], 2]]},
                    {"row": 0, "col": 1, "terms": [[[1], 1], [[0], -3]]},
                ],
            }
        ],
    }
    path = tmp_path / "und.json"
    path.write_text(json.dumps(undecidable))
    p = subprocess.run(
        [cli, "decide", str(path), "--xi", "1", "--k", "0", "--retries", "0"],
        capture_output=True,
    )
    assert p.returncode == 2
    # malformed input exits with 1
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert subprocess.run([cli, "validate", str(bad)], capture_output=True).returncode == 1
    # scans with --jobs stay deterministic
    outs = []
    for i in range(2):
        out = tmp_path / f"jobs{i}.json"
        subprocess.run([cli, "scan", "trefoil", "--jobs", "2", "--out", str(out)], check=True)
        outs.append(out.read_text())
    assert outs[0] == outs[1]


@pytest.mark.skipif("SIGMA_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_agrees_with_module(tmp_path):
    cli = os.environ["SIGMA_CLI"]
    out = tmp_path / "rep.json"
    subprocess.run([cli, "scan", "bs12", "--k", "1", "--coeff", "Z", "--out", str(out)], check=True)
    rep_cli = json.loads(out.read_text())
    rep_mod = sigmainv.scan("bs12", 1)
    assert rep_cli["verdicts"] == rep_mod["verdicts"]

    # verify subcommand accepts its own reports
    subprocess.run([cli, "verify", str(out)], check=True)

    # the default window is overridable through the environment
    env = dict(os.environ, SIGMA_DEFAULT_WINDOW="9")
    out2 = tmp_path / "rep2.json"
    subprocess.run(
        [cli, "decide", "circle", "--xi", "1", "--k", "1", "--out", str(out2)],
        check=True,
        env=env,
    )
    assert json.loads(out2.read_text())["verdict"]["window"] == 9
