import json

import pytest

from xcdof.cli import main
from xcdof.scheme import transcript_from_json


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_params_text(capsys):
    rc, out, _ = run(capsys, "params", "3", "3", "2", "2")
    assert rc == 0
    assert "gamma = 9/5 9/5" in out
    assert "sum_dof = 18/7" in out
    assert "case = Case3" in out


def test_params_case1(capsys):
    rc, out, _ = run(capsys, "params", "2", "1", "4", "1")
    assert rc == 0
    assert "case = Case1" in out and "sum_dof = 3" in out


def test_params_normalizes(capsys):
    rc, out, _ = run(capsys, "params", "1", "3", "2", "2")
    assert rc == 0 and "swapped = yes" in out and "config = 3 1 2 2" in out


def test_params_usage_error(capsys):
    rc, _, err = run(capsys, "params", "0", "0", "1", "1")
    assert rc == 1 and "error" in err


def test_unknown_flag_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        run(capsys, "params", "--bogus")
    assert exc.value.code == 1


def test_simulate_line_and_dump(tmp_path, capsys):
    path = tmp_path / "t.json"
    rc, out, _ = run(capsys, "simulate", "3", "3", "2", "2", "--seed", "1", "--dump", str(path))
    assert rc == 0
    assert out.strip() == "T=14 symbols=36 dof=18/7 decodable=yes"
    t = transcript_from_json(path.read_text())
    assert t.t_total == 14 and t.seed == 1


def test_simulate_case2_line(capsys):
    rc, out, _ = run(capsys, "simulate", "4", "1", "2", "1", "--seed", "1")
    assert rc == 0
    assert out.strip() == "T=7 symbols=15 dof=15/7 decodable=yes"


def test_simulate_internal_inconsistency_exit(capsys):
    # a configuration whose published blocklength cannot be scheduled
    rc, _, err = run(capsys, "simulate", "2", "2", "3", "1")
    assert rc == 3 and "internal" in err


def test_verify_lemma1(capsys):
    rc, out, _ = run(
        capsys, "verify", "lemma1", "1", "1", "1", "1", "--T", "4", "--trials", "50"
    )
    assert rc == 0 and "violations=0" in out


def test_verify_lemma2(capsys):
    rc, out, _ = run(capsys, "verify", "lemma2", "--bc", "2", "1", "1", "--trials", "50")
    assert rc == 0 and "violations=0" in out


def test_verify_lemma2_requires_bc(capsys):
    rc, _, err = run(capsys, "verify", "lemma2", "--trials", "5")
    assert rc == 1


def test_verify_appendix_c(capsys):
    rc, out, _ = run(
        capsys,
        "verify", "appendix_c", "3", "3", "2", "2",
        "--trials", "5", "--mode", "paper_scheme",
    )
    assert rc == 0 and "counterexamples=0" in out


def test_verify_weighted_sum(capsys):
    rc, out, _ = run(capsys, "verify", "weighted_sum", "3", "3", "2", "2", "--trials", "3")
    assert rc == 0 and "violations=0" in out


def test_region_text(capsys):
    rc, out, _ = run(capsys, "region", "3", "2")
    assert rc == 0
    assert "corners = 12" in out
    assert out.count(" vertex") == 12 and "NOT-A-VERTEX" not in out
    assert "max_corner_sum = 18/7" in out


def test_region_json_and_hv(capsys):
    rc, out, _ = run(capsys, "region", "1", "3", "--format", "json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["regime"] == 5 and len(doc["corners"]) == 4
    rc, out, _ = run(capsys, "region", "1", "3", "--format", "hv")
    assert rc == 0 and "H-representation" in out and "V-representation" in out


def test_table1(capsys):
    rc, out, _ = run(capsys, "table1", "--max", "6")
    assert rc == 0
    assert "1/2 < N/M <= 1,3M/(M+N),(2N-M)/(M+N),6MN/(4M+N)" in out
    assert "# verified exactly" in out


def test_fig4(capsys):
    rc, out, _ = run(capsys, "fig4", "--max-den", "3", "--max-num", "6")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "ratio,xc_normalized,bc_normalized"
    assert "1,6/5,4/3" in lines  # N/M = 1: 6M/5 over N
    assert "1/2,4/3,4/3" in lines


def test_lossmap(capsys):
    rc, out, _ = run(capsys, "lossmap", "--mode", "symmetric", "--limit", "3")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("m1,m2,n1,n2,loss")
    assert "1,1,1,1,1,1,1,6/5,4/3" in lines


def test_byte_stable_outputs(capsys):
    outs = set()
    for _ in range(2):
        rc, out, _ = run(capsys, "verify", "lemma1", "2", "1", "2", "1",
                         "--T", "4", "--trials", "25", "--format", "json")
        assert rc == 0
        outs.add(out)
    assert len(outs) == 1
    rc, out_a, _ = run(capsys, "region", "2", "1", "--format", "json")
    rc, out_b, _ = run(capsys, "region", "2", "1", "--format", "json")
    assert out_a == out_b


def test_backends_byte_identical():
    import os
    import subprocess
    import sys

    outs = {}
    for backend in ("numba", "numpy"):
        env = dict(os.environ, XCDOF_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, "-m", "xcdof.cli", "simulate", "2", "2", "2", "2",
             "--seed", "5", "--format", "json"],
            capture_output=True, text=True, env=env, check=True,
        )
        outs[backend] = proc.stdout
    assert outs["numba"] == outs["numpy"]


def test_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("XCDOF_SEED", "17")
    rc, out_env, _ = run(capsys, "simulate", "2", "2", "2", "2", "--format", "json")
    monkeypatch.delenv("XCDOF_SEED")
    rc, out_17, _ = run(capsys, "simulate", "2", "2", "2", "2", "--seed", "17", "--format", "json")
    assert out_env == out_17
