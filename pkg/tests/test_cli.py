import json
import subprocess
import sys

import pytest

from thetacorr.cli import ConfigError, RunConfig, main, read_config, run, suite_seed
from thetacorr.suites import ANCHORS, SUITES


def strip_runtime(report):
    for r in report["suites"]:
        r.pop("runtime_ms")
    return report


def test_empty_suite_list_gives_empty_report(tmp_path):
    out = tmp_path / "r.json"
    assert main(["--report", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["suites"] == []
    assert rep["summary"]["counts"] == {"pass": 0, "fail": 0, "skipped": 0}


def test_cosets_report_schema(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["cosets", "--p", "3", "--report", str(out)]) == 0
    rep = json.loads(out.read_text())
    (suite,) = rep["suites"]
    assert suite["suite"] == "cosets"
    assert set(suite) == {"suite", "params", "checks", "runtime_ms"}
    assert [c["actual"] for c in suite["checks"]] == [3, 9, 3, 18, 9, 5]
    for c in suite["checks"]:
        assert {"name", "paper_anchor", "status", "expected", "actual"} <= set(c)
        assert c["paper_anchor"] in ANCHORS.values()
        assert c["status"] == "pass"
    assert "[cosets] 6/6 pass" in capsys.readouterr().out


def test_theta_match_thousand_trials():
    rep = run(RunConfig(p=3, suites=["theta-match"], trials=1000, seed=7))
    (s,) = rep["suites"]
    assert all(c["status"] == "pass" and c["actual"] == 1000 for c in s["checks"])


def test_reports_are_deterministic():
    cfg = dict(p=3, suites=["theta-match", "lattice"], trials=40, seed=11)
    a = strip_runtime(run(RunConfig(**cfg)))
    b = strip_runtime(run(RunConfig(**cfg)))
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    c = strip_runtime(run(RunConfig(**{**cfg, "seed": 12})))
    assert c["summary"]["config"]["seed"] == 12


def test_per_suite_seeds_differ():
    assert suite_seed("cosets", 1) != suite_seed("lattice", 1)
    assert suite_seed("cosets", 1) != suite_seed("cosets", 2)
    assert 0 <= suite_seed("x", 0) < 2**64


@pytest.mark.parametrize(
    "argv",
    [["nope"], ["cosets", "--p", "4"], ["cosets", "--p", "2"], ["cosets", "--trials", "0"], ["--z", "1", "cosets"],
     ["cosets", "--seed", "-1"], ["--bogus"]],
)
def test_configuration_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\np = 5\ntrials = 7\nsuites = cosets, lattice\nn = 2,4\n")
    vals = read_config(str(cfg))
    assert vals == {"p": 5, "trials": 7, "suites": ["cosets", "lattice"], "n_values": [2, 4]}
    from thetacorr.cli import config_from_args

    rc, _ = config_from_args(["--config", str(cfg), "--p", "3"])
    assert rc.p == 3 and rc.trials == 7 and rc.suites == ["cosets", "lattice"]
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    with pytest.raises(ConfigError):
        read_config(str(bad))
    assert main(["--config", str(bad)]) == 2


def test_budget_overrun_marks_suite_skipped():
    rep = run(RunConfig(p=3, suites=["cosets"], budget=100))
    (c,) = rep["suites"][0]["checks"]
    assert c["status"] == "skipped" and "budget" in c["note"]
    assert rep["summary"]["ok"]


def test_failing_check_gives_exit_1():
    # the quaternion stabilizer for odd n is a known mismatch
    assert main(["stabilizers", "--p", "3", "--n", "1"]) == 1


def test_parallel_run_matches_serial():
    cfg = dict(p=3, suites=["cosets", "d1-structure", "lattice"], seed=3)
    a = strip_runtime(run(RunConfig(**cfg)))
    b = strip_runtime(run(RunConfig(**cfg, jobs=3)))
    assert [s["checks"] for s in a["suites"]] == [s["checks"] for s in b["suites"]]
    assert b["summary"]["config"]["jobs"] == 3


def test_every_suite_carries_an_anchor_and_inventory_is_complete():
    assert set(SUITES) >= {"characters", "stabilizers", "cosets", "d1-structure", "r-odd-lemma",
                           "heisenberg-prop3", "lattice", "theta-match"}
    rep = run(RunConfig(p=3, suites=list(SUITES), trials=5))
    seen = set(rep["summary"]["anchors"])
    assert seen == set(ANCHORS.values())
    for s in rep["suites"]:
        assert s["checks"], s["suite"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "thetacorr", "d1-structure", "--p", "5"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "3/3 pass" in res.stdout
