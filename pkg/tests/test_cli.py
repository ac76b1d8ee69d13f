import json
import subprocess
import sys
from pathlib import Path

import pytest

from freewidth.cli import main
from freewidth.instances import STANDARD, instance_to_dict, load_instance

INSTANCES = Path(__file__).resolve().parents[1] / "instances"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def inst_path(name):
    return INSTANCES / f"{name}.json"


def test_instance_files_match_builders():
    for name, build in STANDARD.items():
        assert instance_to_dict(load_instance(inst_path(name))) == instance_to_dict(build())


def test_reduce_to_identity(capsys):
    code, out = run(capsys, "reduce", "--instance", inst_path("z4hnn"), "--word", "g:1 t^-1 g:2 t g:1")
    assert code == 0 and json.loads(out) == {"reduced": "1"}


def test_f_amalgam(capsys):
    code, out = run(capsys, "f", "--instance", inst_path("z5z2"), "--word", "1:1 2:1 1:1")
    assert code == 0 and json.loads(out)["f"] == 1


def test_verify_defect_reports_the_violation(capsys):
    # the two-sided bound fails on this sample set; the one-sided excess stays negative
    code, out = run(capsys, "verify", "--instance", inst_path("z4hnn"), "--suite", "defect",
                    "--samples", 1000, "--seed", 42)
    rep = json.loads(out)
    assert code == 3
    assert rep["max_value"] == 7 and len(rep["violations"]) == 1
    assert rep["max_upper_excess"] <= 0


def test_verify_passing_suite(capsys):
    code, out = run(capsys, "verify", "--instance", inst_path("z5z2"), "--suite", "palindrome",
                    "--samples", 200, "--seed", 1)
    assert code == 0 and json.loads(out)["ok"]


@pytest.mark.parametrize("argv", [
    ["signature", "--word", "t g:1 t^-1 t"],
    ["normal-form", "--word", "t^-1 g:2 t"],
    ["palindrome", "--word", "t g:1 t"],
    ["hamming", "--word", "t g:1 t^-1"],
    ["witness", "--K", 5],
    ["bound", "--word", "t g:1 t", "--m", 1],
    ["ball", "--radius", 2],
    ["plength", "--word", "t", "--max-len", 4, "--max-k", 2],
    ["growth", "--m", 0, "--K", 12],
    ["classify"],
])
def test_other_verbs_hnn(capsys, argv):
    code, out = run(capsys, argv[0], "--instance", inst_path("z4hnn"), *argv[1:])
    assert code == 0
    json.loads(out)


@pytest.mark.parametrize("argv", [
    ["signature", "--word", "1:1 2:1 1:4"],
    ["bound", "--word", "1:1 2:1 1:1", "--m", 0],
    ["classify"],
])
def test_other_verbs_amalgam(capsys, argv):
    code, out = run(capsys, argv[0], "--instance", inst_path("z5z2"), *argv[1:])
    assert code == 0
    json.loads(out)


def test_classify_reports(capsys):
    cases = {}
    for name in ("z5z2", "s3v4", "z8z4", "z4v4"):
        _, out = run(capsys, "classify", "--instance", inst_path(name))
        cases[name] = json.loads(out)["classification"]["case"]
    assert cases == {"z5z2": "Case1", "s3v4": "Case2NonNormal", "z8z4": "Case1", "z4v4": "Case2Normal"}


def test_text_format(capsys):
    code, out = run(capsys, "witness", "--instance", inst_path("z5z2"), "--K", 2, "--format", "text")
    assert code == 0 and out.startswith("K: 2")


def test_domain_errors(capsys, tmp_path):
    code, out = run(capsys, "reduce", "--instance", inst_path("z4hnn"), "--word", "t q")
    assert code == 1 and json.loads(out)["error"] == "WordParseError"
    code, out = run(capsys, "witness", "--instance", inst_path("s3v4"), "--K", 3)
    assert code == 1 and json.loads(out)["error"] == "NoFillerElement"
    code, out = run(capsys, "verify", "--instance", inst_path("z5z2"), "--suite", "signature-uniqueness")
    assert code == 1 and json.loads(out)["error"] == "SuiteUnknown"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"group": {"mult": [[0, 1], [1, 1]]}, "h1": [0], "h2": [0], "phi": [[0, 0]]}))
    code, out = run(capsys, "classify", "--instance", bad)
    assert code == 1 and json.loads(out)["error"] == "NotAGroup"
    code, out = run(capsys, "classify", "--instance", tmp_path / "missing.json")
    assert code == 1 and json.loads(out)["error"] == "InstanceFormatError"


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["reduce", "--instance", str(inst_path("z4hnn"))])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["witness", "--instance", str(inst_path("z4hnn")), "--K", "0"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_bad_thread_env_is_a_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("FREEWIDTH_THREADS", "-1")
    code, _ = run(capsys, "classify", "--instance", inst_path("z4hnn"))
    assert code == 2


def test_byte_identical_reports():
    argv = [sys.executable, "-m", "freewidth", "verify", "--instance", str(inst_path("z5z2")),
            "--suite", "product", "--samples", "100", "--seed", "9"]
    a = subprocess.run(argv, capture_output=True, check=False)
    b = subprocess.run(argv, capture_output=True, check=False, env={"FREEWIDTH_THREADS": "2", "PATH": ""})
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
