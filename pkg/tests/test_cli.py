import json

import pytest

from valuata.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, (json.loads(out) if out else None), err


# -- analyze-as ------------------------------------------------------------------


def test_analyze_best_wild(capsys):
    code, report, _ = run_json(capsys, "analyze-as", "X^(-3)")
    assert code == 0
    assert report["schema"] == 1
    assert report["command"] == "analyze-as"
    assert report["input"] == "X^(-3)"
    assert report["classification"]["verdict"] == "best-i"
    inv = report["invariants"]
    assert (inv["e"], inv["f_res"], inv["d"]) == (2, 1, 1)
    assert inv["type"] == "wild"
    assert inv["swan"] == "3"
    assert inv["product"] == 2
    assert report["swan_check"] == {"conductor": "3", "agree": True}


def test_analyze_improvable_has_witness(capsys):
    code, report, _ = run_json(capsys, "analyze-as", "X^(-6)")
    assert code == 0
    c = report["classification"]
    assert c["verdict"] == "not-best"
    assert c["improvement"] == "X^(-3)"
    assert report["invariants"] is None
    assert report["swan_check"] is None


def test_analyze_trivial_reports_unit_invariants(capsys):
    code, report, _ = run_json(capsys, "analyze-as", "X^(2)")
    assert code == 0
    assert report["classification"]["verdict"] == "trivial"
    assert report["invariants"]["product"] == 1


# -- normalize-as ----------------------------------------------------------------


def test_normalize_single_step(capsys):
    code, report, _ = run_json(capsys, "normalize-as", "X^(-6)")
    assert code == 0
    assert report["outcome"] == "best-found"
    assert report["steps"] == 1
    assert report["trajectory"] == ["-6", "-3"]
    assert report["f_star"] == "X^(-3)"
    assert report["swan_check"] == {"conductor": "3", "agree": True}


def test_normalize_defect_trajectory(capsys):
    code, report, _ = run_json(capsys, "normalize-as", "X^(-1)",
                               "--field", "gf2-half-powers", "--budget", "12")
    assert code == 0
    assert report["outcome"] == "defect-evidence"
    assert report["steps"] == 12
    assert len(report["trajectory"]) == 13
    assert report["trajectory"][0] == "-1"
    assert report["trajectory"][-1] == "-1/4096"
    inv = report["invariants"]
    assert (inv["e"], inv["f_res"], inv["d"]) == (1, 1, 2)
    assert inv["swan"] is None
    assert report["field"]["group"] == "int-inv-p"


# -- kummer commands -------------------------------------------------------------


def test_classify_kummer_unramified(capsys):
    code, report, _ = run_json(capsys, "classify-kummer", "5", "--p", "2")
    assert code == 0
    assert report["classification"]["verdict"] == "best-v"
    inv = report["invariants"]
    assert (inv["e"], inv["f_res"], inv["d"]) == (1, 2, 1)
    assert inv["type"] == "unramified"
    assert inv["swan"] == "0"


def test_classify_kummer_trivial(capsys):
    code, report, _ = run_json(capsys, "classify-kummer", "9", "--p", "2")
    assert code == 0
    assert report["classification"]["verdict"] == "trivial"
    assert report["invariants"]["product"] == 1


def test_normalize_kummer_chain(capsys):
    code, report, _ = run_json(capsys, "normalize-kummer", "1 + pi^2",
                               "--p", "2", "--m", "2")
    assert code == 0
    assert report["outcome"] == "best-found"
    assert report["steps"] == 1
    assert report["trajectory"] == [2, 3]
    assert report["classification"]["verdict"] == "best-iii"
    assert report["invariants"]["swan"] == "1"
    assert report["h_star"]


# -- verify-norm-ideal -----------------------------------------------------------


def test_verify_norm_ideal_passes(capsys):
    code, report, _ = run_json(capsys, "verify-norm-ideal", "X^(-3)",
                               "--count", "6", "--seed", "0")
    assert code == 0
    assert report["aggregate_pass"] is True
    assert report["count"] == 6
    assert len(report["samples"]) == 6
    assert all(s["pass"] for s in report["samples"])
    assert all(s["s"] == s["s_prime"] for s in report["samples"])
    assert report["trace_checks"] == {"count": 1, "all_pass": True}
    assert report["seed"] == 0


def test_verify_norm_ideal_reports_violation(capsys):
    # p = 3 samples can break the displacement inequality; that surfaces as
    # a failed identity, exit code 2
    code, out, err = run(capsys, "verify-norm-ideal", "X^(-1)",
                         "--field", "gf3-laurent", "--count", "4",
                         "--seed", "0")
    assert code == 2
    assert out == ""
    assert "theorem check failed" in err


def test_verify_norm_ideal_refuses_trivial_extension(capsys):
    code, out, err = run(capsys, "verify-norm-ideal", "X^(2)")
    assert code == 1
    assert "error" in err


# -- run-corpus ------------------------------------------------------------------


def test_run_corpus_green(capsys):
    code, report, _ = run_json(capsys, "run-corpus")
    assert code == 0
    assert report["aggregate_pass"] is True
    assert report["count"] == 26
    assert report["failures"] == 0


# -- report plumbing -------------------------------------------------------------


def test_json_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "analyze-as", "X^(-3)", "--json", str(target))
    assert code == 0
    assert out == ""
    text = target.read_text(encoding="utf-8")
    assert text.endswith("\n")
    assert json.loads(text)["command"] == "analyze-as"


def test_reports_are_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a, b):
        assert main(["verify-norm-ideal", "X^(-1)", "--field",
                     "gf2-half-powers", "--count", "8", "--seed", "3",
                     "--json", str(target)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_seed_env_default(capsys, monkeypatch):
    monkeypatch.setenv("VALUATA_SEED", "7")
    code, report, _ = run_json(capsys, "verify-norm-ideal", "X^(-3)",
                               "--count", "2")
    assert code == 0
    assert report["seed"] == 7


# -- failure modes ---------------------------------------------------------------


def test_unknown_preset_lists_choices(capsys):
    code, out, err = run(capsys, "analyze-as", "X^(-3)", "--field", "nope")
    assert code == 1
    assert "unknown field preset" in err
    assert "gf2-laurent" in err


def test_parse_error_exits_one(capsys):
    code, out, err = run(capsys, "analyze-as", "X^^")
    assert code == 1
    assert "error" in err


def test_p_residue_conflict(capsys):
    with pytest.raises(SystemExit) as info:
        main(["analyze-as", "X^(-3)", "--p", "3", "--residue", "gf:2"])
    assert info.value.code == 1
    capsys.readouterr()


def test_missing_command_exits_one(capsys):
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 1
    capsys.readouterr()


def test_group_choice_is_validated(capsys):
    with pytest.raises(SystemExit) as info:
        main(["analyze-as", "X^(-3)", "--group", "weird"])
    assert info.value.code == 1
    capsys.readouterr()
