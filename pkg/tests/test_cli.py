import json

import pytest

from shiftgrp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_builtin(capsys):
    code, out, _ = run(capsys, "analyze", "thue-morse")
    assert code == 0
    assert "weakly primitive:   yes (power 3)" in out


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "analyze", "ac-aca2c-ac2ac")
    assert code == 0
    data = json.loads(out)
    assert data["ultimately_group_invertible"] is True
    assert data["free_rank"] == 2


def test_returns_command(capsys):
    code, out, _ = run(capsys, "returns", "thue-morse", "--block", "aa")
    assert code == 0
    for w in ("aabb", "aababb", "aabbab", "aababbab"):
        assert w in out


def test_presentation_command(capsys):
    code, out, _ = run(capsys, "--format", "json", "presentation", "thue-morse")
    assert code == 0
    data = json.loads(out)
    assert data["connection"] == "aa"
    assert data["tilde_exponent"] == 2
    assert data["generators"] == ["abba", "ababba", "abbaba", "ababbaba"]
    assert data["endomorphism"]["images"]["abba"] == "abbaba abba ababba"
    assert data["delay"]["verdict"] == "verified_up_to_bound"


def test_check_image_yes(capsys):
    code, out, _ = run(capsys, "check-image", "ab-a3b", "--group", "alt:5")
    assert code == 0
    assert "image" in out


def test_check_image_no(capsys):
    code, out, _ = run(capsys, "check-image", "thue-morse", "--group", "cyclic:2")
    assert code == 1
    assert "not-image" in out


def test_check_image_resource_cap(capsys):
    code, _, err = run(capsys, "--cap-enumeration", "100",
                       "check-image", "ab-a3b", "--group", "alt:5")
    assert code == 3
    assert "resource" in err


def test_check_image_h18(capsys):
    code, out, _ = run(capsys, "--format", "json", "check-image",
                       "thue-morse-reduced", "--group", "h18")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "image"
    assert data["witness"]["period"] == 2
    assert data["rank"] == 3


def test_abelian_rank_command(capsys):
    code, out, _ = run(capsys, "abelian-rank", "thue-morse-reduced", "--prime", "2")
    assert code == 0 and out.strip().endswith("1")
    code, out, _ = run(capsys, "abelian-rank", "thue-morse-reduced", "--prime", "5")
    assert code == 0 and out.strip().endswith("2")


def test_fold_command(capsys):
    code, out, _ = run(capsys, "fold", "--generators", "ac,acaac,accac")
    assert code == 0
    assert "rank 2, whole group: True" in out
    code, out, _ = run(capsys, "fold", "--generators", "ab,ba", "--alphabet", "ab")
    assert code == 0
    assert "whole group: False" in out


def test_fold_token_form(capsys):
    code, out, _ = run(capsys, "--format", "json", "fold",
                       "--generators", "a b^-1", "--alphabet", "ab")
    assert code == 0
    data = json.loads(out)
    assert data["rank"] == 1


def test_input_errors(capsys):
    code, _, err = run(capsys, "analyze", "/no/such/file.json")
    assert code == 2 and "input error" in err
    code, _, err = run(capsys, "check-image", "thue-morse", "--group", "nonsense:9")
    assert code == 2
    code, _, err = run(capsys, "abelian-rank", "thue-morse-reduced", "--prime", "4")
    assert code == 2


def test_substitution_file_roundtrip(tmp_path, capsys):
    path = tmp_path / "subst.json"
    path.write_text(json.dumps({"alphabet": ["a", "b"],
                                "rules": {"a": "ab", "b": "aaab"}}))
    code, out, _ = run(capsys, "--format", "json", "analyze", str(path))
    assert code == 0
    assert json.loads(out)["connections"] == ["ba"]


def test_endomorphism_file(tmp_path, capsys):
    path = tmp_path / "endo.json"
    path.write_text(json.dumps({
        "generators": ["α", "β", "γ"],
        "images": {"α": "γ α β",
                   "β": "γ β α^-1 γ α β",
                   "γ": "γ α β α^-1 γ β"},
    }, ensure_ascii=False))
    code, out, _ = run(capsys, "--format", "json", "check-image",
                       str(path), "--group", "cyclic:7")
    assert code == 0
    assert json.loads(out)["verdict"] == "image"


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"enumeration_cap": 50, "output_format": "json"}))
    code, _, err = run(capsys, "--config", str(cfg),
                       "check-image", "ab-a3b", "--group", "alt:5")
    assert code == 3


def test_verify_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "verify")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) >= 12
    assert all(r["passed"] for r in rows)
