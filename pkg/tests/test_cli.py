import json

import pytest

from tsum.cli import main


def test_eval_depth_two_value(capsys):
    rc = main(["eval", "--p", "2", "--q", "2", "--a", "0", "--sigma", "1",
               "--offset", "prev", "--precision-bits", "128"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.startswith("value      = 4.058712126416768218")
    assert "terms_used" in out


def test_eval_alternating(capsys):
    rc = main(["eval", "--p", "1", "--q", "1", "--a", "0", "--sigma", "-1",
               "--offset", "cur", "--format", "json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["value"].startswith("-2.9207242335062390953")
    assert payload["precision_bits"] == 192


def test_eval_divergent_spec_is_config_error(capsys):
    rc = main(["eval", "--p", "1", "--q", "1", "--a", "0", "--sigma", "1",
               "--offset", "cur"])
    assert rc == 2
    assert "error" in capsys.readouterr().err


def test_reduce_prints_certificate(capsys):
    rc = main(["reduce", "--family", "T_even_odd", "--j", "1", "--m", "0",
               "--format", "text"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.splitlines()[0] == "T(2,1) = 1 * T(3)"
    assert "passed = True" in out


def test_reduce_out_of_domain(capsys):
    rc = main(["reduce", "--family", "t_odd_even", "--j", "0", "--m", "1"])
    assert rc == 2


def test_reduce_unknown_family(capsys):
    assert main(["reduce", "--family", "nope", "--j", "1", "--m", "1"]) == 2


def test_verify_small_suite_json_schema(capsys):
    rc = main(["verify", "--families", "cor3_2,lemma2_4", "--precision-bits", "128",
               "--tolerance", "1e-25", "--format", "json"])
    assert rc == 0
    record = json.loads(capsys.readouterr().out)
    assert set(record) == {"suite_id", "timestamp", "precision_bits", "tolerance",
                           "workers", "cases", "summary", "total_elapsed_ms"}
    assert record["summary"]["failed"] == 0
    assert record["summary"]["passed"] == len(record["cases"])
    case = record["cases"][0]
    assert set(case) == {"case_id", "family", "params", "lhs", "rhs", "gap",
                         "passed", "tolerance", "precision_bits", "terms_used",
                         "elapsed_ms"}
    assert case["elapsed_ms"] == 0  # timings suppressed for reproducibility
    ids = [c["case_id"] for c in record["cases"]]
    assert ids == sorted(ids)


def test_verify_rejects_equal_pair_sample(capsys):
    rc = main(["verify", "--families", "thm3_1", "--samples", "1/4,1/4"])
    assert rc == 2
    assert "rejected" in capsys.readouterr().err


def test_verify_unknown_family(capsys):
    assert main(["verify", "--families", "thm9_9"]) == 2


def test_verify_lemma_family_with_order(capsys):
    rc = main(["verify", "--families", "lemma2_4", "--order", "6",
               "--precision-bits", "128", "--tolerance", "1e-25",
               "--format", "text"])
    assert rc == 0
    assert "lemma2_4[order=6]" in capsys.readouterr().out


def test_table_csv_rows(capsys):
    rc = main(["table", "--family", "t_bar_odd", "--weight-max", "6",
               "--format", "csv", "--precision-bits", "128",
               "--tolerance", "1e-25"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("case_id,family,value_label,expr")
    assert len(lines) > 3


def test_verify_csv_columns(capsys):
    rc = main(["verify", "--families", "lemma2_3", "--format", "csv",
               "--precision-bits", "128", "--tolerance", "1e-20"])
    assert rc == 0
    header = capsys.readouterr().out.splitlines()[0]
    assert header == "case_id,family,params,lhs,rhs,gap,passed,elapsed_ms"


def test_verify_deterministic_modulo_timestamp(capsys):
    argv = ["verify", "--families", "cor3_3", "--precision-bits", "128",
            "--tolerance", "1e-25", "--format", "json"]
    assert main(argv) == 0
    first = json.loads(capsys.readouterr().out)
    assert main(argv) == 0
    second = json.loads(capsys.readouterr().out)
    first.pop("timestamp"), second.pop("timestamp")
    assert first == second


def test_env_var_sets_default_precision(capsys, monkeypatch):
    monkeypatch.setenv("TSUM_DEFAULT_PRECISION_BITS", "128")
    rc = main(["eval", "--q", "2,2", "--a", "0,1/4", "--format", "json"])
    assert rc == 0
    assert json.loads(capsys.readouterr().out)["precision_bits"] == 128
    monkeypatch.setenv("TSUM_DEFAULT_PRECISION_BITS", "not-a-number")
    assert main(["eval", "--q", "2,2", "--a", "0,1/4"]) == 2


def test_table_guard_and_output(tmp_path, capsys):
    assert main(["table", "--family", "all", "--weight-max", "99"]) == 2
    out = tmp_path / "table.json"
    rc = main(["table", "--family", "t_bar_odd", "--weight-max", "6",
               "--format", "json", "--out", str(out), "--precision-bits", "128",
               "--tolerance", "1e-25"])
    assert rc == 0
    payload = json.loads(out.read_text())
    assert payload["weight_max"] == 6
    assert all(row["passed"] for row in payload["rows"])
    labels = [row["params"]["value_label"] for row in payload["rows"]]
    assert "t(1-,1)" in labels


def test_table_io_failure(capsys):
    rc = main(["table", "--family", "t_bar_odd", "--weight-max", "4",
               "--precision-bits", "128", "--tolerance", "1e-20",
               "--out", "/nonexistent-dir/t.json"])
    assert rc == 3


def test_verify_with_workers_matches_serial(capsys):
    argv = ["verify", "--families", "cor3_5", "--precision-bits", "128",
            "--tolerance", "1e-25", "--format", "json"]
    assert main(argv) == 0
    serial = json.loads(capsys.readouterr().out)
    assert main(argv + ["--workers", "2"]) == 0
    parallel = json.loads(capsys.readouterr().out)
    assert serial["cases"] == parallel["cases"]
