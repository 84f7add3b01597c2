import json
import math

import jsonschema
import pytest

from ellipcheck import catalog
from ellipcheck.catalog import REPORT_SCHEMA
from ellipcheck.cli import CliConfig, run
from ellipcheck.errors import DomainError


def test_eval_k_at_zero(capsys):
    assert run(["eval", "K", "--k", "0"]) == 0
    assert float(capsys.readouterr().out) == math.pi / 2


def test_eval_lists_and_formats(capsys):
    assert run(["eval", "E", "--k", "0,0.5", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [d["args"]["k"] for d in data] == [0.0, 0.5]
    assert run(["eval", "beta", "--a", "0.5", "--b", "0.5", "--format", "csv"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "a,b,value"
    assert float(out[1].split(",")[-1]) == pytest.approx(math.pi)
    assert run(["eval", "Pi", "--n", "0", "--k", "0.6"]) == 0
    assert run(["eval", "gamma", "--x", "0.5"]) == 0


def test_eval_errors(capsys):
    assert run(["eval", "K"]) == 2
    assert run(["eval", "gamma", "--x", "0"]) == 2
    assert run(["eval", "K", "--k", "0.999999"]) == 2
    assert run(["eval", "K", "--k", "a,b"]) == 2
    assert run(["eval", "nosuch"]) == 2


def test_verify_one_record(capsys):
    assert run(["verify", "GR-8.129.1"]) == 0
    data = json.loads(capsys.readouterr().out)
    jsonschema.validate(data, REPORT_SCHEMA)
    assert len(data) == 1 and data[0]["id"] == "GR-8.129.1" and data[0]["pass"]


def test_verify_routes_and_params(capsys):
    assert run(["verify", "GR-3.842.3c", "--k", "0.3,0.6", "--route", "all", "--no-timing"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [(d["params"]["k"], d["params"]["route"]) for d in data] == [
        (0.3, "agm"), (0.3, "series"), (0.3, "pv-direct"), (0.6, "agm"), (0.6, "series"), (0.6, "pv-direct")]
    assert all(d["elapsed_ms"] is None for d in data)
    assert run(["verify", "SINGULAR-VALUES", "-p", "r=2", "--format", "text"]) == 0
    assert "r=2" in capsys.readouterr().out


def test_verify_usage_and_domain_errors(capsys):
    assert run(["verify", "NOPE"]) == 2
    assert "unknown entry" in capsys.readouterr().err
    assert run(["verify", "GR-4.522.4a", "--k", "0.99"]) == 2
    assert run(["verify", "GR-4.414.1"]) == 2
    assert run(["verify", "GR-8.129.1", "--k", "0.5"]) == 2
    assert run(["verify", "GR-4.414.1", "--k", "1.5"]) == 2
    assert run(["verify", "GR-8.129.1", "--tol", "-1"]) == 2
    assert run(["verify", "GR-8.129.1", "--route", "nosuch"]) == 2
    assert run(["verify", "GR-8.129.1", "-p", "oops"]) == 2
    assert run([]) == 2
    err = capsys.readouterr().err
    assert "usage:" in err


def test_verify_all_empty_grid_csv(capsys):
    assert run(["verify-all", "--k", "", "--format", "csv", "--no-timing"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "id,params,lhs,rhs,abs_err,rel_err,pass,evals,elapsed_ms"
    assert len(lines) - 1 == len(catalog.verify_all([], timing=False))


def test_verify_all_text_lists_skips(capsys):
    assert run(["verify-all", "--k", "0.99", "--format", "text", "--routes", "primary"]) == 0
    out = capsys.readouterr().out
    assert "SKIP  GR-4.522.4a" in out
    assert "0 failed" in out


def test_report_roundtrip_and_fail_exit(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert run(["verify", "GR-3.721.1", "--route", "all", "--no-timing", "--output", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert run(["report", str(path), "--format", "json"]) == 0
    assert capsys.readouterr().out == path.read_text()
    data = json.loads(path.read_text())
    data[0]["pass"] = False
    path.write_text(json.dumps(data))
    assert run(["report", str(path)]) == 1
    assert "FAIL" in capsys.readouterr().out
    assert run(["report", str(tmp_path / "missing.json")]) == 2


def test_list(capsys):
    assert run(["list"]) == 0
    out = capsys.readouterr().out
    assert "GR-4.395.1" in out and "errata" in out and "[PV]" in out
    assert run(["list", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == len(catalog.list_entries())
    assert run(["list", "--format", "csv"]) == 0


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    assert "verify-all" in capsys.readouterr().out


def test_cli_config_invariants():
    with pytest.raises(DomainError):
        CliConfig("verify", tol=0.0)
    with pytest.raises(DomainError):
        CliConfig("verify", format="xml")
