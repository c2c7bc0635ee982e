import json

import jsonschema
import pytest

COMMANDS = [
    ["rot-r3", "integrate"],
    ["rot-r3", "report"],
    ["parab-h3", "integrate"],
    ["parab-h3", "classify"],
    ["cyclic", "riemann"],
    ["cyclic", "cone"],
    ["cyclic", "coeffs"],
    ["mesh", "export"],
    ["figures", "reproduce"],
]


def reports(out):
    return [p for p in out.glob("*.json")]


@pytest.mark.parametrize("cmd", COMMANDS, ids=" ".join)
def test_default_reports_validate(cmd, cli, schema, tmp_path):
    proc = cli(*cmd, out=tmp_path)
    assert proc.returncode == 0, proc.stderr
    found = reports(tmp_path)
    assert found
    for path in found:
        report = json.loads(path.read_text())
        jsonschema.validate(report, schema)
        assert report["pass"] is True
        for artifact in report["artifacts"]:
            assert (tmp_path / artifact).exists()


def test_failed_verdict_report_validates(cli, schema, tmp_path):
    proc = cli("cyclic", "riemann", "--center-law", "second", out=tmp_path)
    assert proc.returncode == 2
    report = json.loads((tmp_path / "cyclic_riemann.json").read_text())
    jsonschema.validate(report, schema)
    assert report["pass"] is False


def test_usage_error_exit_code(cli, tmp_path):
    assert cli("parab-h3", "classify", "--a", "1.5", out=tmp_path).returncode == 1


def test_schema_rejects_malformed_report(schema):
    bad = {"schema_version": 1, "command": "cyclic cone", "config": {"command": "cyclic cone"},
           "results": {}, "verdicts": {"flat": False}, "pass": True, "artifacts": ["x.json"]}
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(bad, schema)
