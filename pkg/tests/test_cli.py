import csv
import io
import json

import pytest

from supercrit import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def payload(out):
    js = json.loads(out)
    js["diagnostics"].pop("timestamp", None)
    return js


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "--q", "0.95", "--kappa", "-1")
    js = json.loads(out)
    assert code == 0 and js["schema"] == cli.SCHEMA
    assert js["results"]["region"] == "region2"


def test_spectrum_json_and_csv_agree(capsys):
    argv = ["spectrum", "--q", "0.5", "--kappa", "-1", "--n-max", "3"]
    _, out, _ = run(capsys, *argv)
    js = json.loads(out)
    _, out_csv, _ = run(capsys, *argv, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out_csv)))
    levels = js["results"]
    assert len(rows) == len(levels) == 4
    for row, lv in zip(rows, levels):
        assert float(row["E"]) == lv["E"]
    assert levels[0]["E"] == pytest.approx(0.75 ** 0.5, abs=1e-12)


def test_rerun_is_byte_identical(capsys):
    argv = ["density", "--q", "0.95", "--kappa", "-1", "--xi", "0.7", "--n-points", "5"]
    a = payload(run(capsys, *argv)[1])
    b = payload(run(capsys, *argv)[1])
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_threads_do_not_change_results(capsys, monkeypatch):
    argv = ["density", "--q", "1.2", "--kappa", "-1", "--theta", "0.3", "--n-points", "9"]
    monkeypatch.setenv("SUPERCRIT_THREADS", "1")
    a = payload(run(capsys, *argv)[1])["results"]
    monkeypatch.setenv("SUPERCRIT_THREADS", "3")
    b = payload(run(capsys, *argv)[1])["results"]
    assert a == b


def test_output_file(tmp_path, capsys):
    path = tmp_path / "g.json"
    code, out, _ = run(capsys, "greens", "--q", "0.5", "--kappa", "-1", "-o", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["schema"] == cli.SCHEMA


def test_count_extensions(capsys):
    code, out, _ = run(capsys, "count-extensions", "--q", "2.0")
    assert code == 0 and json.loads(out)["results"]["count"] == 4


def test_eigenfunction_command(capsys):
    code, out, _ = run(capsys, "eigenfunction", "--q", "0.5", "--kappa", "-1",
                       "--energy", repr(0.75 ** 0.5), "--n-r", "5")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["spectrum", "--q", "0.5", "--kappa", "-1", "--xi", "0.3"],
    ["spectrum", "--q", "1.2", "--kappa", "-1", "--xi", "0.3"],
    ["density", "--q", "0.5", "--kappa", "-1", "--e-min", "3", "--e-max", "2"],
    ["classify", "--q", "-1", "--kappa", "-1"],
])
def test_config_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == cli.EXIT_CONFIG and "error" in err


def test_numeric_failure_exits_3_with_error_name(capsys):
    code, _, err = run(capsys, "eigenfunction", "--q", "0.5", "--kappa", "-1", "--energy", "0.5")
    assert code == cli.EXIT_NUMERIC and "NotASpectrumPoint" in err


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify", "identities", "--q", "0.95", "--kappa", "-1", "--xi", "0.7",
                       "--n-states", "3")
    assert code == 0
    assert json.loads(out)["results"]
