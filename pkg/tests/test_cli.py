import json

import pytest

from cramanujan.cli import EXIT_MISMATCH, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate(capsys):
    code, out, _ = run(capsys, "generate", "--c", "1/2", "--n", "5")
    assert code == EXIT_OK and out.strip() == "2 11 17 29 41"


def test_generate_decimal_c(capsys):
    assert run(capsys, "generate", "--c", "0.5", "--n", "5")[1].strip() == "2 11 17 29 41"


def test_generate_json(capsys):
    code, out, _ = run(capsys, "generate", "--c", "3/4", "--n", "3", "--format", "json")
    doc = json.loads(out)
    assert doc["values"] == [11, 29, 59] and doc["certificate"]["x0"] >= 59


def test_generate_strict(capsys):
    _, out, _ = run(capsys, "generate", "--c", "3/4", "--n", "3", "--strict-real-x")
    assert out.split() == ["11", "31", "59"]


@pytest.mark.parametrize("argv", [
    ["generate", "--c", "0", "--n", "5"],
    ["generate", "--c", "1", "--n", "5"],
    ["generate", "--c", "abc", "--n", "5"],
    ["generate", "--c", "1/2", "--n", "0"],
    ["runs", "--c", "1/2", "--lo", "100", "--hi", "10"],
    ["nosuchcommand"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_verify(capsys, tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("1 2\n2 11\n3 17\n4 29\n5 41\n")
    assert run(capsys, "verify", "--c", "1/2", "--bfile", str(good), "--n", "5")[0] == EXIT_OK
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n2 3\n3 5\n4 14\n5 17\n")
    code, out, _ = run(capsys, "verify", "--c", "1/4", "--bfile", str(bad), "--n", "5")
    assert code == EXIT_MISMATCH and "n=4" in out


def test_verify_bad_file(capsys, tmp_path):
    p = tmp_path / "broken.txt"
    p.write_text("1 2\noops\n")
    assert run(capsys, "verify", "--c", "1/2", "--bfile", str(p), "--n", "1")[0] == EXIT_USAGE
    missing = str(tmp_path / "missing.txt")
    assert run(capsys, "verify", "--c", "1/2", "--bfile", missing, "--n", "1")[0] == EXIT_USAGE


def test_resource_limit_flag(capsys):
    code, _, err = run(capsys, "--mem-cap", "1K", "density", "--c", "1/2", "--limit", "10^6")
    assert code == EXIT_RESOURCE and "1024" in err


def test_resource_limit_env(capsys, monkeypatch):
    monkeypatch.setenv("CRAMANUJAN_MEM_CAP", "2K")
    assert run(capsys, "density", "--c", "1/2", "--limit", "1e6")[0] == EXIT_RESOURCE


def test_sieve_cap(capsys):
    assert run(capsys, "generate", "--c", "1/2", "--n", "1000", "--limit", "100")[0] == EXIT_RESOURCE


def test_density(capsys):
    code, out, _ = run(capsys, "density", "--c", "1/2", "--limit", "10^6", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["pi"] == 78498 and round(doc["actual_density"], 4) == 0.4708


def test_runs(capsys):
    code, out, _ = run(capsys, "runs", "--c", "1/2", "--lo", "1e5", "--hi", "1e6", "--format", "json")
    doc = json.loads(out)
    assert (doc["longest_ram_actual"], doc["longest_nonram_actual"]) == (20, 36)


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--c", "1/2", "--n", "10", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["x0"] >= 97


def test_tables(capsys):
    code, out, _ = run(capsys, "table1", "--grid", "0.5")
    assert code == EXIT_OK and out.splitlines()[1] == "0.50,0.5000,0.4708,1.0681"
    code, out, _ = run(capsys, "table2", "--grid", "0.5", "--format", "json")
    assert json.loads(out)["rows"][0]["actual_ram"] == 20


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--c", "1/2", "--n", "100")
    assert code == EXIT_OK and ": 0 discrepancies" in out
    _, out, _ = run(capsys, "scan", "--c", "3/4", "--n", "5")
    assert "0 discrepancies" not in out.splitlines()[0]
