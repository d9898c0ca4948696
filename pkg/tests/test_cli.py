import pytest

from ellrank.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def kv(out: str) -> dict:
    return dict(line.split("=", 1) for line in out.splitlines() if "=" in line)


def test_fibres(capsys):
    code, out = run(capsys, "--format", "kv", "fibres", "eq3_minimal.txt")
    d = kv(out)
    assert code == 0 and d["reducible"] == "I2 at inf" and d["rational_surface"] == "True"


def test_count_is_deterministic(capsys):
    _, a = run(capsys, "--format", "kv", "count", "--p", "53", "--n", "1")
    _, b = run(capsys, "--format", "kv", "count", "--p", "53", "--n", "1", "--threads", "2")
    assert a == b and kv(a)["total"] == "3593"


def test_count_env_threads(capsys, monkeypatch):
    monkeypatch.setenv("ELLRANK_THREADS", "2")
    _, out = run(capsys, "--format", "kv", "count", "--p", "71", "--n", "1")
    assert kv(out)["total"] == "6096"


def test_count_bad_prime(capsys):
    code, out = run(capsys, "count", "--p", "59")
    assert code == 2 and "NotGoodPrime" in out


def test_nsbound_from_counts(capsys):
    code, out = run(capsys, "--format", "kv", "nsbound", "--p", "71", "--counts", "6096,25498920", "--no-conclude")
    d = kv(out)
    assert code == 0 and d["bound"] == "18" and d["s1"] == "-82"
    assert sum(1 for line in out.splitlines() if line.startswith("hypothesis[")) == 18


def test_conic(capsys):
    _, out = run(capsys, "--format", "kv", "conic", "param", "--A", "330112972800", "--B", "14017536", "--base", "inf")
    d = kv(out)
    assert d["t"] == "[11775,0,-1/2]/[0,1]" and d["identity"] == "True"


def test_mestre(capsys):
    _, out = run(capsys, "--format", "kv", "mestre", "construct", "--name", "nagao")
    d = kv(out)
    assert d["s"] == "0" and d["r4"] == "[330112972800,0,14017536]" and d["points"] == "24"
    _, out = run(capsys, "--format", "kv", "mestre", "search", "--b=-17,-16,10,11,14")
    assert "17" in kv(out).values()


def test_height(capsys):
    from ellrank.fileformat import kv_dict, read_fixture

    d = kv_dict(read_fixture("q_point.txt"))
    _, out = run(capsys, "--format", "kv", "height", "eq3_minimal.txt", "--point", f"{d['X']} ; {d['Y']}", "--method", "shioda")
    assert kv(out)["shioda"] == "3/2"


def test_curve_minimal_and_specialize(capsys):
    code, out = run(capsys, "--format", "kv", "curve", "specialize", "eq3_minimal.txt", "--at", "1")
    assert code == 0 and "discriminant" in kv(out)
    code, out = run(capsys, "--format", "kv", "curve", "minimal", "eq3_minimal.txt")
    assert code == 0 and kv(out)["a4"] == "[-340079781902569707,-18899197014000,38353513056,-4435200,-432]"


def test_empty_file_error(capsys, tmp_path):
    f = tmp_path / "empty.txt"
    f.write_text("")
    code, out = run(capsys, "fibres", str(f))
    assert code == 2 and "empty" in out


def test_verify_subset(capsys):
    code, out = run(capsys, "--format", "kv", "verify-paper", "--only", "mestre")
    d = kv(out)
    assert code == 0 and d["result"] == "pass"
    assert d["construction.status"] == "pass" and d["fibres.status"] == "skip"


def test_help_lists_commands(capsys):
    with pytest.raises(SystemExit):
        main(["--help"])
    out = capsys.readouterr().out
    for cmd in ("mestre", "conic", "curve", "fibres", "height", "gram", "theorem1", "q14", "count", "nsbound", "verify-paper"):
        assert cmd in out
