import json

import pytest

from varjump.cli import main


@pytest.fixture
def small_cfg_file(tmp_path):
    path = tmp_path / "small.cfg"
    path.write_text(
        "grid.N = 128\n"
        "sequences.count = 200\n"
        "sequences.oracle_count = 50\n"
        "sequences.oracle_max_length = 8\n"
        "fields.count = 2\n"
        "atoms.count = 4\n"
        "atoms.uniform_count = 4\n"
        "atoms.combinations = 2\n"
        "farfield.probes = 5\n")
    return path


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_var(tmp_path, capsys):
    assert main(["var", "--rho", "2", "--in", write(tmp_path, "s.csv", "0\n1\n0\n")]) == 0
    assert capsys.readouterr().out.strip() == "1.414214"


def test_var_witness(tmp_path, capsys):
    assert main(["var", "--rho", "2", "--witness", "--in", write(tmp_path, "s.csv", "0\n1\n2\n3\n")]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["3.000000", "witness: 0 3"]


def test_jump(tmp_path, capsys):
    assert main(["jump", "--lambda", "1", "--in", write(tmp_path, "s.csv", "0\n2\n0\n2\n")]) == 0
    assert capsys.readouterr().out.strip() == "3"


def test_stdin(monkeypatch, capsys):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("idx,val\n1,0\n2,5\n3,5.5\n4,4\n"))
    assert main(["jump", "--lambda", "1"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_bad_sequence_exit_code(tmp_path, capsys):
    assert main(["var", "--rho", "0.5", "--in", write(tmp_path, "s.csv", "0\n1\n")]) == 2
    assert "error" in capsys.readouterr().err


def test_kernel_check(capsys):
    assert main(["kernel-check"]) == 0
    out = capsys.readouterr().out
    assert "C1 = 10\n" in out and "argmax |xi| = 0\n" in out


def test_config_errors(tmp_path, capsys):
    cfg = write(tmp_path, "bad.cfg", "dimension = 1\natoms.p = 0.4\n")
    assert main(["suite", "--config", cfg]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["kernel-check", "--config", write(tmp_path, "foo.cfg", "foo = 1\n")]) == 2
    assert main(["suite", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_suite_small(tmp_path, small_cfg_file, capsys):
    out = tmp_path / "r.json"
    code = main(["suite", "--config", str(small_cfg_file), "--out", str(out),
                 "--details", str(tmp_path / "details")])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["passed"] and len(doc["reports"]) == 6 and "generated_at" in doc
    assert (tmp_path / "details" / "uniform_atom_bound.csv").exists()
    assert capsys.readouterr().out.count("PASS") == 6


def test_suite_single_check_with_seed(tmp_path, small_cfg_file):
    out = tmp_path / "r.json"
    assert main(["suite", "--config", str(small_cfg_file), "--check", "farfield_decay",
                 "--seed", "5", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert [r["check_id"] for r in doc["reports"]] == ["farfield_decay"]
    assert doc["config"]["seed"] == 5


@pytest.mark.parametrize("fmt, suffix", [("csv", ".csv"), ("blob", ".bin")])
def test_atoms(tmp_path, small_cfg_file, fmt, suffix):
    out = tmp_path / "atoms"
    assert main(["atoms", "--config", str(small_cfg_file), "--count", "6", "--format", fmt,
                 "--out", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert len(manifest["atoms"]) == 6 and all(a["valid"] for a in manifest["atoms"])
    assert (out / f"atom_000{suffix}").exists()


@pytest.mark.parametrize("source", ["random", "atoms"])
def test_export(tmp_path, small_cfg_file, source):
    out = tmp_path / "fields"
    assert main(["export", "--config", str(small_cfg_file), "--source", source, "--out", str(out)]) == 0
    for name in ("f", "maximal", "variation2", "square", "jumps"):
        assert (out / f"{name}.csv").exists()
    assert (out / "family.bin").exists() and (out / "family.hdr").exists()
