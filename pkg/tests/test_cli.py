"""End-to-end command-line checks."""

import json

import pytest

from quasimodes.cli import main

CUBIC = "domain: line\n0 1 3 0\n"
QUARTIC = "domain: line\n1 1 4 0\n"
REAL = "domain: line\n1 0 2 0\n"


@pytest.fixture
def cubic_file(tmp_path):
    path = tmp_path / "cubic.txt"
    path.write_text(CUBIC)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_quasimode_json(capsys, cubic_file):
    code, out, err = run(
        capsys, "quasimode", "--potential", cubic_file,
        "--a", "1", "--eta", "1", "--h", "0.1", "--allow-large-h",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["z_re"] == pytest.approx(1.0)
    assert doc["z_im"] == pytest.approx(1.0)
    assert doc["lower_bound"] * doc["r"] == pytest.approx(1.0)


def test_quasimode_csv_and_outfile(capsys, cubic_file, tmp_path):
    out_path = tmp_path / "cert.csv"
    code, out, err = run(
        capsys, "quasimode", "--potential", cubic_file,
        "--a", "1", "--eta", "1", "--h", "0.1", "--allow-large-h",
        "--format", "csv", "--out", str(out_path),
    )
    assert code == 0 and out == ""
    lines = out_path.read_text().strip().splitlines()
    assert len(lines) == 2
    header = lines[0].split(",")
    assert "lower_bound" in header and "r" in header


def test_quasimode_solves_anchor_from_z(capsys, cubic_file):
    code, out, _ = run(
        capsys, "quasimode", "--potential", cubic_file,
        "--z-re", "1", "--z-im", "1", "--h", "0.1", "--allow-large-h",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["z_re"] == pytest.approx(1.0, abs=1e-8)


def test_reruns_are_byte_identical(capsys, cubic_file):
    args = ("quasimode", "--potential", cubic_file,
            "--a", "1", "--eta", "1", "--h", "0.1", "--allow-large-h")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_config_file_defaults(capsys, cubic_file, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("a = 1\neta = 1\nh = 0.1\nallow-large-h is not a key\n")
    # bad config line -> usage error
    code, _, err = run(
        capsys, "quasimode", "--potential", cubic_file, "--config", str(cfg)
    )
    assert code == 2 and "error:usage" in err
    cfg.write_text("a = 1\neta = 1\nh = 0.1\n")
    code, out, _ = run(
        capsys, "quasimode", "--potential", cubic_file,
        "--config", str(cfg), "--allow-large-h",
    )
    assert code == 0
    assert json.loads(out)["h"] == pytest.approx(0.1)


def test_flag_wins_over_config(capsys, cubic_file, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("a = 1\neta = 1\nh = 0.2\n")
    code, out, _ = run(
        capsys, "quasimode", "--potential", cubic_file,
        "--config", str(cfg), "--h", "0.1", "--allow-large-h",
    )
    assert code == 0
    assert json.loads(out)["h"] == pytest.approx(0.1)


def test_sweep_h(capsys, cubic_file):
    code, out, err = run(
        capsys, "sweep-h", "--potential", cubic_file,
        "--a", "1", "--eta", "1", "--h-list", "0.2,0.1,0.05",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "h,r,lower_bound"
    assert len(lines) == 4
    assert "slope" in err


def test_region(capsys, cubic_file):
    code, out, _ = run(
        capsys, "region", "--potential", cubic_file, "--h", "0.05",
        "--a-min", "0.5", "--a-max", "1.5", "--a-count", "3",
        "--eta-min", "-1", "--eta-max", "1", "--eta-count", "2",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "a,eta,z_re,z_im"
    assert len(lines) == 1 + 3 * 2


def test_high_energy(capsys, tmp_path):
    path = tmp_path / "quartic.txt"
    path.write_text(QUARTIC)
    code, out, _ = run(
        capsys, "high-energy", "--potential", str(path),
        "--z-re", "0.9238795325112867", "--z-im", "0.3826834323650898",
        "--sigma-list", "1e2,1e3", "--order", "0",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    lows = [float(line.split(",")[2]) for line in lines[1:]]
    assert lows[1] > lows[0]


def test_validate(capsys, cubic_file):
    code, out, _ = run(
        capsys, "validate", "--potential", cubic_file,
        "--a", "1", "--eta", "1", "--h", "0.1", "--allow-large-h",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True


def test_missing_potential_file(capsys):
    code, _, err = run(
        capsys, "quasimode", "--potential", "/nonexistent/pot.txt",
        "--a", "1", "--eta", "1", "--h", "0.1",
    )
    assert code == 2 and err.startswith("error:")


def test_degenerate_anchor_exit_code(capsys, tmp_path):
    path = tmp_path / "real.txt"
    path.write_text(REAL)
    code, _, err = run(
        capsys, "quasimode", "--potential", str(path),
        "--a", "1", "--eta", "1", "--h", "0.1",
    )
    assert code == 3 and "error:degenerate_anchor" in err


def test_sector_exit_code(capsys, tmp_path):
    path = tmp_path / "quartic.txt"
    path.write_text(QUARTIC)
    code, _, err = run(
        capsys, "high-energy", "--potential", str(path),
        "--z-re", "1", "--z-im", "-0.5", "--sigma-list", "1e2",
    )
    assert code == 2 and "error:" in err


def test_missing_anchor_options(capsys, cubic_file):
    code, _, err = run(
        capsys, "quasimode", "--potential", cubic_file, "--h", "0.1"
    )
    assert code == 2 and "error:usage" in err
