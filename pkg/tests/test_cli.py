import json
import shutil
import subprocess
import sys

import numpy as np
import pytest

from zeromodes.cli import main
from zeromodes.fixtures import data_path, fixture_names


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


@pytest.fixture
def genus2_file(workdir):
    target = workdir / "genus2.lat"
    target.write_text(data_path("genus2.lat").read_text())
    return target


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestBuild:
    def test_c60(self, workdir, capsys):
        code, out, _ = run(capsys, "build", "goldberg", "--m", "1", "--n", "1", "-o", "c60.lat")
        assert code == 0
        assert "census 5:12 6:20" in out
        assert "V 60" in out
        assert "lattice v1 60" in (workdir / "c60.lat").read_text()

    def test_torus_genus(self, workdir, capsys):
        code, out, _ = run(capsys, "build", "torus", "--a", "3,0", "--b", "0,3", "-o", "t33.lat")
        assert code == 0
        assert "genus 1" in out

    def test_invalid_goldberg(self, workdir, capsys):
        code, _, err = run(capsys, "build", "goldberg", "--m", "0", "--n", "0")
        assert code == 2
        assert "invalid Goldberg parameters" in err

    def test_bad_wrapping(self, workdir, capsys):
        code, _, err = run(capsys, "build", "torus", "--a", "2,1", "--b", "4,2", "-o", "x.lat")
        assert code == 2
        assert not (workdir / "x.lat").exists()

    def test_octahedral(self, workdir, capsys):
        code, out, _ = run(capsys, "build", "octahedral", "--f", "2")
        assert code == 0
        assert "census 4:6 6:12" in out


class TestCensus:
    def test_c60_residual(self, workdir, capsys):
        run(capsys, "build", "goldberg", "--m", "1", "--n", "1", "-o", "c60.lat")
        code, out, _ = run(capsys, "census", "--file", "c60.lat")
        assert code == 0
        assert "residual 0" in out

    def test_genus2_chi(self, genus2_file, capsys):
        code, out, _ = run(capsys, "census", "--file", str(genus2_file))
        assert code == 0
        assert "chi -2  genus 2" in out

    def test_json(self, genus2_file, capsys):
        code, out, _ = run(capsys, "census", "--file", str(genus2_file), "--json")
        doc = json.loads(out)
        assert (doc["chi"], doc["genus"], doc["residual"]) == (-2, 2, 0)

    def test_broken(self, workdir, capsys):
        (workdir / "broken.lat").write_text("lattice v1 4\nf 0 1 2\nf 0 2 3\n")
        code, _, err = run(capsys, "census", "--file", "broken.lat")
        assert code == 1
        assert "edge-faces" in err
        assert "vertex-degree" in err

    def test_parse_error(self, workdir, capsys):
        (workdir / "bad.lat").write_text("lattice v1 3\nf 0 1 7\n")
        code, _, err = run(capsys, "census", "--file", "bad.lat")
        assert code == 1
        assert "line 2" in err

    def test_needs_one_source(self, workdir, capsys):
        assert run(capsys, "census")[0] == 2
        assert run(capsys, "census", "--fixture", "C60", "--builder", "goldberg", "--m", "1")[0] == 2

    def test_unknown_fixture(self, workdir, capsys):
        code, _, err = run(capsys, "census", "--fixture", "C70")
        assert code == 2
        assert "unknown fixture" in err


class TestVerify:
    def test_c60(self, workdir, capsys):
        run(capsys, "build", "goldberg", "--m", "1", "--n", "1", "-o", "c60.lat")
        code, out, _ = run(capsys, "verify", "--file", "c60.lat")
        assert code == 0
        doc = json.loads((workdir / "c60.report.json").read_text())
        assert doc["verdict"] == "consistent-asymptotically"
        assert doc["min_zero_modes"] == 6
        assert sum(m for _, m in doc["near_zero_clusters"][:2]) == 6

    def test_torus_builder(self, workdir, capsys):
        code, out, _ = run(capsys, "verify", "--builder", "torus", "--a", "3,0", "--b", "0,3")
        assert code == 0
        [report] = workdir.glob("*.report.json")
        doc = json.loads(report.read_text())
        assert doc["verdict"] == "consistent"
        assert doc["numeric_zero_count"] == doc["exact_zero_count"] == 4

    def test_genus2(self, genus2_file, capsys):
        code, out, _ = run(capsys, "verify", "--file", str(genus2_file), "-o", "g2.json")
        assert code == 0
        doc = json.loads((genus2_file.parent / "g2.json").read_text())
        assert doc["genus"] == 2
        assert doc["min_zero_modes"] == 6
        assert doc["verdict"] == "consistent-asymptotically"

    def test_deterministic(self, workdir, capsys):
        run(capsys, "verify", "--fixture", "genus2", "-o", "a.json")
        run(capsys, "verify", "--fixture", "genus2", "-o", "b.json")
        assert (workdir / "a.json").read_bytes() == (workdir / "b.json").read_bytes()

    def test_csv_outputs(self, workdir, capsys):
        code, _, _ = run(capsys, "verify", "--fixture", "cube", "--format", "json,csv", "--J", "2")
        assert code == 0
        rows = (workdir / "cube.spectrum.csv").read_text().splitlines()
        assert rows[0] == "index,eigenvalue"
        values = np.array([float(r.split(",")[1]) for r in rows[1:]])
        np.testing.assert_allclose(values, [-3, -1, -1, -1, 1, 1, 1, 3], atol=1e-12)
        assert (workdir / "cube.clusters.csv").read_text().startswith("mean,multiplicity\n")
        assert "energies in units of J = 2" in (workdir / "cube.report.json").read_text()

    @pytest.mark.parametrize("flag, value", [("--J", "0"), ("--tau", "-1")])
    def test_nonpositive_parameters(self, workdir, capsys, flag, value):
        assert run(capsys, "verify", "--fixture", "cube", flag, value)[0] == 2
        assert list(workdir.iterdir()) == []

    def test_invalid_lattice(self, workdir, capsys):
        (workdir / "broken.lat").write_text("lattice v1 4\nf 0 1 2\nf 0 2 3\n")
        assert run(capsys, "verify", "--file", "broken.lat")[0] == 1
        assert not list(workdir.glob("*.json"))

    def test_all_fixtures(self, workdir, capsys):
        code, out, _ = run(capsys, "verify", "--all-fixtures", "--out-dir", "reports", "--jobs", "3")
        assert code == 0
        lines = out.splitlines()
        assert [ln.split()[0] for ln in lines] == fixture_names()
        assert len(list((workdir / "reports").glob("*.report.json"))) == len(fixture_names())


class TestDispersion:
    def test_torus_deviation(self, workdir, capsys):
        code, out, err = run(capsys, "dispersion", "--a", "12,0", "--b", "0,12")
        assert code == 0
        assert len(out.splitlines()) == 145
        dev = float(err.split("real-space spectrum ")[1].split()[0])
        assert dev <= 1e-8

    def test_grid(self, workdir, capsys):
        code, _, _ = run(capsys, "dispersion", "--grid", "100", "-o", "grid.csv")
        assert code == 0
        data = np.loadtxt(workdir / "grid.csv", delimiter=",", skiprows=1)
        assert data.shape == (10_000, 4)
        assert np.all(np.abs(data[:, 2]) <= 3 + 1e-12)
        np.testing.assert_array_equal(data[:, 3], -data[:, 2])

    @pytest.mark.parametrize("argv", [["--a", "1,0", "--b", "0,0"], ["--a", "1,0"], ["--grid", "0"], []])
    def test_usage_errors(self, workdir, capsys, argv):
        assert run(capsys, "dispersion", *argv)[0] == 2


@pytest.mark.skipif(shutil.which("zeromodes") is None, reason="console script not installed")
def test_console_script(tmp_path):
    proc = subprocess.run(["zeromodes", "build", "goldberg", "--m", "0", "--n", "0"],
                          capture_output=True, text=True, cwd=tmp_path)
    assert proc.returncode == 2
    assert "invalid Goldberg parameters" in proc.stderr


def test_module_entry(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "zeromodes.cli", "census", "--fixture", "C60"],
                          capture_output=True, text=True, cwd=tmp_path)
    assert proc.returncode == 0
    assert "residual 0" in proc.stdout
