import io as stdio
import json
import subprocess
import sys

import numpy as np
import pytest

from slantix import io
from slantix.cli import main, parse_grid, read_config
from slantix.profiles import SlantParameters
from slantix.synthesis import sample_salkowski


def run(*argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


class TestCSV:
    def test_bit_identical_round_trip(self, tmp_path):
        c = sample_salkowski(SlantParameters(1 / 3), np.linspace(-1.2, 1.2, 301))
        path = tmp_path / "c.csv"
        io.write_csv(c, path)
        back = io.read_csv(path)
        for name in ("s", "t", "theta", "position", "T", "N", "B", "kappa", "tau"):
            assert np.array_equal(getattr(back, name), getattr(c, name)), name
        assert back.parameter == "t"
        # rewriting gives the same bytes
        again = tmp_path / "again.csv"
        io.write_csv(back, again)
        assert again.read_bytes() == path.read_bytes()

    def test_header_and_locale_free_numbers(self, tmp_path):
        c = sample_salkowski(SlantParameters(1 / 3), [0.0, 0.5, 1.0])
        path = tmp_path / "c.csv"
        io.write_csv(c, path)
        lines = path.read_text().splitlines()
        assert lines[0] == ",".join(io.CSV_COLUMNS)
        assert len(lines) == 4
        assert all(len(line.split(",")) == 17 for line in lines)

    def test_missing_frames_blank(self, tmp_path):
        from slantix.curves import SampledCurve
        s = np.linspace(0, 1, 4)
        c = SampledCurve(s=s, position=np.zeros((4, 3)))
        path = tmp_path / "bare.csv"
        io.write_csv(c, path)
        assert ",,,,,,,,," in path.read_text().splitlines()[1]
        back = io.read_csv(path)
        assert back.T is None and back.N is None and back.B is None
        assert back.parameter == "s"

    def test_bad_header(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(ValueError):
            io.read_csv(path)


def test_obj_and_dat(tmp_path):
    c = sample_salkowski(SlantParameters(1 / 3), np.linspace(-1, 1, 5))
    io.write_obj(c, tmp_path / "c.obj")
    lines = (tmp_path / "c.obj").read_text().splitlines()
    assert sum(line.startswith("v ") for line in lines) == 5
    assert lines[-1] == "l 1 2 3 4 5"
    io.write_gnuplot([c, c], tmp_path / "c.dat", labels=["a", "b"])
    blocks = (tmp_path / "c.dat").read_text().split("\n\n")
    assert len(blocks) == 2
    assert blocks[1].startswith("# b\n")
    with pytest.raises(ValueError):
        io.write_curve(c, tmp_path / "c.xyz")


class TestParsing:
    def test_grid(self):
        g = parse_grid("-1/2:1/2:5")
        assert np.array_equal(g, np.linspace(-0.5, 0.5, 5))

    @pytest.mark.parametrize("text", ["1:2", "1:2:1", "2:1:5", "a:1:5"])
    def test_bad_grid(self, text):
        code, _, _ = run("generate", "--family", "salkowski", "--n", "1/3", "--t", text, "--out", "x.csv")
        assert code == 2

    def test_config_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("# salkowski run\nfamily = salkowski\nn = 1/3  # exact\n")
        assert read_config(path) == {"family": "salkowski", "n": "1/3"}


class TestGenerate:
    def test_salkowski_rows(self, tmp_path):
        out = tmp_path / "curve.csv"
        code, text, _ = run("generate", "--family", "salkowski", "--n", "1/3",
                            "--t", "-1.2:1.2:2001", "--out", str(out))
        assert code == 0
        assert len(out.read_text().splitlines()) == 2002
        assert "2001 samples" in text and "closed-form" in text

    def test_singular_half(self, tmp_path):
        code, _, err = run("generate", "--family", "salkowski", "--n", "1/2",
                           "--t", "-1:1:11", "--out", str(tmp_path / "x.csv"))
        assert code == 3
        assert "2n - 1" in err

    def test_precession_row_at_zero(self, tmp_path):
        out = tmp_path / "p.csv"
        code, _, _ = run("generate", "--family", "precession", "--mu-eq-m", "--n", "1/2",
                         "--s", "-3:3:3001", "--out", str(out))
        assert code == 0
        c = io.read_csv(out)
        i = int(np.flatnonzero(c.s == 0.0)[0])
        assert np.allclose(c.position[i], [-1.443376, 0.0, -1.5], atol=1e-6)

    @pytest.mark.parametrize("route", ["parametric", "natural", "oracle"])
    def test_routes(self, tmp_path, route):
        out = tmp_path / "r.csv"
        code, text, _ = run("generate", "--family", "salkowski", "--n", "1/3", "--route", route,
                            "--t", "-1.2:1.2:401", "--out", str(out))
        assert code == 0, text
        assert len(io.read_csv(out)) == 401

    def test_obj_format(self, tmp_path):
        out = tmp_path / "c.obj"
        code, _, _ = run("generate", "--family", "salkowski", "--n", "1/3", "--t", "-1:1:11",
                         "--out", str(out))
        assert code == 0 and out.read_text().startswith("v ")

    def test_unwritable(self, tmp_path):
        code, _, _ = run("generate", "--family", "salkowski", "--n", "1/3", "--t", "-1:1:11",
                         "--out", str(tmp_path / "missing" / "x.csv"))
        assert code == 4

    def test_out_of_domain(self, tmp_path):
        code, _, _ = run("generate", "--family", "salkowski", "--n", "1/3", "--t", "-6:6:11",
                         "--out", str(tmp_path / "x.csv"))
        assert code == 3

    def test_missing_n(self, tmp_path):
        code, _, _ = run("generate", "--family", "salkowski", "--out", str(tmp_path / "x.csv"))
        assert code == 2

    def test_config_and_flag_precedence(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("family = salkowski\nn = 1/8\nt = -1:1:21\n")
        out = tmp_path / "c.csv"
        code, _, _ = run("--config", str(cfg), "generate", "--n", "1/3", "--out", str(out))
        assert code == 0
        c = io.read_csv(out)
        assert len(c) == 21
        # n = 1/3 from the flag, not 1/8 from the file
        assert np.allclose(c.N[:, 2], 1 / 3)

    def test_bad_config_key(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("colour = blue\n")
        code, _, _ = run("--config", str(cfg), "generate", "--out", str(tmp_path / "x.csv"))
        assert code == 2

    def test_missing_config(self, tmp_path):
        code, _, _ = run("--config", str(tmp_path / "none.cfg"), "list-families")
        assert code == 4


class TestVerify:
    def test_salkowski_suite(self, tmp_path):
        report = tmp_path / "r.json"
        code, text, _ = run("verify", "--family", "salkowski", "--n", "1/3", "--report", str(report))
        assert code == 0, text
        bundle = json.loads(report.read_text())
        assert bundle["pass"] is True
        sigma = next(r for r in bundle["reports"] if r["check"] == "sigma_constancy")
        assert "0.353553" in sigma["notes"]

    def test_negative_control(self):
        code, text, _ = run("verify", "--family", "control", "--no-oracle")
        assert code == 1
        assert "FAIL normal_angle" in text and "FAIL sigma_constancy" in text

    def test_general_helix(self):
        code, text, _ = run("verify", "--family", "general-helix", "--ratio", "0.7")
        assert code == 0, text
        assert "INFO normal_angle" in text

    def test_from_file(self, tmp_path):
        out = tmp_path / "c.csv"
        assert run("generate", "--family", "anti-salkowski", "--n", "2/3", "--out", str(out))[0] == 0
        code, text, _ = run("verify", "--in", str(out), "--family", "anti-salkowski", "--n", "2/3")
        assert code == 0, text

    def test_unreadable_input(self, tmp_path):
        code, _, _ = run("verify", "--in", str(tmp_path / "none.csv"))
        assert code == 4


class TestCompare:
    def test_salkowski_passes(self):
        code, text, _ = run("compare", "--family", "salkowski", "--n", "1/3", "--step", "1e-4",
                            "--tol", "1e-6")
        assert code == 0, text

    def test_coarse_step_fails_with_note(self):
        code, text, _ = run("compare", "--family", "salkowski", "--n", "1/3", "--step", "1e-1",
                            "--tol", "1e-6")
        assert code == 1
        assert "step^4" in text

    def test_anti_salkowski(self, tmp_path):
        report = tmp_path / "r.json"
        code, text, _ = run("compare", "--family", "anti-salkowski", "--n", "2/3",
                            "--report", str(report))
        assert code == 0, text
        assert json.loads(report.read_text())["pass"] is True

    def test_against_natural(self):
        code, text, _ = run("compare", "--family", "precession", "--n", "4/5", "--against", "natural",
                            "--tol", "1e-7")
        assert code == 0, text


class TestFigure:
    @pytest.mark.parametrize("which,ns", [(1, ["n1-3", "n1-8", "n10-11"]),
                                          (2, ["n1-5", "n1-13", "n2-3"]),
                                          (3, ["n4-5", "n1-2", "n1-3"])])
    def test_files(self, tmp_path, which, ns):
        code, _, _ = run("figure", str(which), "--outdir", str(tmp_path))
        assert code == 0
        csvs = sorted(p.name for p in tmp_path.glob("*.csv"))
        assert len(csvs) == 3
        assert all(any(n + ".csv" == name.split("_", 2)[2] for name in csvs) for n in ns)
        blocks = (tmp_path / f"fig{which}.dat").read_text().split("\n\n")
        assert len(blocks) == 3

    def test_figure_two_curves_verify(self, tmp_path):
        assert run("figure", "2", "--outdir", str(tmp_path))[0] == 0
        for path, n in zip(sorted(tmp_path.glob("*.csv")), ["1/13", "1/5", "2/3"]):
            code, text, _ = run("verify", "--in", str(path), "--family", "anti-salkowski", "--n", n)
            assert code == 0, (path.name, text)


def test_list_families():
    code, text, _ = run("list-families")
    assert code == 0
    for name in ("salkowski", "anti-salkowski", "precession", "helix", "general-helix", "control"):
        assert name in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "slantix", "list-families"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "salkowski" in proc.stdout
