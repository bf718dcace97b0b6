import io
import json

import numpy as np
import pytest

from atomscatter import cli
from atomscatter.geometry import AngularAperture, weighted_solid_angle


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def read_table(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    header = lines[0].split(",")
    rows = [ln.split(",") for ln in lines[1:]]
    return header, rows


def as_dicts(text):
    header, rows = read_table(text)
    return [dict(zip(header, (float(v) for v in row))) for row in rows]


def summary(path):
    header, rows = read_table(path.read_text())
    assert header == ["quantity", "value"]
    return {k: float(v) for k, v in rows}


class TestMono:
    def test_resonant_full_coupling(self):
        code, out, _ = run("mono", "--omega", "1", "--eta", "1", "--delta-range=-1,1,5")
        assert code == 0
        rows = as_dicts(out)
        centre = next(r for r in rows if r["delta"] == 0.0)
        assert centre["p_sc"] == 4.0
        assert all(abs(r["energy_residual"]) <= 1e-12 for r in rows)
        assert centre["phase_nogouy"] == pytest.approx(np.pi / 2)
        assert centre["phase_gouy"] == pytest.approx(np.pi)

    def test_uncoupled(self):
        code, out, _ = run("mono", "--omega", "0", "--eta", "0.4", "--power", "2.5")
        assert code == 0
        for r in as_dicts(out):
            assert r["p_coh"] == 2.5
            assert r["p_incoh"] == r["p_back"] == r["p_sc"] == 0.0

    def test_saturated_rows(self):
        code, out, err = run("mono", "--saturation", "1", "--delta-range", "0,0,1")
        assert code == 0
        (row,) = as_dicts(out)
        assert row["p_sc"] == 1.0
        assert np.isnan(row["p_coh"]) and np.isnan(row["energy_residual"])
        assert "saturation" in err

    def test_columns(self):
        header, _ = read_table(run("mono")[1])
        assert header == [
            "delta", "p_sc", "phase_nogouy", "phase_gouy", "p_coh", "p_incoh", "p_back", "energy_residual",
        ]


class TestPulse:
    def test_full_coupling(self, tmp_path):
        out = tmp_path / "p.csv"
        assert run("pulse", "--omega", "1", "--eta", "1", "--out", str(out))[0] == 0
        s = summary(tmp_path / "p_summary.csv")
        assert s["rising_coeff_re"] == 0 and s["rising_coeff_im"] == 0
        assert s["absorbed_fraction"] == pytest.approx(1.0, abs=1e-3)
        assert s["absorbed_fraction_parseval"] == pytest.approx(1.0, abs=1e-3)
        assert s["envelope_max_deviation"] <= 1e-3
        spec_header, spec_rows = read_table((tmp_path / "p_spectral.csv").read_text())
        assert spec_header[0] == "delta" and len(spec_rows) == 2**16
        time_header, _ = read_table((tmp_path / "p_time.csv").read_text())
        assert "coh_fft_re" in time_header and "back_im" in time_header

    @pytest.mark.parametrize("omega, eta", [(0.11, 1.0), (0.5, 0.5), (0.3, 0.9)])
    def test_absorbed_fraction(self, tmp_path, omega, eta):
        out = tmp_path / "p.csv"
        code, _, _ = run("pulse", "--omega", str(omega), "--eta", str(eta), "--out", str(out))
        assert code == 0
        s = summary(tmp_path / "p_summary.csv")
        assert s["absorbed_fraction"] == pytest.approx(omega * eta**2, rel=1e-15)
        assert abs(s["absorbed_fraction_difference"]) <= 1e-3

    def test_tolerance_failure_exit_code(self, tmp_path):
        code, _, err = run("pulse", "--grid-n", "64", "--grid-span", "2", "--out", str(tmp_path / "p.csv"))
        assert code == cli.EXIT_TOLERANCE
        assert "oracle" in err
        assert (tmp_path / "p_summary.csv").exists()


class TestSweep:
    def test_omega_column(self):
        code, out, _ = run("sweep", "--omega-range", "0,1,3", "--eta-range", "1,1,1")
        assert code == 0
        assert [r["absorbed_fraction"] for r in as_dicts(out)] == [0.0, 0.5, 1.0]

    def test_eta_column(self):
        code, out, _ = run("sweep", "--omega-range", "1,1,1", "--eta-range", "0,1,3")
        assert [r["absorbed_fraction"] for r in as_dicts(out)] == [0.0, 0.25, 1.0]

    def test_lexicographic_order(self):
        _, out, _ = run("sweep", "--omega-range", "1,0,3", "--eta-range", "1,0.5,2")
        keys = [(r["omega"], r["eta"]) for r in as_dicts(out)]
        assert keys == sorted(keys) and len(keys) == 6

    def test_single_point_matches_pulse_summary(self, tmp_path):
        _, out, _ = run("sweep", "--omega-range", "0.3,0.3,1", "--eta-range", "0.8,0.8,1", "--a0", "1.5")
        (row,) = as_dicts(out)
        run("pulse", "--omega", "0.3", "--eta", "0.8", "--a0", "1.5", "--out", str(tmp_path / "p.csv"))
        s = summary(tmp_path / "p_summary.csv")
        for key in ("absorbed_fraction", "rising_coeff_re", "rising_coeff_im", "decaying_coeff_re"):
            assert row[key] == s[key]

    def test_out_of_range(self):
        code, _, err = run("sweep", "--omega-range", "0,2,3")
        assert code == cli.EXIT_CONFIG
        assert "omega_range" in err


class TestSolidAngle:
    def test_full_sphere(self):
        code, out, _ = run("solid-angle")
        assert code == 0
        (row,) = as_dicts(out)
        assert row["omega"] == pytest.approx(1.0, abs=1e-12)

    def test_hemisphere(self):
        (row,) = as_dicts(run("solid-angle", "--theta-max", repr(np.pi / 2))[1])
        assert row["omega"] == pytest.approx(0.5, abs=1e-12)

    def test_quarter_pi_cone(self):
        (row,) = as_dicts(run("solid-angle", "--theta-max", repr(np.pi / 4))[1])
        assert row["omega"] == pytest.approx(0.5 - 5 * np.sqrt(2) / 16, abs=1e-10)

    def test_non_convergence(self):
        code, out, err = run("solid-angle", "--quad-order", "8", "--quad-tol", "1e-300", "--theta-max", "2")
        assert code == cli.EXIT_TOLERANCE
        assert "did not converge" in err
        (row,) = as_dicts(out)
        assert row["error_estimate"] > 0

    def test_circular(self):
        (row,) = as_dicts(run("solid-angle", "--pattern", "circular", "--theta-max", "1.0")[1])
        expected = weighted_solid_angle("circular", AngularAperture.cone(1.0))
        assert row["omega"] == expected


class TestConfig:
    def test_file_and_override(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# example\nomega = 0.0\neta-range = 1,1,1\ndelta_range = 0,0,1  # resonant\npower=2\n")
        _, out, _ = run("mono", "--config", str(cfg))
        (row,) = as_dicts(out)
        assert row["p_coh"] == 2.0
        _, out, _ = run("mono", "--config", str(cfg), "--omega", "1")
        (row,) = as_dicts(out)
        assert row["p_sc"] == 8.0

    @pytest.mark.parametrize(
        "argv, key",
        [
            (("mono", "--omega", "1.5"), "omega"),
            (("mono", "--eta", "abc"), "eta"),
            (("mono", "--gamma", "0"), "gamma"),
            (("mono", "--delta-range", "1,2"), "delta_range"),
            (("pulse", "--grid-n", "7"), "grid_n"),
            (("mono", "--format", "xml"), "format"),
            (("solid-angle", "--theta-max", "4"), "theta_max"),
            (("solid-angle", "--theta-min", "2", "--theta-max", "1"), "theta_min"),
            (("solid-angle", "--phi-max", "9"), "phi_max"),
            (("solid-angle", "--pattern", "quadrupole"), "pattern"),
            (("mono", "--config", "/nonexistent/run.cfg"), "config"),
        ],
    )
    def test_config_errors_name_field(self, argv, key):
        code, _, err = run(*argv)
        assert code == cli.EXIT_CONFIG
        assert f"'{key}'" in err

    def test_unknown_key_in_file(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("colour = blue\n")
        code, _, err = run("mono", "--config", str(cfg))
        assert code == cli.EXIT_CONFIG and "colour" in err

    def test_bad_subcommand(self):
        assert run("plot")[0] == cli.EXIT_CONFIG


class TestOutput:
    @pytest.mark.parametrize("mode", cli.MODES)
    @pytest.mark.parametrize("fmt", ["csv", "json"])
    def test_deterministic(self, tmp_path, mode, fmt):
        extra = ("--grid-n", "4096", "--grid-span", "50") if mode == "pulse" else ()
        out = tmp_path / f"out.{fmt}"
        snapshots = []
        for i in range(2):
            # same output path in both runs so the config echo is identical
            assert run(mode, "--format", fmt, "--out", str(out), *extra)[0] == 0
            written = sorted(tmp_path.glob("out*"))
            snapshots.append({p.name: p.read_bytes() for p in written})
            for p in written:
                p.unlink()
        assert snapshots[0] and snapshots[0] == snapshots[1]

    def test_round_trip_decimal(self):
        cfg = cli.resolve_config("mono", {}, {"omega": "0.37", "eta": "0.81", "delta_range": "-3.3,2.9,17"})
        result = cli.run_mono(cfg)
        _, out, _ = run("mono", "--omega", "0.37", "--eta", "0.81", "--delta-range=-3.3,2.9,17")
        _, rows = read_table(out)
        computed = result.tables[0].rows
        for printed, exact in zip(rows, computed):
            assert [float(v) for v in printed] == exact

    def test_json_mirror(self, tmp_path):
        out = tmp_path / "p.json"
        assert run("pulse", "--format", "json", "--out", str(out), "--grid-n", "4096", "--grid-span", "50")[0] == 0
        doc = json.loads(out.read_text())
        assert set(doc["tables"]) == {"spectral", "time", "summary"}
        assert doc["config"]["grid_n"] == 4096
        rows = dict(doc["tables"]["summary"]["rows"])
        assert rows["absorbed_fraction"] == 1.0

    def test_header_comments(self):
        _, out, _ = run("sweep")
        comments = [ln for ln in out.splitlines() if ln.startswith("#")]
        assert comments[0] == "# atomscatter sweep table=sweep"
        assert "# omega_range=0,1,11" in comments
