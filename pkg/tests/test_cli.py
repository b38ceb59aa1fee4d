import json
import pathlib
import subprocess
import sys

import numpy as np
import pytest

from conftest import DATA_DIR
from hybridplane.cli import main, parse_config, run
from hybridplane.errors import ConfigError
from hybridplane.plane_green import SIGMA0, SpinOrbitKind, SpinOrbitParams
from hybridplane.scattering import reflection_amplitude

GOLDEN_CONFIG = DATA_DIR / "golden_reflect_config.json"
GOLDEN_CSV = DATA_DIR / "golden_reflect.csv"


def make_sweep_config(**overrides):
    doc = {
        "task": "reflect-sweep",
        "spin_orbit": {"kind": "rashba", "kappa": 1.0},
        "coupling": {"a": 1.0, "c": 1.0, "d": 0.0},
        "k_grid": {"start": 0.1, "stop": 10.0, "num": 100},
    }
    doc.update(overrides)
    return json.dumps(doc)


class TestParseConfig:
    def test_minimal_sweep(self):
        cfg = parse_config(make_sweep_config())
        assert cfg.task == "reflect-sweep"
        assert cfg.k_grid.size == 100
        assert cfg.spin_orbit.kappa == 1.0
        assert cfg.coupling_scalar.a == 1.0

    def test_non_hermitian_matrix_code(self):
        doc = {
            "task": "green-plane",
            "spin_orbit": {"kind": "rashba", "kappa": 1.0},
            "coupling": {
                "A": [[1.0, [0.0, 0.1]], [0.0, 1.0]],
                "C": [[1.0, 0.0], [0.0, 1.0]],
                "D": [[0.0, 0.0], [0.0, 0.0]],
            },
            "z": {"re": -4.0},
            "plane_grid": [[1.0, 0.0]],
        }
        with pytest.raises(ConfigError) as err:
            parse_config(json.dumps(doc))
        assert err.value.code == "non-hermitian"

    def test_natural_coupling_expansion(self):
        doc = {
            "task": "green-renorm",
            "spin_orbit": {"kind": "rashba", "kappa": 0.5},
            "coupling": {"rho": 0.5},
            "energy_grid": [-4.0],
        }
        cfg = parse_config(json.dumps(doc))
        assert np.allclose(cfg.coupling.A, SIGMA0)
        assert np.allclose(cfg.coupling.C, SIGMA0 / np.sqrt(np.pi))
        assert np.allclose(cfg.coupling.D, np.log(2.0) * SIGMA0)

    def test_invalid_rho_code(self):
        with pytest.raises(ConfigError) as err:
            parse_config(make_sweep_config(coupling={"rho": 0.0}))
        assert err.value.code == "invalid-rho"

    def test_empty_grid_code(self):
        with pytest.raises(ConfigError) as err:
            parse_config(make_sweep_config(k_grid=[]))
        assert err.value.code == "empty-grid"

    def test_non_monotone_grid_code(self):
        with pytest.raises(ConfigError) as err:
            parse_config(make_sweep_config(k_grid=[1.0, 3.0, 2.0]))
        assert err.value.code == "bad-grid"

    def test_unknown_task_code(self):
        with pytest.raises(ConfigError) as err:
            parse_config(make_sweep_config(task="wibble"))
        assert err.value.code == "bad-task"

    def test_invalid_json_code(self):
        with pytest.raises(ConfigError) as err:
            parse_config("{not json")
        assert err.value.code == "schema"

    def test_physical_scales_reduction(self):
        doc = json.loads(make_sweep_config())
        doc["spin_orbit"] = {
            "kind": "dresselhaus",
            "scales": {"alpha": 1.0, "m_star": 2.0, "hbar": 2.0},
        }
        cfg = parse_config(json.dumps(doc))
        assert cfg.spin_orbit.kappa == 0.5
        assert cfg.spin_orbit.kind is SpinOrbitKind.DRESSELHAUS


class TestRun:
    def test_single_point_sweep_matches_library(self, tmp_path):
        out = tmp_path / "one.csv"
        cfg = parse_config(make_sweep_config(k_grid=[2.0]))
        run(cfg, out=str(out))
        header, row = out.read_text().splitlines()
        vals = row.split(",")
        r = reflection_amplitude(
            2.0, cfg.coupling_scalar, SpinOrbitParams(SpinOrbitKind.RASHBA, 1.0)
        )
        assert float(vals[0]) == 2.0
        assert float(vals[1]) == r.amplitude.real
        assert float(vals[2]) == r.amplitude.imag
        assert float(vals[3]) == r.probability

    def test_decoupled_sweep_is_unitary_end_to_end(self, tmp_path):
        out = tmp_path / "unit.csv"
        cfg = parse_config(
            make_sweep_config(coupling={"a": 1.0, "c": 0.0, "d": 0.0},
                              k_grid={"start": 0.1, "stop": 10.0, "num": 64})
        )
        run(cfg, out=str(out))
        rows = out.read_text().splitlines()[1:]
        for row in rows:
            prob = float(row.split(",")[3])
            assert abs(prob - 1.0) <= 1e-12

    def test_green_renorm_rows(self, tmp_path):
        out = tmp_path / "renorm.json"
        doc = {
            "task": "green-renorm",
            "spin_orbit": {"kind": "rashba", "kappa": 1.0},
            "coupling": {"a": 0.0, "c": 1.0, "d": 0.0},
            "energy_grid": [-9.0, [-3.0, 2.0]],
            "output": {"format": "json"},
        }
        run(parse_config(json.dumps(doc)), out=str(out))
        payload = json.loads(out.read_text())
        assert payload["task"] == "green-renorm"
        assert payload["rows"][0]["re_g"] == pytest.approx(-0.13727595785498614, rel=1e-12)

    def test_bound_states_with_report(self, tmp_path):
        out = tmp_path / "bs.csv"
        doc = {
            "task": "bound-states",
            "spin_orbit": {"kind": "rashba", "kappa": 0.5},
            "coupling": {"a": 0.3, "c": 1.0, "d": 0.9},
            "search": {"lo": 0.51, "hi": 12.0},
        }
        run(parse_config(json.dumps(doc)), out=str(out))
        rows = out.read_text().splitlines()
        assert rows[0].startswith("energy,kappa_b")
        assert len(rows) == 2
        report = json.loads((tmp_path / "bs.csv.report.json").read_text())
        assert report["reality_region"]["measured_real_region"] == "kappa_b > kappa"
        assert "documented_alternative_region" in report["reality_region"]

    def test_state_dump_runs(self, tmp_path):
        out = tmp_path / "state.csv"
        doc = {
            "task": "state-dump",
            "spin_orbit": {"kind": "rashba", "kappa": 1.0},
            "coupling": {"a": 1.0, "c": 1.0, "d": 0.0},
            "incident": {"k": 1.0, "spin": [1.0, 0.0]},
            "lead_grid": [0.5, 1.0, 2.0, 4.0],
            "plane_grid": [[1.0, 0.0], [0.0, 2.0]],
        }
        run(parse_config(json.dumps(doc)), out=str(out))
        rows = out.read_text().splitlines()
        assert rows[0].split(",")[0] == "region"
        assert len(rows) == 1 + 4 + 2

    def test_green_plane_header(self, tmp_path):
        out = tmp_path / "gp.csv"
        doc = {
            "task": "green-plane",
            "spin_orbit": {"kind": "dresselhaus", "kappa": 1.0},
            "coupling": {"a": 0.0, "c": 1.0, "d": 0.0},
            "z": {"re": -5.0},
            "plane_grid": [[1.0, 0.0], [0.5, 0.5]],
        }
        run(parse_config(json.dumps(doc)), out=str(out))
        header = out.read_text().splitlines()[0]
        assert header.split(",")[:4] == ["x1", "x2", "re_G11", "im_G11"]


class TestDeterminism:
    def run_cli(self, args):
        return subprocess.run(
            [sys.executable, "-m", "hybridplane.cli", *args],
            capture_output=True,
            text=True,
        )

    def test_golden_file_reproduced_across_runs_and_threads(self, tmp_path):
        golden = GOLDEN_CSV.read_bytes()
        for threads in ("1", "8"):
            out = tmp_path / ("sweep_t%s.csv" % threads)
            proc = self.run_cli(
                [
                    "reflect-sweep",
                    "--config", str(GOLDEN_CONFIG),
                    "--out", str(out),
                    "--threads", threads,
                ]
            )
            assert proc.returncode == 0, proc.stderr
            assert out.read_bytes() == golden
        # and a second identical run is byte-identical too
        out2 = tmp_path / "again.csv"
        proc = self.run_cli(
            ["reflect-sweep", "--config", str(GOLDEN_CONFIG), "--out", str(out2)]
        )
        assert proc.returncode == 0
        assert out2.read_bytes() == golden

    def test_json_report_determinism(self, tmp_path):
        doc = {
            "task": "bound-states",
            "spin_orbit": {"kind": "rashba", "kappa": 0.5},
            "coupling": {"a": 0.3, "c": 1.0, "d": 0.9},
            "search": {"lo": 0.51, "hi": 12.0},
            "output": {"format": "json"},
        }
        cfg_path = tmp_path / "bs.json"
        cfg_path.write_text(json.dumps(doc))
        outs = []
        for name in ("one.json", "two.json"):
            out = tmp_path / name
            proc = self.run_cli(
                ["bound-states", "--config", str(cfg_path), "--out", str(out)]
            )
            assert proc.returncode == 0, proc.stderr
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]


class TestExitStatus:
    def test_diagnostics_exit_zero(self, tmp_path):
        out = tmp_path / "diag.json"
        code = main(["diagnostics", "--out", str(out), "--seed", "1"])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["all_passed"] is True

    def test_config_error_exit_two(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(make_sweep_config(k_grid=[]))
        out = tmp_path / "never.csv"
        code = main(["reflect-sweep", "--config", str(bad), "--out", str(out)])
        assert code == 2
        payload = json.loads(out.read_text())
        assert payload["error"]["code"] == "empty-grid"

    def test_domain_error_serialized_exit_one(self, tmp_path):
        # probing the renormalized kernel exactly at the spectral bottom
        # is a domain error that must surface as JSON + nonzero exit
        doc = {
            "task": "green-renorm",
            "spin_orbit": {"kind": "rashba", "kappa": 1.0},
            "coupling": {"a": 0.0, "c": 1.0, "d": 0.0},
            "energy_grid": [-1.0],
        }
        cfg = tmp_path / "bottom.json"
        cfg.write_text(json.dumps(doc))
        out = tmp_path / "err.json"
        code = main(["green-renorm", "--config", str(cfg), "--out", str(out)])
        assert code == 1
        payload = json.loads(out.read_text())
        assert payload["error"]["type"] == "DomainError"

    def test_task_mismatch_rejected(self, tmp_path):
        cfg = tmp_path / "sweep.json"
        cfg.write_text(make_sweep_config())
        code = main(["bound-states", "--config", str(cfg), "--out", str(tmp_path / "x.csv")])
        assert code == 2
