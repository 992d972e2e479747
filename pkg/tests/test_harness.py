import csv
import io
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from kinetic1d.cases import KINDS, CaseConfig, build, template
from kinetic1d.cli import main
from kinetic1d.config import case_from_values, dump_case, load_case, parse_overrides, read_values
from kinetic1d.errors import ConfigError, DomainError
from kinetic1d.harness import (
    ConvergenceReport,
    KnudsenReport,
    convergence_study,
    emit,
    knudsen_sweep,
    l2_error,
    run_case,
    snapshot_csv,
)
from kinetic1d.stability import table1

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def test_l2_error_examples():
    u = np.array([1.0, -2.0, 3.0])
    assert l2_error(u, u) == 0.0
    assert l2_error(2 * u, u) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        l2_error(u, np.zeros(3))
    with pytest.raises(DomainError):
        l2_error(u, u[:2])


def test_l2_error_baseline_measures_the_perturbation():
    ex = 1.0 + 1e-5 * np.sin(np.linspace(0, 6, 20))
    num = ex + 1e-8
    rel = l2_error(num, ex, baseline=1.0)
    assert rel == pytest.approx(1e-8 * np.sqrt(20) / np.linalg.norm(ex - 1.0), rel=1e-6)


def test_convergence_report_rates():
    rep = ConvergenceReport.from_errors([40, 80, 160], [1.6e-3, 1e-4, 2.5e-5])
    assert rep.rows[0][2] is None
    assert rep.rows[1][2] == pytest.approx(4.0)
    assert rep.rows[2][2] == pytest.approx(2.0)


def test_emit_formats():
    assert emit(ConvergenceReport()) == b"N,L2,r\n"
    rep = ConvergenceReport.from_errors([40, 80], [1.234567891234e-4, 3.0e-5])
    lines = emit(rep).decode().splitlines()
    assert lines[0] == "N,L2,r"
    assert lines[1] == "40,0.00012345679,"
    assert lines[2].startswith("80,3e-05,2.04")
    text = emit(rep, "text").decode()
    assert text.splitlines()[0].split() == ["N", "L2", "r"]
    with pytest.raises(DomainError):
        emit(rep, "xml")
    assert emit(KnudsenReport()) == b"a,eps,L2,r\n"


def test_emit_stability_table_shape():
    table = table1()
    rows = list(csv.reader(io.StringIO(emit(table).decode())))
    assert rows[0] == ["order", "space", "M1", "M2", "M3", "M4", "M5", "M6"]
    assert len(rows) == 7
    for row in rows[1:]:
        vals = table[(int(row[0]), int(row[1][2:]))]
        np.testing.assert_allclose([float(v) for v in row[2:]], vals, atol=0.005 + 1e-12)


def test_convergence_study_validation():
    case = template("diffusion", order=2, a=10.0)
    with pytest.raises(DomainError):
        convergence_study(case, [40])
    with pytest.raises(DomainError):
        convergence_study(case, [40, 60])


def test_convergence_study_golden_row():
    rep = convergence_study(template("diffusion", order=2, a=10.0), [40, 80])
    n, err, r = rep.rows[1]
    assert n == 80
    assert err == pytest.approx(2.65664031e-5, rel=1e-6)
    assert r == pytest.approx(2.64, abs=0.005)


def test_constant_data_has_zero_error():
    rep = convergence_study(template("diffusion", amplitude=0.0, t_end=0.01), [20, 40])
    assert [row[1] for row in rep.rows] == [0.0, 0.0]


def test_worker_count_does_not_change_output():
    case = template("diffusion", order=2, a=10.0, t_end=0.02)
    serial = emit(convergence_study(case, [20, 40, 80], jobs=1))
    parallel = emit(convergence_study(case, [20, 40, 80], jobs=2))
    assert serial == parallel


def test_knudsen_sweep_rows():
    rep = knudsen_sweep(template("diffusion", n=100, t_end=0.02), [1.0, 2.0, 4.0])
    assert [row[0] for row in rep.rows] == [1.0, 2.0, 4.0]
    eps = [row[1] for row in rep.rows]
    assert eps == pytest.approx([0.1, 0.05, 0.025])
    assert rep.rows[0][3] is None and rep.rows[2][3] > 0
    with pytest.raises(DomainError):
        knudsen_sweep(template("diffusion"), [])


def test_snapshot_csv_columns():
    pb = build(template("ns-acoustic", n=20, t_end=0.0))
    res = run_case(pb)
    rows = list(csv.reader(io.StringIO(snapshot_csv(pb, res.final).decode())))
    assert rows[0] == ["x", "rho", "j", "E", "rho_exact", "j_exact", "E_exact"]
    assert len(rows) == 21


# ------------------------------------------------------------------ cases and config


def test_every_kind_builds():
    for kind in KINDS:
        pb = build(template(kind, n=41))
        assert pb.u0.shape[1] == 41
    with pytest.raises(ConfigError):
        template("heat")


def test_case_validation_is_a_config_error():
    with pytest.raises(ConfigError):
        build(template("diffusion", n=2))
    with pytest.raises(ConfigError):
        build(template("diffusion", order=3))


def test_shipped_configs_load():
    for path in sorted(CONFIGS.glob("*.ini")):
        case = load_case(path)
        assert isinstance(case, CaseConfig)
        build(case)


def test_config_round_trip():
    case = template("ns-shock", n=301, Ma=3.0, snapshots=(0.01, 0.02))
    assert case_from_values(read_values(dump_case(case))) == case


def test_config_errors():
    with pytest.raises(ConfigError):
        read_values("[a]\nn = 3\n[b]\nn = 4\n")
    with pytest.raises(ConfigError):
        read_values("[a]\nbogus = 1\n")
    with pytest.raises(ConfigError):
        read_values("[a]\nn = 3.5\n")
    with pytest.raises(ConfigError):
        case_from_values({"n": 10})
    with pytest.raises(ConfigError):
        parse_overrides(["n"])
    with pytest.raises(ConfigError):
        load_case("/nonexistent/case.ini")
    assert parse_overrides(["grid.n=64", "cfl=0.5"]) == {"n": 64, "cfl": 0.5}


# ------------------------------------------------------------------ CLI


def test_cli_run_and_exit_codes(tmp_path, capsys):
    out = tmp_path / "snap.csv"
    cfg = str(CONFIGS / "diffusion.ini")
    assert main(["run", cfg, "--n", "40", "--t-end", "0.01", "--output", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "x,u,u_exact"
    assert "L2=" in capsys.readouterr().err
    assert main(["run", cfg, "--set", "bogus=1"]) == 2
    assert main(["run", str(CONFIGS / "advection.ini"), "--a", "5"]) == 3


def test_cli_snapshots(tmp_path):
    cfg = str(CONFIGS / "diffusion.ini")
    snapdir = tmp_path / "snaps"
    code = main(["run", cfg, "--n", "40", "--t-end", "0.02", "--set", "snapshots=0.01",
                 "--output", str(tmp_path / "f.csv"), "--snapshot-dir", str(snapdir)])
    assert code == 0
    assert [p.name for p in snapdir.iterdir()] == ["snapshot_t0.01.csv"]


def test_cli_subprocess_converge_and_stability():
    cmd = [sys.executable, "-m", "kinetic1d"]
    res = subprocess.run(cmd + ["converge", str(CONFIGS / "diffusion.ini"), "--order", "2", "--a", "10",
                                "--meshes", "40,80"], capture_output=True, text=True, check=True)
    assert res.stdout.splitlines()[2].startswith("80,2.6566403e-05,2.644")
    res = subprocess.run(cmd + ["stability", "--table1"], capture_output=True, text=True, check=True)
    assert res.stdout.splitlines()[6] == "4,dx4,0,0,1.26,2.06,0.04,0.62"
    res = subprocess.run(cmd + ["converge", str(CONFIGS / "diffusion.ini"), "--meshes", "40,x"],
                         capture_output=True, text=True)
    assert res.returncode == 2
