import csv
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from tunnelinfo.cli import (
    MeasureTable,
    RunConfig,
    classify,
    compare_systems,
    load_config,
    main,
    parse_config,
    read_measures,
    run_scenario,
)
from tunnelinfo.errors import ConfigError, IncompatibleSampling, ParseError, ValidationError


def test_empty_config_gives_defaults(tmp_path):
    path = tmp_path / "empty.cfg"
    path.write_text("")
    cfg = load_config(path)
    assert cfg == RunConfig()
    assert (cfg.system, cfg.v0_eV, cfg.v1_eV, cfg.l0_angstrom, cfg.l1_angstrom, cfg.mass_multiple_of_mh) == \
        ("dswp", 0.5, 0.25, 0.672, 0.128, 3.0)
    assert cfg.iswp_params().width == pytest.approx(1.344)


def test_config_values_and_comments():
    cfg = parse_config("""
        # ammonia, excited pair
        pair = excited
        n_times = 33   # samples
        renyi_orders = 0.5, 2
        density_times = 0, 1/4, 7/18
        display_scaled = yes
        output_dir = My Run
    """)
    assert cfg.pair == "excited" and cfg.n_times == 33
    assert cfg.renyi_orders == (0.5, 2.0)
    assert cfg.density_times == (0.0, 0.25, 7 / 18)
    assert cfg.display_scaled is True and cfg.output_dir == "My Run"


@pytest.mark.parametrize("text,key", [
    ("v1_eV = 0.6\nv0_eV = 0.5", "v0_eV/v1_eV"),
    ("n_times = 4", "n_times"),
    ("n_grid = 100", "n_grid"),
    ("system = harmonic", "system"),
    ("renyi_orders = 1", "renyi_orders"),
    ("colour = blue", "colour"),
    ("system = iswp\npair = excited", "pair"),
])
def test_validation_errors(text, key):
    with pytest.raises(ValidationError) as info:
        parse_config(text)
    assert info.value.key == key


@pytest.mark.parametrize("text,line,column", [
    ("n_times = 65\njust words", 2, 1),
    ("n_times = sixty", 1, 11),
    ("  = 3", 1, 1),
    ("n_grid = 4001\nn_grid = 4001", 2, 1),
    ("display_scaled = maybe", 1, 18),
    ("n_times =", 1, 10),
])
def test_parse_errors(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_config(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.cfg")


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture(scope="module")
def small_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("run")
    cfg = RunConfig(n_times=21, n_grid=513, output_dir=str(out),
                    density_times=(0.0, 0.25, 0.5))
    return cfg, run_scenario(cfg)


def test_run_outputs(small_run):
    cfg, manifest = small_run
    out = cfg.output_dir
    assert set(manifest.files) == {"eigen.csv", "densities_position.csv", "densities_momentum.csv",
                                   "measures.csv", "fit.csv"}
    assert manifest.verify(out)
    eig = _rows(f"{out}/eigen.csv")
    assert float(eig[0]["energy_eV"]) == pytest.approx(-0.4831090, abs=1e-6)
    assert eig[0]["parity"] == "even" and eig[0]["label"] == "0S"
    meas = _rows(f"{out}/measures.csv")
    assert len(meas) == 21
    assert all(float(r["S_T_nat"]) >= 2.144729 for r in meas)
    fit = _rows(f"{out}/fit.csv")
    assert [r["name"] for r in fit] == ["S_T=ln(poly)", "I_T=exp(poly)"]
    assert float(fit[0]["reference_alpha0"]) == 8.81379
    dens = _rows(f"{out}/densities_position.csv")
    assert len(dens) == 3 * 513 and "rho_scaled" not in dens[0]
    saved = json.loads(open(f"{out}/manifest.json").read())
    assert saved["files"] == manifest.files
    assert saved["summary"]["bohr_frequency_GHz"] == pytest.approx(23.76, rel=5e-3)


def test_csv_number_format(small_run):
    cfg, _ = small_run
    with open(f"{cfg.output_dir}/measures.csv") as fh:
        header = fh.readline().strip().split(",")
        first = fh.readline().strip().split(",")
    assert header[:3] == ["t_over_T", "omega_t_rad", "mean_x_m"]
    mantissa = first[2].split("e")[0].lstrip("-")
    assert len(mantissa.replace(".", "")) == 17


def test_deterministic_bytes(small_run, tmp_path):
    cfg, manifest = small_run
    from dataclasses import replace
    again = run_scenario(replace(cfg, output_dir=str(tmp_path)))
    assert again.files == manifest.files


def test_scaled_columns(tmp_path):
    cfg = RunConfig(system="iswp", n_grid=300, output_dir=str(tmp_path), display_scaled=True,
                    density_times=(0.0,))
    run_scenario(cfg, stages=("eigen", "evolve"))
    rows = _rows(tmp_path / "densities_momentum.csv")
    r = rows[10]
    assert float(r["n_1e-11m"]) == pytest.approx(float(r["n_m"]) * 1e11)
    assert float(r["k_1e11_per_m"]) == pytest.approx(float(r["k_per_m"]) / 1e11)
    eig = _rows(tmp_path / "eigen.csv")
    assert eig[0]["label"] == "psi1" and eig[0]["phase_rad"] == "nan"


def test_fit_needs_quarter_samples(tmp_path):
    with pytest.raises(ValidationError):
        run_scenario(RunConfig(n_times=9, output_dir=str(tmp_path)))


def test_unwritable_output(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(ValidationError):
        run_scenario(RunConfig(output_dir=str(blocker / "sub")), stages=("eigen",))


def _table(s_t, i_t, label=""):
    t = np.linspace(0, 1, len(s_t))
    return MeasureTable(t, np.asarray(s_t, float), np.asarray(i_t, float), label)


T = np.linspace(0, 1, 65)
WAVE = np.sin(2 * np.pi * T) ** 2     # peaks at T/4 and 3T/4


def test_classify_synthetic():
    # single hump per half period in both measures
    a = _table(2.18 + 0.4 * WAVE, 4.5 + 50 * WAVE, "double")
    assert classify(a)["class"] == "tunneling signature"
    assert classify(a)["S_T"]["maxima"] == [0.25]
    # S_T dips at T/4 between two shoulders, I_T wobbles
    b = _table(2.3 + WAVE - 1.5 * WAVE ** 2, 6 + np.cos(4 * np.pi * T) + 0.1 * np.cos(8 * np.pi * T), "box")
    cb = classify(b)
    assert cb["class"] == "fluctuation pattern"
    assert cb["S_T"]["minima"] == [0.25]
    assert compare_systems(a, b)["verdict"] == "tunneling signature present in double only"
    assert compare_systems(a, a)["verdict"] == "no discriminating difference"


def test_compare_incompatible():
    a = _table(np.ones(65), np.ones(65))
    b = _table(np.ones(33), np.ones(33))
    with pytest.raises(IncompatibleSampling):
        compare_systems(a, b)


def test_read_measures_round_trip(small_run):
    cfg, _ = small_run
    tab = read_measures(cfg.output_dir)
    assert len(tab.t_over_T) == 21 and tab.s_t[0] > 2.144729


def test_main_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("n_times = 4\n")
    assert main(["eigen", "--config", str(bad), "-q"]) == 2
    assert main(["eigen", "--out", str(tmp_path / "e"), "-q"]) == 0
    assert (tmp_path / "e" / "eigen.csv").exists()
    assert main(["fit", "--times", "9", "--out", str(tmp_path / "f"), "-q"]) == 2
    # a window without sub-barrier states is a numerical failure
    shallow = tmp_path / "shallow.cfg"
    shallow.write_text("v0_eV = 0.5\nv1_eV = 0.499\nl0_angstrom = 0.14\n")
    assert main(["eigen", "--config", str(shallow), "--out", str(tmp_path / "s"), "-q"]) == 3
    assert "[eigen]" in capsys.readouterr().err


def test_bound_violation_exit_code(tmp_path, monkeypatch):
    import tunnelinfo.infomeasures as im
    monkeypatch.setattr(im, "EUR_BOUND", 100.0)
    assert main(["measures", "--times", "8", "--grid", "300", "--out", str(tmp_path), "-q"]) == 4


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "tunnelinfo", "eigen", "--system", "iswp",
                           "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "eigen.csv").exists()
