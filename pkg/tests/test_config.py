"""Run configuration: validation, round trips, and derived constants."""

import json
import math
from dataclasses import replace
from fractions import Fraction

import pytest

from multicurve.config import Budgets, ConfigError, RunConfig, load_config
from multicurve.hypfun import Constants


def test_defaults_are_valid():
    cfg = RunConfig()
    assert cfg.surface == "S11"
    assert cfg.seed == 20260814
    assert cfg.threads == 1
    assert cfg.epsilon == 0.1
    assert cfg.comparison_c == 4.0
    assert (cfg.c1, cfg.c2) == (0.25, 2.25)
    assert cfg.symmetry_factor == 1.0
    assert cfg.volume_table is None
    assert cfg.bers_bound() == pytest.approx(2 * math.acosh(1.5), rel=1e-15)
    assert cfg.kappa_of() == Fraction(1)


def test_validation_errors():
    with pytest.raises(ConfigError, match="threads"):
        RunConfig(threads=0)
    with pytest.raises(ConfigError, match="epsilon"):
        RunConfig(epsilon=0.0)
    with pytest.raises(ConfigError, match="epsilon"):
        RunConfig(epsilon=1.0)
    with pytest.raises(ConfigError, match="c1"):
        RunConfig(c1=0.0)
    with pytest.raises(ConfigError, match="c1 <= c2"):
        RunConfig(c1=2.0, c2=1.0)
    with pytest.raises(ConfigError, match="comparison_c"):
        RunConfig(comparison_c=0.5)
    with pytest.raises(ConfigError, match="symmetry_factor"):
        RunConfig(symmetry_factor=0.0)
    with pytest.raises(ConfigError, match="exceed epsilon"):
        RunConfig(epsilon=0.5, bers_bounds={"S11": 0.4})


def test_budget_validation():
    with pytest.raises(ConfigError, match="cell_samples"):
        Budgets(cell_samples=0)
    with pytest.raises(ConfigError, match="freq_cap"):
        Budgets(freq_cap=0)
    with pytest.raises(ConfigError, match="bhat_lmax"):
        Budgets(bhat_lmax=5.0)
    with pytest.raises(ConfigError, match="positive"):
        Budgets(lattice_L=0.0)
    b = Budgets(bound_lengths=[10, 20])
    assert b.bound_lengths == (10.0, 20.0)


def test_unknown_surface_lookups():
    cfg = RunConfig()
    with pytest.raises(ConfigError, match="no bers bound"):
        cfg.bers_bound("S99")
    with pytest.raises(ConfigError, match="no kappa"):
        cfg.kappa_of("S04")
    assert cfg.bers_bound("S04") == 4.0


def test_constants_view():
    cfg = RunConfig()
    consts = cfg.constants()
    assert isinstance(consts, Constants)
    assert consts.epsilon == cfg.epsilon
    assert consts.bers_bound == cfg.bers_bound("S11")
    assert consts.comparison_c == cfg.comparison_c
    assert (consts.c1, consts.c2) == (cfg.c1, cfg.c2)
    # per-surface bers bound flows through
    assert cfg.constants("S12").bers_bound == 6.0


def test_provenance_covers_calibrated_constants():
    cfg = RunConfig()
    for key in ("comparison_c", "c1", "c2", "kappa.S11", "symmetry_factor"):
        assert key in cfg.provenance
        assert "calibrated" in cfg.provenance[key]


def test_dict_round_trip():
    cfg = RunConfig(seed=7, threads=3)
    d = cfg.to_dict()
    assert d["seed"] == 7
    assert isinstance(d["budgets"]["bound_lengths"], list)
    again = RunConfig.from_dict(d)
    assert again == cfg
    # json round trip too
    again2 = RunConfig.from_dict(json.loads(json.dumps(d)))
    assert again2 == cfg


def test_from_dict_rejects_unknown_keys():
    with pytest.raises(ConfigError, match="unknown config keys: boost"):
        RunConfig.from_dict({"boost": 2})
    with pytest.raises(ConfigError, match="unknown budget keys: warp"):
        RunConfig.from_dict({"budgets": {"warp": 9}})


def test_save_and_load(tmp_path):
    path = tmp_path / "run.json"
    cfg = RunConfig(seed=99, epsilon=0.05)
    cfg.save(path)
    loaded = load_config(path)
    assert loaded == cfg
    assert loaded.seed == 99 and loaded.epsilon == 0.05


def test_load_config_default_and_errors(tmp_path):
    assert load_config(None) == RunConfig()
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError, match="not valid JSON"):
        load_config(bad)
    arr = tmp_path / "arr.json"
    arr.write_text("[1, 2]")
    with pytest.raises(ConfigError, match="root must be"):
        load_config(arr)


def test_replace_keeps_validation():
    cfg = RunConfig()
    with pytest.raises(ConfigError):
        replace(cfg, epsilon=2.0)
    assert replace(cfg, seed=1).seed == 1
