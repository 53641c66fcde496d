"""Test configuration loading and the IgEuler facade"""

import json
import math

import pytest

from igeuler import IgEuler
from igeuler.cli.schema import FieldFamilyConfig, RunConfig, SuiteSettings
from igeuler.geometry import LineNH
from igeuler.igeuler import (
    ConfigError,
    config_hash,
    create_profile,
    default_config_path,
    load_config,
    save_config,
)
from igeuler.utils.types import ProfileKind, SampleObject, SuiteName
from igeuler.verify.suites import DEFAULT_TOLERANCES


@pytest.fixture(scope="module")
def poly_app():
    family = FieldFamilyConfig(kind=ProfileKind.POLYNOMIAL, pressure_degree=32)
    return IgEuler.from_family(family, jobs=1)


def test_default_config_matches_models():
    assert default_config_path().is_file()
    assert load_config() == RunConfig()


def test_config_resolution(tmp_path, monkeypatch):
    custom = RunConfig(seed=11, family=FieldFamilyConfig(kind=ProfileKind.ZERO))
    path = tmp_path / "run.json"
    save_config(custom, path)
    assert load_config(path) == custom

    monkeypatch.setenv("IGEULER_CONFIG", str(path))
    assert load_config().seed == 11
    assert config_hash(load_config()) == config_hash(custom)
    assert config_hash(custom) != config_hash(RunConfig())


def test_config_errors(tmp_path):
    with pytest.raises(ConfigError, match="Cannot read"):
        load_config(tmp_path / "missing.json")

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"suites": {"tolerances": {"nonsense": 1.0}}}))
    with pytest.raises(ConfigError, match="Unknown tolerance keys"):
        load_config(bad)

    bad.write_text(json.dumps({"suites": {"kernel_ranks": [3]}}))
    with pytest.raises(ConfigError, match="Invalid configuration"):
        load_config(bad)


def test_tolerances_merge_with_defaults():
    settings = SuiteSettings(tolerances={"main_pde": 1e-3})
    assert settings.tolerances["main_pde"] == 1e-3
    assert settings.tolerances["lemma31"] == DEFAULT_TOLERANCES["lemma31"]
    with pytest.raises(ValueError, match="positive"):
        SuiteSettings(tolerances={"main_pde": 0.0})


def test_create_profile():
    assert create_profile(ProfileKind.BUMP).name.startswith("bump")
    assert create_profile(ProfileKind.POLYNOMIAL, 2.0).support_radius == pytest.approx(2.0)
    assert create_profile(ProfileKind.ZERO).name == "zero"


def test_functions_on_lines(poly_app):
    line = LineNH(0.0, 0.0, 0.0, 0.0)
    assert poly_app.scalar_field().rank == 0
    assert poly_app.xray_p().provenance.startswith("xray")
    assert poly_app.iq_zero().provenance == "IQ0"
    # ∫ t²(1 − t²)⁸ dt over the vertical diameter
    expected = math.gamma(1.5) * math.gamma(9) / math.gamma(10.5)
    assert poly_app.xray_vv()(line) == pytest.approx(expected, rel=1e-6)
    assert poly_app.w()(line) == pytest.approx(0.0, abs=1e-7)


def test_sample(poly_app):
    values = poly_app.sample(SampleObject.XRAY, [(0.0, 0.0, 0.0, 0.0), (2.0, 0.0, 0.0, 0.0)])
    assert values == pytest.approx([256 / 315, 0.0])
    planes = poly_app.sample(SampleObject.J, [(0.0, 0.0, 1.5, 0.0)])
    assert planes == pytest.approx([0.0], abs=1e-15)


def test_run_suite(poly_app):
    settings = SuiteSettings(pointwise_points=5, kernel_lines=2, kernel_potentials=1, kernel_ranks=[0, 1])
    reports = poly_app.run_suite(SuiteName.POINTWISE_PDES, settings, seed=2)
    assert len(reports) == 1
    assert reports[0].seed == 2

    app = IgEuler(poly_app.velocity, poly_app.pressure, jobs=1)
    with pytest.raises(ConfigError, match="radial profile"):
        app.run_suite(SuiteName.CONJECTURES_RADIAL, settings)
    assert app.scalar_field() is app.pressure
