"""Smoke tests for the Python bindings."""

import math

import numpy as np
import pytest

import splitconf as sc


def test_normal_functions():
    assert sc.normal_cdf(0.0) == pytest.approx(0.5)
    assert sc.normal_quantile(0.95) == pytest.approx(1.6448536, abs=1e-6)
    assert sc.normal_cdf(sc.normal_quantile(0.123)) == pytest.approx(0.123, abs=1e-10)
    with pytest.raises(ValueError):
        sc.normal_quantile(1.5)


def test_stream_determinism():
    a = sc.make_stream(42, 0)
    b = sc.make_stream(42, 0)
    assert [a.uniform() for _ in range(5)] == [b.uniform() for _ in range(5)]
    c = sc.make_stream(42, 1)
    assert a.uniform() != c.uniform()


def test_sample_stats():
    mean, var, count = sc.sample_mean_var([1.0, 2.0, 3.0])
    assert mean == pytest.approx(2.0)
    assert var == pytest.approx(1.0)
    assert count == 3


def test_membership_with_numpy_data():
    rng = np.random.default_rng(0)
    x = rng.normal(size=(40, 1))
    y = 2.0 * x[:, 0] + rng.normal(size=40)
    rows = np.column_stack([y, x])

    model = sc.regression_loss(1)
    theta_hat1 = sc.ols_estimator(rows[:20])
    res = sc.contains(sc.make_studentized(0.05), model, theta_hat1, theta_hat1, rows[20:])
    assert res.contained
    assert res.statistic == pytest.approx(0.0)

    res2 = sc.contains(
        sc.make_studentized(0.05), model, np.array([100.0]), theta_hat1, rows[20:]
    )
    assert not res2.contained
    assert res2.statistic > res2.threshold


def test_capability_error():
    rows = np.zeros((10, 1))
    with pytest.raises(sc.CapabilityError):
        sc.contains(
            sc.make_universal(0.05), sc.mean_loss(1), np.zeros(1), np.zeros(1), rows
        )


def test_coverage_engine_smoke():
    config = sc.CoverageConfig()
    dgp = sc.DgpSpec()
    dgp.kind = sc.DgpKind.LinearGaussian
    dgp.n_total = 100
    dgp.dim = 2
    config.dgp = dgp
    config.methods = [sc.make_studentized(0.05), sc.make_universal(0.05, 1.0)]
    config.reps = 25
    config.seed = 11
    report = sc.run_coverage(config)
    assert report.reps == 25
    assert len(report.cells) == 2
    for cell in report.cells:
        assert 0.0 <= cell.coverage <= 1.0
    again = sc.run_coverage(config)
    assert [c.contained for c in report.cells] == [c.contained for c in again.cells]


def test_interval_hull():
    rng = np.random.default_rng(1)
    rows = rng.normal(size=(60, 1))
    model = sc.mean_loss(1)
    hat1 = np.array([float(rows[:30].mean())])
    hull = sc.interval_hull_1d(
        sc.make_studentized(0.05), model, hat1, rows[30:], 3.0, 65
    )
    assert hull.lo <= hat1[0] <= hull.hi
    assert hull.width == pytest.approx(hull.hi - hull.lo)


def test_generate_quantile_holder():
    dgp = sc.DgpSpec()
    dgp.kind = sc.DgpKind.QuantileHolder
    dgp.n_total = 1000
    dgp.dim = 1
    dgp.beta = 1.0
    dgp.gamma = 0.5
    data, true_theta = sc.generate(dgp, sc.make_stream(3, 0))
    assert data.shape == (1000, 1)
    assert true_theta[0] == 0.0
    assert float(np.abs(data).max()) <= 1.0


def test_labels_and_presets():
    assert sc.make_universal(0.05, 1.0).label() == "UI-sigma=1.0"
    assert "fig1-left" in sc.preset_names()
    assert math.isclose(sc.make_naive(0.05).alpha, 0.05)


def test_preset_outputs_are_wellformed(tmp_path):
    import csv
    import xml.etree.ElementTree as ET

    csv_paths, svg_paths = sc.run_preset("manski-coverage", seed=5, reps=2, out_dir=str(tmp_path))
    assert len(csv_paths) == 1 and len(svg_paths) == 1

    with open(csv_paths[0], newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 4
    assert all(0.0 <= float(r["coverage"]) <= 1.0 for r in rows)
    assert rows[0]["method"] == "EmpiricalBernstein"

    root = ET.parse(svg_paths[0]).getroot()
    assert root.tag.endswith("svg")
    polylines = [e for e in root.iter() if e.tag.endswith("polyline")]
    assert len(polylines) == 2  # one series per (method, alpha) cell
