"""Tests for the sweep runner."""

import pytest

from commbench.exceptions import ValidationError
from commbench.schemas import SweepSpec, build_model
from commbench.services.sweep_service import (
    SWEEP_COLUMNS,
    SweepService,
    SweepTask,
    derive_seed,
    run_task,
)


def small_spec(**overrides):
    data = {
        "nodes": [60],
        "communities": [5],
        "pt": [0.5],
        "mu": [0.2, 0.6],
        "instances": 5,
        "base_seed": 7,
    }
    data.update(overrides)
    return build_model(SweepSpec, **data)


def test_derive_seed():
    """Test derive seed."""
    assert derive_seed(42, 0, 0) == derive_seed(42, 0, 0)
    seeds = {derive_seed(42, cell, instance) for cell in range(20) for instance in range(5)}
    assert len(seeds) == 100
    assert all(0 <= seed < 2**64 for seed in seeds)
    assert derive_seed(1, 3, 4) != derive_seed(2, 3, 4)


def test_default_spec_grid():
    """Test default spec grid."""
    spec = SweepSpec()
    assert spec.cell_count == 240
    assert spec.total_runs == 1200
    assert spec.detectors == ["labelprop", "louvain"]
    assert next(iter(spec.cells())) == (1000, 10, 0.1, 0.2)


def test_lite_spec():
    """Test lite spec."""
    spec = SweepSpec.lite(instances=2)
    assert spec.cell_count == 12
    assert spec.instances == 2


@pytest.mark.parametrize(
    "overrides",
    [{"nodes": []}, {"detectors": ["infomap"]}, {"instances": 0}],
)
def test_spec_validation(overrides):
    """Test spec validation."""
    with pytest.raises(ValidationError):
        small_spec(**overrides)


def test_run_task_fills_every_column():
    """Test run task fills every column."""
    task = SweepTask(
        cell=0, instance=0, n=90, sigma=3, pt=0.5, mu=0.2, m=2, seed=5, detectors=["louvain"]
    )
    row = run_task(task)
    assert list(row) == SWEEP_COLUMNS
    assert row["error"] == ""
    assert row["nodes"] == 90
    assert row["nmi_louvain"] is not None
    assert row["nmi_labelprop"] is None
    assert 0.0 <= row["inter_edge_fraction"] <= 1.0


def test_run_rows_and_order():
    """Test run rows and order."""
    spec = small_spec()
    result = SweepService(jobs=1).run(spec)
    assert len(result.rows) == 2 * 5 + 2
    assert result.ok

    assert [row["aggregate"] for row in result.rows] == ([0] * 5 + [1]) * 2
    assert [row["cell"] for row in result.rows] == [0] * 6 + [1] * 6
    assert [row["instance"] for row in result.rows[:5]] == list(range(5))
    assert result.rows[0]["seed"] == derive_seed(7, 0, 0)

    aggregate = result.rows[5]
    instances = result.rows[:5]
    assert aggregate["mu"] == 0.2
    assert aggregate["edges"] == pytest.approx(sum(row["edges"] for row in instances) / 5)


def test_invalid_cell_becomes_failed_rows():
    """Test invalid cell becomes failed rows."""
    spec = small_spec(communities=[5, 30], mu=[0.2])
    result = SweepService(jobs=1).run(spec)
    assert not result.ok
    assert result.failed_runs == 5

    failed = [row for row in result.rows if row["cell"] == 1 and row["aggregate"] == 0]
    assert all("N must be >= 3 * sigma" in row["error"] for row in failed)
    aggregate = result.rows[-1]
    assert aggregate["error"] == "5 of 5 instances failed"
    assert aggregate["edges"] is None

    assert all(row["error"] == "" for row in result.rows[:6])


def test_results_do_not_depend_on_jobs():
    """Test results do not depend on jobs."""
    spec = small_spec(instances=2)
    serial = SweepService(jobs=1).run(spec)
    parallel = SweepService(jobs=2).run(spec)
    assert serial.rows == parallel.rows
