"""Smoke tests for the python module: a thin pass over each exposed surface."""

import json
import math

import pytest

import nsopt


def test_schedule_values():
    assert nsopt.theta_general(3) == pytest.approx(0.5)
    assert nsopt.theta_general(0) == 1.0
    assert nsopt.step_general(3) == pytest.approx(0.125)
    assert nsopt.theta_strong(8) == pytest.approx(1.0 / 3.0)
    assert nsopt.step_strong(10, 3.0) == pytest.approx(0.01)
    assert nsopt.theta_fista_next(1.0) == pytest.approx(
        (math.sqrt(5.0) - 1.0) / 2.0
    )


def test_schedule_violations():
    assert nsopt.schedule_violations("general", 10000) == []
    strong = nsopt.schedule_violations("strong", 10000)
    assert strong == [8]


def test_geometry_ops():
    assert nsopt.prox_l1([3.0, -0.5, 0.0], 1.0) == [2.0, 0.0, 0.0]
    p = nsopt.project_l2_ball([3.0, 4.0], 1.0)
    assert p[0] == pytest.approx(0.6)
    assert p[1] == pytest.approx(0.8)
    step = nsopt.composite_step_general([1.0], [1.0], 0.125)
    assert step[0] == pytest.approx(0.875)
    y = nsopt.extrapolate([1.0], [0.0], 0.5, 2.0 / 3.0)
    assert y[0] == pytest.approx(1.25)
    strong = nsopt.strong_projection_step([1.0], [1.0], [0.0], 0.5, 1.0, 2.0)
    assert strong[0] == pytest.approx(1.0)


def test_sparsity_and_rate_fit():
    assert nsopt.sparsity_pct([0.0, 1.0, 0.0, 2.0]) == pytest.approx(50.0)
    ts = [float(2**k) for k in range(14)]
    gaps = [t**-0.5 for t in ts]
    fit = nsopt.rate_fit(ts, gaps, 1.0, 2.0**13)
    assert fit["slope"] == pytest.approx(-0.5, abs=1e-9)
    assert fit["r2"] == pytest.approx(1.0, abs=1e-9)


def test_parse_libsvm_text():
    stats = nsopt.parse_libsvm_text("+1 3:1.5 7:2\n-1 1:1\n")
    assert stats["samples"] == 2
    assert stats["dimension"] == 7
    assert stats["nnz"] == 3


def test_run_experiment_roundtrip():
    config = {
        "problem": {
            "type": "max-affine",
            "dimension": 8,
            "pieces": 6,
            "seed": 3,
            "w0": "unit",
        },
        "solvers": [
            {"name": "nesterov", "kind": "nesterov-psg", "deterministic": True},
            {
                "name": "psg",
                "kind": "psg",
                "schedule": {"kind": "inverse-sqrt", "c": 1.0},
            },
        ],
        "budget": 2000,
        "eval": {"cadence": "geometric", "ratio": 2.0},
        "trials": 2,
        "base_seed": 5,
        "record_walltime": False,
    }
    out = nsopt.run_experiment(json.dumps(config))
    assert set(out) >= {"nesterov", "psg", "resolved_config_json"}
    rows = out["nesterov"]["averaged"]
    assert rows[0]["t"] == 0
    assert rows[-1]["t"] == 2000
    fstar = json.loads(out["resolved_config_json"])["problem"]["derived"][
        "fstar"
    ]
    # the accelerated run ends closer to the optimum than plain psg
    nes_gap = rows[-1]["f_individual"] - fstar
    psg_gap = out["psg"]["averaged"][-1]["f_individual"] - fstar
    assert 0.0 <= nes_gap <= psg_gap
    # identical config, identical numbers
    again = nsopt.run_experiment(json.dumps(config))
    assert again["nesterov"]["averaged"] == rows
