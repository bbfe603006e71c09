"""Projected subgradient methods with Nesterov extrapolation.

Thin python surface over the C++ core: stepsize schedules, prox and
projection steps, the experiment runner, and trace utilities.
"""

from ._nsopt import (
    composite_step_general,
    composite_step_strong,
    extrapolate,
    parse_libsvm,
    parse_libsvm_text,
    project_l2_ball,
    prox_l1,
    rate_fit,
    run_experiment,
    schedule_violations,
    sparsity_pct,
    step_general,
    step_strong,
    strong_projection_step,
    theta_fista_next,
    theta_general,
    theta_strong,
)

__all__ = [
    "composite_step_general",
    "composite_step_strong",
    "extrapolate",
    "parse_libsvm",
    "parse_libsvm_text",
    "project_l2_ball",
    "prox_l1",
    "rate_fit",
    "run_experiment",
    "schedule_violations",
    "sparsity_pct",
    "step_general",
    "step_strong",
    "strong_projection_step",
    "theta_fista_next",
    "theta_general",
    "theta_strong",
]

__version__ = "0.1.0"
