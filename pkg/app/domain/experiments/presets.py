"""Named experiment presets, each with a desk-scale and a full-scale variant."""

from __future__ import annotations

from collections.abc import Callable

from app.domain.approximation import Algorithm
from app.domain.experiments.config import ExperimentConfig, logspace_grid

NOISY = Algorithm.NOISY
KNOWN = Algorithm.WEIGHTED_KNOWN
REPEAT = Algorithm.REPEAT_UNIFORM
HETERO = Algorithm.HETERO


def _sweep(
    noise: str,
    algorithms: list[Algorithm],
    lo: float,
    hi: float,
    full: bool,
    desk_points: int = 40,
    full_points: int = 200,
    desk_trials: int = 50,
    full_trials: int = 50,
) -> ExperimentConfig:
    return ExperimentConfig(
        target="runge",
        noise=noise,
        algorithms=algorithms,
        n_grid=logspace_grid(lo, hi, full_points if full else desk_points),
        trials=full_trials if full else desk_trials,
    )


def _single(
    noise: str,
    algorithms: list[Algorithm],
    N: int,
    n_hats: list[int] | None,
    desk_trials: int,
    full_trials: int,
    full: bool,
) -> ExperimentConfig:
    return ExperimentConfig(
        target="runge",
        noise=noise,
        algorithms=algorithms,
        n_grid=[N],
        n_hat_grid=n_hats,
        trials=full_trials if full else desk_trials,
    )


PRESETS: dict[str, Callable[[bool], ExperimentConfig]] = {
    # convergence of known-sigma weighting against the plain pipeline
    "burst-convergence": lambda full: _sweep("right_half", [NOISY, KNOWN], 1e2, 1e6, full),
    "edge-spike": lambda full: _sweep("edge_spike", [NOISY, KNOWN], 1e2, 1e6, full),
    "known-vs-noisy": lambda full: _single(
        "right_half", [NOISY, KNOWN], 10**6, [1000], 100, 200, full
    ),
    "redistribution": lambda full: _single(
        "right_half", [KNOWN, REPEAT], 10**6, [1000], 200, 200, full
    ),
    "three-way-sin3": lambda full: _sweep("sin3", [NOISY, KNOWN, HETERO], 1e3, 1e6, full),
    "three-way-right-half": lambda full: _sweep(
        "right_half", [NOISY, KNOWN, HETERO], 1e3, 1e6, full
    ),
    "three-way-edge-spike": lambda full: _sweep(
        "edge_spike", [NOISY, KNOWN, HETERO], 1e3, 1e6, full
    ),
    "presample-consistency": lambda full: _sweep(
        "right_half_10", [NOISY, KNOWN, HETERO], 1e3, 1e6, full,
        desk_points=20, desk_trials=100, full_trials=500,
    ),
    "burst-headline": lambda full: _single(
        "narrow_burst", [NOISY, HETERO], 10**4, None, 50, 200, full
    ),
    "nhat-choice": lambda full: _single(
        "right_half", [HETERO], 10**6, [50, 100, 1000, 10000], 20, 100, full
    ),
    "homoskedastic-scaling": lambda full: _sweep(
        "constant(0.1)", [NOISY], 1e3, 1e6, full, desk_points=20
    ),
}


def get_preset(name: str, full_scale: bool = False) -> ExperimentConfig:
    try:
        builder = PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ValueError(f"Unknown preset {name!r}; choose one of: {known}") from None
    return builder(full_scale)
