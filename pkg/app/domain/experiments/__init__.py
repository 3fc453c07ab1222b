"""Experiment harness: configs, sweeps, summaries, dumps, bound tables and checks."""

from app.domain.experiments.allocation import allocation_dump, error_profile, node_noise_dump
from app.domain.experiments.bounds import BOUND_KINDS, BoundTableSpec, bound_table
from app.domain.experiments.checks import (
    dependent_bound_check,
    proportion_exceedance,
    sample_variance_exceedance,
)
from app.domain.experiments.config import (
    ExperimentConfig,
    NHatRule,
    load_config,
    parse_config,
)
from app.domain.experiments.export import write_csv, write_gnuplot
from app.domain.experiments.presets import PRESETS, get_preset
from app.domain.experiments.runtime import fit_linear_time, runtime_study
from app.domain.experiments.summary import summarize, summary_columns
from app.domain.experiments.sweep import RECORD_COLUMNS, TrialRecord, run_sweep

__all__ = [
    "BOUND_KINDS",
    "PRESETS",
    "RECORD_COLUMNS",
    "BoundTableSpec",
    "ExperimentConfig",
    "NHatRule",
    "TrialRecord",
    "allocation_dump",
    "bound_table",
    "dependent_bound_check",
    "error_profile",
    "fit_linear_time",
    "get_preset",
    "load_config",
    "node_noise_dump",
    "parse_config",
    "proportion_exceedance",
    "run_sweep",
    "runtime_study",
    "sample_variance_exceedance",
    "summarize",
    "summary_columns",
    "write_csv",
    "write_gnuplot",
]
