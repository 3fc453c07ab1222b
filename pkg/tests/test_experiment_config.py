"""Tests for the experiment config format, N_hat rules and presets."""

import pytest
from pydantic import ValidationError

from app.domain.approximation import Algorithm
from app.domain.experiments import (
    PRESETS,
    ExperimentConfig,
    NHatRule,
    get_preset,
    load_config,
    parse_config,
)
from app.domain.experiments.config import logspace_grid, parse_int_list, parse_n_grid
from app.infra.config import settings

CONFIG_TEXT = """
# burst noise, three pipelines
target = runge
noise = burst(hi=1, lo=1e-5, a=0, b=0.1)
algorithms = noisy, weighted_known, hetero
n_grid = logspace(1000, 100000, 5)
trials = 3
n_hat_rule = sqrt
r = 0.1
master_seed = 42
"""


def test_parse_config():
    config = parse_config(CONFIG_TEXT)
    assert config.target == "runge"
    assert config.noise == "burst(hi=1, lo=1e-05, a=0, b=0.1)"
    assert config.algorithms == [Algorithm.NOISY, Algorithm.WEIGHTED_KNOWN, Algorithm.HETERO]
    assert config.n_grid == [1000, 3162, 10000, 31623, 100000]
    assert config.trials == 3
    assert config.master_seed == 42
    assert config.sup_resolution == settings.sup_resolution


def test_render_round_trips():
    config = parse_config(CONFIG_TEXT)
    assert parse_config(config.render()) == config


def test_render_round_trips_with_n_hat_grid():
    config = parse_config("n_grid = 1000\nalgorithms = hetero\nn_hat_grid = 10, 20\n")
    again = parse_config(config.render())
    assert again == config
    assert again.n_hats_for(1000) == [10, 20]


def test_defaults_are_canonical():
    defaulted = ExperimentConfig(n_grid=[1000])
    explicit = ExperimentConfig(n_grid=[1000], noise="right_half", target="runge")
    assert defaulted.noise == "burst(hi=1, lo=1e-05, a=0, b=1)"
    assert defaulted == explicit
    assert parse_config(defaulted.render()) == defaulted


def test_defaults():
    config = ExperimentConfig()
    assert config.algorithms == [Algorithm.NOISY, Algorithm.WEIGHTED_KNOWN]
    assert config.n_grid[0] == 100
    assert config.n_grid[-1] == 1_000_000
    assert config.trials == 50
    assert config.r == settings.presample_fraction
    assert config.master_seed == settings.master_seed


def test_comments_and_blank_lines_ignored():
    config = parse_config("\n\n  # header\nn_grid = 100, 50  # two sizes\nalgorithms = noisy\n")
    assert config.n_grid == [50, 100]


def test_load_config(tmp_path):
    path = tmp_path / "sweep.cfg"
    path.write_text(CONFIG_TEXT, encoding="utf-8")
    assert load_config(path) == parse_config(CONFIG_TEXT)


@pytest.mark.parametrize(
    "text, message",
    [
        ("colour = red", "unknown key"),
        ("trials = 2\ntrials = 3", "duplicate key"),
        ("trials =", "empty value"),
        ("trials 3", "expected 'key = value'"),
    ],
)
def test_malformed_lines(text, message):
    with pytest.raises(ValueError, match=message):
        parse_config(text)


@pytest.mark.parametrize(
    "text",
    [
        "noise = pink",
        "target = sinc",
        "algorithms = magic",
        "trials = 0",
        "n_grid = 5",
        "r = 1.5",
        "dependence = shared(w=2)",
        "distribution = cauchy",
        "n_hat_rule = fixed(0)",
        "sup_resolution = 1",
    ],
)
def test_invalid_values(text):
    with pytest.raises(ValueError):
        parse_config(text)


def test_hetero_precondition_checked_up_front():
    with pytest.raises(ValidationError, match="m >= 2"):
        parse_config("algorithms = hetero\nn_grid = 100\n")


def test_noisy_only_config_skips_n_hat_checks():
    config = parse_config("algorithms = noisy\nn_grid = 10\nn_hat_rule = fixed(50)\n")
    assert config.n_grid == [10]


def test_n_hat_above_budget_rejected():
    with pytest.raises(ValueError, match="not in \\[1, N\\]"):
        parse_config("algorithms = weighted_known\nn_grid = 10\nn_hat_rule = fixed(50)\n")


def test_duplicate_algorithms_collapse():
    config = ExperimentConfig(algorithms=["noisy", "noisy", "hetero"], n_grid=[10_000])
    assert config.algorithms == [Algorithm.NOISY, Algorithm.HETERO]


def test_labels_are_canonical():
    config = ExperimentConfig(noise="burst(1, 1e-5, 0, 0.1)", dependence="shared(0.5)")
    assert config.noise == "burst(hi=1, lo=1e-05, a=0, b=0.1)"
    assert config.dependence == "shared(w=0.5)"
    assert config.noise_field().dependence.weight == 0.5


# --- N_hat rules ---


def test_n_hat_rules():
    assert NHatRule.parse("sqrt").resolve(10_000) == 100
    assert NHatRule.parse("sqrt").resolve(99) == 9
    assert NHatRule.parse("fixed(64)").resolve(10**6) == 64
    assert NHatRule.parse("factor(0.5)").resolve(10_000) == 50
    assert NHatRule.parse("factor(0.01)").resolve(100) == 1


@pytest.mark.parametrize("expr", ["sqrt", "fixed(64)", "factor(0.5)"])
def test_n_hat_rule_render(expr):
    assert NHatRule.parse(expr).render() == expr


@pytest.mark.parametrize("expr", ["fixed(2.5)", "factor(-1)", "cube"])
def test_invalid_n_hat_rules(expr):
    with pytest.raises(ValueError):
        NHatRule.parse(expr)


# --- grids ---


def test_logspace_grid():
    assert logspace_grid(100, 1e6, 5) == [100, 1000, 10000, 100000, 1000000]
    assert logspace_grid(10, 12, 10) == [10, 11, 12]
    with pytest.raises(ValueError):
        logspace_grid(0, 10, 3)


def test_parse_n_grid():
    assert parse_n_grid("logspace(100, 1e4, 3)") == [100, 1000, 10000]
    assert parse_n_grid("300, 100, 100") == [100, 300]
    with pytest.raises(ValueError):
        parse_n_grid("100, 2.5")


def test_parse_int_list():
    assert parse_int_list("1, 2,3,") == [1, 2, 3]
    with pytest.raises(ValueError, match="Empty"):
        parse_int_list(" , ")


# --- presets ---


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_validate(name):
    desk = get_preset(name)
    full = get_preset(name, full_scale=True)
    assert len(full.n_grid) >= len(desk.n_grid)
    assert full.trials >= desk.trials


def test_unknown_preset():
    with pytest.raises(ValueError, match="Unknown preset"):
        get_preset("nope")


def test_presample_preset_uses_strong_burst():
    config = get_preset("presample-consistency")
    assert config.noise == "burst(hi=10, lo=1e-05, a=0, b=1)"
    assert len(config.n_grid) == 20
    assert config.trials == 100
