"""Tests for CSV and gnuplot output."""

import math

import numpy as np
import pytest

from app.domain.experiments import write_csv, write_gnuplot
from app.domain.experiments.export import format_value, to_csv_text


def test_format_value():
    assert format_value(0.1) == "0.1"
    assert format_value(np.float64(1 / 3)) == "0.3333333333333333"
    assert format_value(1e-300) == "1e-300"
    assert format_value(math.nan) == "nan"
    assert format_value(True) == "true"
    assert format_value(np.int64(7)) == "7"
    assert format_value(None) == ""
    assert format_value("hetero") == "hetero"


def test_floats_round_trip():
    rng = np.random.default_rng(2)
    for v in rng.standard_normal(100) * 10.0 ** rng.integers(-20, 20, 100):
        assert float(format_value(v)) == v


def test_csv_text_layout():
    rows = [{"a": 1, "b": 0.5}, {"a": 2, "b": 0.25, "extra": "ignored"}]
    assert to_csv_text(rows) == "a,b\n1,0.5\n2,0.25\n"


def test_csv_explicit_columns():
    rows = [{"b": 1.5, "a": "x"}]
    assert to_csv_text(rows, ["a", "b", "c"]) == "a,b,c\nx,1.5,\n"


def test_csv_quotes_commas():
    rows = [{"noise": "burst(hi=1, lo=0)"}]
    assert to_csv_text(rows) == 'noise\n"burst(hi=1, lo=0)"\n'


def test_csv_needs_columns_or_rows():
    with pytest.raises(ValueError, match="zero rows"):
        to_csv_text([])
    assert to_csv_text([], ["a"]) == "a\n"


def test_write_csv_uses_lf_and_utf8(tmp_path):
    path = write_csv([{"x": 1.0, "label": "σ"}], tmp_path / "out" / "rows.csv")
    raw = path.read_bytes()
    assert b"\r\n" not in raw
    assert raw.decode("utf-8") == "x,label\n1.0,σ\n"


def test_gnuplot_script(tmp_path):
    path = write_gnuplot(
        tmp_path / "summary.csv",
        tmp_path / "plot.gp",
        ["noisy", "hetero"],
        title="burst",
        output="plot.png",
    )
    script = path.read_text(encoding="utf-8")
    assert "set logscale xy" in script
    assert 'set output "plot.png"' in script
    assert 'strcol(1) eq "noisy"' in script
    assert 'title "hetero"' in script
    assert script.count('"summary.csv"') == 4


def test_gnuplot_needs_algorithms(tmp_path):
    with pytest.raises(ValueError, match="at least one"):
        write_gnuplot(tmp_path / "s.csv", tmp_path / "p.gp", [])
