"""Call-expression grammar shared by target and noise specs: ``name(arg, key=value)``."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

_CALL_PATTERN = re.compile(
    r"^\s*([a-z_][a-z0-9_]*)"  # name
    r"\s*(?:\((.*)\))?\s*$",  # optional (args)
    re.IGNORECASE,
)

_KEYWORD_PATTERN = re.compile(r"^\s*([a-z_][a-z0-9_]*)\s*=\s*(.+?)\s*$", re.IGNORECASE)


@dataclass
class CallSpec:
    """A parsed ``name(a, b, key=value)`` expression."""

    original: str
    name: str
    args: list[float] = field(default_factory=list)
    kwargs: dict[str, float] = field(default_factory=dict)

    def value(self, key: str, index: int, default: float | None = None) -> float:
        """Keyword ``key``, else positional ``index``, else ``default``."""
        if key in self.kwargs:
            return self.kwargs[key]
        if index < len(self.args):
            return self.args[index]
        if default is None:
            raise ValueError(f"{self.name}() needs argument {key!r}")
        return default

    def render(self) -> str:
        parts = [_format_number(a) for a in self.args]
        parts += [f"{k}={_format_number(v)}" for k, v in self.kwargs.items()]
        if not parts:
            return self.name
        return f"{self.name}({', '.join(parts)})"


def _format_number(value: float) -> str:
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def _parse_number(token: str, expr: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ValueError(f"Invalid number {token.strip()!r} in {expr!r}") from None


def parse_call(expr: str) -> CallSpec:
    """Parse a call expression into its name, positional and keyword numbers.

    Raises:
        ValueError: If the expression is empty or malformed.
    """
    if not expr or not expr.strip():
        raise ValueError("Empty expression")
    match = _CALL_PATTERN.match(expr)
    if match is None:
        raise ValueError(f"Invalid expression: {expr}")
    name = match.group(1).lower()
    body = match.group(2)
    spec = CallSpec(original=expr.strip(), name=name)
    if body is None or not body.strip():
        return spec
    for token in body.split(","):
        kw = _KEYWORD_PATTERN.match(token)
        if kw:
            key = kw.group(1).lower()
            if key in spec.kwargs:
                raise ValueError(f"Duplicate argument {key!r} in {expr!r}")
            spec.kwargs[key] = _parse_number(kw.group(2), expr)
        else:
            if spec.kwargs:
                raise ValueError(f"Positional argument after keyword in {expr!r}")
            spec.args.append(_parse_number(token, expr))
    return spec
