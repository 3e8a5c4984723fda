"""Run configuration: JSON system description plus output defaults."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import DomainError
from .numeration import QStarSystem, StochasticColumn

FORMATS = ("json", "csv", "plain")


class ConfigError(DomainError):
    pass


def parse_rational(text) -> Fraction:
    """Exact rational from ``"p/q"``, a terminating decimal string, or an int."""
    if isinstance(text, bool) or isinstance(text, float):
        raise ConfigError(f"refusing inexact number {text!r}; write it as a string like \"1/3\"")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ConfigError(f"expected a rational string, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"malformed rational {text!r}") from exc


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def format_decimal(x, precision: int) -> str:
    """Fixed-point rendering rounded half-to-even on the exact value."""
    x = Fraction(x)
    scaled = round(abs(x) * 10**precision)
    sign = "-" if x < 0 and scaled else ""
    whole, frac = divmod(scaled, 10**precision)
    if precision == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{precision}d}"


@dataclass(frozen=True)
class RunConfig:
    system: QStarSystem
    rank: int = 64
    tol: Fraction = Fraction(1, 10**12)
    format: str | None = None
    precision: int = 6

    def __post_init__(self):
        if self.rank < 1:
            raise ConfigError("rank must be >= 1")
        if not self.tol > 0:
            raise ConfigError("tolerance must be > 0")
        if self.precision < 1:
            raise ConfigError("precision must be >= 1")
        if self.format is not None and self.format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}")


def _columns(raw, s: int, what: str) -> tuple[StochasticColumn, ...]:
    if not isinstance(raw, list):
        raise ConfigError(f"{what} must be a list of columns")
    cols = []
    for i, col in enumerate(raw, start=1):
        if not isinstance(col, list):
            raise ConfigError(f"{what} column {i} must be a list")
        if len(col) != s:
            raise ConfigError(f"{what} column {i} has {len(col)} entries, expected s={s}")
        try:
            cols.append(StochasticColumn(tuple(parse_rational(p) for p in col)))
        except DomainError as exc:
            raise ConfigError(f"{what} column {i}: {exc}") from exc
    return tuple(cols)


def system_from_dict(doc: dict) -> QStarSystem:
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    s = doc.get("s")
    if isinstance(s, bool) or not isinstance(s, int) or s < 2:
        raise ConfigError("s must be an integer >= 2")
    prefix = _columns(doc.get("prefix", []), s, "prefix")
    if "period" not in doc:
        raise ConfigError("missing period columns")
    period = _columns(doc["period"], s, "period")
    if not period:
        raise ConfigError("period columns must be nonempty")
    return QStarSystem(s, prefix, period)


def system_to_dict(sys: QStarSystem) -> dict:
    return {
        "s": sys.s,
        "prefix": [[format_rational(p) for p in c.probs] for c in sys.prefix],
        "period": [[format_rational(p) for p in c.probs] for c in sys.period],
    }


def config_from_dict(doc: dict) -> RunConfig:
    system = system_from_dict(doc)
    kwargs = {}
    if "rank" in doc:
        if isinstance(doc["rank"], bool) or not isinstance(doc["rank"], int):
            raise ConfigError("rank must be an integer")
        kwargs["rank"] = doc["rank"]
    if "tol" in doc:
        kwargs["tol"] = parse_rational(doc["tol"])
    if "format" in doc:
        kwargs["format"] = doc["format"]
    if "precision" in doc:
        if isinstance(doc["precision"], bool) or not isinstance(doc["precision"], int):
            raise ConfigError("precision must be an integer")
        kwargs["precision"] = doc["precision"]
    return RunConfig(system, **kwargs)


def load_config(path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc.msg} at line {exc.lineno}") from exc
    return config_from_dict(doc)
