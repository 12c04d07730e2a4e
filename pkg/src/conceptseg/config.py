"""Pipeline parameters and their flat ``key = value`` file form."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .errors import InputError


@dataclass(frozen=True)
class PipelineConfig:
    min_pair_freq: int = 2
    window: int = 5
    term_fraction: Fraction = Fraction(1, 2)
    k: int = 4
    max_iter: int = 100
    min_share: Fraction = Fraction(1, 2)
    seed: int | None = None
    corpus: str | None = None
    out_dir: str | None = None

    def __post_init__(self) -> None:
        for name in ("term_fraction", "min_share"):
            object.__setattr__(self, name, _fraction(name, getattr(self, name)))
        for name in ("min_pair_freq", "window", "k", "max_iter"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise InputError(f"{name} must be an integer >= 1, got {value!r}")
        if not 0 < self.term_fraction <= 1:
            raise InputError(f"term_fraction must lie in (0, 1], got {self.term_fraction}")
        if not 0 < self.min_share <= 1:
            raise InputError(f"min_share must lie in (0, 1], got {self.min_share}")
        if self.seed is not None and (isinstance(self.seed, bool) or not isinstance(self.seed, int)):
            raise InputError(f"seed must be an integer, got {self.seed!r}")

    def updated(self, overrides: Mapping[str, Any]) -> "PipelineConfig":
        """Copy with every non-``None`` override applied."""
        known = {f.name for f in fields(self)}
        changes = {k: v for k, v in overrides.items() if v is not None and k in known}
        return replace(self, **changes)

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            if value is not None:
                lines.append(f"{f.name} = {value}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, source: str = "<config>") -> "PipelineConfig":
        values: dict[str, Any] = {}
        known = {f.name for f in fields(cls)}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip().replace("-", "_")
            value = value.strip()
            if not sep:
                raise InputError(f"{source}:{lineno}: expected key = value")
            if key not in known:
                raise InputError(f"{source}:{lineno}: unknown config key {key!r}")
            values[key] = _coerce(key, value, f"{source}:{lineno}")
        return cls(**values)

    @classmethod
    def load(cls, path: str | Path) -> "PipelineConfig":
        path = Path(path)
        return cls.from_text(path.read_text(encoding="utf-8"), source=str(path))


def _fraction(name: str, value: Any) -> Fraction:
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"{name} must be a number or a ratio like 1/2, got {value!r}") from None


def _coerce(key: str, value: str, where: str) -> Any:
    if key in ("term_fraction", "min_share"):
        return _fraction(key, value)
    if key in ("corpus", "out_dir"):
        return value
    try:
        return int(value)
    except ValueError:
        raise InputError(f"{where}: {key} must be an integer, got {value!r}") from None


def read_rename_map(path: str | Path) -> dict[str, str]:
    """Parse ``old = new`` lines into a term rename map."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        old, sep, new = line.partition("=")
        if not sep or not old.strip() or not new.strip():
            raise InputError(f"{path}:{lineno}: expected old = new")
        out[old.strip()] = new.strip()
    return out
