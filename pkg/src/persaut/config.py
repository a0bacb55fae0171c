"""Run configuration shared by the study driver and the command line."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, replace

from .autgroup import DEFAULT_ENUM_CAP
from .errors import InputError
from .graph import DEFAULT_TOL
from .search import DEFAULT_NODE_CAP
from .symcurve import DEFAULT_EPS_MAX

FORMATS = ("tsv", "json", "svg")
ENV_PREFIX = "PERSAUT_"


@dataclass(frozen=True)
class RunConfig:
    eps_max: float = DEFAULT_EPS_MAX
    tol: float = DEFAULT_TOL
    enum_cap: int = DEFAULT_ENUM_CAP
    node_cap: int = DEFAULT_NODE_CAP
    out: str = "."
    formats: tuple[str, ...] = FORMATS
    workers: int = 1

    def __post_init__(self):
        if not self.eps_max > 0:
            raise InputError("eps-max must be positive")
        if not self.tol >= 0:
            raise InputError("tol must be non-negative")
        if self.enum_cap < 1 or self.node_cap < 1 or self.workers < 1:
            raise InputError("caps and worker count must be positive")
        bad = [f for f in self.formats if f not in FORMATS]
        if bad:
            raise InputError(f"unknown output format(s) {bad}; choose from {list(FORMATS)}")

    def numeric(self) -> dict:
        """The settings that influence results (output location excluded)."""
        d = asdict(self)
        for k in ("out", "formats", "workers"):
            d.pop(k)
        return d

    def digest(self) -> str:
        blob = json.dumps(self.numeric(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def parse_formats(text: str) -> tuple[str, ...]:
    return tuple(x.strip() for x in text.split(",") if x.strip())


_CASTS = {"eps_max": float, "tol": float, "enum_cap": int, "node_cap": int, "out": str,
          "workers": int, "formats": parse_formats}


def from_sources(flags: dict, environ=None) -> RunConfig:
    """Flags override environment variables (``PERSAUT_EPS_MAX`` etc.), which override defaults.

    ``flags`` maps field names to already-typed values; ``None`` means unset.
    """
    environ = os.environ if environ is None else environ
    values = {}
    for key, cast in _CASTS.items():
        raw = environ.get(ENV_PREFIX + key.upper())
        if raw is not None:
            try:
                values[key] = cast(raw)
            except ValueError:
                raise InputError(f"bad value {raw!r} for {ENV_PREFIX + key.upper()}") from None
    for key, val in flags.items():
        if val is not None:
            values[key] = val
    return replace(RunConfig(), **values)
