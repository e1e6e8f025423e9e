"""Run configuration shared by the CLI and scripts."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from .odecore import DEFAULT_TOL
from .spps import DEFAULT_ORDER, TAIL_TOL

FORMATS = ("json", "csv", "svg")
# config files may use the CLI flag names as well as the field names
ALIASES = {"tol": "ode_tol"}


@dataclass(frozen=True)
class RunConfig:
    ode_tol: float = DEFAULT_TOL
    spps_tail_tol: float = TAIL_TOL
    root_tol: float = 1e-12
    grid: tuple[int, int] = (17, 9)
    edge_samples: int = 64
    spps_order: int = DEFAULT_ORDER
    format: str = "json"

    def __post_init__(self):
        for name in ("ode_tol", "spps_tail_tol", "root_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if len(self.grid) != 2 or min(self.grid) < 2:
            raise ValueError("grid must be two integers >= 2")
        object.__setattr__(self, "grid", tuple(int(g) for g in self.grid))
        if self.edge_samples < 2 or self.spps_order < 1:
            raise ValueError("edge_samples and spps_order must be positive")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        data = {ALIASES.get(k, k).replace("-", "_"): v for k, v in json.loads(Path(path).read_text()).items()}
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        if "grid" in data:
            data["grid"] = tuple(data["grid"])
        return cls(**data)

    def updated(self, **kw) -> "RunConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    def as_dict(self) -> dict:
        d = asdict(self)
        d["grid"] = list(self.grid)
        return d
