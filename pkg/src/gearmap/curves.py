"""Labelled polylines and their JSON / CSV / SVG serializations."""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

SCHEMA_VERSION = 1
ROLES = ("boundary-edge", "mesh-line", "level-curve")


@dataclass(frozen=True)
class Curve:
    label: str
    role: str
    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown curve role {self.role!r}")
        if not np.all(np.isfinite(np.asarray(self.points, dtype=float))):
            raise ValueError(f"curve {self.label!r} has non-finite coordinates")

    @classmethod
    def from_complex(cls, label: str, role: str, w) -> "Curve":
        w = np.asarray(w, dtype=complex).ravel()
        return cls(label, role, tuple((float(x.real), float(x.imag)) for x in w))

    def as_complex(self) -> np.ndarray:
        p = np.asarray(self.points, dtype=float).reshape(-1, 2)
        return p[:, 0] + 1j * p[:, 1]


@dataclass
class CurveSet:
    curves: list[Curve] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, label: str, role: str, w) -> None:
        self.curves.append(Curve.from_complex(label, role, w))

    def ordered(self) -> list[Curve]:
        return sorted(self.curves, key=lambda c: (c.role, c.label))

    def by_label(self, label: str) -> Curve:
        for c in self.curves:
            if c.label == label:
                return c
        raise KeyError(label)

    def labels(self) -> list[str]:
        return [c.label for c in self.ordered()]

    def to_dict(self) -> dict:
        meta = {"schema_version": SCHEMA_VERSION, **self.meta}
        curves = [{"label": c.label, "role": c.role, "points": [list(p) for p in c.points]} for c in self.ordered()]
        return {"meta": meta, "curves": curves}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "CurveSet":
        d = json.loads(text)
        meta = dict(d["meta"])
        if meta.pop("schema_version", None) != SCHEMA_VERSION:
            raise ValueError("unsupported CurveSet schema version")
        curves = [Curve(c["label"], c["role"], tuple(tuple(p) for p in c["points"])) for c in d["curves"]]
        return cls(curves, meta)

    def to_csv(self) -> dict[str, str]:
        """One two-column CSV text per curve, keyed by a filesystem-safe label."""
        out = {}
        for c in self.ordered():
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["x", "y"])
            w.writerows([repr(x), repr(y)] for x, y in c.points)
            out[re.sub(r"[^A-Za-z0-9_.=+-]", "_", c.label)] = buf.getvalue()
        return out

    def to_svg(self, size: int = 600) -> str:
        pts = [np.asarray(c.points, dtype=float).reshape(-1, 2) for c in self.ordered() if c.points]
        allp = np.vstack(pts) if pts else np.zeros((1, 2))
        lo, hi = allp.min(axis=0), allp.max(axis=0)
        span = max(float((hi - lo).max()), 1e-12)
        pad = 0.03 * span
        vb = f"{lo[0] - pad:.6g} {-hi[1] - pad:.6g} {hi[0] - lo[0] + 2 * pad:.6g} {hi[1] - lo[1] + 2 * pad:.6g}"
        lines = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="{vb}">',
        ]
        stroke = span / 400
        colors = {"boundary-edge": "black", "mesh-line": "steelblue", "level-curve": "darkred"}
        for c, p in zip([c for c in self.ordered() if c.points], pts):
            coords = " ".join(f"{x:.6g},{-y:.6g}" for x, y in p)
            lines.append(
                f'<polyline fill="none" stroke="{colors[c.role]}" stroke-width="{stroke:.3g}" '
                f'points="{coords}"><title>{c.label}</title></polyline>'
            )
        lines.append("</svg>")
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path, fmt: str = "json") -> list[Path]:
        """Write in the given format; CSV writes one file per curve next to ``path``."""
        path = Path(path)
        if fmt == "json":
            path.write_text(self.to_json())
            return [path]
        if fmt == "svg":
            path.write_text(self.to_svg())
            return [path]
        if fmt == "csv":
            written = []
            for name, text in self.to_csv().items():
                p = path.with_name(f"{path.stem}.{name}.csv")
                p.write_text(text)
                written.append(p)
            return written
        raise ValueError(f"unknown format {fmt!r}")
