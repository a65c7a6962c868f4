"""Averages as a function of the coupling ratio x = g / sqrt(kappa * gamma)."""

from __future__ import annotations

import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

import numpy as np

from .cavity import resonant_reflection
from .errors import ParameterError
from .metrics import (DEFAULT_NODES_CNOT, DEFAULT_NODES_TOFFOLI, average_cnot,
                      average_toffoli)

COLUMNS = ("x", "log10_x", "r", "F_C", "P_C", "F_T", "P_T")
DEFAULT_RANGE = (0.5, 10.0)
DEFAULT_POINTS = 60


def fmt(v) -> str:
    """12 significant digits, '.' decimal separator."""
    return format(float(v), ".12g")


@dataclass(frozen=True)
class SweepRow:
    x: float
    log10_x: float
    r: float
    F_C: float
    P_C: float
    F_T: float
    P_T: float

    def values(self):
        return tuple(getattr(self, c) for c in COLUMNS)


@dataclass
class SweepTable:
    rows: list
    nodes_cnot: int
    nodes_toffoli: int
    metadata: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(COLUMNS) + "\n")
        for row in self.rows:
            buf.write(",".join(fmt(v) for v in row.values()) + "\n")
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "metadata": {
                "nodes_cnot": self.nodes_cnot,
                "nodes_toffoli": self.nodes_toffoli,
                "node_refinement": "base count times a power of two chosen from |r|",
                **self.metadata,
            },
            "columns": list(COLUMNS),
            # same rounding as the CSV so both encode identical numbers
            "rows": [[float(fmt(v)) for v in row.values()] for row in self.rows],
        }
        return json.dumps(doc, indent=2)

    def column(self, name) -> np.ndarray:
        return np.array([getattr(row, name) for row in self.rows])


def sweep_grid(x_min: float, x_max: float, n_points: int, log_spacing: bool = True):
    if not (math.isfinite(x_min) and math.isfinite(x_max)):
        raise ParameterError("sweep range must be finite")
    if not 0 < x_min < x_max:
        raise ParameterError(f"need 0 < x_min < x_max, got [{x_min}, {x_max}]")
    if n_points < 2:
        raise ParameterError(f"need at least 2 points, got {n_points}")
    if log_spacing:
        return np.geomspace(x_min, x_max, n_points)
    return np.linspace(x_min, x_max, n_points)


def evaluate_point(x: float, nodes_cnot: int = DEFAULT_NODES_CNOT,
                   nodes_toffoli: int = DEFAULT_NODES_TOFFOLI) -> SweepRow:
    r = resonant_reflection(x)
    fc, pc = average_cnot(r, nodes_cnot)
    ft, pt = average_toffoli(r, nodes_toffoli)
    return SweepRow(float(x), math.log10(x) if x > 0 else -math.inf, r, fc, pc, ft, pt)


def _eval(args):
    return evaluate_point(*args)


def sweep(x_min: float = DEFAULT_RANGE[0], x_max: float = DEFAULT_RANGE[1],
          n_points: int = DEFAULT_POINTS, log_spacing: bool = True,
          nodes_cnot: int = DEFAULT_NODES_CNOT,
          nodes_toffoli: int = DEFAULT_NODES_TOFFOLI,
          workers: int = 1) -> SweepTable:
    """All four averages on a grid of coupling ratios.

    With ``workers > 1`` rows are computed in separate processes; the table
    is assembled in grid order either way.
    """
    from . import __version__

    grid = sweep_grid(x_min, x_max, n_points, log_spacing)
    jobs = [(float(x), nodes_cnot, nodes_toffoli) for x in grid]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_eval, jobs))
    else:
        rows = [_eval(j) for j in jobs]
    meta = {
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "version": __version__,
        "spacing": "log" if log_spacing else "linear",
    }
    return SweepTable(rows, nodes_cnot, nodes_toffoli, meta)
