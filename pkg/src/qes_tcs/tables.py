"""Deterministic data tables for external plotting tools.

Tables are plain columns: a header row ``rho,<quantity>`` followed by one
row per grid point, every float rendered with ``repr`` so values survive
a write/read round trip bit for bit.  A JSON rendering with the same
content is available for programmatic consumers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .closed_forms import Convention, QesParams, density, potential, wavefunction

QUANTITIES = ("potential", "wavefunction", "density")
SPACINGS = ("linear", "log")
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class TableSpec:
    """What to tabulate and on which grid."""

    quantity: str
    rho_min: float
    rho_max: float
    points: int
    spacing: str = "log"
    format: str = "csv"

    def __post_init__(self) -> None:
        if self.quantity not in QUANTITIES:
            raise ValueError(
                f"unknown quantity {self.quantity!r}, expected one of {QUANTITIES}"
            )
        if self.spacing not in SPACINGS:
            raise ValueError(
                f"unknown spacing {self.spacing!r}, expected one of {SPACINGS}"
            )
        if self.format not in FORMATS:
            raise ValueError(
                f"unknown format {self.format!r}, expected one of {FORMATS}"
            )
        if not self.rho_min > 0.0:
            raise ValueError("rho_min must be positive")
        if not self.rho_min < self.rho_max:
            raise ValueError("rho_min must be smaller than rho_max")
        if self.points < 2:
            raise ValueError("a table needs at least 2 points")

    def grid(self) -> list[float]:
        n = self.points
        if self.spacing == "linear":
            step = (self.rho_max - self.rho_min) / (n - 1)
            pts = [self.rho_min + i * step for i in range(n)]
        else:
            ratio = self.rho_max / self.rho_min
            pts = [self.rho_min * ratio ** (i / (n - 1)) for i in range(n)]
        # close the right endpoint exactly despite rounding in the powers
        pts[-1] = self.rho_max
        return pts


_EVALUATORS = {
    "potential": lambda p, r, conv: potential(p, r, conv),
    "wavefunction": lambda p, r, conv: wavefunction(p, r),
    "density": lambda p, r, conv: density(p, r),
}


def table_rows(
    spec: TableSpec,
    params: QesParams,
    convention: Optional[Convention] = None,
) -> list[tuple[float, float]]:
    """Evaluate the requested quantity on the grid, in grid order."""
    f = _EVALUATORS[spec.quantity]
    return [(rho, f(params, rho, convention)) for rho in spec.grid()]


def render_table(spec: TableSpec, rows: list[tuple[float, float]]) -> str:
    """Serialize rows as CSV or JSON text (trailing newline included)."""
    if spec.format == "csv":
        lines = [f"rho,{spec.quantity}"]
        lines.extend(f"{rho!r},{val!r}" for rho, val in rows)
        return "\n".join(lines) + "\n"
    payload = {
        "quantity": spec.quantity,
        "rho": [rho for rho, _ in rows],
        "values": [val for _, val in rows],
    }
    return json.dumps(payload) + "\n"


def make_table(
    spec: TableSpec,
    params: QesParams,
    convention: Optional[Convention] = None,
) -> str:
    """Convenience wrapper: evaluate and serialize in one call."""
    return render_table(spec, table_rows(spec, params, convention))
