"""Bundled figure-surrogate parameter sets.

The source material gives no numeric parameters for its plots, so the
package ships its own representative, constraint-satisfying sets: two
per potential class, each paired with a grid on which the probability
density is positive, unimodal and vanishing toward both grid ends.
These numbers are artifact-chosen, not quoted from anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraClass
from .closed_forms import QesParams
from .tables import TableSpec


@dataclass(frozen=True)
class FigurePreset:
    """A named parameter set plus the grid used for its tables."""

    name: str
    params: QesParams
    rho_min: float
    rho_max: float
    points: int = 241

    def table_spec(self, quantity: str = "density", format: str = "csv") -> TableSpec:
        return TableSpec(
            quantity=quantity,
            rho_min=self.rho_min,
            rho_max=self.rho_max,
            points=self.points,
            spacing="log",
            format=format,
        )


# (class, k, tau, b, rho_min, rho_max); all sets paper_regular with
# comfortably normalizable densities
_PRESET_TABLE = (
    ("I", 3.0, 4.0, 1.0, 1e-3, 100.0),
    ("I", 5.0, 8.0, 1.0, 1e-3, 100.0),
    ("II", 3.0, 4.0, 1.0, 1e-3, 200.0),
    ("II", 4.0, 4.0, 2.0, 1e-3, 200.0),
    ("III", 4.0, 5.0, 3.0, 1e-3, 100.0),
    ("III", 4.0, 6.0, 3.0, 1e-3, 100.0),
)


def figure_presets() -> list[FigurePreset]:
    """The shipped presets, in a fixed deterministic order."""
    out = []
    for cls, k, tau, b, lo, hi in _PRESET_TABLE:
        params = QesParams(AlgebraClass.parse(cls), k=k, b=b, tau=tau)
        name = f"{cls}-k{k:g}-t{tau:g}-b{b:g}"
        out.append(FigurePreset(name=name, params=params, rho_min=lo, rho_max=hi))
    return out


def preset_by_name(name: str) -> FigurePreset:
    for p in figure_presets():
        if p.name == name:
            return p
    known = ", ".join(p.name for p in figure_presets())
    raise KeyError(f"unknown preset {name!r}; available: {known}")
