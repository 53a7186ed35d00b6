"""Residual-based verification of the derivation chain.

The modules upstream offer two independent routes to the same potential
(the transported algebra-side expression and the closed forms) plus a
candidate zero-energy wavefunction.  This module closes the loop:

* ``radial_residual`` substitutes the closed-form wavefunction into the
  radial equation psi'' + (tau/rho) psi' = 2 V psi and reports a
  scale-free residual, with derivatives taken by second-order jets.
* ``convention_calibrate`` lets the residual vote between the two
  candidate values of the centrifugal-strength constant C.
* ``closed_vs_algebra_diff`` compares the two potential constructions
  pointwise on a grid.

Grids are deterministic lists built in grid order, so repeated runs
produce bitwise-identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .closed_forms import (
    DEFAULT_CONVENTION,
    Convention,
    QesParams,
    potential,
    wavefunction,
)
from .errors import CalibrationError, DomainError
from .jets import eval_jet2
from .pct import algebra_side_potential

RESIDUAL_PASS_THRESHOLD = 1e-8
CALIBRATION_FAIL_THRESHOLD = 1e-4
CALIBRATION_SEPARATION = 1e3


def _log_grid(lo: float, hi: float, n: int) -> list[float]:
    if not (0.0 < lo < hi) or n < 2:
        raise ValueError("log grid needs 0 < lo < hi and n >= 2")
    ratio = hi / lo
    return [lo * ratio ** (i / (n - 1)) for i in range(n)]


def default_residual_grid() -> list[float]:
    """60 log-spaced points on [0.05, 20]."""
    return _log_grid(0.05, 20.0, 60)


def default_calibration_grid() -> list[float]:
    """40 log-spaced points on [0.1, 10]."""
    return _log_grid(0.1, 10.0, 40)


def default_comparison_grid() -> list[float]:
    """60 log-spaced points on [0.1, 10]."""
    return _log_grid(0.1, 10.0, 60)


def radial_residual(
    p: QesParams,
    rho: float,
    convention: Optional[Convention] = None,
    perturbation: float = 0.0,
) -> float:
    """Scale-free residual of the radial equation at one point.

    Returns (psi'' + (tau/rho) psi' - 2 V psi) divided by the largest of
    the three term magnitudes, so the result is invariant under scaling
    of psi and meaningful across many orders of magnitude.  A nonzero
    ``perturbation`` adds perturbation/rho**2 to the potential, which is
    the sensitivity control used by the self-test.
    """
    if rho <= 0.0:
        raise DomainError("rho", rho, "residual defined for rho > 0")
    jet = eval_jet2(lambda t: wavefunction(p, t), rho)
    v = potential(p, rho, convention)
    if perturbation:
        v += perturbation / (rho * rho)
    second = jet.d2
    first = (p.tau / rho) * jet.d1
    source = 2.0 * v * jet.value
    scale = max(abs(second), abs(first), abs(source))
    if scale == 0.0:
        return 0.0
    return (second + first - source) / scale


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of a residual scan over a grid."""

    params: QesParams
    convention: Convention
    grid: tuple[float, ...]
    max_abs_relative_residual: float
    argmax_rho: float
    passed: bool
    threshold: float = RESIDUAL_PASS_THRESHOLD

    def to_json_dict(self) -> dict:
        from . import __version__

        return {
            "class": self.params.cls.short_label,
            "k": self.params.k,
            "b": self.params.b,
            "tau": self.params.tau,
            "convention": self.convention.value,
            "max_residual": self.max_abs_relative_residual,
            "argmax_rho": self.argmax_rho,
            "passed": self.passed,
            "tool_version": __version__,
        }


def residual_scan(
    p: QesParams,
    grid: Optional[Sequence[float]] = None,
    convention: Optional[Convention] = None,
    threshold: float = RESIDUAL_PASS_THRESHOLD,
    perturbation: float = 0.0,
) -> ResidualReport:
    """Scan the radial residual over a grid and report the worst point."""
    pts = default_residual_grid() if grid is None else list(grid)
    conv = DEFAULT_CONVENTION if convention is None else convention
    worst = 0.0
    arg = pts[0]
    for rho in pts:
        r = abs(radial_residual(p, rho, conv, perturbation))
        if r > worst:
            worst, arg = r, rho
    return ResidualReport(
        params=p,
        convention=conv,
        grid=tuple(pts),
        max_abs_relative_residual=worst,
        argmax_rho=arg,
        passed=worst <= threshold,
        threshold=threshold,
    )


def convention_calibrate(
    p: QesParams,
    grid: Optional[Sequence[float]] = None,
    perturbation: float = 0.0,
) -> tuple[Optional[Convention], dict[Convention, float]]:
    """Decide which C convention satisfies the radial equation.

    Evaluates the worst residual for each candidate and returns
    (winner, residuals).  The winner must beat the loser by a factor of
    at least ``CALIBRATION_SEPARATION``; otherwise the result is flagged
    ambiguous by returning ``None`` as the winner.  If both candidates
    exceed ``CALIBRATION_FAIL_THRESHOLD`` the calibration failed outright
    and a CalibrationError carrying both numbers is raised.
    """
    pts = default_calibration_grid() if grid is None else list(grid)
    if len(pts) < 20:
        raise ValueError("calibration grid needs at least 20 points")
    if min(pts) < 0.1 or max(pts) > 10.0:
        raise ValueError("calibration grid must lie inside [0.1, 10]")
    residuals: dict[Convention, float] = {}
    for conv in (Convention.C_PAPER, Convention.C_CHAIN):
        worst = 0.0
        for rho in pts:
            worst = max(worst, abs(radial_residual(p, rho, conv, perturbation)))
        residuals[conv] = worst
    best = min(residuals, key=residuals.__getitem__)
    loser = next(c for c in residuals if c is not best)
    if residuals[best] > CALIBRATION_FAIL_THRESHOLD:
        detail = ", ".join(f"{c.value}={r:.6e}" for c, r in residuals.items())
        where = f"class {p.label}, k={p.k}, b={p.b}, tau={p.tau}"
        raise CalibrationError(
            f"no convention satisfies the radial equation for {where}: {detail}",
            residuals=residuals,
        )
    if residuals[loser] < CALIBRATION_SEPARATION * residuals[best]:
        return None, residuals
    return best, residuals


def closed_vs_algebra_diff(
    p: QesParams,
    grid: Optional[Sequence[float]] = None,
    convention: Optional[Convention] = None,
) -> tuple[float, float]:
    """Worst relative gap between the two potential constructions.

    Returns (max over grid of |V_closed - V_algebra| / (1 + |V_closed|),
    location of the maximum).
    """
    pts = default_comparison_grid() if grid is None else list(grid)
    worst = -1.0
    arg = pts[0]
    for rho in pts:
        vc = potential(p, rho, convention)
        va = algebra_side_potential(p, rho)
        d = abs(vc - va) / (1.0 + abs(vc))
        if d > worst:
            worst, arg = d, rho
    return worst, arg


# acceptance parameter grid as (class, k, tau, b)
_STANDARD_GRID = (
    ("I", 3.0, 4.0, 1.0),
    ("I", 5.0, 8.0, 1.0),
    ("I", 4.0, 5.0, 2.0),
    ("II", 3.0, 4.0, 1.0),
    ("II", 4.0, 4.0, 2.0),
    ("II", 5.0, 6.0, 1.0),
    ("III", 2.0, 5.0, 2.0),
    ("III", 3.0, 5.0, 2.0),
    ("III", 4.0, 6.0, 3.0),
)


def standard_parameter_sets() -> list[QesParams]:
    """The nine-potential grid used by the verification suite."""
    from .algebra import AlgebraClass

    return [
        QesParams(AlgebraClass.parse(c), k=k, b=b, tau=tau)
        for c, k, tau, b in _STANDARD_GRID
    ]
