"""Adaptive half-line integration and normalization verdicts.

A Gauss-Kronrod 7-15 rule drives a greedy, deterministic panel
subdivision.  Two compactifications of (0, inf) are provided: the
rational substitution rho = t/(1-t) (good general-purpose choice,
piles up panels and trips the subdivision cap on divergent tails) and
the logarithmic substitution rho = e**u - 1 (resolves slowly decaying
algebraic tails that the rational map cannot separate in double
precision).  Normalization integrals run the limit-comparison
classifier first and integrate only when it predicts convergence, in
log space so that extreme densities never overflow.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Optional

from .closed_forms import QesParams, asymptotic_exponents, log_density
from .errors import DivergenceSuspected, EvaluationError, InconsistencyError

# Kronrod abscissae (positive half) and weights; Gauss-7 is embedded at
# the odd-indexed abscissae.
_XGK = (
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
)
_WGK = (
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
)
_WG = (
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
)


@dataclass(frozen=True)
class IntegralResult:
    value: float
    abs_error_estimate: float
    subdivisions: int
    converged: bool


def _gk15(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    """One Kronrod panel: (integral estimate, error estimate)."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    resk = 0.0
    resg = 0.0
    for i, x in enumerate(_XGK):
        if x == 0.0:
            fc = f(c)
            resk += _WGK[7] * fc
            resg += _WG[3] * fc
        else:
            f1 = f(c - h * x)
            f2 = f(c + h * x)
            resk += _WGK[i] * (f1 + f2)
            if i % 2 == 1:
                resg += _WG[i // 2] * (f1 + f2)
    value = resk * h
    err = abs(resk - resg) * abs(h)
    if not (math.isfinite(value) and math.isfinite(err)):
        raise EvaluationError(f"non-finite panel on [{a!r}, {b!r}]")
    return value, err


def _adapt(
    f: Callable[[float], float],
    edges: list[float],
    abs_tol: float,
    rel_tol: float,
    max_panels: int,
    context: str,
) -> IntegralResult:
    """Greedy worst-panel-first refinement; fully deterministic."""
    if abs_tol <= 0.0 and rel_tol <= 0.0:
        raise ValueError("at least one of abs_tol, rel_tol must be positive")
    heap: list[tuple[float, int, float, float, float, float]] = []
    counter = 0
    total = 0.0
    total_err = 0.0
    panels = 0
    for a, b in zip(edges, edges[1:]):
        v, e = _gk15(f, a, b)
        panels += 1
        total += v
        total_err += e
        heapq.heappush(heap, (-e, counter, a, b, v, e))
        counter += 1

    def tol() -> float:
        return max(abs_tol, rel_tol * abs(total))

    while total_err > tol():
        if panels >= max_panels:
            raise DivergenceSuspected(
                f"{context}: no convergence after {panels} panels "
                f"(error estimate {total_err:.3e} > tolerance {tol():.3e})",
                partial_value=total,
                error_estimate=total_err,
                subdivisions=panels,
            )
        _, _, a, b, v, e = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        # panels much narrower than the local float spacing cannot place
        # their nodes strictly inside (a, b) anymore; treat the demand
        # for further refinement there as divergence evidence
        resolution = 512.0 * math.ulp(max(abs(a), abs(b), 1.0e-300))
        if mid <= a or mid >= b or (b - a) < resolution:
            raise DivergenceSuspected(
                f"{context}: panel at [{a!r}, {b!r}] below float resolution "
                f"(error estimate {total_err:.3e})",
                partial_value=total,
                error_estimate=total_err,
                subdivisions=panels,
            )
        v1, e1 = _gk15(f, a, mid)
        v2, e2 = _gk15(f, mid, b)
        panels += 2
        total += (v1 + v2) - v
        total_err += (e1 + e2) - e
        heapq.heappush(heap, (-e1, counter, a, mid, v1, e1))
        counter += 1
        heapq.heappush(heap, (-e2, counter, mid, b, v2, e2))
        counter += 1
    return IntegralResult(total, total_err, panels, True)


def integrate_halfline(
    f: Callable[[float], float],
    abs_tol: float = 1e-10,
    rel_tol: float = 1e-10,
    max_panels: int = 2000,
) -> IntegralResult:
    """Integrate f over (0, inf) via rho = t/(1-t); endpoints never evaluated."""

    def g(t: float) -> float:
        om = 1.0 - t
        if om <= 0.0:
            # a Kronrod node rounded onto t = 1; the resolution guard in
            # _adapt should make this unreachable, kept as insurance
            raise EvaluationError("rational map evaluated at t = 1")
        return f(t / om) / (om * om)

    return _adapt(g, [0.0, 0.25, 0.5, 0.75, 1.0], abs_tol, rel_tol, max_panels,
                  context="halfline (rational map)")


# log-substitution chunk boundaries in u = log(1 + rho); the last chunk
# doubles as a truncation guard, and 704 keeps e**u inside double range
_U_EDGES = [0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 704.0]


def integrate_halfline_log(
    f: Optional[Callable[[float], float]] = None,
    abs_tol: float = 1e-10,
    rel_tol: float = 1e-10,
    max_panels: int = 2000,
    *,
    log_f: Optional[Callable[[float], float]] = None,
) -> IntegralResult:
    """Integrate over (0, inf) via rho = e**u - 1.

    Pass either ``f`` (plain values) or ``log_f`` (the logarithm of a
    positive integrand, exponentiated together with the jacobian so
    huge magnitude swings stay in range).  The contribution of the
    last u-chunk acts as a truncation guard: if it is not negligible
    against the requested tolerance the integral is refused as
    divergence-suspected rather than silently truncated.
    """
    if (f is None) == (log_f is None):
        raise ValueError("pass exactly one of f or log_f")

    if log_f is not None:
        def g(u: float) -> float:
            lf = log_f(math.expm1(u))
            expo = lf + u
            if expo < -745.0:
                return 0.0
            return math.exp(expo)
    else:
        def g(u: float) -> float:
            return f(math.expm1(u)) * math.exp(u)

    tail_value, _ = _gk15(g, _U_EDGES[-2], _U_EDGES[-1])
    res = _adapt(g, _U_EDGES, abs_tol, rel_tol, max_panels,
                 context="halfline (log map)")
    if abs(tail_value) > 10.0 * max(abs_tol, rel_tol * abs(res.value)):
        raise DivergenceSuspected(
            f"halfline (log map): truncated tail contributes {tail_value:.3e}, "
            "not negligible at the requested tolerance",
            partial_value=res.value,
            error_estimate=abs(tail_value),
            subdivisions=res.subdivisions,
        )
    return res


def limit_comparison_alpha(p: QesParams) -> tuple[float, str]:
    """Tail classifier: alpha with density ~ rho**(-alpha); converges iff alpha > 1."""
    _, tail = asymptotic_exponents(p)
    alpha = -tail.density_power
    return alpha, ("converges" if alpha > 1.0 else "diverges")


@dataclass(frozen=True)
class NormalizationResult:
    """Outcome of the normalization integral under one measure."""

    converges: bool
    alpha: float
    measure: str
    reason: str = ""
    result: Optional[IntegralResult] = None
    tolerance_downgraded: bool = False

    @property
    def value(self) -> float:
        if self.result is None:
            raise ValueError("no numeric value: " + (self.reason or "diverges"))
        return self.result.value


def normalization(
    p: QesParams,
    abs_tol: float = 1e-12,
    rel_tol: float = 1e-8,
    *,
    weighted: bool = False,
    max_panels: int = 2000,
) -> NormalizationResult:
    """Normalization integral of the density over (0, inf).

    The flat measure d(rho) is the default; ``weighted=True`` applies
    the rho**tau radial weight as a separate diagnostic.  The
    limit-comparison classifier plus an origin-exponent check decide
    first; numeric integration runs only for predicted-convergent
    cases, and a failure there is escalated as an inconsistency
    instead of being reported as a plain divergence.
    """
    alpha, _ = limit_comparison_alpha(p)
    shift = p.tau if weighted else 0.0
    measure = "weighted" if weighted else "flat"
    alpha_eff = alpha - shift
    at_zero, _ = asymptotic_exponents(p)
    e0_eff = 2.0 * at_zero + shift
    if e0_eff <= -1.0:
        return NormalizationResult(
            False, alpha_eff, measure,
            reason=f"origin exponent {e0_eff:g} <= -1: density not integrable at 0",
        )
    if alpha_eff <= 1.0:
        return NormalizationResult(
            False, alpha_eff, measure,
            reason=f"diverges (alpha = {alpha_eff:g} <= 1)",
        )
    downgraded = False
    if alpha_eff <= 1.1:
        # slowly decaying tail: honest accuracy cap near the boundary
        rel_tol = max(rel_tol, 1e-6)
        max_panels *= 4
        downgraded = True

    if weighted:
        def log_f(r: float) -> float:
            return log_density(p, r) + p.tau * math.log(r)
    else:
        def log_f(r: float) -> float:
            return log_density(p, r)

    try:
        res = integrate_halfline_log(
            abs_tol=abs_tol, rel_tol=rel_tol, max_panels=max_panels, log_f=log_f
        )
    except DivergenceSuspected as exc:
        raise InconsistencyError(
            f"classifier predicts convergence (alpha = {alpha_eff:g}) but "
            f"integration did not settle: {exc}"
        ) from exc
    return NormalizationResult(
        True, alpha_eff, measure, result=res, tolerance_downgraded=downgraded
    )
