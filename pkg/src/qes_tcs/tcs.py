"""Many-body truncated Calogero-Sutherland bookkeeping.

The radial reduction of the N-particle model funnels everything the
half-line problem needs into one effective parameter tau.  This module
computes that mapping, evaluates the truncated interaction terms
pointwise (desk-scale checks only; no many-body solver lives here),
and composes tau with the per-class admissibility verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import AlgebraClass
from .closed_forms import AdmissibilityReport, QesParams, admissibility
from .errors import ConstraintViolation, DomainError, SingularityError


@dataclass(frozen=True)
class TcsParams:
    """Physical inputs: particle count N, coupling lam, range r, degree s, trap omega."""

    N: int
    lam: float
    r: int
    s: int = 0
    omega: float = 1.0

    def __post_init__(self) -> None:
        if int(self.N) != self.N or self.N < 2:
            raise ConstraintViolation(f"particle count N must be an integer >= 2, got {self.N}")
        if self.lam == 0.0:
            raise ConstraintViolation("coupling lambda must be nonzero")
        if int(self.r) != self.r or not 1 <= self.r <= self.N - 1:
            raise DomainError("r", self.r, f"interaction range must satisfy 1 <= r <= N-1 = {self.N - 1}")
        if int(self.s) != self.s or self.s < 0:
            raise ConstraintViolation(f"polynomial degree s must be an integer >= 0, got {self.s}")
        if not self.omega > 0.0:
            raise ConstraintViolation(f"trap frequency omega must be positive, got {self.omega}")

    @property
    def coupling_regime(self) -> str:
        """Informational tag; interactions are attractive for 0 < lambda < 1."""
        if 0.0 < self.lam < 1.0:
            return "attractive"
        if self.lam >= 1.0:
            return "repulsive"
        return "unclassified"

    @property
    def tau(self) -> float:
        return tau_of(self.N, self.s, self.lam, self.r)


@dataclass(frozen=True)
class VNewParams:
    """Free coefficients of the rational confinement correction."""

    alpha1: float
    alpha2: float
    beta1: float
    beta2: float


def tau_of(N: int, s: int, lam: float, r: int) -> float:
    """Effective radial exponent tau = N + 2s - 1 + lam*r*(2N - r - 1)."""
    t = TcsParams(N=N, lam=lam, r=r, s=s)
    return t.N + 2.0 * t.s - 1.0 + t.lam * t.r * (2.0 * t.N - t.r - 1.0)


def v_int(config: Sequence[float], lam: float, r: int) -> float:
    """Truncated interaction energy of one static configuration.

    Two-body terms lam*(lam-1)/(x_i - x_j)**2 over pairs with index
    separation at most r, plus three-body terms
    lam**2 * (x_i - x_j)(x_j - x_k) / ((x_j - x_i)**2 (x_j - x_k)**2)
    over i < j < k with both windows j - i <= r and k - j <= r.
    """
    n = len(config)
    if n < 2:
        raise ConstraintViolation(f"need at least two positions, got {n}")
    if int(r) != r or not 1 <= r <= n - 1:
        raise DomainError("r", r, f"interaction range must satisfy 1 <= r <= N-1 = {n - 1}")
    xs = [float(x) for x in config]
    for i in range(n):
        for j in range(i + 1, min(i + r, n - 1) + 1):
            if xs[i] == xs[j]:
                raise SingularityError("v_int", xs[i], f"particles {i} and {j} coincide inside the range window")
    total = 0.0
    two_body = lam * (lam - 1.0)
    if two_body != 0.0:
        for i in range(n):
            for j in range(i + 1, min(i + r, n - 1) + 1):
                d = xs[i] - xs[j]
                total += two_body / (d * d)
    lam2 = lam * lam
    for j in range(1, n - 1):
        for i in range(max(0, j - r), j):
            dji = xs[j] - xs[i]
            for k in range(j + 1, min(j + r, n - 1) + 1):
                djk = xs[j] - xs[k]
                total += lam2 * (xs[i] - xs[j]) * (xs[j] - xs[k]) / (dji * dji * djk * djk)
    return total


def v_new(rho: float, p: VNewParams, omega: float) -> float:
    """Rational confinement term (a1 + a2 w^2 rho^2)/(b1 + b2 w^2 rho^2)**2."""
    q = omega * omega * rho * rho
    den = p.beta1 + p.beta2 * q
    if den == 0.0:
        raise SingularityError("v_new", rho, "denominator beta1 + beta2*omega^2*rho^2 vanishes")
    return (p.alpha1 + p.alpha2 * q) / (den * den)


def classify(t: TcsParams, k: float, b: float) -> dict[str, AdmissibilityReport]:
    """Admissibility of all three half-line classes at tau = tau_of(t)."""
    tau = t.tau
    out: dict[str, AdmissibilityReport] = {}
    for cls in (AlgebraClass.I, AlgebraClass.II_PLUS, AlgebraClass.III):
        out[cls.short_label] = admissibility(QesParams(cls, k=k, b=b, tau=tau))
    return out
