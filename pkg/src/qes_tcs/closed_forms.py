"""Closed-form rational potentials and zero-energy wavefunctions.

Three families on the half line rho > 0, one per algebra branch (the
mirror exponential branch is folded into class II).  Each family
carries a potential V(rho) vanishing at infinity, an explicit
unnormalized wavefunction psi(rho) solving the radial equation at zero
energy, power-law asymptotics at both ends, and the coupling-parameter
constraints that make psi admissible.

The centrifugal-style C/(rho(rho+1))**2 term admits two candidate
coefficients, k(k-1) and k(k-1)/2, which differ by the factor-of-two
unit choice between the algebra-side and radial-side equations.  Both
are exposed; the calibrator in :mod:`qes_tcs.verify` decides, and
C_chain is the default because it is the value under which the radial
residual actually vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from . import jets
from .algebra import AlgebraClass, bound_energy
from .errors import ConstraintViolation, DomainError
from .jets import Jet2, Scalar


class Convention(Enum):
    """Choice of the C coefficient in the rational potentials."""

    C_PAPER = "C_paper"   # C = k(k-1)
    C_CHAIN = "C_chain"   # C = k(k-1)/2, i.e. -(E_T + 1/4)/2

    @classmethod
    def parse(cls, text: str) -> "Convention":
        for member in cls:
            if text.strip().lower() in (member.value.lower(), member.name.lower()):
                return member
        raise ValueError(f"unknown convention {text!r}; expected C_paper or C_chain")


DEFAULT_CONVENTION = Convention.C_CHAIN

_QES_CLASSES = (AlgebraClass.I, AlgebraClass.II_PLUS, AlgebraClass.III)


@dataclass(frozen=True)
class QesParams:
    """Parameters of one rational potential: class, k, b, tau, optional m.

    m defaults to k, the value at which the explicit wavefunction
    solves the radial equation.  The potential itself is defined for
    general m.
    """

    cls: AlgebraClass
    k: float
    b: float
    tau: float
    m: Optional[float] = None

    def __post_init__(self) -> None:
        if self.cls not in _QES_CLASSES:
            raise ConstraintViolation(
                f"class {self.cls.public_label} has no rational-potential form; "
                "use I, II, or III"
            )
        bound_energy(self.k)  # enforces k > 1/2

    @property
    def m_eff(self) -> float:
        return self.k if self.m is None else self.m

    @property
    def energy(self) -> float:
        return bound_energy(self.k)

    @property
    def label(self) -> str:
        return self.cls.short_label


@dataclass(frozen=True)
class CoeffsI:
    A: float
    B: float
    C_paper: float
    C_chain: float


def coeffs_classI(k: float, b: float, m: Optional[float] = None) -> CoeffsI:
    """Coefficients of the class I potential; both C candidates reported."""
    mm = k if m is None else m
    return CoeffsI(
        A=0.5 * (4.0 * (mm * mm - b * b) - 1.0),
        B=2.0 * mm * b,
        C_paper=k * (k - 1.0),
        C_chain=0.5 * k * (k - 1.0),
    )


def c_coefficient(k: float, convention: Convention) -> float:
    if convention is Convention.C_PAPER:
        return k * (k - 1.0)
    return 0.5 * k * (k - 1.0)


def _require_positive_rho(rho: Scalar) -> float:
    v = rho.value if isinstance(rho, Jet2) else float(rho)
    if v <= 0.0:
        raise DomainError("rho", v, "the radial coordinate must be positive")
    return v


def potential(p: QesParams, rho: Scalar, convention: Optional[Convention] = None) -> Scalar:
    """Closed-form potential V(rho); jet-capable in rho."""
    _require_positive_rho(rho)
    conv = DEFAULT_CONVENTION if convention is None else convention
    c = c_coefficient(p.k, conv)
    m = p.m_eff
    b = p.b
    w = rho * (rho + 1.0)
    tau_term = (p.tau / 4.0) * (p.tau / 2.0 - 1.0) / (rho * rho)
    c_term = c / (w * w)
    if p.cls is AlgebraClass.I:
        co = coeffs_classI(p.k, b, m)
        z = 2.0 * w + 1.0
        return -co.A / (z * z) - co.B * (2.0 * rho + 1.0) / (w * z * z) + c_term - tau_term
    if p.cls is AlgebraClass.II_PLUS:
        rp1 = rho + 1.0
        rp2 = rp1 * rp1
        return b * b / (2.0 * rp2 * rp2) - m * b / (rho * rp2 * rp1) + c_term - tau_term
    s = 2.0 * rho + 1.0
    return (4.0 * (m + b) ** 2 - 1.0) / (2.0 * s * s) - 2.0 * m * b / w + c_term - tau_term


def _require_wavefunction_params(p: QesParams) -> None:
    if p.m_eff != p.k:
        raise ConstraintViolation(
            f"the explicit zero-energy wavefunction exists at m = k only; got m={p.m_eff}, k={p.k}"
        )
    if p.b == 0.0:
        raise ConstraintViolation("b = 0 collapses the wavefunction to the trivial zero solution")


def wavefunction(p: QesParams, rho: Scalar) -> Scalar:
    """Unnormalized zero-energy wavefunction psi(rho); jet-capable in rho."""
    _require_positive_rho(rho)
    _require_wavefunction_params(p)
    k, b, tau = p.k, p.b, p.tau
    ex = k - 0.5
    w = rho * (rho + 1.0)
    head = jets.sqrt(w) * jets.power(rho, -0.5 * tau)
    if p.cls is AlgebraClass.I:
        z = 2.0 * w + 1.0
        return (
            2.0**ex
            * head
            * jets.power(b * w / z, ex)
            * jets.exp(b * jets.atan((2.0 * rho + 1.0) / (2.0 * w)))
        )
    if p.cls is AlgebraClass.II_PLUS:
        u = rho / (rho + 1.0)
        return head * jets.exp(-b * u) * jets.power(b * u, ex)
    s = 2.0 * rho + 1.0
    return 2.0**ex * head * jets.power(s, -b) * jets.power(b * w / s, ex)


def density(p: QesParams, rho: Scalar) -> Scalar:
    """Probability density psi**2, pointwise."""
    psi = wavefunction(p, rho)
    return psi * psi


def log_density(p: QesParams, rho: float) -> float:
    """log(psi**2) evaluated in log space; safe at extreme rho.

    Requires b > 0 (the coupling power is taken as a real logarithm).
    """
    v = _require_positive_rho(rho)
    _require_wavefunction_params(p)
    if p.b < 0.0:
        raise DomainError("log", p.b, "log-space density needs a positive coupling b")
    k, b, tau = p.k, p.b, p.tau
    ex = k - 0.5
    lr = math.log(v)
    lr1 = math.log1p(v)
    lw = lr + lr1
    if p.cls is AlgebraClass.I:
        w = v * (v + 1.0)
        lz = math.log(2.0) + lw + math.log1p(1.0 / (2.0 * w))
        half = (
            ex * math.log(2.0)
            + 0.5 * lw
            - 0.5 * tau * lr
            + ex * (math.log(b) + lw - lz)
            + b * math.atan((2.0 * v + 1.0) / (2.0 * w))
        )
    elif p.cls is AlgebraClass.II_PLUS:
        half = (
            0.5 * lw
            - b * v / (v + 1.0)
            - 0.5 * tau * lr
            + ex * (math.log(b) + lr - lr1)
        )
    else:
        ls = math.log(2.0) + lr + math.log1p(1.0 / (2.0 * v))
        half = (
            ex * math.log(2.0)
            + 0.5 * lw
            - b * ls
            - 0.5 * tau * lr
            + ex * (math.log(b) + lw - ls)
        )
    return 2.0 * half


@dataclass(frozen=True)
class PowerTail:
    """Large-rho behavior psi ~ prefactor * rho**power.

    For class II the exponential factor saturates to the constant
    exp(-b), which is folded into the prefactor and flagged so that
    slope measurements can divide it out before it has converged.
    """

    power: float
    prefactor: float
    saturating_exponential: bool = False

    @property
    def density_power(self) -> float:
        return 2.0 * self.power

    def describe(self) -> str:
        base = f"rho^{self.power:g}"
        if self.saturating_exponential:
            return f"{base} (times an exponential factor saturating to a constant)"
        return base


def asymptotic_exponents(p: QesParams) -> tuple[float, PowerTail]:
    """(exponent at rho -> 0, power-law descriptor at rho -> infinity)."""
    k, b, tau = p.k, p.b, p.tau
    ex = k - 0.5
    at_zero = k - 0.5 * tau
    # |b|**ex: the report stays constructible even when b < 0 makes psi itself undefined
    scale = abs(b) ** ex if b != 0.0 else 0.0
    if p.cls is AlgebraClass.I:
        tail = PowerTail(1.0 - 0.5 * tau, scale)
    elif p.cls is AlgebraClass.II_PLUS:
        tail = PowerTail(1.0 - 0.5 * tau, math.exp(-b) * scale, saturating_exponential=True)
    else:
        tail = PowerTail(k - b - 0.5 * tau + 0.5, 2.0 ** (-b) * scale)
    return at_zero, tail


@dataclass(frozen=True)
class AdmissibilityReport:
    """Verdicts on one parameter set.

    paper_regular applies the printed per-class coupling constraints;
    l2_normalizable is the independent verdict from the density's tail
    exponents (integrable at the origin and at infinity).  The two can
    disagree, and both are surfaced.
    """

    paper_regular: bool
    l2_normalizable: bool
    violated_constraints: list[str]
    exponent_at_zero: float
    behavior_at_inf: PowerTail


def _printed_constraints(p: QesParams) -> list[tuple[str, bool]]:
    k, b, tau = p.k, p.b, p.tau
    checks = [("2k>tau", 2.0 * k > tau)]
    if p.cls is AlgebraClass.I:
        checks.append(("tau>2", tau > 2.0))
    elif p.cls is AlgebraClass.II_PLUS:
        checks.append(("tau>=4", tau >= 4.0))
        checks.append(("b>0", b > 0.0))
    else:
        checks.append(("normalization-convergence", b > k - 0.5 * tau + 1.0))
    return checks


def admissibility(p: QesParams) -> AdmissibilityReport:
    """Evaluate the printed constraints and the tail-exponent verdict."""
    at_zero, tail = asymptotic_exponents(p)
    checks = _printed_constraints(p)
    violated = [name for name, ok in checks if not ok]
    l2 = (2.0 * at_zero > -1.0) and (tail.density_power < -1.0)
    return AdmissibilityReport(
        paper_regular=not violated,
        l2_normalizable=l2,
        violated_constraints=violated,
        exponent_at_zero=at_zero,
        behavior_at_inf=tail,
    )
