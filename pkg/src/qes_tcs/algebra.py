"""Hyperbolic realizations of the so(2,1) potential algebra.

The algebra supplies pairs (F, G) solving F' = 1 - F**2 and G' = -F*G.
Four branches are carried: a smooth even one (tanh/sech), two
exponential ones (F = +1 and its x -> -x mirror F = -1), and a singular
one (coth/cosech) that lives on x > 0 only.  Each pair generates the
one-parameter potential family V_m and an explicit zero mode chi0 whose
eigenvalue is the bound-state energy -(k - 1/2)**2.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from . import jets
from .errors import DomainError, RepresentationError, SingularityError
from .jets import Jet2, Scalar, eval_jet2


class AlgebraClass(Enum):
    I = "I"
    II_PLUS = "II+"
    II_MINUS = "II-"
    III = "III"

    @classmethod
    def parse(cls, text: str) -> "AlgebraClass":
        """Accept the labels used on the command line ('II' means II_PLUS)."""
        key = text.strip().upper().replace("_PLUS", "+").replace("_MINUS", "-")
        table = {"I": cls.I, "II": cls.II_PLUS, "II+": cls.II_PLUS,
                 "II-": cls.II_MINUS, "III": cls.III}
        try:
            return table[key]
        except KeyError:
            raise ValueError(f"unknown algebra class {text!r}; expected one of I, II, II+, II-, III") from None

    @property
    def public_label(self) -> str:
        return self.value

    @property
    def short_label(self) -> str:
        """Collapse the two exponential branches to the family name 'II'."""
        if self in (AlgebraClass.II_PLUS, AlgebraClass.II_MINUS):
            return "II"
        return self.value


def _require_k(k: float) -> None:
    if not k > 0.5:
        raise RepresentationError(f"representation label k must exceed 1/2, got {k}")


def bound_energy(k: float) -> float:
    """Energy of the lowest discrete representation state, -(k - 1/2)**2."""
    _require_k(k)
    return -((k - 0.5) ** 2)


def casimir(k: float) -> float:
    """Casimir eigenvalue k(k-1) of the representation labelled by k."""
    _require_k(k)
    return k * (k - 1.0)


@dataclass(frozen=True)
class AlgebraParams:
    """One realization: class, coupling b, representation label k.

    m is the tower label; the zero mode sits at m = k, which is the
    default when m is omitted.
    """

    cls: AlgebraClass
    b: float
    k: float
    m: Optional[float] = None

    def __post_init__(self) -> None:
        _require_k(self.k)

    @property
    def m_eff(self) -> float:
        return self.k if self.m is None else self.m

    @property
    def energy(self) -> float:
        return bound_energy(self.k)


def _check_domain(cls: AlgebraClass, x: Scalar) -> float:
    v = x.value if isinstance(x, Jet2) else float(x)
    if cls is AlgebraClass.III:
        if v == 0.0:
            raise SingularityError("coth", v, "class III blows up at the origin")
        if v < 0.0:
            raise DomainError("coth", v, "class III is defined on x > 0")
    return v


def F_eval(cls: AlgebraClass, x: Scalar) -> Scalar:
    """F of the chosen branch; accepts floats or jets."""
    _check_domain(cls, x)
    if cls is AlgebraClass.I:
        return jets.tanh(x)
    if cls is AlgebraClass.II_PLUS:
        return Jet2.const(1.0) if isinstance(x, Jet2) else 1.0
    if cls is AlgebraClass.II_MINUS:
        return Jet2.const(-1.0) if isinstance(x, Jet2) else -1.0
    return jets.coth(x)


def G_eval(cls: AlgebraClass, b: float, x: Scalar) -> Scalar:
    """G of the chosen branch with coupling b; accepts floats or jets."""
    _check_domain(cls, x)
    return b * _shape(cls, x)


def _shape(cls: AlgebraClass, x: Scalar) -> Scalar:
    # G with the coupling stripped off: G = b * shape
    if cls is AlgebraClass.I:
        return jets.sech(x)
    if cls is AlgebraClass.II_PLUS:
        return jets.exp(-x if isinstance(x, Jet2) else -float(x))
    if cls is AlgebraClass.II_MINUS:
        return jets.exp(x)
    return jets.csch(x)


def check_defining_odes(cls: AlgebraClass, b: float, grid: Sequence[float]) -> tuple[float, float]:
    """Largest defect of F' = 1 - F**2 and G' = -F*G over the grid."""
    max_f = 0.0
    max_g = 0.0
    for x in grid:
        jf = eval_jet2(lambda t: F_eval(cls, t), x)
        jg = eval_jet2(lambda t: G_eval(cls, b, t), x)
        max_f = max(max_f, abs(jf.d1 - (1.0 - jf.value * jf.value)))
        max_g = max(max_g, abs(jg.d1 + jf.value * jg.value))
    return max_f, max_g


def potential_Vm(cls: AlgebraClass, b: float, m: float, x: float) -> float:
    """Family member V_m = (1/4 - m**2) F' + 2m G' + G**2 at x."""
    jf = eval_jet2(lambda t: F_eval(cls, t), x)
    jg = eval_jet2(lambda t: G_eval(cls, b, t), x)
    return (0.25 - m * m) * jf.d1 + 2.0 * m * jg.d1 + jg.value * jg.value


def _h_factor(cls: AlgebraClass, b: float, g: Scalar) -> Scalar:
    # integrating factor that closes the zero-mode condition
    if cls is AlgebraClass.I:
        return jets.exp(b * jets.atan(jets.sinh(g)))
    if cls is AlgebraClass.II_PLUS:
        return jets.exp(-b * jets.exp(-g if isinstance(g, Jet2) else -float(g)))
    if cls is AlgebraClass.II_MINUS:
        return jets.exp(-b * jets.exp(g))
    half = g * 0.5 if isinstance(g, Jet2) else 0.5 * float(g)
    return jets.power(jets.tanh(half), b)


def ground_state_chi0(cls: AlgebraClass, b: float, k: float, g: Scalar) -> Scalar:
    """Unnormalized zero mode G**(k - 1/2) * h of the branch.

    At b = 0 the coupling factor b**(k - 1/2) is stripped and the bare
    shape power is returned, matching the smooth b -> 0 limit of the
    rescaled mode.
    """
    _require_k(k)
    _check_domain(cls, g)
    ex = k - 0.5
    shape = _shape(cls, g)
    if b == 0.0:
        return jets.power(shape, ex)
    return jets.power(b * shape, ex) * _h_factor(cls, b, g)


def eigen_relative_residual(cls: AlgebraClass, b: float, k: float, g: float,
                            m: Optional[float] = None) -> float:
    """Relative defect of -chi0'' + V_m chi0 = E chi0 at g (m defaults to k)."""
    mm = k if m is None else m
    j = eval_jet2(lambda t: ground_state_chi0(cls, b, k, t), g)
    lhs = -j.d2 + potential_Vm(cls, b, mm, g) * j.value
    rhs = bound_energy(k) * j.value
    if rhs == 0.0:
        raise ArithmeticError(f"zero mode vanished at g={g!r}; residual undefined")
    return abs(lhs - rhs) / abs(rhs)


def default_grid(cls: AlgebraClass, n: int = 101) -> list[float]:
    """Evaluation grid inside the class domain."""
    if cls is AlgebraClass.III:
        lo, hi = 1e-2, 10.0
    else:
        lo, hi = -5.0, 5.0
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]
