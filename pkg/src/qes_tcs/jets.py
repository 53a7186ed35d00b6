"""Forward-mode differentiation on second-order Taylor jets.

A ``Jet2`` carries the value and first two derivatives of a scalar
expression along one input direction.  Arithmetic and the primitives
below propagate the Leibniz and chain rules truncated at order two, so
derivatives come out exact up to float rounding.  ``fd_derivatives`` is
the independent central-difference oracle used to cross-check them.

The primitives accept plain floats as well, returning floats, so the
same closed-form expression can be evaluated on numbers or on jets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

from .errors import DomainError, EvaluationError, SingularityError

Scalar = Union[float, "Jet2"]


@dataclass(frozen=True)
class Jet2:
    """Value plus first and second derivative along one direction."""

    value: float
    d1: float
    d2: float

    @staticmethod
    def seed(x: float) -> "Jet2":
        """Jet of the identity map at x (the differentiation variable)."""
        return Jet2(float(x), 1.0, 0.0)

    @staticmethod
    def const(c: float) -> "Jet2":
        return Jet2(float(c), 0.0, 0.0)

    def __add__(self, other: Scalar) -> "Jet2":
        if isinstance(other, Jet2):
            return Jet2(self.value + other.value, self.d1 + other.d1, self.d2 + other.d2)
        return Jet2(self.value + other, self.d1, self.d2)

    __radd__ = __add__

    def __neg__(self) -> "Jet2":
        return Jet2(-self.value, -self.d1, -self.d2)

    def __sub__(self, other: Scalar) -> "Jet2":
        return self + (-other if isinstance(other, Jet2) else -float(other))

    def __rsub__(self, other: float) -> "Jet2":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "Jet2":
        if isinstance(other, Jet2):
            return Jet2(
                self.value * other.value,
                self.d1 * other.value + self.value * other.d1,
                self.d2 * other.value + 2.0 * self.d1 * other.d1 + self.value * other.d2,
            )
        return Jet2(self.value * other, self.d1 * other, self.d2 * other)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "Jet2":
        if isinstance(other, Jet2):
            q = self.value / other.value
            q1 = (self.d1 - q * other.d1) / other.value
            q2 = (self.d2 - 2.0 * q1 * other.d1 - q * other.d2) / other.value
            return Jet2(q, q1, q2)
        return Jet2(self.value / other, self.d1 / other, self.d2 / other)

    def __rtruediv__(self, other: float) -> "Jet2":
        return Jet2.const(other) / self

    def __pow__(self, p: float) -> "Jet2":
        return power(self, p)


def _chain(j: Jet2, u: float, du: float, d2u: float) -> Jet2:
    # chain rule truncated at order two: (u o f)'' = u'' f'^2 + u' f''
    return Jet2(u, du * j.d1, d2u * j.d1 * j.d1 + du * j.d2)


def exp(x: Scalar) -> Scalar:
    if isinstance(x, Jet2):
        u = math.exp(x.value)
        return _chain(x, u, u, u)
    return math.exp(x)


def log(x: Scalar) -> Scalar:
    v = x.value if isinstance(x, Jet2) else x
    if v <= 0.0:
        raise DomainError("log", v)
    if isinstance(x, Jet2):
        return _chain(x, math.log(v), 1.0 / v, -1.0 / (v * v))
    return math.log(v)


def sqrt(x: Scalar) -> Scalar:
    v = x.value if isinstance(x, Jet2) else x
    if isinstance(x, Jet2):
        if v <= 0.0:
            raise DomainError("sqrt", v, "jet derivatives need a positive base")
        u = math.sqrt(v)
        return _chain(x, u, 0.5 / u, -0.25 / (u * v))
    if v < 0.0:
        raise DomainError("sqrt", v)
    return math.sqrt(v)


def sin(x: Scalar) -> Scalar:
    if isinstance(x, Jet2):
        s, c = math.sin(x.value), math.cos(x.value)
        return _chain(x, s, c, -s)
    return math.sin(x)


def cos(x: Scalar) -> Scalar:
    if isinstance(x, Jet2):
        s, c = math.sin(x.value), math.cos(x.value)
        return _chain(x, c, -s, -c)
    return math.cos(x)


def sinh(x: Scalar) -> Scalar:
    if isinstance(x, Jet2):
        s, c = math.sinh(x.value), math.cosh(x.value)
        return _chain(x, s, c, s)
    return math.sinh(x)


def cosh(x: Scalar) -> Scalar:
    if isinstance(x, Jet2):
        s, c = math.sinh(x.value), math.cosh(x.value)
        return _chain(x, c, s, c)
    return math.cosh(x)


def tanh(x: Scalar) -> Scalar:
    if isinstance(x, Jet2):
        u = math.tanh(x.value)
        du = 1.0 - u * u
        return _chain(x, u, du, -2.0 * u * du)
    return math.tanh(x)


def sech(x: Scalar) -> Scalar:
    if isinstance(x, Jet2):
        u = 1.0 / math.cosh(x.value)
        t = math.tanh(x.value)
        return _chain(x, u, -u * t, u * (t * t - u * u))
    return 1.0 / math.cosh(x)


def coth(x: Scalar) -> Scalar:
    v = x.value if isinstance(x, Jet2) else x
    if v == 0.0:
        raise SingularityError("coth", v)
    if isinstance(x, Jet2):
        u = math.cosh(v) / math.sinh(v)
        du = 1.0 - u * u
        return _chain(x, u, du, -2.0 * u * du)
    return math.cosh(v) / math.sinh(v)


def csch(x: Scalar) -> Scalar:
    v = x.value if isinstance(x, Jet2) else x
    if v == 0.0:
        raise SingularityError("cosech", v)
    if isinstance(x, Jet2):
        u = 1.0 / math.sinh(v)
        ct = math.cosh(v) / math.sinh(v)
        return _chain(x, u, -u * ct, u * (ct * ct + u * u))
    return 1.0 / math.sinh(v)


def atan(x: Scalar) -> Scalar:
    if isinstance(x, Jet2):
        v = x.value
        den = 1.0 + v * v
        return _chain(x, math.atan(v), 1.0 / den, -2.0 * v / (den * den))
    return math.atan(x)


def _pow_floats(v: float, p: float) -> float:
    if v > 0.0:
        return v ** p
    if float(p).is_integer():
        n = int(round(p))
        if v == 0.0 and n < 0:
            raise SingularityError("power", v, f"exponent {p}")
        return v ** n
    raise DomainError("power", v, f"non-integer exponent {p} needs a positive base")


def power(x: Scalar, p: float) -> Scalar:
    """x**p for real p; negative bases allowed only for integer p."""
    p = float(p)
    if not isinstance(x, Jet2):
        return _pow_floats(float(x), p)
    v = x.value
    if v > 0.0:
        u = v ** p
        du = p * v ** (p - 1.0)
        d2u = p * (p - 1.0) * v ** (p - 2.0)
    elif p.is_integer():
        n = int(round(p))
        if v == 0.0:
            if n < 0:
                raise SingularityError("power", v, f"exponent {p}")
            table = {0: (1.0, 0.0, 0.0), 1: (0.0, 1.0, 0.0), 2: (0.0, 0.0, 2.0)}
            u, du, d2u = table.get(n, (0.0, 0.0, 0.0))
        else:
            u = v ** n
            du = n * v ** (n - 1)
            d2u = n * (n - 1) * v ** (n - 2) if n != 1 else 0.0
    else:
        raise DomainError("power", v, f"non-integer exponent {p} needs a positive base")
    return _chain(x, u, du, d2u)


def eval_jet2(f: Callable[[Jet2], Scalar], x: float) -> Jet2:
    """Evaluate f and its first two derivatives at x."""
    out = f(Jet2.seed(x))
    if isinstance(out, Jet2):
        return out
    return Jet2.const(float(out))  # f ignored its argument: constant function


def fd_derivatives(f: Callable[[float], float], x: float, h: float = 1e-4,
                   *, richardson: bool = False) -> tuple[float, float]:
    """Central-difference (f', f'') oracle, independent of the jet engine."""
    if h <= 0.0:
        raise ValueError(f"step must be positive, got {h}")

    def central(step: float) -> tuple[float, float]:
        fp, f0, fm = f(x + step), f(x), f(x - step)
        for val in (fp, f0, fm):
            if not math.isfinite(val):
                raise EvaluationError(f"non-finite evaluation near x={x!r}")
        return (fp - fm) / (2.0 * step), (fp - 2.0 * f0 + fm) / (step * step)

    d1, d2 = central(h)
    if richardson:
        d1h, d2h = central(h / 2.0)
        d1 = (4.0 * d1h - d1) / 3.0
        d2 = (4.0 * d2h - d2) / 3.0
    return d1, d2
