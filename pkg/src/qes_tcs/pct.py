"""Point canonical transformation between the algebra line and the half line.

The change of variable rho = K(g) = 1/(e**g - 1) maps g > 0 onto
rho > 0.  This module carries the mapping and its inverse, the
Schwarzian derivative of the inverse map, the wavefunction prefactor
that removes the first-derivative term, and the reconstruction of the
half-line potential directly from algebra-side data.  The closed forms
in :mod:`qes_tcs.closed_forms` must agree with that reconstruction
pointwise; the comparison is wired up in :mod:`qes_tcs.verify`.
"""

from __future__ import annotations

import math
from typing import Callable

from . import jets
from .algebra import F_eval, G_eval, bound_energy, ground_state_chi0
from .closed_forms import QesParams
from .errors import ConstraintViolation, DomainError, SingularityError
from .jets import Jet2, Scalar, eval_jet2


def _positive(name: str, x: Scalar) -> float:
    v = x.value if isinstance(x, Jet2) else float(x)
    if v <= 0.0:
        raise DomainError(name, v, "argument must be positive")
    return v


def g_of_rho(rho: Scalar) -> Scalar:
    """Inverse mapping g = ln((rho+1)/rho), positive for rho > 0."""
    _positive("g_of_rho", rho)
    if isinstance(rho, Jet2):
        return jets.log((rho + 1.0) / rho)
    return math.log1p(1.0 / rho)


def rho_of_g(g: Scalar) -> Scalar:
    """Forward mapping K(g) = 1/(e**g - 1) on g > 0."""
    v = g.value if isinstance(g, Jet2) else float(g)
    if v == 0.0:
        raise SingularityError("rho_of_g", v)
    if v < 0.0:
        raise DomainError("rho_of_g", v, "the mapping covers the half line for g > 0")
    if isinstance(g, Jet2):
        return 1.0 / (jets.exp(g) - 1.0)
    return 1.0 / math.expm1(v)


def g_prime(rho: Scalar) -> Scalar:
    """Closed-form derivative dg/drho = -1/(rho (rho+1)); negative throughout."""
    _positive("g_prime", rho)
    return -1.0 / (rho * (rho + 1.0))


def k_prime_abs(rho: Scalar) -> Scalar:
    """|K'| transported to the half line: |K'(g(rho))| = rho (rho+1)."""
    _positive("k_prime_abs", rho)
    return rho * (rho + 1.0)


class Mapping:
    """Namespace bundling the transform pair with jet-capable accessors."""

    K = staticmethod(rho_of_g)
    g_inv = staticmethod(g_of_rho)
    g_inv_prime = staticmethod(g_prime)
    K_prime_abs = staticmethod(k_prime_abs)


def schwarzian_from_derivative(d1: Callable[[Jet2], Scalar], x: float) -> float:
    """Schwarzian u'''/u' - (3/2)(u''/u')**2 from the map's first derivative.

    ``d1`` must evaluate u' jet-capably; the two missing orders come
    from one jet pass, so no third-order machinery is needed.
    """
    j = eval_jet2(d1, x)
    if j.value == 0.0:
        raise DomainError("schwarzian", x, "first derivative vanishes; Schwarzian undefined")
    r1 = j.d1 / j.value
    return j.d2 / j.value - 1.5 * r1 * r1


def schwarzian(rho: float) -> float:
    """Schwarzian of the inverse mapping g(rho) at rho."""
    _positive("schwarzian", rho)
    return schwarzian_from_derivative(g_prime, rho)


def f_prefactor(rho: Scalar, tau: float) -> Scalar:
    """Prefactor |g'(rho)|**(-1/2) * rho**(-tau/2) of the half-line wavefunction."""
    _positive("f_prefactor", rho)
    return jets.sqrt(rho * (rho + 1.0)) * jets.power(rho, -0.5 * tau)


def algebra_side_potential(p: QesParams, rho: float) -> float:
    """Half-line potential reconstructed from algebra-side data only.

    Transports the class potential family at g = g(rho) through the
    change of variable, adding the Schwarzian and centrifugal pieces
    generated by the transformation.  The Schwarzian enters as the
    Schwarzian of the forward map K, i.e. -S_g(rho) * K'**2 by the
    inversion cocycle (a constant -1/2 for this mapping).
    """
    v = _positive("algebra_side_potential", rho)
    g = g_of_rho(v)
    F = F_eval(p.cls, g)
    G = G_eval(p.cls, p.b, g)
    m = p.m_eff
    core = (0.25 - m * m) * (1.0 - F * F) - 2.0 * m * F * G + G * G
    w = v * (v + 1.0)
    kp2 = w * w
    bracket = 0.5 * (-schwarzian(v) * kp2)
    tau_term = (0.5 * p.tau) * (0.5 * p.tau - 1.0) * kp2 / (v * v)
    return (core - bound_energy(p.k) + bracket - tau_term) / (2.0 * kp2)


def generic_wavefunction(p: QesParams, rho: Scalar) -> Scalar:
    """Zero-energy wavefunction assembled from the transform and the zero mode.

    Equals f_prefactor(rho, tau) times the algebra zero mode at
    g(rho); proportional (in fact equal) to the closed forms.
    """
    _positive("generic_wavefunction", rho)
    if p.m_eff != p.k:
        raise ConstraintViolation(
            f"the zero mode exists at m = k only; got m={p.m_eff}, k={p.k}"
        )
    return f_prefactor(rho, p.tau) * ground_state_chi0(p.cls, p.b, p.k, g_of_rho(rho))
