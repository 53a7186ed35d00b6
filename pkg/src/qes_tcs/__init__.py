"""Quasi-exactly solvable rational potentials on the half line.

Core layers:

* :mod:`qes_tcs.jets` -- order-2 forward differentiation,
* :mod:`qes_tcs.algebra` -- the hyperbolic realizations and their
  zero-mode eigenfunctions,
* :mod:`qes_tcs.pct` -- the point canonical transform to the half line,
* :mod:`qes_tcs.closed_forms` -- rational potentials, wavefunctions and
  admissibility,
* :mod:`qes_tcs.tcs` -- the many-body couplings that feed the effective
  radial parameter,
* :mod:`qes_tcs.quadrature` -- half-line integration and normalization
  verdicts,
* :mod:`qes_tcs.verify` -- residual scans and convention calibration,
* :mod:`qes_tcs.service` / :mod:`qes_tcs.cli` -- HTTP facade and the
  thin command-line client.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    CalibrationError,
    ConstraintViolation,
    DivergenceSuspected,
    DomainError,
    EvaluationError,
    InconsistencyError,
    QesError,
    RepresentationError,
    SingularityError,
)

from .algebra import AlgebraClass, AlgebraParams, bound_energy, casimir
from .closed_forms import (
    AdmissibilityReport,
    Convention,
    QesParams,
    admissibility,
    density,
    potential,
    wavefunction,
)
from .quadrature import NormalizationResult, normalization
from .tcs import TcsParams, classify, tau_of
from .verify import (
    ResidualReport,
    convention_calibrate,
    radial_residual,
    residual_scan,
    standard_parameter_sets,
)

__all__ = [
    "__version__",
    "QesError",
    "DomainError",
    "SingularityError",
    "RepresentationError",
    "ConstraintViolation",
    "EvaluationError",
    "DivergenceSuspected",
    "InconsistencyError",
    "CalibrationError",
    "AlgebraClass",
    "AlgebraParams",
    "bound_energy",
    "casimir",
    "AdmissibilityReport",
    "Convention",
    "QesParams",
    "admissibility",
    "density",
    "potential",
    "wavefunction",
    "NormalizationResult",
    "normalization",
    "TcsParams",
    "classify",
    "tau_of",
    "ResidualReport",
    "convention_calibrate",
    "radial_residual",
    "residual_scan",
    "standard_parameter_sets",
]
