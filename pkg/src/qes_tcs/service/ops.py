"""Handlers shared by the command line (in process) and the HTTP routes.

Each handler takes a validated request model and returns a response
model; domain failures propagate as QesError subclasses for the caller
to map onto exit codes or HTTP statuses.
"""

from __future__ import annotations

from ..closed_forms import AdmissibilityReport, Convention, admissibility
from ..presets import figure_presets
from ..quadrature import NormalizationResult, normalization
from ..tables import make_table
from ..tcs import TcsParams, classify
from ..verify import (
    closed_vs_algebra_diff,
    convention_calibrate,
    residual_scan,
    standard_parameter_sets,
)
from . import schemas


def health() -> schemas.HealthResponse:
    from .. import __version__

    return schemas.HealthResponse(status="ok", version=__version__)


def _admissibility_out(rep: AdmissibilityReport) -> schemas.AdmissibilityOut:
    return schemas.AdmissibilityOut(
        paper_regular=rep.paper_regular,
        l2_normalizable=rep.l2_normalizable,
        violated_constraints=list(rep.violated_constraints),
        exponent_at_zero=rep.exponent_at_zero,
        behavior_at_inf=rep.behavior_at_inf.describe(),
    )


def validate(req: schemas.ParamsIn) -> schemas.ValidateResponse:
    p = req.to_params()
    rep = admissibility(p)
    return schemas.ValidateResponse(
        cls=p.label,
        k=p.k,
        b=p.b,
        tau=p.tau,
        **_admissibility_out(rep).model_dump(),
    )


def table(req: schemas.TableRequest) -> schemas.TableResponse:
    p = req.params.to_params()
    conv = None if req.convention is None else Convention.parse(req.convention)
    text = make_table(req.spec.to_spec(), p, conv)
    return schemas.TableResponse(content=text, points=req.spec.points)


def _verdict(nr: NormalizationResult) -> schemas.NormVerdict:
    out = schemas.NormVerdict(
        converges=nr.converges,
        alpha=nr.alpha,
        measure=nr.measure,
        reason=nr.reason,
        tolerance_downgraded=nr.tolerance_downgraded,
    )
    if nr.result is not None:
        out = out.model_copy(
            update=dict(
                value=nr.result.value,
                abs_error_estimate=nr.result.abs_error_estimate,
                subdivisions=nr.result.subdivisions,
            )
        )
    return out


def normalize(req: schemas.NormalizeRequest) -> schemas.NormalizeResponse:
    p = req.params.to_params()
    flat = _verdict(normalization(p, abs_tol=req.abs_tol, rel_tol=req.rel_tol))
    weighted = None
    if req.weighted:
        weighted = _verdict(
            normalization(p, abs_tol=req.abs_tol, rel_tol=req.rel_tol, weighted=True)
        )
    return schemas.NormalizeResponse(flat=flat, weighted=weighted)


def verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    params_list = standard_parameter_sets() if req.all else [req.params.to_params()]
    forced = None if req.convention is None else Convention.parse(req.convention)
    conventions: dict[str, str] = {}
    entries: list[schemas.VerifyEntry] = []
    for p in params_list:
        # calibration runs on the clean potential, so a nonzero
        # perturbation exercises only the scanner's sensitivity
        best, _residuals = convention_calibrate(p)
        if best is not None:
            prev = conventions.get(p.label)
            conventions[p.label] = (
                best.value if prev in (None, best.value) else "inconsistent"
            )
        use = forced if forced is not None else best
        rep = residual_scan(p, convention=use, perturbation=req.perturbation)
        diff, _ = closed_vs_algebra_diff(p, convention=use)
        adm = admissibility(p)
        entries.append(
            schemas.VerifyEntry(
                report=rep.to_json_dict(),
                paper_regular=adm.paper_regular,
                l2_normalizable=adm.l2_normalizable,
                violated_constraints=list(adm.violated_constraints),
                closed_vs_algebra_max_diff=diff,
            )
        )
    return schemas.VerifyResponse(
        entries=entries,
        conventions=conventions,
        all_passed=all(e.report["passed"] for e in entries),
        perturbation=req.perturbation,
    )


def tcs(req: schemas.TcsRequest) -> schemas.TcsResponse:
    t = TcsParams(N=req.N, lam=req.lam, r=req.r, s=req.s)
    reports = classify(t, req.k, req.b)
    return schemas.TcsResponse(
        tau=t.tau,
        coupling_regime=t.coupling_regime,
        classes={c: _admissibility_out(rep) for c, rep in reports.items()},
    )


def presets() -> schemas.PresetsResponse:
    out = []
    for fp in figure_presets():
        q = fp.params
        out.append(
            schemas.PresetOut(
                name=fp.name,
                cls=q.label,
                k=q.k,
                b=q.b,
                tau=q.tau,
                rho_min=fp.rho_min,
                rho_max=fp.rho_max,
                points=fp.points,
            )
        )
    return schemas.PresetsResponse(presets=out)
