"""Request and response shapes for the HTTP interface.

The JSON field names follow the command-line vocabulary, including the
reserved words "class" and "lambda", which map onto the attribute names
``cls`` and ``lam`` via aliases.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..algebra import AlgebraClass
from ..closed_forms import QesParams
from ..tables import TableSpec

ClassLabel = Literal["I", "II", "II+", "II-", "III"]
ConventionLabel = Literal["C_paper", "C_chain"]


class ParamsIn(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    cls: ClassLabel = Field(alias="class")
    k: float
    b: float
    tau: float
    m: Optional[float] = None

    def to_params(self) -> QesParams:
        return QesParams(
            AlgebraClass.parse(self.cls), k=self.k, b=self.b, tau=self.tau, m=self.m
        )


class TableSpecIn(BaseModel):
    quantity: Literal["potential", "wavefunction", "density"]
    rho_min: float = Field(gt=0.0)
    rho_max: float
    points: int = Field(ge=2)
    spacing: Literal["linear", "log"] = "log"
    format: Literal["csv", "json"] = "csv"

    @model_validator(mode="after")
    def _ordered(self) -> "TableSpecIn":
        if not self.rho_min < self.rho_max:
            raise ValueError("rho_min must be smaller than rho_max")
        return self

    def to_spec(self) -> TableSpec:
        return TableSpec(
            quantity=self.quantity,
            rho_min=self.rho_min,
            rho_max=self.rho_max,
            points=self.points,
            spacing=self.spacing,
            format=self.format,
        )


class TableRequest(BaseModel):
    params: ParamsIn
    spec: TableSpecIn
    convention: Optional[ConventionLabel] = None


class TableResponse(BaseModel):
    content: str
    points: int


class AdmissibilityOut(BaseModel):
    paper_regular: bool
    l2_normalizable: bool
    violated_constraints: list[str]
    exponent_at_zero: float
    behavior_at_inf: str


class ValidateResponse(AdmissibilityOut):
    model_config = ConfigDict(populate_by_name=True)

    cls: str = Field(alias="class")
    k: float
    b: float
    tau: float


class NormalizeRequest(BaseModel):
    params: ParamsIn
    abs_tol: float = Field(default=1e-12, gt=0.0)
    rel_tol: float = Field(default=1e-8, gt=0.0)
    weighted: bool = False


class NormVerdict(BaseModel):
    converges: bool
    alpha: float
    measure: Literal["flat", "weighted"]
    reason: str = ""
    tolerance_downgraded: bool = False
    value: Optional[float] = None
    abs_error_estimate: Optional[float] = None
    subdivisions: Optional[int] = None


class NormalizeResponse(BaseModel):
    flat: NormVerdict
    weighted: Optional[NormVerdict] = None


class VerifyRequest(BaseModel):
    params: Optional[ParamsIn] = None
    all: bool = False
    perturbation: float = 0.0
    convention: Optional[ConventionLabel] = None

    @model_validator(mode="after")
    def _exactly_one_target(self) -> "VerifyRequest":
        if self.all == (self.params is not None):
            raise ValueError("provide either params or all=true, not both")
        return self


class VerifyEntry(BaseModel):
    report: dict
    paper_regular: bool
    l2_normalizable: bool
    violated_constraints: list[str]
    closed_vs_algebra_max_diff: float


class VerifyResponse(BaseModel):
    entries: list[VerifyEntry]
    conventions: dict[str, str]
    all_passed: bool
    perturbation: float


class TcsRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    N: int
    lam: float = Field(alias="lambda")
    r: int
    s: int = 0
    k: float
    b: float


class TcsResponse(BaseModel):
    tau: float
    coupling_regime: str
    classes: dict[str, AdmissibilityOut]


class PresetOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    cls: str = Field(alias="class")
    k: float
    b: float
    tau: float
    rho_min: float
    rho_max: float
    points: int


class PresetsResponse(BaseModel):
    presets: list[PresetOut]


class HealthResponse(BaseModel):
    status: str
    version: str
