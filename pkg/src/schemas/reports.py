"""Pydantic schemas for results and reports."""
from typing import Any, Dict, List, Literal, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, computed_field
from src.core.config import settings
from src.schemas.specs import GridSpec, SimSpec


class ClosedFormConstants(BaseModel):
    """Harmonic-measure quantities of the slit domain with tip at height 1/c."""
    c: float = Field(..., gt=0.0, le=1.0)
    P: float = Field(..., description="1 - (2/pi) arcsin c")
    E: float = Field(..., description="(2/pi) ln(1/c + sqrt(1/c^2 - 1))")
    U0c: float = Field(..., description="P - c E")


class SimResult(BaseModel):
    """Monte Carlo estimates. Censored paths count as non-hits and carry no exit moment."""
    spec: SimSpec
    p_hat: float = Field(..., ge=0.0, le=1.0)
    p_se: float = Field(..., ge=0.0)
    m1_hat: Optional[float] = None
    m1_se: Optional[float] = Field(None, ge=0.0)
    m2_hat: Optional[float] = None
    m2_se: Optional[float] = Field(None, ge=0.0)
    censored_fraction: float = Field(..., ge=0.0, le=1.0)
    exit_counts: Dict[str, int] = Field(default_factory=dict)
    censoring_policy: str = "censored paths count as non-hits and are excluded from exit moments"

    @property
    def moment(self) -> Tuple[float, float]:
        """(estimate, standard error) of the domain's exit moment."""
        if self.spec.domain == "slit":
            return self.m1_hat or 0.0, self.m1_se or 0.0
        return self.m2_hat or 0.0, self.m2_se or 0.0


class BiasRow(BaseModel):
    """One step size of a bias table."""
    step: float
    p_hat: float
    p_se: float
    p_error: float
    moment_hat: float
    moment_se: float
    moment_error: float
    censored_fraction: float


class VerificationEntry(BaseModel):
    """One inequality instance; passes when slack >= -tolerance."""
    model_config = ConfigDict(populate_by_name=True)

    name: str
    lhs: float
    rhs: float
    slack: float
    tolerance: float = Field(default_factory=lambda: settings.inequality_tolerance, ge=0.0)
    passed: bool = Field(..., alias="pass")
    params: Dict[str, Any] = Field(default_factory=dict)
    provenance: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_sides(
        cls,
        name: str,
        lhs: float,
        rhs: float,
        tolerance: Optional[float] = None,
        params: Optional[Dict[str, Any]] = None,
        provenance: Optional[Dict[str, Any]] = None,
    ) -> "VerificationEntry":
        tol = settings.inequality_tolerance if tolerance is None else tolerance
        slack = float(rhs - lhs)
        return cls(
            name=name,
            lhs=float(lhs),
            rhs=float(rhs),
            slack=slack,
            tolerance=tol,
            passed=slack >= -tol,
            params=params or {},
            provenance=provenance or {},
        )


class VerificationReport(BaseModel):
    """Ordered list of entries plus the defaults they were produced under."""
    entries: List[VerificationEntry] = Field(default_factory=list)
    provenance: Dict[str, Any] = Field(default_factory=settings.provenance)

    @computed_field  # type: ignore[misc]
    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def failures(self) -> List[VerificationEntry]:
        return [e for e in self.entries if not e.passed]

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(entries=self.entries + other.entries, provenance=self.provenance)

    def to_text(self) -> str:
        """Aligned-column table, one line per entry."""
        width = max([len(e.name) for e in self.entries] + [4])
        lines = [f"{'name':<{width}}  {'lhs':>14}  {'rhs':>14}  {'slack':>12}  pass"]
        for e in self.entries:
            lines.append(
                f"{e.name:<{width}}  {e.lhs:>14.8g}  {e.rhs:>14.8g}  {e.slack:>12.4e}  "
                f"{'yes' if e.passed else 'NO'}"
            )
        return "\n".join(lines)


class WeakTypeConstant(BaseModel):
    """Best constant C in |{Hf >= 1}|^(1/q) <= C ||f||_p."""
    p: Literal[1, 2]
    q: float = Field(..., gt=0.0)
    value: float = Field(..., gt=0.0)
    argmax_x: float = Field(..., ge=0.0)
    attained: bool = True
    witness_c: Optional[float] = Field(None, description="Extremal-pair parameter attaining the maximum")
    witness_residual: Optional[float] = Field(
        None, description="|predicted measure - bound| for the witness pair"
    )


class PropertyCheck(BaseModel):
    """Outcome of one certificate property over the grid."""
    name: str
    passed: bool
    worst_slack: float
    worst_point: Tuple[float, float]
    tolerance: float
    checked_points: int
    fallback_points: int = 0


class CertificateReport(BaseModel):
    """Grid certificate of the special function's properties."""
    grid: GridSpec
    checks: List[PropertyCheck]
    bound_max: float = Field(..., description="max |U(x, y) + |x|| over the grid")
    excluded_points: int
    provenance: Dict[str, Any] = Field(default_factory=settings.provenance)

    @computed_field  # type: ignore[misc]
    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class ConvergenceRow(BaseModel):
    """Measured vs predicted quantities of an extremal pair at one (n, r)."""
    n: int
    eval_radius: float
    measure: float
    exact_measure: float
    predicted_measure: float
    measure_error: float
    norm_raw: float
    norm_refined: float
    predicted_norm: float
    norm_error: float
    refined_converged: bool


class ExtremalSidecar(BaseModel):
    """Metadata written next to an exported extremal pair."""
    kind: Literal["P1_SLIT", "P2_STRIP"]
    c: float
    n: int
    eval_radius: float
    predicted_measure: float
    predicted_norm: float
    singular_angles: List[float]
    measure: float
    limit_measure: float
    exact_measure: float
    norm_refined: float
    conjugacy_residual: Optional[float] = None
    conjugacy_radius: Optional[float] = None


class SimulationReport(BaseModel):
    """Output of the simulate command."""
    result: SimResult
    verification: VerificationReport
    bias_table: Optional[List[BiasRow]] = None


class ExtremalReport(BaseModel):
    """Output of the extremal command."""
    sidecar: ExtremalSidecar
    verification: VerificationReport
    convergence: Optional[List[ConvergenceRow]] = None
