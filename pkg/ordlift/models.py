"""
Pydantic BaseModel definitions for ordlift verdicts, audits and run reports
Field descriptions are centralized in descriptions.py and referenced directly in Field() declarations
"""
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .config import (
    DEFAULT_COVER, DEFAULT_OUTPUT_FORMAT, DEFAULT_POWER_CAP, DEFAULT_SAMPLES, DEFAULT_SEED,
    DEFAULT_TOLERANCE, DEFAULT_WORD_LENGTH,
)
from .descriptions import (
    AUDIT_FIELDS, COMPARISON_FIELDS, DOMINANCE_FIELDS, GROWTH_FIELDS, GROWTH_LIMIT_FIELDS,
    LAMBDA_FIELDS, PROBE_FIELDS, REPORT_FIELDS, RUN_CONFIG_FIELDS, VIOLATION_FIELDS, WITNESS_FIELDS,
)
from .intervals import Interval


class Comparison(str, Enum):
    EQUAL = "equal"
    BELOW = "strictly-below"
    ABOVE = "strictly-above"
    INCOMPARABLE = "incomparable"


class Positivity(str, Enum):
    POSITIVE = "positive-nonidentity"
    IDENTITY = "identity"
    NOT_POSITIVE = "not-positive"


class ProbeOutcome(str, Enum):
    CERTIFIED = "certified-dominant-on-probes"
    REFUTED = "refuted"
    EXHAUSTED = "budget-exhausted"


class Witness(BaseModel):
    point: Optional[Fraction] = Field(default=None, description=WITNESS_FIELDS["point"])
    enclosure: Interval = Field(description=WITNESS_FIELDS["enclosure"])
    descriptor: str = Field(description=WITNESS_FIELDS["descriptor"])
    model_config = ConfigDict(extra="forbid", frozen=True)


class ComparisonVerdict(BaseModel):
    verdict: Comparison = Field(description=COMPARISON_FIELDS["verdict"])
    witness: Optional[Witness] = Field(default=None, description=COMPARISON_FIELDS["witness"])
    model_config = ConfigDict(extra="forbid", frozen=True)


class DominanceVerdict(BaseModel):
    dominant: bool = Field(description=DOMINANCE_FIELDS["dominant"])
    witness: Optional[Witness] = Field(default=None, description=DOMINANCE_FIELDS["witness"])
    model_config = ConfigDict(extra="forbid", frozen=True)


class ProbeResult(BaseModel):
    outcome: ProbeOutcome = Field(description=PROBE_FIELDS["outcome"])
    probe_index: Optional[int] = Field(default=None, description=PROBE_FIELDS["probe_index"])
    powers: List[int] = Field(default_factory=list, description=PROBE_FIELDS["powers"])
    model_config = ConfigDict(extra="forbid", frozen=True)


class GrowthRecord(BaseModel):
    n: int = Field(ge=1, description=GROWTH_FIELDS["n"])
    e_n: int = Field(description=GROWTH_FIELDS["e_n"])
    interval: Optional[Interval] = Field(default=None, description=GROWTH_FIELDS["interval"])
    provenance: List[str] = Field(default_factory=list, description=GROWTH_FIELDS["provenance"])
    model_config = ConfigDict(extra="forbid", frozen=True)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.e_n, self.n)


class GrowthLimit(BaseModel):
    estimate: Fraction = Field(description=GROWTH_LIMIT_FIELDS["estimate"])
    interval: Optional[Interval] = Field(default=None, description=GROWTH_LIMIT_FIELDS["interval"])
    record: GrowthRecord = Field(description=GROWTH_LIMIT_FIELDS["records"])
    model_config = ConfigDict(extra="forbid", frozen=True)


class Violation(BaseModel):
    check: str = Field(description=VIOLATION_FIELDS["check"])
    sample: str = Field(description=VIOLATION_FIELDS["sample"])
    detail: str = Field(default="", description=VIOLATION_FIELDS["detail"])
    model_config = ConfigDict(extra="forbid", frozen=True)


class AuditReport(BaseModel):
    name: str = Field(description=AUDIT_FIELDS["name"])
    columns: List[str] = Field(default_factory=list, description=AUDIT_FIELDS["columns"])
    rows: List[List[str]] = Field(default_factory=list, description=AUDIT_FIELDS["rows"])
    violations: List[Violation] = Field(default_factory=list, description=AUDIT_FIELDS["violations"])
    model_config = ConfigDict(extra="forbid")

    @property
    def passed(self) -> bool:
        return not self.violations

    def add_row(self, *values) -> None:
        self.rows.append([str(v) for v in values])

    def flag(self, check: str, sample, detail: str = "") -> None:
        self.violations.append(Violation(check=check, sample=str(sample), detail=detail))

    def violations_of(self, check: str) -> List[Violation]:
        return [v for v in self.violations if v.check == check]


class LambdaFit(BaseModel):
    proportional: bool = Field(description=LAMBDA_FIELDS["proportional"])
    lambda_interval: Optional[Interval] = Field(default=None, description=LAMBDA_FIELDS["lambda_interval"])
    toledo: Optional[Interval] = Field(default=None, description=LAMBDA_FIELDS["toledo"])
    witness_pair: Optional[Tuple[str, str]] = Field(default=None, description=LAMBDA_FIELDS["witness_pair"])
    model_config = ConfigDict(extra="forbid", frozen=True)


class RunConfig(BaseModel):
    command: str = Field(description=RUN_CONFIG_FIELDS["command"])
    inputs: List[str] = Field(default_factory=list, description=RUN_CONFIG_FIELDS["inputs"])
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64, description=RUN_CONFIG_FIELDS["seed"])
    samples: int = Field(default=DEFAULT_SAMPLES, ge=1, description=RUN_CONFIG_FIELDS["samples"])
    tol: Fraction = Field(default=DEFAULT_TOLERANCE, description=RUN_CONFIG_FIELDS["tol"])
    power_cap: int = Field(default=DEFAULT_POWER_CAP, ge=1, description=RUN_CONFIG_FIELDS["power_cap"])
    cover: str = Field(default=DEFAULT_COVER, description=RUN_CONFIG_FIELDS["cover"])
    out: str = Field(default="-", description=RUN_CONFIG_FIELDS["out"])
    format: str = Field(default=DEFAULT_OUTPUT_FORMAT, pattern="^(csv|svg)$", description=RUN_CONFIG_FIELDS["format"])
    q: Fraction = Field(default=Fraction(0), description=RUN_CONFIG_FIELDS["q"])
    n: int = Field(default=10, ge=1, description=RUN_CONFIG_FIELDS["n"])
    words: int = Field(default=50, ge=0, description=RUN_CONFIG_FIELDS["words"])
    word_length: int = Field(default=DEFAULT_WORD_LENGTH, ge=1, description=RUN_CONFIG_FIELDS["word_length"])
    model_config = ConfigDict(extra="forbid", frozen=True)

    @field_validator("tol")
    @classmethod
    def _positive_tolerance(cls, value: Fraction) -> Fraction:
        if value <= 0:
            raise ValueError("tol must be positive")
        return value

    @field_validator("q")
    @classmethod
    def _nonnegative_shift(cls, value: Fraction) -> Fraction:
        if value < 0:
            raise ValueError("q must be nonnegative")
        return value

    def header(self) -> Dict[str, str]:
        """Config echo for report headers, every field verbatim."""
        values = self.model_dump()
        return {key: (",".join(value) if isinstance(value, list) else str(value)) for key, value in values.items()}


class Report(BaseModel):
    header: Dict[str, str] = Field(default_factory=dict, description=REPORT_FIELDS["header"])
    sections: List[AuditReport] = Field(default_factory=list, description=REPORT_FIELDS["sections"])
    model_config = ConfigDict(extra="forbid")

    @property
    def violations(self) -> List[Violation]:
        return [v for section in self.sections for v in section.violations]

    @property
    def verdict(self) -> str:
        return "fail" if self.violations else "pass"

    @property
    def exit_code(self) -> int:
        return 1 if self.violations else 0
