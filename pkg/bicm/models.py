import math
from datetime import UTC, datetime
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

CapacityKind = Literal["cm", "bicm", "awgn"]


class QuadratureSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    method: Literal["gauss-hermite", "monte-carlo"] = "gauss-hermite"
    nodes: int = Field(default=64, ge=2, le=4096, description="Gauss-Hermite nodes per real dimension")
    adaptive: bool = Field(default=True, description="Double the node count until successive rates agree")
    tolerance: float = Field(default=1e-10, gt=0.0, description="Agreement (bits) that stops node doubling")
    max_nodes: int = Field(default=1024, ge=2, le=4096, description="Node cap per real dimension when adaptive")
    samples: int = Field(default=200_000, gt=0, description="Noise draws per symbol for Monte-Carlo")
    seed: int = 0


class ChannelSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    fading_second_moment: float = Field(default=1.0, gt=0.0)
    dimension: int = Field(default=1, ge=1)

    @field_validator("fading_second_moment")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("E[H^2] must be finite")
        return value


class BitDistribution(BaseModel):
    """Per-position probabilities P_{C_k}(0); P_{C_k}(1) is the complement."""

    model_config = ConfigDict(frozen=True)

    p0: tuple[float, ...] = Field(min_length=1)

    @field_validator("p0")
    @classmethod
    def _in_unit_interval(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        for k, p in enumerate(value):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"P_C{k}(0) must lie in [0, 1], got {p}")
        return value

    @classmethod
    def uniform(cls, m: int) -> "BitDistribution":
        return cls(p0=(0.5,) * m)

    @property
    def order(self) -> int:
        return len(self.p0)

    def probability(self, k: int, u: int) -> float:
        return self.p0[k] if u == 0 else 1.0 - self.p0[k]

    @property
    def is_uniform(self) -> bool:
        return all(p == 0.5 for p in self.p0)


class CapacityPoint(BaseModel):
    snr: float
    snr_db: float
    rate: float = Field(ge=0.0)
    ebn0: float
    ebn0_db: float


class CapacityCurve(BaseModel):
    kind: CapacityKind
    constellation: str
    points: list[CapacityPoint] = Field(default_factory=list)
    zero_rate_ebn0: float | None = None

    @model_validator(mode="after")
    def _snr_increasing(self) -> "CapacityCurve":
        snrs = [p.snr for p in self.points]
        if any(b <= a for a, b in zip(snrs, snrs[1:], strict=False)):
            raise ValueError("curve SNR values must be strictly increasing")
        return self


class MinimumEbN0(BaseModel):
    rate: float = Field(description="Rate achieving the minimum; 0 when attained as Rc -> 0+")
    ebn0: float
    ebn0_db: float
    at_zero_rate: bool
    interior_roots: list[float] = Field(default_factory=list)


class GapResult(BaseModel):
    rate: float
    gap: float
    gap_db: float


class AlphaResult(BaseModel):
    alpha: float
    zero_rate_ebn0: float
    zero_rate_ebn0_db: float
    degenerate_bits: list[tuple[int, int]] = Field(default_factory=list)

    @classmethod
    def from_alpha(cls, alpha: float, degenerate_bits: list[tuple[int, int]] | None = None) -> "AlphaResult":
        # Round-off around zero (BSGC) must read as exactly zero
        alpha = 0.0 if abs(alpha) < 1e-12 else alpha
        ebn0 = math.inf if alpha <= 0.0 else 1.0 / alpha
        ebn0_db = math.inf if alpha <= 0.0 else 10.0 * math.log10(ebn0)
        return cls(alpha=alpha, zero_rate_ebn0=ebn0, zero_rate_ebn0_db=ebn0_db, degenerate_bits=degenerate_bits or [])


class FooVerdict(BaseModel):
    is_foo: bool
    v: list[list[float]]
    residual: float
    alpha: float


class AlphaClass(BaseModel):
    alpha: float
    count: int
    witness: list[str]


class AlphaCensus(BaseModel):
    alphabet: str
    total: int
    exact: bool
    classes: list[AlphaClass]
    class_count: int
    max_alpha: float
    max_witness: list[str]
    foo_count: int
    min_class_spacing: float | None = None

    @model_validator(mode="after")
    def _counts_add_up(self) -> "AlphaCensus":
        if sum(c.count for c in self.classes) != self.total:
            raise ValueError("class counts must sum to the number of enumerated labelings")
        return self


class ShapingResult(BaseModel):
    snr: float
    bits: BitDistribution
    shaped_rate: float
    uniform_rate: float
    step: float


class LabelingCrossover(BaseModel):
    labelings: tuple[str, str]
    snr: float
    rate: float
    ebn0_db: float


class RunManifest(BaseModel):
    subcommand: str
    config: dict[str, Any] = Field(default_factory=dict)
    version: str
    timestamp: str = Field(default_factory=lambda: datetime.now(UTC).isoformat(timespec="seconds"))


class ReferenceRow(BaseModel):
    table: Literal["zero-rate-ebn0", "zero-rate-gap"]
    alphabet: str
    labeling: str
    alpha: float
    computed_db: float
    published_db: float | None = None
    within_tolerance: bool | None = None
