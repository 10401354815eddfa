"""Suite reports and their JSON form."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from ..fileio import encode_channel, encode_matrix
from ..quantum import KrausChannel


@dataclass(frozen=True)
class Check:
    """One evaluated relation ``lhs <= rhs`` (``relation="le"``) or ``lhs == rhs`` (``"eq"``)."""

    label: str
    lhs: float
    rhs: float
    relation: str
    tol: float

    @property
    def gap(self) -> float:
        if self.relation == "eq":
            return abs(self.lhs - self.rhs)
        return self.lhs - self.rhs

    @property
    def violated(self) -> bool:
        # a NaN gap counts as a violation
        return not self.gap <= self.tol


@dataclass
class Violation:
    trial: int
    dim: int
    check: str
    lhs: float
    rhs: float
    gap: float
    tol: float
    instance: dict


@dataclass
class SuiteReport:
    suite_name: str
    statement: str
    theorem: bool
    trials: int
    dims: list[int]
    seed: int
    checks_evaluated: int = 0
    retries: int = 0
    skipped: int = 0
    max_gap_observed: float | None = None
    max_gap_by_check: dict[str, float] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, trial: int, dim: int, check: Check, instance) -> None:
        self.checks_evaluated += 1
        gap = check.gap
        if math.isfinite(gap):
            if self.max_gap_observed is None or gap > self.max_gap_observed:
                self.max_gap_observed = gap
            prev = self.max_gap_by_check.get(check.label)
            if prev is None or gap > prev:
                self.max_gap_by_check[check.label] = gap
        if check.violated:
            self.violations.append(Violation(
                trial, dim, check.label, _num(check.lhs), _num(check.rhs), _num(gap), check.tol,
                encode_instance(instance)))

    def to_dict(self, include_timing: bool = False) -> dict:
        doc = asdict(self)
        if not include_timing:
            doc.pop("elapsed")
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "SuiteReport":
        doc = dict(doc)
        doc["violations"] = [Violation(**v) for v in doc.get("violations", [])]
        return cls(**doc)


def _num(x: float):
    """JSON has no infinities; they are written as the strings "inf"/"-inf"."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return x


def encode_instance(obj):
    if isinstance(obj, KrausChannel):
        return encode_channel(obj)
    if isinstance(obj, np.ndarray):
        if obj.ndim == 1 and obj.dtype.kind in "iu":
            return [int(x) for x in obj]
        return encode_matrix(obj)
    if isinstance(obj, dict):
        return {str(k): encode_instance(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode_instance(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    return obj
