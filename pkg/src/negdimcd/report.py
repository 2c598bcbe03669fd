"""Uniform result record for every inequality checker."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

__all__ = ["CheckReport"]


@dataclass
class CheckReport:
    """Outcome of a margin check.

    ``worst_margin`` is signed: nonnegative means the inequality held with
    slack, and the check passes iff worst_margin >= -tolerance.  ``status``
    is one of "checked", "trivial" (every margin was +inf by an extended-real
    convention), "vacuous" (hypotheses make the claim empty), or
    "inconclusive" (discretization did not converge; counts as a failure).
    """

    name: str
    passed: bool
    worst_margin: float
    worst_location: Any
    n_evaluations: int
    tolerance: float
    status: str = "checked"
    note: str = ""
    details: dict = field(default_factory=dict)

    @classmethod
    def from_margins(cls, name: str, margins: Sequence[float],
                     locations: Sequence[Any], tolerance: float,
                     note: str = "", details: dict | None = None) -> "CheckReport":
        """Reduce pointwise margins by index-ordered min.

        +inf margins record trivially-true evaluations and never drag the
        minimum; a check whose every margin is +inf passes with status
        "trivial".
        """
        margins = list(margins)
        locations = list(locations)
        if len(margins) != len(locations):
            raise ValueError("margins and locations must align")
        if not margins:
            raise ValueError("no margins to reduce")
        if any(math.isnan(m) for m in margins):
            i = next(i for i, m in enumerate(margins) if math.isnan(m))
            return cls(name=name, passed=False, worst_margin=math.nan,
                       worst_location=locations[i], n_evaluations=len(margins),
                       tolerance=tolerance, status="inconclusive",
                       note=note or "nan margin", details=details or {})
        worst = math.inf
        where = None
        for m, loc in zip(margins, locations):
            if m < worst:
                worst = m
                where = loc
        if worst == math.inf:
            return cls(name=name, passed=True, worst_margin=math.inf,
                       worst_location=None, n_evaluations=len(margins),
                       tolerance=tolerance, status="trivial", note=note,
                       details=details or {})
        return cls(name=name, passed=bool(worst >= -tolerance), worst_margin=worst,
                   worst_location=where, n_evaluations=len(margins),
                   tolerance=tolerance, note=note, details=details or {})

    @classmethod
    def vacuous(cls, name: str, tolerance: float, note: str) -> "CheckReport":
        return cls(name=name, passed=True, worst_margin=math.inf,
                   worst_location=None, n_evaluations=0, tolerance=tolerance,
                   status="vacuous", note=note)

    @classmethod
    def inconclusive(cls, name: str, tolerance: float, note: str) -> "CheckReport":
        return cls(name=name, passed=False, worst_margin=math.nan,
                   worst_location=None, n_evaluations=0, tolerance=tolerance,
                   status="inconclusive", note=note)
