"""Empirical convergence checks for sequences of Hahn numbers.

Weak convergence is coefficientwise: ``s_n[q]`` must converge for every
exponent ``q``.  Locally uniform convergence additionally asks, around each
``q``, for one index ``N`` and one window ``|q' - q| < delta`` on which all
coefficients have settled.  Both are judged on the finite prefix
``s_1 .. s_N``; the verdicts are classifications, not proofs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .errors import CutoffError
from .number import HahnNumber
from .text import format_exponent

SCHEMA = "hahn/1"

DELTA_GRID = tuple(Fraction(1, 2 ** i) for i in range(1, 11))


class Verdict(str, enum.Enum):
    CONSISTENT = "ConsistentWithConvergence"
    INCONSISTENT = "Inconsistent"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class SequenceReport:
    mode: str
    n_terms: int
    tol: float
    per_q: List[Tuple[Fraction, str, float]]
    windows: List[Tuple[Fraction, Optional[Fraction], str]] = field(default_factory=list)
    overall: Verdict = Verdict.INCONCLUSIVE
    diagnostics: List[str] = field(default_factory=list)

    def verdict_at(self, q) -> str:
        q = Fraction(q)
        for p, v, _ in self.per_q:
            if p == q:
                return v
        raise KeyError(q)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "mode": self.mode,
            "n_terms": self.n_terms,
            "tol": self.tol,
            "per_q": [{"q": format_exponent(q), "verdict": v, "spread": s} for q, v, s in self.per_q],
            "windows": [{"q": format_exponent(q), "delta": None if d is None else format_exponent(d),
                         "verdict": v} for q, d, v in self.windows],
            "overall": self.overall.value,
            "diagnostics": "; ".join(self.diagnostics),
        }


def _settling_index(values: List[float], tol: float) -> int:
    """First ``n`` (1-based) from which every value is within ``tol`` of the last."""
    last = values[-1]
    n = len(values)
    while n > 1 and abs(values[n - 2] - last) <= tol:
        n -= 1
    return n


def analyze_sequence(s: Callable[[int], HahnNumber], n_terms: int, tol: float = 1e-10,
                     mode: str = "weak") -> SequenceReport:
    """Classify ``s_1 .. s_N`` as consistent or inconsistent with convergence.

    Weak mode: an exponent first seen at ``n <= N/2`` is "cauchy" when its
    coefficients vary by less than ``tol`` over ``n in [N/2, N]`` and
    "not-cauchy" otherwise; later exponents are "inconclusive".

    Locally uniform mode adds, for each exponent ``q``, a search over
    ``delta`` in ``1/2, 1/4, ..., 1/1024`` for a window in which every
    exponent settles by ``N/2``.  Failing that, ``q`` is "non-uniform" when
    even the smallest window holds other exponents, and "inconclusive" when
    it is isolated there.
    """
    if n_terms < 8:
        raise ValueError(f"need at least 8 terms, got {n_terms}")
    if mode not in ("weak", "locally_uniform"):
        raise ValueError(f"unknown mode {mode!r}")
    seq = [s(n) for n in range(1, n_terms + 1)]
    cutoff = min(x.cutoff for x in seq)
    first_seen: Dict[Fraction, int] = {}
    for n, x in enumerate(seq, start=1):
        for q in x.support:
            if q < cutoff:
                first_seen.setdefault(q, n)
    if not first_seen and not all(x.is_zero for x in seq):
        raise CutoffError(f"no exponent lies below the common cutoff {cutoff}", cutoff)

    half = n_terms // 2
    report = SequenceReport(mode, n_terms, tol, [])
    settle: Dict[Fraction, int] = {}
    for q in sorted(first_seen):
        values = [x[q] for x in seq]
        settle[q] = _settling_index(values, tol)
        tail = values[half - 1:]
        spread = max(tail) - min(tail)
        if first_seen[q] > half:
            verdict = "inconclusive"
        elif spread < tol:
            verdict = "cauchy"
        else:
            verdict = "not-cauchy"
        report.per_q.append((q, verdict, spread))

    verdicts = [v for _, v, _ in report.per_q]
    bad = [q for q, v, _ in report.per_q if v == "not-cauchy"]
    if bad:
        report.diagnostics.append("coefficients not Cauchy at " + ", ".join(map(str, bad[:10])))
    late = verdicts.count("inconclusive")
    if late:
        report.diagnostics.append(f"{late} exponent(s) first appear after n = {half}")

    non_uniform = []
    if mode == "locally_uniform":
        support = sorted(first_seen)
        for q in support:
            verdict, found = "non-uniform", None
            for delta in DELTA_GRID:
                near = [p for p in support if abs(p - q) < delta]
                if max(settle[p] for p in near) <= half:
                    verdict, found = "uniform", delta
                    break
                if len(near) == 1:
                    # isolated exponent that settles late: no crowding to report
                    verdict = "inconclusive"
            report.windows.append((q, found, verdict))
            if verdict == "non-uniform":
                non_uniform.append(q)
        if non_uniform:
            report.diagnostics.append(
                "no shared settling index in any window around " + ", ".join(map(str, non_uniform[:10])))

    if bad or non_uniform:
        report.overall = Verdict.INCONSISTENT
    elif "cauchy" in verdicts or (not verdicts and all(x.is_zero for x in seq)):
        report.overall = Verdict.CONSISTENT
    else:
        report.overall = Verdict.INCONCLUSIVE
    return report
