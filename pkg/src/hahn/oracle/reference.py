"""Brute-force reference computations.

Nothing here calls the arithmetic of :mod:`hahn.number`; values are read
from and written back into :class:`~hahn.number.HahnNumber` only through
its public ``terms``/``cutoff`` interface and constructor.  Everything is a
plain dictionary from exponent to coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from ..errors import BudgetError
from ..number import INF, HahnNumber


@dataclass(frozen=True)
class OracleConfig:
    max_terms: int = 100_000
    cauchy_tol: float = 1e-9
    m_max: int = 100_000

    def __post_init__(self):
        for name in ("max_terms", "m_max"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not self.cauchy_tol > 0:
            raise ValueError("cauchy_tol must be positive")


DEFAULT_CONFIG = OracleConfig()


def _lam(terms: Dict[Fraction, float]):
    return min(terms) if terms else INF


def _plus(a, b):
    # cutoffs mix Fraction and float inf
    s = a + b
    return INF if s == INF else s


def mul_naive(x: HahnNumber, y: HahnNumber) -> HahnNumber:
    """Literal double loop over both supports."""
    xt, yt = dict(x.terms), dict(y.terms)
    lx, ly = _lam(xt), _lam(yt)
    cutoff = min(_plus(lx, y.cutoff), _plus(ly, x.cutoff), _plus(x.cutoff, y.cutoff))
    out: Dict[Fraction, float] = {}
    for q1, c1 in xt.items():
        for q2, c2 in yt.items():
            q = q1 + q2
            if q < cutoff:
                out[q] = out.get(q, 0.0) + c1 * c2
    return HahnNumber(out, cutoff)


def add_naive(x: HahnNumber, y: HahnNumber) -> HahnNumber:
    cutoff = min(x.cutoff, y.cutoff)
    out: Dict[Fraction, float] = {}
    for q, c in x.terms + y.terms:
        if q < cutoff:
            out[q] = out.get(q, 0.0) + c
    return HahnNumber(out, cutoff)


def _dict_mul(a: Dict, b: Dict, bound, max_terms: int) -> Dict:
    out: Dict[Fraction, float] = {}
    for q1, c1 in a.items():
        for q2, c2 in b.items():
            q = q1 + q2
            if q < bound:
                out[q] = out.get(q, 0.0) + c1 * c2
    if len(out) > max_terms:
        raise BudgetError(f"intermediate power has {len(out)} terms, over the limit {max_terms}")
    return {q: c for q, c in out.items() if c != 0.0}


def partial_sum_path(ps, x: HahnNumber, checkpoints: Sequence[int], cutoff,
                     config: OracleConfig = DEFAULT_CONFIG) -> List[HahnNumber]:
    """``S_m(x) = sum_{n<=m} a_n (x - center)**n`` for each ``m`` in ``checkpoints``.

    Powers of ``z = x - center`` are kept only below the largest exponent any
    later term can still need, so the result is exact below the returned
    cutoff.  Coefficients at each exponent are accumulated with ``fsum``.
    """
    ms = sorted(set(int(m) for m in checkpoints))
    if not ms or ms[0] < 0:
        raise ValueError("checkpoints must be non-negative")
    m_top = ms[-1]
    if m_top > config.m_max:
        raise BudgetError(f"m = {m_top} exceeds m_max = {config.m_max}")
    cutoff = INF if cutoff is None else cutoff

    # z = x - center, by hand
    zc = min(x.cutoff, ps.center.cutoff)
    z: Dict[Fraction, float] = {}
    for q, c in x.terms:
        z[q] = z.get(q, 0.0) + c
    for q, c in ps.center.terms:
        z[q] = z.get(q, 0.0) - c
    z = {q: c for q, c in z.items() if c != 0.0 and q < zc}
    lz = _lam(z)

    coeffs = [dict(ps.coefficient(n).terms) for n in range(m_top + 1)]
    lams = [_lam(a) for a in coeffs]
    # bound[n]: exponents of z**n that some a_j z**j, j >= n, can still use
    bound = [None] * (m_top + 1)
    best = -INF
    for n in range(m_top, -1, -1):
        if lams[n] != INF:
            best = max(best, cutoff - lams[n])
        bound[n] = best
        if lz == INF:
            best = -INF
        elif best != INF:
            best = best - lz

    # known region of z**n: exact when z is, else min over the product rule
    acc: Dict[Fraction, List[float]] = {}
    result_cut = cutoff
    power: Dict[Fraction, float] = {Fraction(0): 1.0}
    power_cut = INF
    out = []
    mi = 0
    for n in range(m_top + 1):
        if n > 0:
            lp = _lam(power)
            power_cut = min(_plus(lp, zc), _plus(lz, power_cut), _plus(power_cut, zc))
            power = _dict_mul(power, z, min(bound[n], power_cut), config.max_terms)
        a = coeffs[n]
        if a:
            la = _lam(a)
            result_cut = min(result_cut, _plus(la, power_cut))
            for q1, c1 in a.items():
                for q2, c2 in power.items():
                    q = q1 + q2
                    if q < cutoff:
                        acc.setdefault(q, []).append(c1 * c2)
        if n == ms[mi]:
            out.append(HahnNumber({q: math.fsum(v) for q, v in acc.items()}, result_cut))
            mi += 1
    return out


def partial_sums(ps, x: HahnNumber, m: int, cutoff,
                 config: OracleConfig = DEFAULT_CONFIG) -> HahnNumber:
    """``S_m(x)`` truncated at ``cutoff``."""
    return partial_sum_path(ps, x, [m], cutoff, config)[0]


def cauchy_at(path: Sequence[HahnNumber], q, tol: float, tail: int = 3) -> bool:
    """Whether the last ``tail`` partial sums agree within ``tol`` at ``q``."""
    vals = [s[q] for s in path[-tail:]]
    return max(vals) - min(vals) < tol


def enumerate_reduced_fractions(bound: int) -> List[Tuple[Fraction, int]]:
    """All reduced ``a/b`` with ``|a| + b <= bound``, paired with ``|a| + b``.

    Exhaustive scan over numerator and denominator with a gcd test.
    """
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    out = []
    for b in range(1, bound + 1):
        for a in range(-bound, bound + 1):
            if abs(a) + b <= bound and math.gcd(abs(a), b) == 1:
                out.append((Fraction(a, b), abs(a) + b))
    out.sort(key=lambda t: (t[1], t[0]))
    return out
