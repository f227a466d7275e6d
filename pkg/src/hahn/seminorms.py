"""Semi-norm families, pseudo-ball membership and the induced metrics.

Two families act on truncated Hahn numbers:

* the partition family ``gamma_seminorm(p, n, x) = max |x[q]|`` over
  ``q`` in ``p.prefix(n)``;
* the locally uniform family ``u_seminorm(r, x) = max |x[q]|`` over
  ``q <= r``.

On a finite representation the supremum in the second family is always a
maximum, so it never takes the value ``+inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CutoffError, UndecidableError
from .number import HahnNumber, as_exponent
from .partitions import DIAGONAL, Partition


def _as_radius(r) -> Fraction:
    """Exact value of a positive real radius (floats are taken exactly)."""
    if isinstance(r, float):
        if not math.isfinite(r):
            raise ValueError(f"radius must be finite, got {r!r}")
        r = Fraction(r)
    else:
        r = as_exponent(r)
    if r <= 0:
        raise ValueError(f"radius must be positive, got {r}")
    return r


def mu(r) -> int:
    """Smallest natural ``n`` with ``1/n < r``.

    This equals ``ceil(1/r)`` except when ``1/r`` is an integer, where the
    strict inequality forces ``1/r + 1``.  Floats are used at their exact
    binary value.
    """
    r = _as_radius(r)
    return math.floor(1 / r) + 1


def gamma_seminorm(p: Partition, n: int, x: HahnNumber) -> float:
    """``max |x[q]|`` over ``q`` in ``p.prefix(n)``; 0 on an empty overlap."""
    top = p.prefix_max(n)
    if top >= x.cutoff:
        raise CutoffError(
            f"prefix({n}) reaches exponent {top}, not below the cutoff {x.cutoff}", top)
    return max((abs(c) for q, c in x.terms if p.in_prefix(q, n)), default=0.0)


def u_seminorm(r, x: HahnNumber) -> float:
    """``max |x[q]|`` over stored ``q <= r``."""
    r = as_exponent(r) if not isinstance(r, float) else Fraction(r)
    if r >= x.cutoff:
        raise CutoffError(f"u-seminorm at {r} needs coefficients up to the cutoff {x.cutoff}", r)
    best = 0.0
    for q, c in x.terms:
        if q > r:
            break
        best = max(best, abs(c))
    return best


def in_gamma_ball(p: Partition, center: HahnNumber, r, y: HahnNumber) -> bool:
    """``y`` lies in the pseudo-ball of radius ``r`` around ``center``."""
    return gamma_seminorm(p, mu(r), y - center) < r


def in_u_ball(center: HahnNumber, q, y: HahnNumber) -> bool:
    """``y`` lies in the locally uniform pseudo-ball of rational radius ``q``."""
    q = _as_radius(q)
    return u_seminorm(1 / q, y - center) < q


def in_valuation_ball(center: HahnNumber, n, y: HahnNumber) -> bool:
    """``|y - center| < d**n`` in the field order.

    True when ``lam(y - center) > n`` and false when it is below ``n``.  At
    ``lam = n`` the sign of ``d**n - |y - center|`` is read off its leading
    coefficient, which may require the next stored term.
    """
    n = as_exponent(n)
    z = y - center
    if z.is_zero:
        if z.cutoff > n:
            return True
        raise UndecidableError(f"difference is unknown at exponent {n} (cutoff {z.cutoff})")
    lam = z.leading_exponent
    if lam > n:
        return True
    if lam < n:
        return False
    lead = abs(z.leading_coefficient)
    if lead != 1.0:
        return lead < 1.0
    # d^n - |z| = -(sign * rest of z): sign of the next term decides
    sign = 1.0 if z.leading_coefficient > 0 else -1.0
    if len(z) > 1:
        return -sign * z.coefficients[1] > 0
    if z.exact:
        return False
    raise UndecidableError(f"|y - center| agrees with d^{n} below cutoff {z.cutoff}")


@dataclass(frozen=True)
class MetricValue:
    value: float
    error_bound: float

    def __iter__(self):
        return iter((self.value, self.error_bound))

    def to_dict(self):
        return {"value": self.value, "error_bound": self.error_bound}


def _metric(seminorm_at, x: HahnNumber, y: HahnNumber, k_max: int) -> MetricValue:
    if k_max < 1:
        raise ValueError(f"K must be >= 1, got {k_max}")
    z = x - y
    total = 0.0
    for k in range(1, k_max + 1):
        s = seminorm_at(k, z)
        total += math.ldexp(s / (1.0 + s), -k)
    return MetricValue(total, math.ldexp(1.0, -k_max))


def metric_gamma(p: Partition, x: HahnNumber, y: HahnNumber, k_max: int) -> MetricValue:
    """Partial sum ``sum_{k<=K} 2^-k s_k / (1 + s_k)`` with ``s_k`` the partition semi-norm.

    The omitted tail is at most ``2^-K``, returned as ``error_bound``.
    """
    return _metric(lambda k, z: gamma_seminorm(p, k, z), x, y, k_max)


def metric_u(x: HahnNumber, y: HahnNumber, k_max: int) -> MetricValue:
    """As :func:`metric_gamma` with ``s_k = u_seminorm(k, x - y)``."""
    return _metric(lambda k, z: u_seminorm(k, z), x, y, k_max)


class SeminormFamily:
    """A semi-norm family usable as ``family(index, x)``.

    ``SeminormFamily.partition_indexed(p)`` indexes by natural numbers through
    ``p.prefix``; ``SeminormFamily.locally_uniform()`` indexes by rationals.
    """

    def __init__(self, flavor: str, partition: Partition = None):
        if flavor not in ("gamma", "u"):
            raise ValueError(f"unknown flavor {flavor!r}")
        self.flavor = flavor
        self.partition = partition if partition is not None else (DIAGONAL if flavor == "gamma" else None)

    @classmethod
    def partition_indexed(cls, p: Partition = DIAGONAL) -> "SeminormFamily":
        return cls("gamma", p)

    @classmethod
    def locally_uniform(cls) -> "SeminormFamily":
        return cls("u")

    def __call__(self, index, x: HahnNumber) -> float:
        if self.flavor == "gamma":
            return gamma_seminorm(self.partition, int(index), x)
        return u_seminorm(index, x)

    def in_ball(self, center: HahnNumber, radius, y: HahnNumber) -> bool:
        if self.flavor == "gamma":
            return in_gamma_ball(self.partition, center, radius, y)
        return in_u_ball(center, radius, y)

    def metric(self, x: HahnNumber, y: HahnNumber, k_max: int) -> MetricValue:
        if self.flavor == "gamma":
            return metric_gamma(self.partition, x, y, k_max)
        return metric_u(x, y, k_max)

    def __repr__(self):
        return f"SeminormFamily({self.flavor!r}, {self.partition!r})"

