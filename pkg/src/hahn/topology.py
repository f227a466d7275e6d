"""Witnesses and sampled certificates for relations between topologies.

Strict inclusions between topologies cannot be decided by sampling.  What
can be checked is the constructive content behind them: explicit points
lying in one basic neighbourhood but not another, and ball inclusions
``B_small(x) subset B_large(x)`` tested at random points of the small ball.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .number import ZERO, HahnNumber, as_exponent, monomial
from .partitions import DIAGONAL, Partition, rationals_by_height
from .seminorms import _as_radius, in_gamma_ball, in_u_ball, in_valuation_ball, mu
from .text import format_number, to_json_obj

SCHEMA = "hahn/1"

# keeps sampled coefficients off the ball boundary despite rounding in y - center
_MARGIN = 0.999


class Topology(str, enum.Enum):
    VALUATION = "valuation"
    GAMMA = "gamma"
    LOCALLY_UNIFORM = "locally-uniform"
    WEAK = "weak"


@dataclass(frozen=True)
class Ball:
    """A basic neighbourhood.

    ``radius`` is a positive real for partition and locally uniform
    pseudo-balls, and the exponent ``n`` of ``d**n`` for valuation balls.
    """

    topology: Topology
    center: HahnNumber
    radius: object
    partition: Optional[Partition] = None

    def contains(self, y: HahnNumber) -> bool:
        if self.topology in (Topology.GAMMA, Topology.WEAK):
            return in_gamma_ball(self.partition or DIAGONAL, self.center, self.radius, y)
        if self.topology is Topology.LOCALLY_UNIFORM:
            return in_u_ball(self.center, self.radius, y)
        return in_valuation_ball(self.center, self.radius, y)

    def to_dict(self) -> dict:
        d = {"topology": self.topology.value, "center": format_number(self.center),
             "radius": _jsonable(self.radius)}
        if self.topology in (Topology.GAMMA, Topology.WEAK):
            d["partition"] = repr(self.partition or DIAGONAL)
        return d


def _jsonable(v):
    return v if isinstance(v, (int, float)) else str(v)


@dataclass(frozen=True)
class Witness:
    point: HahnNumber
    inside: Ball
    outside: Ball
    claim: str

    def verify(self):
        """``(point in inside, point not in outside)``."""
        return self.inside.contains(self.point), not self.outside.contains(self.point)

    @property
    def verified(self) -> bool:
        return all(self.verify())

    def to_dict(self) -> dict:
        in_ok, out_ok = self.verify()
        return {
            "schema": SCHEMA,
            "claim": self.claim,
            "point": format_number(self.point),
            "point_json": to_json_obj(self.point),
            "inside": self.inside.to_dict(),
            "outside": self.outside.to_dict(),
            "in_inside": in_ok,
            "not_in_outside": out_ok,
            "verified": in_ok and out_ok,
        }


def witness_weak_not_valuation(p: Partition, n, r: float) -> Witness:
    """Point of the partition pseudo-ball ``PB(0, r)`` outside ``(-d^n, d^n)``.

    The point is ``(r/2) d^q`` with ``q`` the largest element of the first
    block, which requires ``n > q``.
    """
    n = as_exponent(n)
    q = p.prefix_max(1)
    if not n > q:
        raise ValueError(f"n must exceed max of the first block ({q}), got {n}")
    return Witness(
        point=monomial(r / 2, q),
        inside=Ball(Topology.GAMMA, ZERO, r, p),
        outside=Ball(Topology.VALUATION, ZERO, n),
        claim="weak-not-valuation",
    )


def _first_outside_prefix(p: Partition, n: int, lo=None, hi=None):
    start = p.covered_height(n) + 1
    for q in rationals_by_height(lo, hi, lo_open=True, hi_open=False, start=start):
        if not p.in_prefix(q, n):
            return q
    raise AssertionError("unreachable: intervals are not well-bounded")


def witness_u_not_weak(p: Partition, q, r: float) -> Witness:
    """Point of ``PB(0, r)`` outside the locally uniform ball ``PB_u(0, 1/q)``.

    Scans ``(0, q]`` by increasing height for ``q'`` outside
    ``p.prefix(mu(r))`` and returns ``(2/q) d^q'``.
    """
    q = _as_radius(q)
    qp = _first_outside_prefix(p, mu(r), lo=0, hi=q)
    return Witness(
        point=monomial(float(2 / q), qp),
        inside=Ball(Topology.GAMMA, ZERO, r, p),
        outside=Ball(Topology.LOCALLY_UNIFORM, ZERO, 1 / q),
        claim="u-not-weak",
    )


def witness_restriction(p: Partition, q) -> Witness:
    """Levi-Civita point ``2 d^s`` in ``PB(0, q)`` but outside ``PB_u(0, 1)``.

    ``s <= 1`` is the first rational by height outside ``p.prefix(mu(q))``.
    """
    s = _first_outside_prefix(p, mu(q), lo=None, hi=1)
    return Witness(
        point=monomial(2.0, s),
        inside=Ball(Topology.GAMMA, ZERO, q, p),
        outside=Ball(Topology.LOCALLY_UNIFORM, ZERO, Fraction(1)),
        claim="restriction",
    )


# -- sampling -------------------------------------------------------------

def _random_rational(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int = 12) -> Fraction:
    den = rng.randint(1, max_den)
    a, b = int(lo * den), int(hi * den)
    return Fraction(rng.randint(min(a, b), max(a, b)), den)


def sample_in_gamma_ball(p: Partition, center: HahnNumber, r, rng: random.Random,
                         max_inner: int = 4, max_outer: int = 4, outer_scale: float = 10.0,
                         attempts: int = 100) -> HahnNumber:
    """Random point of the partition pseudo-ball of radius ``r`` around ``center``.

    Coefficients on ``p.prefix(mu(r))`` are drawn strictly inside
    ``(-r, r)``.  Extra terms at rationals outside the prefix get arbitrary
    coefficients up to ``outer_scale``, which the ball does not constrain.
    """
    n = mu(r)
    pre = sorted(p.prefix(n))
    pre_set = p.prefix(n)
    lo, hi = pre[0] - 2, pre[-1] + 3
    bound = float(r) * _MARGIN
    for _ in range(attempts):
        terms = {}
        for q in rng.sample(pre, rng.randint(0, min(max_inner, len(pre)))):
            terms[q] = rng.uniform(-bound, bound)
        for _ in range(rng.randint(0, max_outer)):
            q = _random_rational(rng, lo, hi)
            if q not in pre_set and q not in terms:
                terms[q] = rng.uniform(-outer_scale, outer_scale)
        y = center + HahnNumber(terms, center.cutoff)
        if in_gamma_ball(p, center, r, y):
            return y
    raise RuntimeError("could not sample a point inside the pseudo-ball")


def sample_in_u_ball(center: HahnNumber, q, rng: random.Random, max_inner: int = 4,
                     max_outer: int = 4, outer_scale: float = 10.0,
                     attempts: int = 100) -> HahnNumber:
    """Random point of the locally uniform pseudo-ball of radius ``q``.

    Terms at exponents ``<= 1/q`` are bounded by ``q``; terms above ``1/q``
    are unconstrained.
    """
    q = _as_radius(q)
    top = 1 / q
    bound = float(q) * _MARGIN
    for _ in range(attempts):
        terms = {}
        for _ in range(rng.randint(0, max_inner)):
            e = _random_rational(rng, top - 4, top)
            terms.setdefault(e, rng.uniform(-bound, bound))
        for _ in range(rng.randint(0, max_outer)):
            e = top + Fraction(rng.randint(1, 48), rng.randint(1, 12))
            terms.setdefault(e, rng.uniform(-outer_scale, outer_scale))
        y = center + HahnNumber(terms, center.cutoff)
        if in_u_ball(center, q, y):
            return y
    raise RuntimeError("could not sample a point inside the pseudo-ball")


# -- sampled inclusion checks ---------------------------------------------

@dataclass
class CheckReport:
    claim: str
    samples: int
    violations: int
    seed: int
    params: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "claim": self.claim,
            "samples": self.samples,
            "violations": self.violations,
            "seed": self.seed,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "counterexamples": [format_number(y) for y in self.counterexamples],
        }


def check_finite_partition_equivalence(p: Partition, o: Partition, x: HahnNumber, eps: float,
                                       samples: int = 200, seed: int = 0) -> CheckReport:
    """Sample ``PB_p(x, delta)`` and confirm each point lies in ``PB_o(x, eps)``.

    ``N`` is the largest ``p``-index of an element of ``o.prefix(mu(eps))``
    and ``delta = min(1/N, eps)``, so ``o.prefix(mu(eps))`` is contained in
    ``p.prefix(mu(delta))``.
    """
    rng = random.Random(seed)
    n_big = max(p.locate(q) for q in o.prefix(mu(eps)))
    delta = min(Fraction(1, n_big), Fraction(eps))
    delta_f = float(delta)
    violations, bad = 0, []
    for i in range(samples):
        y = x if i == 0 else sample_in_gamma_ball(p, x, delta_f, rng)
        if not in_gamma_ball(o, x, eps, y):
            violations += 1
            bad.append(y)
    return CheckReport("finite-equivalence", samples, violations, seed,
                       {"N": n_big, "delta": delta_f, "eps": eps}, bad[:5])


def check_weak_subset_u(p: Partition, x: HahnNumber, r: float, samples: int = 200,
                        seed: int = 0) -> CheckReport:
    """Sample ``PB_u(x, 1/q1)`` and confirm each point lies in ``PB_p(x, r)``.

    ``q0`` is the largest element of ``p.prefix(mu(r))`` and
    ``q1 = max(q0, 1/r) + 1``.
    """
    rng = random.Random(seed)
    q0 = p.prefix_max(mu(r))
    q1 = max(q0, 1 / Fraction(r)) + 1
    violations, bad = 0, []
    for i in range(samples):
        y = x if i == 0 else sample_in_u_ball(x, 1 / q1, rng)
        if not in_gamma_ball(p, x, r, y):
            violations += 1
            bad.append(y)
    return CheckReport("weak-subset-u", samples, violations, seed,
                       {"q0": q0, "q1": q1, "r": r}, bad[:5])
