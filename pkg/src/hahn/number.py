"""Truncated elements of the Hahn field over the rationals.

A :class:`HahnNumber` stores finitely many terms ``c * d**q`` with exact
rational exponents ``q`` and float coefficients ``c``, together with a
truncation order (the *cutoff*).  The value is known exactly for every
exponent below the cutoff and is unknown at and above it.  A cutoff of
``INF`` marks an exactly representable element.

Arithmetic propagates cutoffs so that every stored term is fully determined
by the stored terms of the operands.
"""

from __future__ import annotations

import heapq
import math
from bisect import bisect_left
from fractions import Fraction
from numbers import Rational, Real
from typing import Iterable, Mapping, Tuple, Union

from .errors import CutoffError, DuplicateExponentError, UndecidableError

INF = math.inf

Exponent = Fraction
Cutoff = Union[Fraction, float]

LT, EQ, GT = -1, 0, 1


def as_exponent(q) -> Fraction:
    """Coerce ``q`` to an exact rational exponent.

    Accepts integers, rationals, integral floats and strings such as
    ``"3"``, ``"-1/2"``.
    """
    if isinstance(q, Fraction):
        return q
    if isinstance(q, bool):
        raise TypeError("booleans are not exponents")
    if isinstance(q, (int, Rational)):
        return Fraction(q)
    if isinstance(q, str):
        try:
            return Fraction(q.strip())
        except ValueError:
            raise ValueError(f"not a rational exponent: {q!r}") from None
    if isinstance(q, float):
        if q.is_integer():
            return Fraction(int(q))
        raise TypeError(f"non-integral float exponent {q!r}; pass a Fraction or 'p/q' string")
    raise TypeError(f"cannot use {type(q).__name__} as an exponent")


def as_cutoff(c) -> Cutoff:
    if c is None:
        return INF
    if isinstance(c, float) and math.isinf(c):
        if c < 0:
            raise ValueError("cutoff cannot be -inf")
        return INF
    if isinstance(c, str) and c.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    return as_exponent(c)


def _cut(v) -> Cutoff:
    # arithmetic on cutoffs mixes Fraction with float inf
    return INF if v == INF else v


class HahnNumber:
    """Immutable truncated Hahn-field element.

    Parameters
    ----------
    terms : mapping or iterable of (exponent, coefficient) pairs
        Duplicate exponents are rejected.  Zero coefficients and terms at or
        above ``cutoff`` are dropped.
    cutoff : rational, ``INF`` or ``None``
        Truncation order.  ``None``/``INF`` means the value is exact.
    """

    __slots__ = ("_exps", "_coefs", "_cutoff", "_hash")

    def __init__(self, terms: Union[Mapping, Iterable] = (), cutoff=INF):
        cutoff = as_cutoff(cutoff)
        items = terms.items() if isinstance(terms, Mapping) else terms
        seen = {}
        for q, c in items:
            q = as_exponent(q)
            if q in seen:
                raise DuplicateExponentError(f"duplicate exponent {q}")
            c = float(c)
            if not math.isfinite(c):
                raise ValueError(f"coefficient at exponent {q} is not finite: {c!r}")
            seen[q] = c
        exps = sorted(q for q, c in seen.items() if c != 0.0 and q < cutoff)
        self._exps = tuple(exps)
        self._coefs = tuple(seen[q] for q in exps)
        self._cutoff = cutoff
        self._hash = None

    @classmethod
    def _raw(cls, exps, coefs, cutoff) -> "HahnNumber":
        # trusted constructor: exps ascending, no zeros, all below cutoff
        obj = object.__new__(cls)
        obj._exps = tuple(exps)
        obj._coefs = tuple(coefs)
        obj._cutoff = cutoff
        obj._hash = None
        return obj

    @classmethod
    def from_real(cls, c: float) -> "HahnNumber":
        c = float(c)
        return cls._raw((Fraction(0),), (c,), INF) if c != 0.0 else ZERO

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Tuple[Tuple[Fraction, float], ...]:
        return tuple(zip(self._exps, self._coefs))

    @property
    def support(self) -> Tuple[Fraction, ...]:
        return self._exps

    @property
    def coefficients(self) -> Tuple[float, ...]:
        return self._coefs

    @property
    def cutoff(self) -> Cutoff:
        return self._cutoff

    @property
    def exact(self) -> bool:
        return self._cutoff == INF

    @property
    def is_zero(self) -> bool:
        """True when no term survives below the cutoff."""
        return not self._exps

    @property
    def leading_exponent(self) -> Cutoff:
        """Least exponent of the support, ``INF`` for zero."""
        return self._exps[0] if self._exps else INF

    @property
    def leading_coefficient(self) -> float:
        return self._coefs[0] if self._coefs else 0.0

    def __len__(self) -> int:
        return len(self._exps)

    def __getitem__(self, q) -> float:
        q = as_exponent(q)
        if q >= self._cutoff:
            raise CutoffError(f"coefficient at exponent {q} is beyond cutoff {self._cutoff}", q)
        i = bisect_left(self._exps, q)
        if i < len(self._exps) and self._exps[i] == q:
            return self._coefs[i]
        return 0.0

    def truncate(self, cutoff) -> "HahnNumber":
        """Forget every term at or above ``cutoff``."""
        cutoff = as_cutoff(cutoff)
        if cutoff >= self._cutoff:
            return self
        k = bisect_left(self._exps, cutoff)
        return HahnNumber._raw(self._exps[:k], self._coefs[:k], cutoff)

    def shift(self, q) -> "HahnNumber":
        """Multiply by ``d**q`` (exact)."""
        q = as_exponent(q)
        return HahnNumber._raw((e + q for e in self._exps), self._coefs, _cut(self._cutoff + q))

    def scale(self, a: float) -> "HahnNumber":
        """Multiply by the real scalar ``a``."""
        a = float(a)
        if a == 0.0:
            return ZERO
        exps, coefs = [], []
        for e, c in zip(self._exps, self._coefs):
            v = a * c
            if v != 0.0:
                exps.append(e)
                coefs.append(v)
        return HahnNumber._raw(exps, coefs, self._cutoff)

    # -- field operations -------------------------------------------------

    def __neg__(self) -> "HahnNumber":
        return HahnNumber._raw(self._exps, tuple(-c for c in self._coefs), self._cutoff)

    def __pos__(self) -> "HahnNumber":
        return self

    def __add__(self, other) -> "HahnNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other) -> "HahnNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other) -> "HahnNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(other, -self)

    def __mul__(self, other) -> "HahnNumber":
        if isinstance(other, HahnNumber):
            return mul(self, other)
        if isinstance(other, Real) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HahnNumber":
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        if n < 0:
            raise ValueError("negative powers need multiplicative inverses, which are not supported")
        result, base = ONE, self
        while n:
            if n & 1:
                result = mul(result, base)
            n >>= 1
            if n:
                base = mul(base, base)
        return result

    # -- order ------------------------------------------------------------

    def compare(self, other) -> int:
        return compare(self, _coerce_strict(other))

    def __lt__(self, other):
        return compare(self, _coerce_strict(other)) == LT

    def __le__(self, other):
        return compare(self, _coerce_strict(other)) != GT

    def __gt__(self, other):
        return compare(self, _coerce_strict(other)) == GT

    def __ge__(self, other):
        return compare(self, _coerce_strict(other)) != LT

    def __abs__(self) -> "HahnNumber":
        return -self if self._coefs and self._coefs[0] < 0 else self

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        """Structural equality of truncated representations."""
        if not isinstance(other, HahnNumber):
            return NotImplemented
        return (self._exps == other._exps and self._coefs == other._coefs
                and self._cutoff == other._cutoff)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._exps, self._coefs, self._cutoff))
        return self._hash

    def __str__(self):
        from .text import format_number
        return format_number(self)

    def __repr__(self):
        cut = "INF" if self.exact else f"'{self._cutoff}'"
        return f"HahnNumber({str(self)!r}, cutoff={cut})"


def _coerce(x):
    if isinstance(x, HahnNumber):
        return x
    if isinstance(x, Real) and not isinstance(x, bool):
        return HahnNumber.from_real(x)
    return NotImplemented


def _coerce_strict(x) -> HahnNumber:
    y = _coerce(x)
    if y is NotImplemented:
        raise TypeError(f"cannot compare HahnNumber with {type(x).__name__}")
    return y


ZERO = HahnNumber._raw((), (), INF)
ONE = HahnNumber._raw((Fraction(0),), (1.0,), INF)
D = HahnNumber._raw((Fraction(1),), (1.0,), INF)


def make(terms=(), cutoff=INF) -> HahnNumber:
    """Canonical constructor; see :class:`HahnNumber`."""
    return HahnNumber(terms, cutoff)


def monomial(c: float, q) -> HahnNumber:
    """The number ``c * d**q``."""
    c = float(c)
    if c == 0.0:
        return ZERO
    return HahnNumber._raw((as_exponent(q),), (c,), INF)


def add(x: HahnNumber, y: HahnNumber) -> HahnNumber:
    cutoff = min(x._cutoff, y._cutoff)
    xe, xc, ye, yc = x._exps, x._coefs, y._exps, y._coefs
    exps, coefs = [], []
    i = j = 0
    while i < len(xe) or j < len(ye):
        if j == len(ye) or (i < len(xe) and xe[i] < ye[j]):
            e, c = xe[i], xc[i]
            i += 1
        elif i == len(xe) or ye[j] < xe[i]:
            e, c = ye[j], yc[j]
            j += 1
        else:
            e, c = xe[i], xc[i] + yc[j]
            i += 1
            j += 1
        if e >= cutoff:
            break
        if c != 0.0:
            exps.append(e)
            coefs.append(c)
    return HahnNumber._raw(exps, coefs, cutoff)


def product_cutoff(x: HahnNumber, y: HahnNumber) -> Cutoff:
    """Truncation order of ``x * y``.

    Writing each operand as known part plus an unknown remainder of order at
    least its cutoff, the first undetermined exponent of the product is the
    least of ``lam(x) + cut(y)``, ``lam(y) + cut(x)`` and ``cut(x) + cut(y)``.
    For nonzero operands the last one never wins.
    """
    lx, ly = x.leading_exponent, y.leading_exponent
    cx, cy = x._cutoff, y._cutoff
    return _cut(min(lx + cy, ly + cx, cx + cy))


def mul(x: HahnNumber, y: HahnNumber) -> HahnNumber:
    """Convolution product, produced in ascending exponent order.

    The partial products ``x_i * y_j`` are merged through a heap, one sorted
    stream per term of the shorter operand, so generation stops as soon as
    the next exponent reaches the result cutoff.
    """
    cutoff = product_cutoff(x, y)
    xe, xc, ye, yc = x._exps, x._coefs, y._exps, y._coefs
    if len(xe) > len(ye):
        xe, xc, ye, yc = ye, yc, xe, xc
    if not xe:
        return HahnNumber._raw((), (), cutoff)
    heap = [(e + ye[0], i, 0) for i, e in enumerate(xe)]
    heapq.heapify(heap)
    exps, coefs = [], []
    while heap:
        e, i, j = heap[0]
        if e >= cutoff:
            break
        c = xc[i] * yc[j]
        if exps and exps[-1] == e:
            coefs[-1] += c
        else:
            exps.append(e)
            coefs.append(c)
        if j + 1 < len(ye):
            heapq.heapreplace(heap, (xe[i] + ye[j + 1], i, j + 1))
        else:
            heapq.heappop(heap)
    keep = [k for k, c in enumerate(coefs) if c != 0.0]
    return HahnNumber._raw([exps[k] for k in keep], [coefs[k] for k in keep], cutoff)


def leading_exponent(x: HahnNumber) -> Cutoff:
    return x.leading_exponent


def valuation(x: HahnNumber) -> float:
    """Ultrametric absolute value ``exp(-lam(x))``; 0 for zero."""
    lam = x.leading_exponent
    if lam == INF:
        return 0.0
    try:
        return math.exp(-lam)
    except OverflowError:
        return INF


def compare(x: HahnNumber, y: HahnNumber) -> int:
    """Total-order verdict ``LT``/``EQ``/``GT``.

    Decided by the sign of the leading coefficient of ``x - y``.  When the
    difference vanishes below the common cutoff the verdict is undecidable
    and :class:`UndecidableError` is raised, except for identical
    representations, which denote the same datum.
    """
    diff = add(x, -y)
    if diff._coefs:
        return GT if diff._coefs[0] > 0 else LT
    if diff.exact or x == y:
        return EQ
    raise UndecidableError(
        f"operands agree below cutoff {diff.cutoff}; undecidable at current truncation")


def infinitely_larger(x: HahnNumber, y: HahnNumber) -> bool:
    """``x >> y`` for nonnegative ``x, y``: ``lam(x) < lam(y)``."""
    return x.leading_exponent < y.leading_exponent
