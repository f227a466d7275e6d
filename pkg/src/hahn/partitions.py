"""Finite well-bounded partitions of the rationals.

A partition is an indexed family of finite, pairwise disjoint blocks
``block(1), block(2), ...`` covering every rational.  ``prefix(n)`` is the
union of the first ``n`` blocks.

:class:`DiagonalPartition` groups reduced fractions ``a/b`` by ``|a| + b``.
:class:`CustomFinitePartition` takes finitely many explicit blocks and sends
every other rational to a diagonal block shifted by a fixed offset.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, FrozenSet, Iterator, Sequence

from .number import as_exponent


def diagonal_index(q) -> int:
    """Index ``|num| + den`` of the diagonal block containing ``q``."""
    q = as_exponent(q)
    return abs(q.numerator) + q.denominator


def diagonal_block(n: int) -> FrozenSet[Fraction]:
    """Reduced fractions ``a/b`` with ``b >= 1`` and ``|a| + b = n``."""
    if n < 1:
        raise ValueError(f"block index must be >= 1, got {n}")
    out = set()
    for den in range(1, n + 1):
        num = n - den
        if gcd(num, den) == 1:
            out.add(Fraction(num, den))
            out.add(Fraction(-num, den))
    return frozenset(out)


def rationals_by_height(lo=None, hi=None, lo_open=True, hi_open=False, start: int = 1) -> Iterator[Fraction]:
    """Every rational in the interval, ordered by diagonal index then value.

    Indices below ``start`` are skipped.  The stream is infinite whenever
    the interval has more than one point.
    """
    lo = None if lo is None else as_exponent(lo)
    hi = None if hi is None else as_exponent(hi)
    n = max(start, 1)
    while True:
        for q in sorted(diagonal_block(n)):
            if lo is not None and (q < lo or (lo_open and q == lo)):
                continue
            if hi is not None and (q > hi or (hi_open and q == hi)):
                continue
            yield q
        n += 1


class Partition:
    """Base class; subclasses provide ``block`` and ``locate``."""

    def __init__(self):
        self._prefixes: Dict[int, FrozenSet[Fraction]] = {}
        self._prefix_max: Dict[int, Fraction] = {}

    def block(self, i: int) -> FrozenSet[Fraction]:
        raise NotImplementedError

    def locate(self, q) -> int:
        raise NotImplementedError

    def prefix(self, n: int) -> FrozenSet[Fraction]:
        """Union of blocks ``1..n`` (cached)."""
        if n < 1:
            raise ValueError(f"prefix index must be >= 1, got {n}")
        cached = self._prefixes.get(n)
        if cached is not None:
            return cached
        below = max((k for k in self._prefixes if k < n), default=0)
        acc = set(self._prefixes[below]) if below else set()
        for i in range(below + 1, n + 1):
            acc.update(self.block(i))
        result = self._prefixes[n] = frozenset(acc)
        return result

    def in_prefix(self, q, n: int) -> bool:
        """``q in prefix(n)`` without building the prefix."""
        return self.locate(q) <= n

    def covered_height(self, n: int) -> int:
        """A ``h`` such that every rational of diagonal index ``<= h`` lies in ``prefix(n)``."""
        return 0

    def prefix_max(self, n: int) -> Fraction:
        """Largest element of ``prefix(n)``."""
        m = self._prefix_max.get(n)
        if m is None:
            pre = self.prefix(n)
            if not pre:
                raise ValueError(f"prefix({n}) is empty and has no maximum")
            m = self._prefix_max[n] = max(pre)
        return m

    def prefix_min(self, n: int) -> Fraction:
        return min(self.prefix(n))

    def validate(self, upto: int) -> None:
        """Check disjointness of blocks ``1..upto`` and ``locate`` consistency."""
        seen = {}
        for i in range(1, upto + 1):
            for q in self.block(i):
                if q in seen:
                    raise ValueError(f"{q} lies in blocks {seen[q]} and {i}")
                seen[q] = i
                if self.locate(q) != i:
                    raise ValueError(f"locate({q}) = {self.locate(q)}, expected {i}")


class DiagonalPartition(Partition):
    def block(self, i: int) -> FrozenSet[Fraction]:
        return diagonal_block(i)

    def locate(self, q) -> int:
        return diagonal_index(q)

    def prefix_max(self, n: int) -> Fraction:
        return Fraction(max(n - 1, 0))

    def covered_height(self, n: int) -> int:
        return n

    def __repr__(self):
        return "DiagonalPartition()"

    def __eq__(self, other):
        return isinstance(other, DiagonalPartition)

    def __hash__(self):
        return hash(DiagonalPartition)


class CustomFinitePartition(Partition):
    """Explicit leading blocks plus a shifted diagonal rule for the rest.

    Blocks ``1..k`` are ``blocks``.  A rational outside their union goes to
    block ``diagonal_index(q) + offset``; ``offset`` defaults to ``k``.
    Construction checks that the explicit blocks are disjoint and that the
    residual rule never lands on an explicit index.
    """

    def __init__(self, blocks: Sequence, offset: int = None):
        super().__init__()
        self._blocks = tuple(frozenset(as_exponent(q) for q in b) for b in blocks)
        self._offset = len(self._blocks) if offset is None else int(offset)
        self._owner: Dict[Fraction, int] = {}
        for i, b in enumerate(self._blocks, start=1):
            for q in b:
                if q in self._owner:
                    raise ValueError(f"{q} appears in explicit blocks {self._owner[q]} and {i}")
                self._owner[q] = i
        k = len(self._blocks)
        first = self._first_residual_index()
        if first + self._offset <= k:
            raise ValueError(
                f"offset {self._offset} sends residual diagonal block {first} onto explicit block "
                f"{first + self._offset}")

    def _first_residual_index(self) -> int:
        j = 1
        while diagonal_block(j) <= self._owner.keys():
            j += 1
        return j

    @classmethod
    def relabel_diagonal(cls, order: Sequence[int]) -> "CustomFinitePartition":
        """Diagonal blocks ``order[0], order[1], ...`` moved to the front.

        ``order`` must be a permutation of ``1..len(order)``; later blocks
        keep their diagonal index.
        """
        if sorted(order) != list(range(1, len(order) + 1)):
            raise ValueError("order must be a permutation of 1..k")
        return cls([diagonal_block(i) for i in order], offset=0)

    @property
    def explicit_blocks(self):
        return self._blocks

    @property
    def offset(self) -> int:
        return self._offset

    def block(self, i: int) -> FrozenSet[Fraction]:
        if i < 1:
            raise ValueError(f"block index must be >= 1, got {i}")
        if i <= len(self._blocks):
            return self._blocks[i - 1]
        j = i - self._offset
        if j < 1:
            return frozenset()
        return frozenset(q for q in diagonal_block(j) if q not in self._owner)

    def locate(self, q) -> int:
        q = as_exponent(q)
        owner = self._owner.get(q)
        if owner is not None:
            return owner
        return diagonal_index(q) + self._offset

    def __repr__(self):
        return f"CustomFinitePartition({len(self._blocks)} blocks, offset={self._offset})"


DIAGONAL = DiagonalPartition()


def partition_block(p: Partition, i: int) -> FrozenSet[Fraction]:
    return p.block(i)


def prefix(p: Partition, n: int) -> FrozenSet[Fraction]:
    return p.prefix(n)


def locate(p: Partition, q) -> int:
    return p.locate(q)
