"""Argument coercion shared by the public entry points."""

from __future__ import annotations

import math
from numbers import Real

from .number import HahnNumber, as_cutoff


def as_hahn(x, cutoff=None) -> HahnNumber:
    """Accept a HahnNumber, a real, or expression text."""
    if isinstance(x, HahnNumber):
        return x if cutoff is None else x.truncate(cutoff)
    if isinstance(x, str):
        from .text import evaluate_expression
        return evaluate_expression(x, as_cutoff(cutoff))
    if isinstance(x, Real) and not isinstance(x, bool):
        y = HahnNumber.from_real(x)
        return y if cutoff is None else y.truncate(cutoff)
    raise TypeError(f"cannot interpret {type(x).__name__} as a Hahn number")


def check_positive(name: str, value, integer: bool = False):
    if integer:
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise ValueError(f"{name} must be a positive integer, got {value!r}")
        return value
    if not (isinstance(value, Real) and math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")
    return value
