"""Random Hahn numbers for tests.

Coefficients are small integers and exponents are quarters in [-3, 3], so
sums and products of a few numbers are exact in floating point.
"""

import random
from fractions import Fraction

from hypothesis import strategies as st

from hahn import HahnNumber

COEFS = [c for c in range(-5, 6) if c]


def rand_exponent(rng: random.Random, lo: int = -12, hi: int = 12) -> Fraction:
    return Fraction(rng.randint(lo, hi), 4)


def rand_number(rng: random.Random, max_terms: int = 6, cutoff=None, min_terms: int = 0) -> HahnNumber:
    terms = {}
    for _ in range(rng.randint(min_terms, max_terms)):
        terms[rand_exponent(rng)] = float(rng.choice(COEFS))
    return HahnNumber(terms, cutoff) if cutoff is not None else HahnNumber(terms)


def rand_nonzero(rng: random.Random, max_terms: int = 6) -> HahnNumber:
    return rand_number(rng, max_terms, min_terms=1)


def rand_real_number(rng: random.Random, max_terms: int = 8) -> HahnNumber:
    """Arbitrary float coefficients, for tolerance-based comparisons."""
    return HahnNumber({rand_exponent(rng): rng.uniform(-10, 10) for _ in range(rng.randint(0, max_terms))})


exponents = st.integers(-12, 12).map(lambda k: Fraction(k, 4))

hahn_numbers = st.dictionaries(exponents, st.sampled_from(COEFS).map(float), max_size=6).map(HahnNumber)

nonzero_hahn_numbers = st.dictionaries(exponents, st.sampled_from(COEFS).map(float),
                                       min_size=1, max_size=6).map(HahnNumber)
