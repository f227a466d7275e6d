import math
import random
from fractions import Fraction

import pytest

from hahn import (
    D,
    EQ,
    GT,
    INF,
    LT,
    ONE,
    ZERO,
    DuplicateExponentError,
    HahnNumber,
    UndecidableError,
    CutoffError,
    compare,
    make,
    monomial,
    valuation,
)
from hahn.number import as_exponent, infinitely_larger, mul, product_cutoff
from hahn.oracle import mul_naive
from hahn.text import parse_number as P

from strategies import rand_nonzero, rand_number


def test_make_d():
    d = make([(1, 1.0)])
    assert d == D
    assert d.leading_exponent == 1


def test_make_empty_is_zero():
    assert make([]).is_zero
    assert make([]).leading_exponent == INF


def test_make_drops_zero_coefficients():
    x = make([(0, 2.0), (Fraction(1, 2), 0.0)])
    assert x.terms == ((Fraction(0), 2.0),)


def test_make_drops_terms_at_cutoff():
    x = make([(0, 1.0), (1, 2.0), (2, 3.0)], cutoff=1)
    assert x.support == (0,)
    assert x.cutoff == 1


def test_make_sorts():
    x = make({2: 1.0, -1: 2.0, Fraction(1, 3): 3.0})
    assert x.support == (-1, Fraction(1, 3), 2)


def test_make_rejects_duplicates():
    with pytest.raises(DuplicateExponentError):
        make([(1, 1.0), (Fraction(2, 2), 2.0)])


def test_make_rejects_non_finite():
    with pytest.raises(ValueError):
        make([(0, math.nan)])
    with pytest.raises(ValueError):
        make([(0, math.inf)])


def test_exponent_coercion():
    assert as_exponent("3/6") == Fraction(1, 2)
    assert as_exponent(2.0) == 2
    with pytest.raises(TypeError):
        as_exponent(0.1)
    with pytest.raises(TypeError):
        as_exponent(True)
    with pytest.raises(ValueError):
        as_exponent("1/x")


def test_monomials():
    assert monomial(1, 1) == D
    assert monomial(1, -1).leading_exponent == -1
    assert monomial(0, 5).is_zero


def test_getitem():
    x = P("3*d^(-1) + 2")
    assert x[-1] == 3.0
    assert x[0] == 2.0
    assert x[Fraction(1, 2)] == 0.0


def test_getitem_beyond_cutoff():
    x = make([(0, 1.0)], cutoff=2)
    assert x[1] == 0.0
    with pytest.raises(CutoffError):
        x[2]


def test_add_cancellation():
    assert (P("d + 1") + (-1.0)) == D


def test_add_disjoint():
    assert str(P("3*d^(-1)") + P("2*d^(1/2)")) == "3*d^(-1) + 2*d^(1/2)"


def test_add_identity():
    rng = random.Random(0)
    for _ in range(100):
        x = rand_number(rng)
        assert x + ZERO == x


def test_add_cutoff_is_min():
    x = make([(0, 1.0)], cutoff=3)
    y = make([(0, 1.0), (2, 1.0)], cutoff=Fraction(5, 2))
    assert (x + y).cutoff == Fraction(5, 2)


def test_mul_inverse_monomials():
    assert D * monomial(1, -1) == ONE


def test_mul_difference_of_squares():
    assert (ONE + D) * (ONE - D) == P("1 - d^2")


def test_mul_mixed_product():
    # (2/d + 1)(3d + d^2) = 6 + 2d + 3d + d^2
    assert P("2*d^(-1) + 1") * P("3*d + d^2") == P("6 + 5*d + d^2")


def test_mul_cutoff_rule():
    x = make([(0, 1.0), (1, 1.0)], cutoff=2)
    y = make([(1, 2.0)], cutoff=3)
    z = x * y
    assert z.cutoff == min(0 + 3, 1 + 2)
    assert z == mul_naive(x, y)


def test_mul_truncated_zero_operand():
    # 0 + O(d^2) times d^-1 is known only below 1
    x = make([], cutoff=2)
    z = x * monomial(1, -1)
    assert z.is_zero and z.cutoff == 1
    assert product_cutoff(x, x) == 4


def test_mul_by_exact_zero_is_exact():
    x = make([(0, 1.0)], cutoff=2)
    assert (x * ZERO).exact


def test_mul_matches_naive():
    rng = random.Random(1)
    for _ in range(300):
        x, y = rand_number(rng, cutoff=Fraction(rng.randint(0, 12), 4)), rand_number(rng)
        assert mul(x, y) == mul_naive(x, y)


def test_scalar_mul():
    assert P("1 + d") * 2 == P("2 + 2*d")
    assert 0 * P("1 + d") == ZERO


def test_pow():
    assert (ONE + D) ** 3 == P("1 + 3*d + 3*d^2 + d^3")
    assert D ** 0 == ONE
    with pytest.raises(ValueError):
        D ** -1


def test_shift_and_truncate():
    x = make([(0, 1.0), (1, 2.0)], cutoff=3)
    assert x.shift(Fraction(1, 2)) == make([(Fraction(1, 2), 1.0), (Fraction(3, 2), 2.0)], cutoff=Fraction(7, 2))
    assert x.truncate(1) == make([(0, 1.0)], cutoff=1)
    assert x.truncate(10) is x


def test_lambda():
    assert monomial(1, -1).leading_exponent == -1
    assert ZERO.leading_exponent == INF
    assert P("7 + 3*d").leading_exponent == 0


def test_compare_d_infinitesimal():
    assert compare(D, ZERO) == GT
    for r in (1e-300, 1e-9, 0.5, 1.0, 1e12):
        assert compare(D, HahnNumber.from_real(r)) == LT


def test_compare_self():
    x = P("1 + d")
    assert compare(x, x) == EQ
    assert compare(P("1 + d"), ONE) == GT
    assert D < 1 and D > 0 and -D < 0


def test_compare_undecidable():
    x = make([(0, 1.0)], cutoff=1)
    y = make([(0, 1.0), (2, 1.0)])
    with pytest.raises(UndecidableError):
        compare(x, y)
    # identical truncated representations denote the same datum
    assert compare(x, make([(0, 1.0)], cutoff=1)) == EQ


def test_valuation():
    assert valuation(D) == pytest.approx(math.exp(-1))
    assert valuation(ZERO) == 0.0
    assert valuation(P("5*d^(-2)")) == pytest.approx(math.e ** 2)


def test_abs():
    assert abs(P("-1 + d")) == P("1 - d")
    assert abs(D) == D


def test_infinitely_larger():
    rng = random.Random(2)
    for _ in range(100):
        x, y = abs(rand_nonzero(rng)), abs(rand_nonzero(rng))
        by_definition = all(x > n * y for n in range(1, 11))
        assert by_definition == (x.leading_exponent < y.leading_exponent)
        assert infinitely_larger(x, y) == (x.leading_exponent < y.leading_exponent)


def test_hash_and_eq():
    assert hash(P("1 + d")) == hash(P("d + 1"))
    assert len({P("1 + d"), P("d + 1"), D}) == 2
    assert (ONE == 1) is False


def test_equality_distinguishes_cutoff():
    assert make([(0, 1.0)], cutoff=1) != make([(0, 1.0)])


def test_repr():
    assert repr(make([(0, 1.0)], cutoff=Fraction(1, 2))) == "HahnNumber('1', cutoff='1/2')"
