import math
from fractions import Fraction as F

import pytest

from hahn import (
    DIAGONAL,
    ZERO,
    CutoffError,
    SeminormFamily,
    UndecidableError,
    gamma_seminorm,
    in_gamma_ball,
    in_u_ball,
    in_valuation_ball,
    metric_gamma,
    metric_u,
    monomial,
    mu,
    u_seminorm,
)
from hahn.number import make
from hahn.text import parse_number as P

X = P("3*d^(-4) + 2*d^(1/2)")


def test_gamma_seminorm_examples():
    assert gamma_seminorm(DIAGONAL, 5, X) == 3.0
    assert gamma_seminorm(DIAGONAL, 5, monomial(1, 100)) == 0.0
    assert all(gamma_seminorm(DIAGONAL, n, ZERO) == 0.0 for n in range(1, 10))


def test_gamma_seminorm_needs_cutoff():
    x = make([(0, 1.0)], cutoff=3)
    assert gamma_seminorm(DIAGONAL, 3, x) == 1.0
    with pytest.raises(CutoffError) as info:
        gamma_seminorm(DIAGONAL, 4, x)
    assert info.value.exponent == 3


def test_u_seminorm_examples():
    assert u_seminorm(0, X) == 3.0
    assert u_seminorm(1, X) == 3.0
    assert u_seminorm(1, P("2*d^3")) == 0.0
    assert u_seminorm(F(1, 2), P("d^(-1) + 5*d^(1/2)")) == 5.0


def test_u_seminorm_needs_cutoff():
    with pytest.raises(CutoffError):
        u_seminorm(2, make([(0, 1.0)], cutoff=2))


def test_mu():
    assert mu(0.3) == 4
    assert mu(0.5) == 3
    assert mu(2) == 1
    assert mu(F(1, 3)) == 4
    with pytest.raises(ValueError):
        mu(0)
    with pytest.raises(ValueError):
        mu(-1.0)


def test_mu_is_smallest_strict():
    for r in (0.01, 0.1, 0.2, 0.25, 0.3, 1 / 3, 0.7, 1.0, 1.5):
        n = mu(r)
        assert F(1, n) < F(r)
        assert n == 1 or not F(1, n - 1) < F(r)


def test_gamma_ball_examples():
    for r in (0.1, 0.25, 1):
        assert in_gamma_ball(DIAGONAL, ZERO, r, monomial(r / 2, DIAGONAL.prefix_max(1)))
        assert in_gamma_ball(DIAGONAL, X, r, X)
        q = DIAGONAL.prefix_min(mu(r))
        assert not in_gamma_ball(DIAGONAL, X, r, X + monomial(r, q))


def test_u_ball_examples():
    for q in (F(1, 2), F(1), F(3)):
        # the ball of radius q bounds coefficients below q up to exponent 1/q
        assert not in_u_ball(ZERO, q, monomial(2 * q, 1 / q))
        assert in_u_ball(ZERO, q, monomial(q / 2, 1 / q))
        assert in_u_ball(X, q, X)
        assert in_u_ball(ZERO, q, monomial(q / 2, 1 / q + 1))


def test_valuation_ball():
    n = F(1, 2)
    assert in_valuation_ball(ZERO, n, monomial(1, n + 1))
    assert not in_valuation_ball(ZERO, 1, monomial(0.25, 0))
    assert in_valuation_ball(X, 3, X)
    # leading exponent equal to n: compare against d^n itself
    assert in_valuation_ball(ZERO, 1, monomial(0.5, 1))
    assert not in_valuation_ball(ZERO, 1, monomial(2, 1))
    assert in_valuation_ball(ZERO, 1, P("d - d^2"))
    assert not in_valuation_ball(ZERO, 1, P("d + d^2"))
    assert not in_valuation_ball(ZERO, 1, monomial(-1, 1))


def test_valuation_ball_undecidable():
    with pytest.raises(UndecidableError):
        in_valuation_ball(ZERO, 2, make([], cutoff=1))
    with pytest.raises(UndecidableError):
        in_valuation_ball(ZERO, 1, make([(1, 1.0)], cutoff=2))
    assert in_valuation_ball(ZERO, 1, make([], cutoff=2))


def test_metric_examples():
    assert tuple(metric_gamma(DIAGONAL, X, X, 10)) == (0.0, 2.0 ** -10)
    assert metric_gamma(DIAGONAL, P("1"), ZERO, 3).value == 0.4375
    assert metric_u(P("3*d^(-1)"), ZERO, 2).value == 0.5625
    assert metric_u(X, X, 4).to_dict() == {"value": 0.0, "error_bound": 0.0625}
    with pytest.raises(ValueError):
        metric_u(X, X, 0)


def test_metric_triangle():
    xs = [P("1 + d"), P("2*d^(-1)"), P("3 - d^(1/2)"), ZERO]
    for a in xs:
        for b in xs:
            for c in xs:
                for metric in (lambda u, v: metric_gamma(DIAGONAL, u, v, 12), lambda u, v: metric_u(u, v, 12)):
                    assert metric(a, c).value <= metric(a, b).value + metric(b, c).value + 2.0 ** -12


def test_family_object():
    g = SeminormFamily.partition_indexed()
    u = SeminormFamily.locally_uniform()
    assert g(5, X) == 3.0 and u(0, X) == 3.0
    assert g.in_ball(ZERO, 0.5, monomial(0.25, 0))
    assert not u.in_ball(ZERO, F(1), monomial(2, F(1, 2)))
    assert g.metric(X, X, 3).value == 0.0
    with pytest.raises(ValueError):
        SeminormFamily("sup")
    assert math.isclose(u.metric(P("1"), ZERO, 2).value, 0.375)
