from fractions import Fraction as F

import pytest

from hahn import HahnNumber, Verdict, monomial
from hahn.sequences import analyze_sequence


def partial_sums_of(term):
    cache = {0: HahnNumber()}

    def s(n):
        if n not in cache:
            cache[n] = s(n - 1) + term(n)
        return cache[n]

    return s


def test_geometric_in_d_converges_in_both_modes():
    s = partial_sums_of(lambda k: monomial(0.5 ** k, k))
    for mode in ("weak", "locally_uniform"):
        rep = analyze_sequence(s, 200, mode=mode)
        assert rep.overall is Verdict.CONSISTENT
    assert rep.verdict_at(1) == "cauchy"


def test_unbounded_real_sequence_is_inconsistent():
    rep = analyze_sequence(lambda n: HahnNumber({0: float(n)}), 200)
    assert rep.overall is Verdict.INCONSISTENT
    assert rep.verdict_at(0) == "not-cauchy"


def test_accumulating_exponents_split_the_modes():
    s = partial_sums_of(lambda k: monomial(1, 1 - F(1, k)))
    assert analyze_sequence(s, 200).overall is Verdict.CONSISTENT
    rep = analyze_sequence(s, 200, mode="locally_uniform")
    assert rep.overall is Verdict.INCONSISTENT
    assert any(v == "non-uniform" for _, _, v in rep.windows)
    assert rep.to_dict()["mode"] == "locally_uniform"


def test_late_exponents_inconclusive():
    rep = analyze_sequence(lambda n: monomial(1, 5) if n > 150 else HahnNumber(), 200)
    assert rep.verdict_at(5) == "inconclusive"


def test_argument_checks():
    with pytest.raises(ValueError):
        analyze_sequence(lambda n: HahnNumber(), 7)
    with pytest.raises(ValueError):
        analyze_sequence(lambda n: HahnNumber(), 10, mode="strong")
