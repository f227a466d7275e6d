import math
from fractions import Fraction as F

import pytest

from hahn import (
    ZERO,
    Classification,
    HypothesisError,
    NonConvergentError,
    PowerSeries,
    RadiusEstimator,
    Shape,
    classify,
    eval_weak,
    make_rule,
    monomial,
    radius,
    std_function,
)
from hahn.errors import BudgetError
from hahn.oracle import partial_sums
from hahn.series import parse_rule
from hahn.text import parse_number as P

GEOMETRIC = PowerSeries.standard("geometric")


def series_of(rule, alpha=0, beta=0, **kw):
    return PowerSeries([Shape(F(alpha), F(beta), rule)], **kw)


def test_radius_examples():
    assert radius(GEOMETRIC).radius == 1.0
    assert radius(series_of(make_rule("inv_factorial"))).radius == math.inf
    assert abs(radius(series_of(make_rule("geometric", 2.0)), 200, 50).radius - 0.5) < 0.02
    assert radius(series_of(make_rule("factorial"))).radius == 0.0


def test_radius_window_validation():
    with pytest.raises(ValueError):
        radius(GEOMETRIC, 100, 0)
    with pytest.raises(ValueError):
        radius(GEOMETRIC, 100, 101)


def test_radius_stable_in_n():
    ps = series_of(make_rule("geometric", 3.0))
    values = [radius(ps, n).radius for n in (100, 200, 400)]
    assert all(v == pytest.approx(1 / 3, rel=1e-9) for v in values)


def test_radius_per_support_takes_worst_exponent():
    ps = PowerSeries([Shape(F(0), F(0), make_rule("const", 1.0)),
                      Shape(F(1, 2), F(0), make_rule("geometric", 4.0))])
    rep = radius(ps)
    assert dict(rep.per_support)[F(1, 2)] == pytest.approx(4.0)
    assert rep.radius == pytest.approx(0.25)


def test_classify_examples():
    assert classify(GEOMETRIC, P("0.5 + d")).classification is Classification.CONVERGES
    rep = classify(GEOMETRIC, P("1.5 + d"))
    assert rep.classification is Classification.DIVERGES and rep.divergent_exponent == 0
    assert classify(GEOMETRIC, P("1 + d")).classification is Classification.BOUNDARY
    assert classify(GEOMETRIC, P("3*d")).classification is Classification.CONVERGES


def test_classify_below_lambda0_raises():
    ps = series_of(make_rule("const", 1.0), beta=-1, lambda0=1)
    with pytest.raises(HypothesisError):
        classify(ps, P("1"))


def test_negative_slope_violates_hypothesis():
    ps = series_of(make_rule("const", 1.0), beta=-1)
    rep = classify(ps, P("0.5*d"))
    assert rep.classification is Classification.HYPOTHESIS_VIOLATED
    assert rep.hypothesis_slope == pytest.approx(1.0)


def test_eval_at_center_gives_constant_term():
    ps = PowerSeries([Shape(F(0), F(0), make_rule("list", 2.0, 5.0, 7.0))], center=P("1 + d"))
    assert eval_weak(ps, P("1 + d"), 3) == P("2", cutoff=3)


def test_eval_geometric_closed_form():
    value = eval_weak(GEOMETRIC, P("0.5 + d"), 3)
    for q, expected in ((0, 2.0), (1, 4.0), (2, 8.0)):
        assert value[q] == pytest.approx(expected, abs=1e-9)


def test_eval_diverges():
    with pytest.raises(NonConvergentError):
        eval_weak(GEOMETRIC, P("1.5 + d"), 2)


def test_eval_linear_in_series():
    x = P("0.25 + d^(1/2)")
    a, b = GEOMETRIC, PowerSeries.standard("exp")
    lhs = eval_weak(a + b, x, 2)
    rhs = eval_weak(a, x, 2) + eval_weak(b, x, 2)
    for q in set(lhs.support) | set(rhs.support):
        assert lhs[q] == pytest.approx(rhs[q], abs=1e-9)


def test_eval_matches_oracle_for_moving_shape():
    ps = PowerSeries([Shape(F(0), F(1), make_rule("const", 1.0))])
    x = P("2 + d")
    assert classify(ps, x).classification is Classification.CONVERGES
    value = eval_weak(ps, x, 3)
    ref = partial_sums(ps, x, 10, 3)
    assert value == ref


def test_scaling_identity():
    c = 2.0
    x = P("0.2 + d")
    scaled = eval_weak(GEOMETRIC.scaled(c), x, 2)
    plain = eval_weak(GEOMETRIC, x * c, 2)
    # scaling the argument by c rescales d^1 coefficients by c
    assert scaled[0] == pytest.approx(plain[0])
    assert scaled[1] == pytest.approx(plain[1])


def test_std_functions():
    assert std_function("exp", ZERO, 2) == P("1", cutoff=2)
    c = std_function("cos", P(f"{math.pi / 3} + d"), 2)
    assert c[0] == pytest.approx(0.5, abs=1e-12)
    assert c[1] == pytest.approx(-math.sin(math.pi / 3), abs=1e-12)
    with pytest.raises(ValueError):
        std_function("tan", ZERO, 2)
    with pytest.raises(HypothesisError):
        std_function("exp", monomial(1, -1), 2)


def test_budget_error():
    ps = series_of(make_rule("const", 1.0))
    with pytest.raises(BudgetError):
        eval_weak(ps, P("0.9 + d"), 1, budget=100)


def test_parse_rule_and_json():
    assert parse_rule("geometric(1/2)").value(3) == 0.125
    assert parse_rule("exp").value(3) == pytest.approx(1 / 6)
    assert parse_rule("sin").value(3) == pytest.approx(-1 / 6)
    assert parse_rule("cos").value(2) == pytest.approx(-0.5)
    assert parse_rule("list(1, 2)").value(5) == 0.0
    with pytest.raises(ValueError):
        parse_rule("tan")
    with pytest.raises(ValueError):
        parse_rule("exp(")
    ps = PowerSeries.from_json('{"shape": [{"alpha": "0", "beta": "-1", "coef_rule": "const(1)"}],'
                               ' "lambda0": "1", "center": "3"}')
    assert ps.lambda0 == 1 and ps.center == P("3")
    assert ps.coefficient(2) == monomial(1, -2)


def test_report_to_dict():
    d = classify(PowerSeries.standard("exp"), P("5 + d")).to_dict()
    assert d["radius"] == "inf" and d["classification"] == "Converges" and d["schema"] == "hahn/1"


def test_estimator():
    est = RadiusEstimator(n_terms=100)
    assert est.get_params()["n_terms"] == 100
    with pytest.raises(RuntimeError):
        est.predict([P("0")])
    est.fit(GEOMETRIC)
    assert est.radius_ == 1.0
    assert est.predict([P("0.5"), "2 + d", P("1")]) == ["Converges", "Diverges", "Boundary-Indeterminate"]
    with pytest.raises(ValueError):
        RadiusEstimator(n_terms=0).fit(GEOMETRIC)
    with pytest.raises(TypeError):
        est.fit([1, 2, 3])
    assert est.set_params(boundary_band=0.5).classify(P("0.6")).classification is Classification.BOUNDARY
