"""Power series over truncated Hahn numbers: radius, classification, evaluation.

A :class:`PowerSeries` is ``sum_n a_n (x - center)**n`` where each
coefficient ``a_n`` is a finite sum of *shapes*: a shape contributes
``rule(n) * d**(alpha + beta*n)`` for a real coefficient rule.  With
``lambda0`` the declared scaling exponent, the rescaled coefficients are
``b_n = a_n d**(n*lambda0)`` and ``y = d**(-lambda0) (x - center)`` so that
``b_n y**n = a_n (x - center)**n``.

In the rescaled picture a shape has slope ``beta + lambda0``.  Slope-zero
shapes ("fixed") place a whole real sequence on the single exponent
``alpha`` and decide the radius.  Positive-slope shapes ("moving") hit each
exponent at most once, so their root-test limsup is 0, and they only
contribute finitely many terms below any cutoff.  A negative slope breaks
the growth hypothesis ``limsup(-lam(b_n)/n) = 0``.
"""

from __future__ import annotations

import enum
import json
import math
import re
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sklearn.base import BaseEstimator

from ._validation import as_hahn, check_positive
from .errors import BudgetError, HypothesisError, NonConvergentError
from .number import INF, ONE, ZERO, HahnNumber, as_cutoff, as_exponent, monomial
from .text import format_exponent, format_number, parse_number

SCHEMA = "hahn/1"


# -- coefficient rules ----------------------------------------------------

@lru_cache(maxsize=4096)
def _inv_factorial(n: int) -> float:
    # correctly rounded 1/n!; below the smallest subnormal from n = 178 on
    if n > 180:
        return 0.0
    return float(Fraction(1, math.factorial(n)))


def _factorial(n: int) -> float:
    try:
        return float(math.factorial(n))
    except OverflowError:
        return math.inf


class CoefRule:
    """Real coefficient sequence ``n -> value(n)``.

    ``log_abs(n)`` returns ``log|value(n)|`` (``-inf`` for zero) without
    under- or overflow when the rule knows a closed form.  ``degree`` is
    the last possibly nonzero index for finite rules, else ``None``.
    """

    def __init__(self, name: str, params: Tuple[float, ...], value: Callable[[int], float],
                 log_abs: Optional[Callable[[int], float]] = None, degree: Optional[int] = None):
        self.name = name
        self.params = tuple(params)
        self._value = value
        self._log_abs = log_abs
        self.degree = degree

    def value(self, n: int) -> float:
        if self.degree is not None and n > self.degree:
            return 0.0
        return self._value(n)

    def log_abs(self, n: int) -> float:
        if self.degree is not None and n > self.degree:
            return -math.inf
        if self._log_abs is not None:
            return self._log_abs(n)
        v = abs(self._value(n))
        return math.log(v) if v > 0 else -math.inf

    def scaled(self, c: float) -> "CoefRule":
        """The rule ``c**n * value(n)``."""
        c = float(c)
        if c == 0:
            raise ValueError("scaling factor must be nonzero")
        log_c = math.log(abs(c))
        neg = c < 0

        def value(n):
            sign = -1.0 if neg and n % 2 else 1.0
            v = self.value(n)
            if v == 0:
                return 0.0
            return sign * math.copysign(math.exp(n * log_c + self.log_abs(n)), v)

        def log_abs(n):
            return n * log_c + self.log_abs(n)

        return CoefRule(f"{self.name}*{c!r}^n", self.params, value, log_abs, self.degree)

    def __repr__(self):
        inner = ",".join(repr(p) for p in self.params)
        return f"{self.name}({inner})"


def _sign_of_trig(n: int, parity: int) -> float:
    if n % 2 != parity:
        return 0.0
    return -1.0 if (n // 2) % 2 else 1.0


def make_rule(name: str, *params: float) -> CoefRule:
    """Build a named coefficient rule.

    ``const(c)``: ``c``; ``geometric(c)``: ``c**n``; ``exp``/``inv_factorial``:
    ``1/n!``; ``sin``, ``cos``: Taylor coefficients; ``factorial``: ``n!``;
    ``list(c0, c1, ...)``: finitely many values then zeros.
    """
    params = tuple(float(p) for p in params)
    if name == "const":
        (c,) = params or (1.0,)
        lc = math.log(abs(c)) if c else -math.inf
        return CoefRule(name, (c,), lambda n: c, lambda n: lc)
    if name == "geometric":
        (c,) = params or (1.0,)
        if c == 0:
            return CoefRule(name, (c,), lambda n: 1.0 if n == 0 else 0.0, degree=0)
        lc = math.log(abs(c))

        def value(n):
            try:
                return c ** n
            except OverflowError:
                return math.copysign(math.inf, c if n % 2 else 1.0)

        return CoefRule(name, (c,), value, lambda n: n * lc)
    if name in ("exp", "inv_factorial"):
        return CoefRule(name, (), _inv_factorial, lambda n: -math.lgamma(n + 1))
    if name == "sin":
        return CoefRule(name, (), lambda n: _sign_of_trig(n - 1, 0) * _inv_factorial(n) if n % 2 else 0.0,
                        lambda n: -math.lgamma(n + 1) if n % 2 else -math.inf)
    if name == "cos":
        return CoefRule(name, (), lambda n: _sign_of_trig(n, 0) * _inv_factorial(n),
                        lambda n: -math.lgamma(n + 1) if n % 2 == 0 else -math.inf)
    if name == "factorial":
        return CoefRule(name, (), _factorial, lambda n: math.lgamma(n + 1))
    if name == "list":
        vals = params
        return CoefRule(name, vals, lambda n: vals[n], degree=len(vals) - 1)
    raise ValueError(f"unknown coefficient rule {name!r}")


_RULE = re.compile(r"^\s*([A-Za-z_]\w*)\s*(?:\((.*)\))?\s*$")


def parse_rule(text: str) -> CoefRule:
    """Parse ``"name"`` or ``"name(p1, p2, ...)"``; parameters may be ``p/q``."""
    m = _RULE.match(text)
    if not m:
        raise ValueError(f"malformed coefficient rule {text!r}")
    args = [a.strip() for a in (m.group(2) or "").split(",") if a.strip()]
    return make_rule(m.group(1), *(float(Fraction(a)) for a in args))


# -- series ---------------------------------------------------------------

@dataclass(frozen=True)
class Shape:
    """``rule(n) * d**(alpha + beta*n)`` as part of ``a_n``."""

    alpha: Fraction
    beta: Fraction
    rule: CoefRule

    def exponent(self, n: int) -> Fraction:
        return self.alpha + self.beta * n


class PowerSeries:
    def __init__(self, shapes: Sequence[Shape], lambda0=0, center: HahnNumber = ZERO):
        self.shapes = tuple(Shape(as_exponent(s.alpha), as_exponent(s.beta), s.rule) for s in shapes)
        self.lambda0 = as_exponent(lambda0)
        self.center = center

    @classmethod
    def standard(cls, name: str) -> "PowerSeries":
        """``geometric`` (all ones), ``exp``, ``sin`` or ``cos`` about 0."""
        rule = make_rule("const", 1.0) if name == "geometric" else make_rule(name)
        return cls([Shape(Fraction(0), Fraction(0), rule)])

    @classmethod
    def from_json(cls, obj) -> "PowerSeries":
        if isinstance(obj, str):
            obj = json.loads(obj)
        shapes = [Shape(as_exponent(s.get("alpha", "0")), as_exponent(s.get("beta", "0")),
                        parse_rule(s["coef_rule"])) for s in obj["shape"]]
        center = parse_number(obj["center"]) if "center" in obj else ZERO
        return cls(shapes, as_exponent(obj.get("lambda0", "0")), center)

    def coefficient(self, n: int) -> HahnNumber:
        """``a_n`` as an exact Hahn number."""
        terms: Dict[Fraction, float] = {}
        for s in self.shapes:
            v = s.rule.value(n)
            if v:
                q = s.exponent(n)
                terms[q] = terms.get(q, 0.0) + v
        return HahnNumber(terms)

    def rescaled_slope(self, s: Shape) -> Fraction:
        return s.beta + self.lambda0

    def fixed_groups(self) -> Dict[Fraction, List[CoefRule]]:
        """Rules of slope-zero shapes, grouped by their exponent ``alpha``."""
        groups: Dict[Fraction, List[CoefRule]] = {}
        for s in self.shapes:
            if self.rescaled_slope(s) == 0:
                groups.setdefault(s.alpha, []).append(s.rule)
        return dict(sorted(groups.items()))

    def moving_shapes(self) -> List[Shape]:
        return [s for s in self.shapes if self.rescaled_slope(s) > 0]

    def scaled(self, c: float) -> "PowerSeries":
        """The series with coefficients ``c**n a_n``."""
        return PowerSeries([Shape(s.alpha, s.beta, s.rule.scaled(c)) for s in self.shapes],
                           self.lambda0, self.center)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        if self.lambda0 != other.lambda0 or self.center != other.center:
            raise ValueError("series must share lambda0 and center")
        return PowerSeries(self.shapes + other.shapes, self.lambda0, self.center)

    def __repr__(self):
        parts = ", ".join(f"({s.alpha}, {s.beta}, {s.rule!r})" for s in self.shapes)
        return f"PowerSeries([{parts}], lambda0={self.lambda0})"


def _group_value(rules: Sequence[CoefRule], n: int) -> float:
    return math.fsum(r.value(n) for r in rules)


def _group_log_abs(rules: Sequence[CoefRule], n: int) -> float:
    if len(rules) == 1:
        return rules[0].log_abs(n)
    v = abs(_group_value(rules, n))
    return math.log(v) if v > 0 else -math.inf


# -- radius ---------------------------------------------------------------

class Classification(str, enum.Enum):
    CONVERGES = "Converges"
    DIVERGES = "Diverges"
    BOUNDARY = "Boundary-Indeterminate"
    HYPOTHESIS_VIOLATED = "HypothesisViolated"


def _num(v: float):
    return "inf" if v == math.inf else v


@dataclass
class ConvergenceReport:
    radius: float
    per_support: List[Tuple[Fraction, float]]
    inspected_n: int
    window: int
    classification: Optional[Classification] = None
    hypothesis_slope: Optional[float] = None
    y0: Optional[float] = None
    divergent_exponent: Optional[Fraction] = None
    diagnostics: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "radius": _num(self.radius),
            "classification": self.classification.value if self.classification else None,
            "per_support": [{"q": format_exponent(q), "limsup": _num(v)} for q, v in self.per_support],
            "inspected_n": self.inspected_n,
            "window": self.window,
            "hypothesis_slope": self.hypothesis_slope,
            "y0": self.y0,
            "divergent_exponent": None if self.divergent_exponent is None
            else format_exponent(self.divergent_exponent),
            "diagnostics": "; ".join(self.diagnostics),
        }


def _limsup_estimate(rules, n_terms: int, window: int, slope_tol: float) -> Tuple[float, str]:
    """Trailing-window root-test estimate for one exponent.

    Returns the max of ``|c_n|**(1/n)`` over the window, or 0 / +inf when
    ``log|c_n|**(1/n)`` drifts against ``log n`` faster than ``slope_tol``
    (factorial-type decay or growth, which a finite max cannot reach).
    """
    ns, logs = [], []
    for n in range(n_terms - window + 1, n_terms + 1):
        if n < 1:
            continue
        la = _group_log_abs(rules, n)
        if la == -math.inf:
            continue
        ns.append(n)
        logs.append(la / n)
    if not ns:
        return 0.0, "no nonzero coefficients in window"
    est = math.exp(max(logs)) if max(logs) < 709 else math.inf
    if len(ns) >= 3 and ns[0] != ns[-1]:
        slope = statistics.linear_regression([math.log(n) for n in ns], logs).slope
        if slope < -slope_tol:
            return 0.0, f"root sequence decays like n^{slope:.2f}"
        if slope > slope_tol:
            return math.inf, f"root sequence grows like n^{slope:.2f}"
    return est, ""


def _hypothesis_slope(ps: PowerSeries, n_terms: int, window: int) -> Optional[float]:
    """Slope of ``-lam(b_n)`` against ``n`` over the window (None if all b_n vanish)."""
    ns, neg_lams = [], []
    for n in range(max(n_terms - window + 1, 0), n_terms + 1):
        lam = min((s.alpha + ps.rescaled_slope(s) * n for s in ps.shapes
                   if s.rule.log_abs(n) > -math.inf), default=None)
        if lam is not None:
            ns.append(n)
            neg_lams.append(-float(lam))
    if len(ns) < 2:
        return None
    return statistics.linear_regression(ns, neg_lams).slope


def radius(ps: PowerSeries, n_terms: int = 200, window: Optional[int] = None,
           slope_tol: float = 0.25, hypothesis_tol: float = 1e-9) -> ConvergenceReport:
    """Estimate the weak radius of convergence of the rescaled series.

    The radius is ``1 / sup_q limsup |b_n[q]|**(1/n)``; moving shapes
    contribute limsup 0 and appear in ``per_support`` only by omission.
    """
    if window is None:
        window = max(n_terms // 4, 1)
    if not 0 < window <= n_terms:
        raise ValueError(f"window must be in 1..{n_terms}, got {window}")
    per_support, notes = [], []
    for alpha, rules in ps.fixed_groups().items():
        est, note = _limsup_estimate(rules, n_terms, window, slope_tol)
        per_support.append((alpha, est))
        if note:
            notes.append(f"q={alpha}: {note}")
    sup = max((v for _, v in per_support), default=0.0)
    r = math.inf if sup == 0 else (0.0 if sup == math.inf else 1.0 / sup)
    report = ConvergenceReport(r, per_support, n_terms, window, diagnostics=notes)
    slope = _hypothesis_slope(ps, n_terms, window)
    report.hypothesis_slope = slope
    if slope is not None and slope > hypothesis_tol:
        report.classification = Classification.HYPOTHESIS_VIOLATED
        report.diagnostics.append(f"-lam(b_n) grows with slope {slope:.3g}")
    return report


def rescale_argument(ps: PowerSeries, x: HahnNumber) -> HahnNumber:
    """``y = d**(-lambda0) (x - center)``; requires ``lam(x - center) >= lambda0``."""
    z = x - ps.center
    lam = z.leading_exponent if not z.is_zero else z.cutoff
    if lam < ps.lambda0:
        raise HypothesisError(
            f"lam(x - center) = {format_exponent(lam) if lam != INF else 'inf'} is below lambda0 = {ps.lambda0}")
    return z.shift(-ps.lambda0)


def classify(ps: PowerSeries, x: HahnNumber, n_terms: int = 200, window: Optional[int] = None,
             boundary_band: float = 0.02, slope_tol: float = 0.25) -> ConvergenceReport:
    """Weak-topology convergence verdict for the series at ``x``.

    Compares ``|y[0]|`` with the estimated radius.  ``y[0] = 0`` converges
    outright since the terms then tend to zero in the valuation topology.
    Within ``boundary_band`` (relative) of the radius the verdict is
    Boundary-Indeterminate.
    """
    y = rescale_argument(ps, x)
    report = radius(ps, n_terms, window, slope_tol)
    y0 = y[0]
    report.y0 = y0
    if report.classification is Classification.HYPOTHESIS_VIOLATED:
        return report
    a, r = abs(y0), report.radius
    if a == 0 or r == math.inf:
        report.classification = Classification.CONVERGES
    elif abs(a - r) <= boundary_band * r:
        report.classification = Classification.BOUNDARY
        report.diagnostics.append(f"|y[0]| = {a!r} within {boundary_band:.0%} of radius {r!r}")
    elif a < r:
        report.classification = Classification.CONVERGES
    else:
        report.classification = Classification.DIVERGES
        for q, est in report.per_support:
            if est * a > 1:
                report.divergent_exponent = q
                break
    return report


# -- weak evaluation --------------------------------------------------------

_RATIO_RUN = 10


def _binomial_series(rules, k: int, y0: float, tol: float, budget: int) -> float:
    """``sum_{n>=k} C(n,k) c_n y0**(n-k)`` with a certified geometric tail.

    Stops once the last ``_RATIO_RUN`` ratios of consecutive nonzero terms
    are all below one and ``|t| rho / (1 - rho) < tol`` with ``rho`` their
    maximum.
    """
    degree = None
    if all(r.degree is not None for r in rules):
        degree = max(r.degree for r in rules)
    log_y0 = math.log(abs(y0))
    w, log_w = 1.0, 0.0
    total = []
    ratios: List[float] = []
    prev = 0.0
    n = k
    while True:
        if degree is not None and n > degree:
            return math.fsum(total)
        if n - k >= budget:
            raise BudgetError(f"real series for d^k, k={k}, not certified within {budget} terms")
        c = _group_value(rules, n)
        la = _group_log_abs(rules, n)
        if la == -math.inf:
            t = 0.0
        elif math.isfinite(w) and w != 0.0 and c != 0.0 and math.isfinite(c):
            t = w * c
        else:
            sign = math.copysign(1.0, c) * (-1.0 if y0 < 0 and (n - k) % 2 else 1.0)
            t = sign * math.exp(log_w + la) if log_w + la < 709 else sign * math.inf
        if not math.isfinite(t):
            raise NonConvergentError(f"term {n} of the real series for d^k, k={k}, overflowed")
        if t != 0.0:
            total.append(t)
            if prev != 0.0:
                ratios.append(abs(t / prev))
                if len(ratios) > _RATIO_RUN:
                    ratios.pop(0)
                if len(ratios) == _RATIO_RUN:
                    rho = max(ratios)
                    if rho < 1 and abs(t) * rho / (1 - rho) < tol:
                        return math.fsum(total)
            prev = t
        # C(n+1,k) y0^(n+1-k) = C(n,k) y0^(n-k) * (n+1)/(n+1-k) * y0
        step = (n + 1) / (n + 1 - k)
        w *= step * y0
        log_w += math.log(step) + log_y0
        n += 1


def _split(y: HahnNumber) -> Tuple[float, HahnNumber]:
    y0 = y[0]
    return y0, HahnNumber([(q, c) for q, c in y.terms if q != 0], y.cutoff)


def eval_weak(ps: PowerSeries, x: HahnNumber, cutoff, tol: float = 1e-10,
              n_terms: int = 200, budget: int = 10**6) -> HahnNumber:
    """Weak limit of the series at ``x``, truncated at ``cutoff``.

    With ``y = y0 + h`` (``y0`` real, ``lam(h) > 0``) each fixed exponent
    ``alpha`` contributes ``sum_k c_k d**alpha h**k`` where
    ``c_k = sum_{n>=k} C(n,k) b_n[alpha] y0**(n-k)``.  Moving shapes are
    summed term by term.
    """
    cutoff = as_cutoff(cutoff)
    report = classify(ps, x, n_terms)
    if report.classification is not Classification.CONVERGES:
        raise NonConvergentError(
            f"series does not converge at x = {format_number(x)} ({report.classification.value})")
    y = rescale_argument(ps, x)
    y0, h = _split(y)
    acc = HahnNumber((), cutoff)
    for alpha, rules in ps.fixed_groups().items():
        hk = ONE
        k = 0
        while alpha + min(hk.leading_exponent, hk.cutoff) < cutoff:
            if y0 == 0:
                ck = _group_value(rules, k)
            else:
                ck = _binomial_series(rules, k, y0, tol, budget)
            acc = acc + monomial(ck, alpha) * hk
            if h.is_zero and h.exact:
                break
            hk = hk * h
            k += 1
    for s in ps.moving_shapes():
        slope = ps.rescaled_slope(s)
        yn = ONE
        n = 0
        while s.alpha + slope * n < cutoff:
            c = s.rule.value(n)
            if c:
                acc = acc + monomial(c, s.alpha + slope * n) * yn
            yn = yn * y
            n += 1
    return acc.truncate(cutoff)


_STD_CACHE: Dict[str, PowerSeries] = {}


def std_function(name: str, x: HahnNumber, cutoff, tol: float = 1e-10) -> HahnNumber:
    """``exp``, ``sin`` or ``cos`` of ``x`` (requires ``lam(x) >= 0``)."""
    if name not in ("exp", "sin", "cos"):
        raise ValueError(f"unknown function {name!r}")
    ps = _STD_CACHE.get(name)
    if ps is None:
        ps = _STD_CACHE[name] = PowerSeries.standard(name)
    return eval_weak(ps, x, cutoff, tol)


class RadiusEstimator(BaseEstimator):
    """Estimator wrapper around :func:`radius` and :func:`classify`.

    ``fit(series)`` stores the radius estimate; ``predict(points)`` returns
    a classification string for each Hahn number.
    """

    def __init__(self, n_terms: int = 200, window: Optional[int] = None,
                 boundary_band: float = 0.02, slope_tol: float = 0.25):
        self.n_terms = n_terms
        self.window = window
        self.boundary_band = boundary_band
        self.slope_tol = slope_tol

    def fit(self, series: PowerSeries, y=None) -> "RadiusEstimator":
        if not isinstance(series, PowerSeries):
            raise TypeError(f"expected a PowerSeries, got {type(series).__name__}")
        check_positive("n_terms", self.n_terms, integer=True)
        check_positive("boundary_band", self.boundary_band)
        check_positive("slope_tol", self.slope_tol)
        self.series_ = series
        self.report_ = radius(series, self.n_terms, self.window, self.slope_tol)
        self.radius_ = self.report_.radius
        self.per_support_ = list(self.report_.per_support)
        return self

    def _check_fitted(self):
        if not hasattr(self, "series_"):
            raise RuntimeError("RadiusEstimator is not fitted yet; call fit(series) first")

    def classify(self, x) -> ConvergenceReport:
        self._check_fitted()
        return classify(self.series_, as_hahn(x), self.n_terms, self.window, self.boundary_band, self.slope_tol)

    def predict(self, points: Sequence) -> List[str]:
        return [self.classify(x).classification.value for x in points]
