"""Text and JSON forms of :class:`~hahn.number.HahnNumber`.

Canonical text lists terms in ascending exponent order joined by ``" + "``::

    3*d^(-1) + 2 + 0.5*d^(1/2)

A term is a bare coefficient at exponent 0, ``d^(q)`` for a unit
coefficient, and ``c*d^(q)`` otherwise.  Coefficients use the shortest
round-trip float spelling, with integral values written without a decimal
point.  The zero element prints as ``0``.  The cutoff is not part of the
text; the JSON form carries it.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DuplicateExponentError, ParseError
from .number import INF, HahnNumber, as_cutoff, as_exponent, monomial

_FLOAT = re.compile(r"(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?")
_UINT = re.compile(r"\d+")


def format_coefficient(c: float) -> str:
    if c.is_integer() and abs(c) < 2**53:
        return str(int(c))
    return repr(c)


def format_exponent(q: Fraction) -> str:
    return str(q)


def format_number(x: HahnNumber) -> str:
    if x.is_zero:
        return "0"
    parts = []
    for q, c in x.terms:
        if q == 0:
            parts.append(format_coefficient(c))
        elif c == 1.0:
            parts.append(f"d^({format_exponent(q)})")
        else:
            parts.append(f"{format_coefficient(c)}*d^({format_exponent(q)})")
    return " + ".join(parts)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.eat(ch):
            raise self.error(f"expected {ch!r}")

    def error(self, message: str, pos=None) -> ParseError:
        pos = self.pos if pos is None else pos
        found = self.text[pos] if pos < len(self.text) else "end of input"
        return ParseError(f"{message}, found {found!r}", pos)

    def at_end(self) -> bool:
        return self.peek() == ""

    def float_literal(self):
        self.skip_ws()
        m = _FLOAT.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return float(m.group())

    def uint(self) -> int:
        self.skip_ws()
        m = _UINT.match(self.text, self.pos)
        if not m:
            raise self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def rational(self) -> Fraction:
        sign = 1
        if self.eat("-"):
            sign = -1
        else:
            self.eat("+")
        num = self.uint()
        den = 1
        if self.eat("/"):
            start = self.pos
            den = self.uint()
            if den == 0:
                raise ParseError("zero denominator", start)
        return sign * Fraction(num, den)

    def power_exponent(self) -> Fraction:
        # after '^': "(rat)" or an unsigned integer
        if self.eat("("):
            q = self.rational()
            self.expect(")")
            return q
        return Fraction(self.uint())


def parse_number(text: str, cutoff=INF) -> HahnNumber:
    """Parse a sum of monomials, e.g. ``"3*d^(-1) + 2 + 0.5*d^(1/2)"``.

    Terms may be separated by ``+`` or ``-``; a repeated exponent raises
    :class:`~hahn.errors.DuplicateExponentError`.
    """
    s = _Scanner(text)
    terms = {}
    sign = 1.0
    while True:
        start = s.pos
        if s.eat("-"):
            sign = -sign
        q, c = _parse_term(s)
        if q in terms:
            raise DuplicateExponentError(f"duplicate exponent {q} at offset {start}")
        terms[q] = sign * c
        if s.at_end():
            break
        if s.eat("+"):
            sign = 1.0
        elif s.eat("-"):
            sign = -1.0
        else:
            raise s.error("expected '+' or '-'")
    return HahnNumber(terms, cutoff)


def _parse_term(s: _Scanner):
    if s.peek() == "d":
        s.pos += 1
        return _parse_d_power(s), 1.0
    c = s.float_literal()
    if c is None:
        raise s.error("expected a coefficient or 'd'")
    if s.eat("*"):
        if s.peek() != "d":
            raise s.error("expected 'd'")
        s.pos += 1
        return _parse_d_power(s), c
    return Fraction(0), c


def _parse_d_power(s: _Scanner) -> Fraction:
    if s.eat("^"):
        return s.power_exponent()
    return Fraction(1)


def evaluate_expression(text: str, cutoff=INF) -> HahnNumber:
    """Evaluate an arithmetic expression over truncated Hahn numbers.

    Supports ``+``, ``-``, ``*``, parentheses, real literals, ``d``,
    ``d^(p/q)`` and non-negative integer powers ``(expr)^n``.  There is no
    division.  The result is truncated at ``cutoff``.
    """
    s = _Scanner(text)
    value = _expr(s)
    if not s.at_end():
        raise s.error("unexpected input")
    return value.truncate(as_cutoff(cutoff))


def _expr(s):
    value = _term(s)
    while True:
        if s.eat("+"):
            value = value + _term(s)
        elif s.eat("-"):
            value = value - _term(s)
        else:
            return value


def _term(s):
    value = _factor(s)
    while s.eat("*"):
        value = value * _factor(s)
    return value


def _factor(s):
    if s.eat("-"):
        return -_factor(s)
    if s.eat("+"):
        return _factor(s)
    return _power(s)


def _power(s):
    ch = s.peek()
    if ch == "d":
        s.pos += 1
        if s.eat("^"):
            return monomial(1.0, s.power_exponent())
        return monomial(1.0, 1)
    if ch == "(":
        s.pos += 1
        base = _expr(s)
        s.expect(")")
    else:
        c = s.float_literal()
        if c is None:
            raise s.error("expected a number, 'd' or '('")
        base = HahnNumber.from_real(c)
    if s.eat("^"):
        at = s.pos
        n = s.power_exponent()
        if n.denominator != 1 or n < 0:
            raise ParseError("only d takes rational exponents; other powers must be non-negative integers", at)
        return base ** int(n)
    return base


def to_json_obj(x: HahnNumber) -> dict:
    return {
        "terms": [{"exp": format_exponent(q), "coef": c} for q, c in x.terms],
        "cutoff": "inf" if x.exact else format_exponent(x.cutoff),
    }


def from_json_obj(obj: dict) -> HahnNumber:
    terms = [(as_exponent(t["exp"]), float(t["coef"])) for t in obj.get("terms", [])]
    return HahnNumber(terms, as_cutoff(obj.get("cutoff", "inf")))

