"""Exception hierarchy.

Every domain error carries a stable ``code`` string; the CLI reports it in
its JSON error payload.
"""


class HahnError(Exception):
    code = "hahn-error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class CutoffError(HahnError):
    """A quantity depends on coefficients at or beyond a truncation order."""

    code = "cutoff-insufficient"

    def __init__(self, message, exponent=None):
        super().__init__(message)
        self.exponent = exponent

    def to_dict(self):
        d = super().to_dict()
        if self.exponent is not None:
            d["exponent"] = str(self.exponent)
        return d


class UndecidableError(HahnError):
    """Two truncated values agree everywhere below their common cutoff."""

    code = "undecidable-at-truncation"


class HypothesisError(HahnError):
    code = "hypothesis-violation"


class NonConvergentError(HahnError):
    code = "non-convergent"


class BudgetError(HahnError):
    code = "budget-exceeded"


class ParseError(HahnError, ValueError):
    code = "syntax-error"

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset

    def to_dict(self):
        d = super().to_dict()
        d["offset"] = self.offset
        return d


class DuplicateExponentError(HahnError, ValueError):
    code = "duplicate-exponent"
