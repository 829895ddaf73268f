"""Exception types shared across the package.

Every mathematical failure mode carries a stable machine-readable code so the
CLI can surface it in JSON without string matching.
"""


class ItercurvesError(Exception):
    code = "Error"


class CapExceeded(ItercurvesError):
    """An orbit length, polynomial degree, or field width cap was exceeded."""

    code = "CapExceeded"


class BadReduction(ItercurvesError):
    """A curve model does not reduce to a smooth model at the given prime."""

    code = "BadReduction"

    def __init__(self, p, msg=""):
        self.p = p
        super().__init__(msg or f"bad reduction at p={p}")


class IncompleteFactorization(ItercurvesError):
    """A factorization budget ran out and a complete answer was required."""

    code = "IncompleteFactorization"


class HypothesisViolated(ItercurvesError):
    """Inputs fall outside the hypotheses an operation is valid under."""

    code = "HypothesisViolated"


class NotOnCurve(ItercurvesError):
    """A point does not satisfy the curve equation it was claimed to."""

    code = "NotOnCurve"


class DomainError(ItercurvesError):
    """Structurally invalid input (zero polynomial, non-squarefree model...)."""

    code = "DomainError"
