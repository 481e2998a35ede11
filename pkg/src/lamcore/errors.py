"""Exception hierarchy for lamcore.

Every validation failure raises a subclass of :class:`LamcoreError`, so callers
(and the CLI) can distinguish bad input (exit code 1) from genuine bugs.
"""


class LamcoreError(Exception):
    """Base class for all lamcore errors."""


class InvalidGenus(LamcoreError):
    pass


class WrongLength(LamcoreError):
    pass


class ViolatedTriangleInequality(LamcoreError):
    def __init__(self, triangle):
        self.triangle = triangle
        super().__init__(f"triangle inequality fails in triangle {triangle}")


class ViolatedParity(LamcoreError):
    def __init__(self, triangle):
        self.triangle = triangle
        super().__init__(f"odd corner sum in triangle {triangle}")


class TrivialComponent(LamcoreError):
    pass


class NotDisjoint(LamcoreError):
    pass


class NotSimple(LamcoreError):
    pass


class SurfaceMismatch(LamcoreError):
    pass


class SupportOutsidePiece(LamcoreError):
    pass


class ZeroLamination(LamcoreError):
    pass


class EmptyLamination(LamcoreError):
    pass


class BothZero(LamcoreError):
    pass


class NonPositiveScale(LamcoreError):
    pass


class InessentialCurve(LamcoreError):
    pass


class MalformedPiece(LamcoreError):
    pass


class NormNotLessThanOne(LamcoreError):
    pass


class ZeroDirection(LamcoreError):
    pass


class BudgetExceeded(LamcoreError):
    pass
