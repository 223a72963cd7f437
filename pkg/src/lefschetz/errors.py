"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class LefschetzError(Exception):
    """Base class for every error raised by this package."""


class NonPrimeCharacteristic(LefschetzError, ValueError):
    pass


class EmptyAlgebra(LefschetzError, ValueError):
    """All generators had degree 1, so the quotient is the field itself."""


class DegreeOutOfRange(LefschetzError, ValueError):
    pass


class NotABasisElement(LefschetzError, ValueError):
    pass


class HilbertOverflow(LefschetzError, OverflowError):
    pass


class PartsMismatch(LefschetzError, ValueError):
    pass


class DimensionMismatch(LefschetzError, ValueError):
    pass


class DimensionCap(LefschetzError, RuntimeError):
    """A graded piece is larger than the configured basis cap."""

    def __init__(self, degree: int, dimension: int, cap: int):
        super().__init__(
            f"degree {degree} has dimension {dimension}, above the cap of {cap}"
        )
        self.degree = degree
        self.dimension = dimension
        self.cap = cap


class InvalidLambda(LefschetzError, ValueError):
    pass
