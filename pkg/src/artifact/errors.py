"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An argument is outside the domain an operation is defined on."""


class DivisibilityError(ArithmeticError):
    """Exact division was requested for a non-divisible pair."""


class InvalidRing(ValueError):
    """A ring tag that does not name a supported ring (e.g. composite modulus)."""


class ShapeError(ValueError):
    """Matrix or map dimensions do not line up."""


class RingError(ValueError):
    """Operands live over different coefficient rings."""


class NotAComplex(ValueError):
    """Differentials whose composite is nonzero."""


class SquareError(ValueError):
    """A lifting problem whose square does not commute."""


class ClassError(ValueError):
    """A map does not belong to the model class an operation requires."""


class NotSimplicial(ValueError):
    """Levelwise matrices that do not commute with faces and degeneracies."""
