"""Exception hierarchy.  Everything derives from ``ValueError`` so callers
that only care about bad input can catch one thing."""


class PhylonError(ValueError):
    pass


class DimensionMismatch(PhylonError):
    pass


class TruncationError(PhylonError):
    """A requested jet order exceeds what the input determines."""


class NotInvertible(PhylonError):
    pass


class NotPositiveDefinite(PhylonError):
    pass


class NotRationalSquare(PhylonError):
    """Exact Morse normalization needs rational square-root pivots."""


class InvariantMismatch(PhylonError):
    """The invariants of two pairs first differ at ``order``."""

    def __init__(self, order, message=None):
        self.order = order
        super().__init__(message or f"invariants differ at order {order}")


class NonCoercive(PhylonError):
    pass
