"""Exception hierarchy shared by every orbichi module."""


class OrbichiError(Exception):
    """Base class for all errors raised by orbichi."""


class DuplicateVertexInCell(OrbichiError, ValueError):
    pass


class NotPseudomanifold(OrbichiError, ValueError):
    pass


class NotSubcomplex(OrbichiError, ValueError):
    pass


class InvalidOrbifold(OrbichiError, ValueError):
    """Raised when an operation needs a validate-clean orbifold.

    The offending violations are kept on ``violations``.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        more = len(self.violations) - 5
        if more > 0:
            lines += f"; ... ({more} more)"
        super().__init__(f"invalid orbifold: {lines}")


class NotBijection(OrbichiError, ValueError):
    pass


class NotRegular(OrbichiError, ValueError):
    pass


class NotSimplicial(OrbichiError, ValueError):
    """A group element sends some cell to a vertex set that is not a cell."""


class BoundaryNotInvariant(OrbichiError, ValueError):
    pass


class CellNotFound(OrbichiError, KeyError):
    pass


class NotAPartition(OrbichiError, ValueError):
    pass


class NotMinimal(OrbichiError, ValueError):
    pass


class SingularOnly(OrbichiError, ValueError):
    """Neighbourhood extraction was asked for a regular stratum."""


class EvenDimension(OrbichiError, ValueError):
    pass


class HasBoundary(OrbichiError, ValueError):
    pass


class UnclassifiableSingularity(OrbichiError, ValueError):
    pass


class NonTerminating(OrbichiError, RuntimeError):
    pass


class OrderTooSmall(OrbichiError, ValueError):
    pass


class UnknownEntry(OrbichiError, KeyError):
    pass


class ParseError(OrbichiError, ValueError):
    pass
