"""Exception types raised across the package."""


class DimensionError(ValueError):
    """Matrix or index-list dimensions do not fit the operation."""


class ShapeError(ValueError):
    """Tableau shapes, point counts or column lengths are incompatible."""


class SingularMatrixError(ZeroDivisionError):
    pass


class UnknownVariableError(KeyError):
    """A variable name lies outside a polynomial's fixed universe."""


class ResourceCapError(RuntimeError):
    """A configured size cap (tableau count, permutation size) was exceeded."""

    def __init__(self, message, count=None):
        super().__init__(message)
        self.count = count


class ConsistencyError(RuntimeError):
    """Two routes that must agree did not; indicates a bug."""


class DegenerateInputError(RuntimeError):
    pass


class UnsupportedOrderError(ValueError):
    pass


class DomainError(ValueError):
    """A compact-set descriptor is empty, unbounded or malformed."""
