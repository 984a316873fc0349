"""Errors raised by the numerics. Nothing returns NaN; every failure is one of these."""


class BoundaryLiouvilleError(Exception):
    """Base class, the cli maps every subclass to exit status 2."""


class PoleError(BoundaryLiouvilleError):
    # factor names the gamma/double gamma/double sine that hit its lattice
    def __init__(self, message, factor=None, report=None):
        super().__init__(message)
        self.factor = factor
        self.report = report


class QuadratureError(BoundaryLiouvilleError):
    pass


class DomainError(BoundaryLiouvilleError):
    pass


class ConvergenceError(BoundaryLiouvilleError):
    pass


class DegenerateError(BoundaryLiouvilleError):
    pass


class BranchError(BoundaryLiouvilleError):
    pass


class ContourCollisionError(BoundaryLiouvilleError):
    pass


class FactorizationError(BoundaryLiouvilleError):
    pass


class GridError(BoundaryLiouvilleError):
    pass
