"""Exception types raised by ergocoef."""


class ErgoError(Exception):
    """Base class for all library errors."""


class ParseError(ErgoError, ValueError):
    pass


class DimensionMismatch(ErgoError, ValueError):
    pass


class DimensionTooLarge(ErgoError, ValueError):
    pass


class NotConstantRowSum(ErgoError, ValueError):
    """Raised when a matrix fails e-matrix validation.

    ``row`` is the worst offending row and ``deviation`` its distance from
    the mean row sum.
    """

    def __init__(self, row: int, deviation: float, tol: float):
        self.row = row
        self.deviation = deviation
        self.tol = tol
        super().__init__(
            f"row {row} sum deviates from the mean row sum by {deviation:.6g} "
            f"(tolerance {tol:.3g})"
        )


class SingularMatrix(ErgoError, ArithmeticError):
    def __init__(self, pivot_index: int, magnitude: float, threshold: float | None = None):
        self.pivot_index = pivot_index
        self.magnitude = magnitude
        self.threshold = threshold
        msg = f"matrix is singular: pivot {pivot_index} has magnitude {magnitude:.3g}"
        if threshold is not None:
            msg += f" (threshold {threshold:.3g})"
        super().__init__(msg)


class DegenerateCoefficient(ErgoError, ArithmeticError):
    """tau_p of an inverse power vanished, so its reciprocal bound is undefined."""


class TrivialEigenvalueNotZero(ErgoError, ValueError):
    pass


class NoEdges(ErgoError, ValueError):
    pass


class GraphDisconnected(ErgoError, ValueError):
    pass


class NonConvergence(ErgoError, RuntimeError):
    """An iterative routine hit its iteration cap.

    The best iterate found so far is kept on ``best`` together with its
    normalized ``residual``.
    """

    def __init__(self, message: str, best=None, residual: float = float("nan")):
        self.best = best
        self.residual = residual
        super().__init__(message)
