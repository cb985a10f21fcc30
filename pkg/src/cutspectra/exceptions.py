"""Exception types raised across the package."""


class CutSpectraError(Exception):
    """Base class for all package errors."""


class ParseError(CutSpectraError, ValueError):
    def __init__(self, message, line_no=None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class MalformedLine(ParseError):
    pass


class VertexOutOfRange(ParseError):
    pass


class NegativeWeight(ParseError):
    pass


class AsymmetricMatrix(CutSpectraError, ValueError):
    pass


class SameVertex(CutSpectraError, ValueError):
    pass


class NonUnitWeights(CutSpectraError, ValueError):
    pass


class TooSmall(CutSpectraError, ValueError):
    pass


class TooLarge(CutSpectraError, ValueError):
    pass


class NotRealizable(CutSpectraError, ValueError):
    pass


class PreconditionViolated(CutSpectraError, ValueError):
    pass


class TransitivityBroken(CutSpectraError):
    """The row-maximum relation is not transitive under the current tolerance."""


class NonConstantDiagonalOnClass(CutSpectraError, ValueError):
    pass


class NonEquitableBlock(CutSpectraError):
    pass


class BadInterval(CutSpectraError, ValueError):
    pass


class ZeroEntry(CutSpectraError, ValueError):
    pass


class NonzeroDiagonal(CutSpectraError, ValueError):
    pass


class NumericalError(CutSpectraError, ArithmeticError):
    """An internal numerical certificate failed."""


class NoConvergence(NumericalError):
    def __init__(self, sweeps):
        self.sweeps = sweeps
        super().__init__(f"Jacobi iteration did not converge after {sweeps} sweeps")
