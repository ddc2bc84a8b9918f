"""Exception hierarchy.

Everything raised on purpose derives from :class:`FovlabError`. The CLI maps
:class:`ParseError` to exit code 2 and :class:`NumericalError` to exit code 3.
"""


class FovlabError(Exception):
    pass


class DimensionMismatch(FovlabError, ValueError):
    pass


class EmptyInput(FovlabError, ValueError):
    pass


class ParseError(FovlabError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class NonSquare(ParseError, ValueError):
    pass


class NumericalError(FovlabError):
    pass


class SingularBasis(NumericalError):
    pass


class DefectiveMatrix(NumericalError):
    pass


class NonConvergence(NumericalError):
    pass


class ZeroVector(NumericalError, ValueError):
    pass


class DegeneratePair(NumericalError):
    pass


class NotPositiveDefinite(NumericalError, ValueError):
    pass


class InvalidM(NumericalError, ValueError):
    pass


class RankDeficientBasis(NumericalError):
    pass


class ComplexSpectrum(NumericalError):
    pass


class SandwichViolation(NumericalError):
    pass
