"""Exception hierarchy shared by every qrr module."""


class QSeriesError(Exception):
    """Base class for all errors raised by qrr."""


class NonUnitSeries(QSeriesError, ZeroDivisionError):
    """Inversion of a series whose constant term is zero."""


class OrderTooLarge(QSeriesError, ValueError):
    """A comparison asked for coefficients beyond a truncation order."""


class NegativeLength(QSeriesError, ValueError):
    pass


class DivergentProduct(QSeriesError, ValueError):
    pass


class MonomialOutOfRange(QSeriesError, ValueError):
    pass


class NegativeExponentTerm(QSeriesError, ValueError):
    """A term with a negative power of q survived into a power series."""


class UnsupportedArgument(QSeriesError, ValueError):
    pass


class UnsupportedAParameter(QSeriesError, ValueError):
    pass


class SingularTerm(QSeriesError, ZeroDivisionError):
    pass


class NonRealSum(QSeriesError, ArithmeticError):
    """Residue-class sums that should be conjugate-symmetric are not."""


class UnknownIdentity(QSeriesError, KeyError):
    def __str__(self):
        return f"unknown identity {self.args[0]!r}" if self.args else "unknown identity"


class MissingX(QSeriesError, ValueError):
    pass


class UnknownIdentifier(QSeriesError, NameError):
    pass


class DSLSyntaxError(QSeriesError, SyntaxError):
    """Parse failure with a 1-based line/column location."""

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = self.lineno = line
        self.column = self.offset = column

    def __str__(self):
        return self.args[0]
