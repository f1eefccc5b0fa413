"""Exception hierarchy.

Three families map onto CLI exit codes: configuration problems (2),
numerical failures (3) and breached physical bounds (4).  Argument errors
that are plain caller mistakes subclass ``ValueError`` as well so they read
naturally at call sites.
"""


class TunnelInfoError(Exception):
    """Base class for every error raised by this package."""


# -- configuration ---------------------------------------------------------

class ConfigError(TunnelInfoError):
    pass


class ParseError(ConfigError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class ValidationError(ConfigError, ValueError):
    def __init__(self, key, constraint):
        self.key = key
        self.constraint = constraint
        super().__init__(f"{key}: {constraint}")


# -- numerical failures ----------------------------------------------------

class NumericalError(TunnelInfoError):
    pass


class NoSignChange(NumericalError, ValueError):
    pass


class MaxIterations(NumericalError):
    pass


class ToleranceNotMet(NumericalError):
    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class TailNotNegligible(NumericalError):
    pass


class RankDeficient(NumericalError, ValueError):
    pass


class InsufficientData(NumericalError, ValueError):
    pass


class NotNormalizable(NumericalError):
    pass


class NotNormalized(NumericalError, ValueError):
    pass


class NegativeVariance(NumericalError):
    pass


class ConvolutionUnderresolved(NumericalError, ValueError):
    pass


class NoStatesFound(NumericalError):
    pass


class GridTooNarrow(NumericalError, ValueError):
    pass


# -- domain/argument errors ------------------------------------------------

class OutOfWindow(TunnelInfoError, ValueError):
    pass


class UnknownUnit(TunnelInfoError, ValueError):
    pass


class InvalidIndex(TunnelInfoError, ValueError):
    pass


class UnknownPair(TunnelInfoError, ValueError):
    pass


class InvalidOrder(TunnelInfoError, ValueError):
    pass


class ZeroProbabilityTerm(TunnelInfoError, ValueError):
    pass


class IncompatibleSampling(TunnelInfoError, ValueError):
    pass


# -- physics ---------------------------------------------------------------

class BoundViolation(TunnelInfoError):
    """A lower bound (EUR, Fisher product, Heisenberg, Cramer-Rao) was breached."""
