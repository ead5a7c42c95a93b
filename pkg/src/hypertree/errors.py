"""Exception types raised across the package."""


class HypertreeError(Exception):
    """Base class for all package errors."""


# finite field
class NotPrime(HypertreeError, ValueError):
    pass


class EvenModulus(HypertreeError, ValueError):
    pass


class RangeExceeded(HypertreeError, ValueError):
    pass


class ContextMismatch(HypertreeError, ValueError):
    pass


class ZeroInverse(HypertreeError, ZeroDivisionError):
    pass


# instances
class ParseError(HypertreeError, ValueError):
    """Malformed instance file. ``line`` is 1-based, or None when unknown."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InstanceSyntaxError(ParseError):
    pass


class VertexOutOfRange(ParseError):
    pass


class RepeatedVertexInEdge(ParseError):
    pass


class UniformityMismatch(ParseError):
    pass


class UnsupportedUniformity(ParseError):
    pass


# matrices
class IndexOutOfRange(HypertreeError, IndexError):
    pass


class NotSkew(HypertreeError, ValueError):
    pass


# hypertrees and oracles
class NotAHypertree(HypertreeError, ValueError):
    pass


class NotAnNCycle(NotAHypertree):
    pass


class TooLarge(HypertreeError, ValueError):
    pass


class MissingWeight(HypertreeError, KeyError):
    pass


class NonIntegerResult(HypertreeError, ArithmeticError):
    pass


# decider
class InfeasibleParameters(HypertreeError, ValueError):
    pass


class InvalidInstance(HypertreeError, ValueError):
    pass


class WitnessMismatch(HypertreeError):
    pass
