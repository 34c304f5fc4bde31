"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line front end can map
error classes to process exit statuses without a lookup table.
"""


class HenselError(Exception):
    exit_code = 1


class ParseError(HenselError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            loc = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{loc}: {message}"
        super().__init__(message)


class PreconditionError(HenselError, ValueError):
    exit_code = 3


class InvalidRing(PreconditionError):
    pass


class ContextMismatch(PreconditionError):
    pass


class DivisionByHigherValuation(PreconditionError):
    pass


class IndeterminateDivisor(PreconditionError):
    pass


class NonSquare(PreconditionError):
    pass


class DimensionMismatch(PreconditionError):
    pass


class ConstantTermPresent(PreconditionError):
    pass


class ZeroJacobianDet(PreconditionError):
    pass


class NotInMaximalIdeal(PreconditionError):
    pass


class JacobianNotUnit(PreconditionError):
    pass


class TargetNotInIdeal(PreconditionError):
    pass


class TargetOutsideDomain(PreconditionError):
    pass


class PointNotOnVariety(PreconditionError):
    pass


class NotSmooth(PreconditionError):
    pass


class PrecisionExhausted(HenselError):
    exit_code = 4


class AvoidanceExhausted(HenselError):
    exit_code = 5

    def __init__(self, message, found=0):
        self.found = found
        super().__init__(message)


class InternalError(HenselError):
    exit_code = 6


class MaxIterationsExceeded(InternalError):
    pass


class NoPivotFound(InternalError):
    pass
