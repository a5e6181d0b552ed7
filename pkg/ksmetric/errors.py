"""Error hierarchy with stable exit-code mapping."""

from __future__ import annotations

from typing import Optional


class KSMetricError(Exception):
    """Base error for expected library and CLI failures."""

    exit_code = 5

    def __init__(self, message: str, *, details: Optional[dict] = None):
        super().__init__(message)
        self.details = details or {}


class UsageError(KSMetricError):
    exit_code = 2


class ResolutionError(KSMetricError):
    exit_code = 3


class ValidationError(KSMetricError):
    exit_code = 4


class InternalError(KSMetricError):
    exit_code = 5


class IoFailure(KSMetricError):
    exit_code = 5


class SolverFailure(KSMetricError):
    """Iteration cap reached before the tolerance was met; ``result`` holds the best iterate."""

    exit_code = 6

    def __init__(self, message: str, *, result=None, details: Optional[dict] = None):
        super().__init__(message, details=details)
        self.result = result


class PropertyFailure(KSMetricError):
    """An asserted property did not hold."""

    exit_code = 1


#***** data errors *****

class NonMetric(ValidationError):
    pass


class NegativeMass(ValidationError):
    pass


class EmptySpace(ValidationError):
    pass


class ZeroTotalMass(ValidationError):
    pass


class MissingFullBall(ValidationError):
    pass


class NoValidBall(ValidationError):
    pass


class NegativeInput(ValidationError):
    pass


#***** argument errors *****

class BadRadiusGrid(UsageError):
    pass


class BadExponent(UsageError):
    pass


class TooLarge(UsageError):
    pass


class GridTooSmall(UsageError):
    pass


class SizeCap(UsageError):
    pass


class BadExpression(UsageError):
    pass


class IndexOutOfRange(ResolutionError):
    pass
