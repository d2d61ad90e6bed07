from typing import Any, Optional


class MultitreeError(ValueError):
    """Base class for every library failure. `exit_code` is what the CLI returns."""

    exit_code: int = 1


# Input and parse failures (exit 2)

class DomainError(MultitreeError):
    exit_code = 2


class DimensionMismatch(MultitreeError):
    exit_code = 2


class BadWeights(MultitreeError):
    exit_code = 2


class DegenerateInput(MultitreeError):
    exit_code = 2


class ThresholdViolation(MultitreeError):
    exit_code = 2


# Infeasible configurations (exit 3)

class NotRealizable(MultitreeError):
    exit_code = 3


class NoRealizableAssignment(MultitreeError):
    exit_code = 3


class WeightsInfeasible(MultitreeError):
    exit_code = 3


class Infeasible(MultitreeError):
    exit_code = 3


class NotInterior(MultitreeError):
    exit_code = 3


# Iterations that did not settle (exit 4)

class MaxIterations(MultitreeError):
    exit_code = 4

    def __init__(self, message: str, best: Optional[Any] = None):
        super().__init__(message)
        self.best = best


class NoConvergence(MultitreeError):
    exit_code = 4


class BracketFailure(MultitreeError):
    exit_code = 4


# Numeric degeneracies (exit 1)

class Degenerate(MultitreeError):
    pass


class DegenerateSubSimplex(MultitreeError):
    pass


class DegenerateSubset(MultitreeError):
    pass


class DegenerateTree(MultitreeError):
    pass


class ParallelEdges(MultitreeError):
    pass


class CombinatorialLimit(MultitreeError):
    pass


class IllConditioned(MultitreeError):
    def __init__(self, message: str, condition_number: float = float("inf")):
        super().__init__(message)
        self.condition_number = condition_number


def http_status(exc: Exception) -> int:
    """Status code for a library error raised inside a route handler."""
    if not isinstance(exc, MultitreeError) or exc.exit_code in (2, 3):
        return 400
    return 422
