"""
Error hierarchy for the admission-control toolkit.

Every error carries a list of messages (``errors``) and the process exit
code the command-line surface should use when it escapes a subcommand.

Usage:
    >>> from errors import ConfigError
    >>> try:
    ...     raise ConfigError(["capacity_C must be a multiple of vms_per_pu_b"])
    ... except ConfigError as e:
    ...     print(e.errors, e.exit_code)
"""
from typing import Iterable, List, Union


EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_CONFIG = 2
EXIT_GOLDEN = 3


class ToolkitError(Exception):
    """Base class; ``errors`` is always a list of human-readable strings"""
    exit_code = EXIT_NUMERICAL
    label = "Toolkit error"

    def __init__(self, errors: Union[str, Iterable[str]]):
        if isinstance(errors, str):
            errors = [errors]
        self.errors: List[str] = list(errors)
        super().__init__(f"{self.label}: {', '.join(self.errors)}")

    def to_dict(self):
        return {'error': type(self).__name__, 'errors': self.errors}


class ConfigError(ToolkitError):
    """Raised when a parameter document or run config is invalid"""
    exit_code = EXIT_CONFIG
    label = "Configuration invalid"


class DomainError(ToolkitError):
    """Raised when a state or index lies outside the model's domain"""
    exit_code = EXIT_CONFIG
    label = "Out of domain"


class InfeasibleEvent(DomainError):
    label = "Infeasible event"


class ShapeMismatch(DomainError):
    label = "Grid shapes differ"


class NumericalError(ToolkitError):
    exit_code = EXIT_NUMERICAL
    label = "Numerical failure"


class NotConverged(NumericalError):
    label = "Iteration did not converge"


class CapTooSmall(NumericalError):
    label = "Truncation cap too small"


class NonThresholdStructure(NumericalError):
    label = "Admit set is not a control limit"


class BoundViolated(NumericalError):
    label = "Threshold outside analytical bounds"


class Diverged(NumericalError):
    label = "Training diverged"


class GoldenMismatch(ToolkitError):
    exit_code = EXIT_GOLDEN
    label = "Golden table mismatch"


__all__ = [
    'EXIT_OK',
    'EXIT_NUMERICAL',
    'EXIT_CONFIG',
    'EXIT_GOLDEN',
    'ToolkitError',
    'ConfigError',
    'DomainError',
    'InfeasibleEvent',
    'ShapeMismatch',
    'NumericalError',
    'NotConverged',
    'CapTooSmall',
    'NonThresholdStructure',
    'BoundViolated',
    'Diverged',
    'GoldenMismatch',
]
