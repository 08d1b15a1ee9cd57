"""
Holding-cost hypothesis validator

Checks, by finite-difference scan over 0..N1 x 0..n2_cap, the two
conditions the structural results rely on:

  (a) f is nondecreasing and convex in n2 for every n1
  (b) the n2-difference of f is nondecreasing in n1
"""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from errors import ConfigError


# Polynomial coefficients are floats; tiny negative differences are rounding.
SCAN_TOLERANCE = 1e-12

CONVEX_NONDECREASING = 'convex_nondecreasing_in_n2'
DIFFERENCE_MONOTONE = 'difference_nondecreasing_in_n1'


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    passed: bool
    first_violation: Optional[Tuple[int, int]] = None
    detail: str = ''

    def to_dict(self):
        return {
            'name': self.name,
            'passed': self.passed,
            'first_violation': list(self.first_violation) if self.first_violation else None,
            'detail': self.detail,
        }


@dataclass(frozen=True)
class ValidationReport:
    checks: List[HypothesisCheck] = field(default_factory=list)

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def errors(self):
        return [f"{c.name} fails at {c.first_violation}: {c.detail}"
                for c in self.checks if not c.passed]

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {'passed': self.passed, 'checks': [c.to_dict() for c in self.checks]}


def _first_cell(mask):
    cells = np.argwhere(mask)
    if cells.size == 0:
        return None
    n1, n2 = cells[0]
    return int(n1), int(n2)


def validate_hypotheses(holding, N1, n2_cap):
    """
    Scan a holding cost for the structural hypotheses

    Args:
        holding: HoldingCost (anything with a vectorised ``rate(n1, n2)``)
        N1: largest type-1 count
        n2_cap: largest type-2 count scanned, at least 2

    Returns:
        ValidationReport: one HypothesisCheck per condition, failures carry
        the first violating (n1, n2) in row-major order
    """
    if n2_cap < 2:
        raise ConfigError([f"n2_cap must be >= 2, got {n2_cap}"])

    n1 = np.arange(N1 + 1)[:, None]
    n2 = np.arange(n2_cap + 1)[None, :]
    f = holding.rate(n1, n2) * np.ones((N1 + 1, n2_cap + 1))

    delta = np.diff(f, axis=1)
    delta2 = np.diff(f, n=2, axis=1)

    decreasing = delta < -SCAN_TOLERANCE
    concave = np.zeros_like(decreasing)
    concave[:, :delta2.shape[1]] = delta2 < -SCAN_TOLERANCE
    cell = _first_cell(decreasing | concave)
    if cell is None:
        first = HypothesisCheck(CONVEX_NONDECREASING, True)
    else:
        kind = 'decreasing' if decreasing[cell] else 'not convex'
        first = HypothesisCheck(CONVEX_NONDECREASING, False, cell,
                                f"f is {kind} in n2")

    cross = np.diff(delta, axis=0) < -SCAN_TOLERANCE
    cell = _first_cell(cross)
    if cell is None:
        second = HypothesisCheck(DIFFERENCE_MONOTONE, True)
    else:
        second = HypothesisCheck(DIFFERENCE_MONOTONE, False, cell,
                                 "n2-difference of f drops from n1 to n1+1")

    return ValidationReport([first, second])


__all__ = [
    'HypothesisCheck',
    'ValidationReport',
    'validate_hypotheses',
    'CONVEX_NONDECREASING',
    'DIFFERENCE_MONOTONE',
]
