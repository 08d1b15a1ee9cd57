"""
Analytical bounds on the optimal admission threshold.

Lower bound: the largest n2 with  df(N1, n2) < alpha R.
Upper bound: the smallest n2 with df(0, n2) > (alpha + min(n2+1, C) mu2) R.
When the upper bound is 0 no type-2 task is ever worth admitting.

Both scans rely on df = f(., n2+1) - f(., n2) being nondecreasing in n2,
so they stop at the first change of outcome.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from errors import BoundViolated
from model import ModelParams, n1_max

logger = logging.getLogger(__name__)

DEFAULT_SCAN_LIMIT = 10000
CAP_MARGIN = 5
NO_LOWER_BOUND = 'none (trivially >= -1)'


@dataclass(frozen=True)
class BoundsResult:
    lower: Optional[int]
    upper: Optional[int]
    scan_limit: int
    reject_all: bool = False
    lower_saturated: bool = False   # every scanned n2 satisfied the lower-bound test

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'lower': self.lower,
            'upper': self.upper,
            'reject_all': self.reject_all,
            'scan_limit': self.scan_limit,
        }
        if self.lower is None:
            data['lower_note'] = NO_LOWER_BOUND
        elif self.lower_saturated:
            data['lower_note'] = 'unbounded above within scan'
        return data


@dataclass(frozen=True)
class BracketReport:
    bounds: BoundsResult
    thresholds: List[int]
    lower_margins: List[Optional[int]] = field(default_factory=list)
    upper_margins: List[Optional[int]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'bounds': self.bounds.to_dict(),
            'thresholds': self.thresholds,
            'lower_margins': self.lower_margins,
            'upper_margins': self.upper_margins,
            'notes': self.notes,
        }


def _scan(scan_limit: int) -> np.ndarray:
    if scan_limit < 1:
        raise ValueError(f"scan_limit must be >= 1, got {scan_limit}")
    return np.arange(scan_limit + 1)


def _lower_scan(params: ModelParams, scan_limit: int):
    n2 = _scan(scan_limit)
    holds = params.holding.delta_n2(n1_max(params), n2) < params.alpha * params.reward_R
    if not holds[0]:
        return None, False
    failures = np.flatnonzero(~holds)
    if failures.size == 0:
        return scan_limit, True
    return int(failures[0]) - 1, False


def lower_bound(params: ModelParams, scan_limit: int = DEFAULT_SCAN_LIMIT) -> Optional[int]:
    """Largest n2 with df(N1, n2) < alpha R, or None when even n2 = 0 fails."""
    return _lower_scan(params, scan_limit)[0]


def upper_bound(params: ModelParams, scan_limit: int = DEFAULT_SCAN_LIMIT) -> Optional[int]:
    """Smallest n2 with df(0, n2) > (alpha + min(n2+1, C) mu2) R, or None."""
    n2 = _scan(scan_limit)
    in_service = np.minimum(n2 + 1, params.capacity_C)
    rhs = (params.alpha + in_service * params.mu2) * params.reward_R
    holds = params.holding.delta_n2(0, n2) > rhs
    hits = np.flatnonzero(holds)
    return int(hits[0]) if hits.size else None


def compute_bounds(params: ModelParams, scan_limit: int = DEFAULT_SCAN_LIMIT) -> BoundsResult:
    lower, saturated = _lower_scan(params, scan_limit)
    upper = upper_bound(params, scan_limit)
    return BoundsResult(lower=lower, upper=upper, scan_limit=scan_limit,
                        reject_all=(upper == 0), lower_saturated=saturated)


def auto_cap(params: ModelParams, scan_limit: int = DEFAULT_SCAN_LIMIT) -> int:
    """Truncation cap: upper bound + margin, never below C + margin."""
    floor = params.capacity_C + CAP_MARGIN
    upper = upper_bound(params, scan_limit)
    if upper is None:
        logger.warning("No upper threshold bound within %d; using cap %d", scan_limit, floor)
        return floor
    return max(upper + CAP_MARGIN, floor)


def bracket_check(params: ModelParams, policy, scan_limit: int = DEFAULT_SCAN_LIMIT) -> BracketReport:
    """
    Check solver thresholds against the analytical bounds

    Args:
        params: model parameters the policy was solved for
        policy: ThresholdPolicy (REJECT_ALL rows count as -1)
        scan_limit: bound scan length

    Returns:
        BracketReport with per-row margins

    Raises:
        BoundViolated: If a threshold exceeds the upper bound, if the last
            row falls below the lower bound, or if the bound demands
            rejecting everything and some row admits
    """
    bounds = compute_bounds(params, scan_limit)
    thresholds = list(policy.thresholds)
    N1 = len(thresholds) - 1
    errors = []
    notes = []

    lower_margins = [None if bounds.lower is None else d - bounds.lower for d in thresholds]
    upper_margins = [None if bounds.upper is None else bounds.upper - d for d in thresholds]

    if bounds.upper is not None:
        for n1, margin in enumerate(upper_margins):
            if margin < 0:
                errors.append(f"D({n1})={thresholds[n1]} exceeds upper bound {bounds.upper}")

    if bounds.reject_all and any(d != -1 for d in thresholds):
        errors.append(f"upper bound is 0 but thresholds {thresholds} admit arrivals")

    if bounds.lower is not None:
        for n1, margin in enumerate(lower_margins):
            if margin >= 0:
                continue
            message = f"D({n1})={thresholds[n1]} below lower bound {bounds.lower}"
            if n1 == N1:
                errors.append(message)
            else:
                notes.append(message)
                logger.warning(message)

    if errors:
        raise BoundViolated(errors)
    return BracketReport(bounds, thresholds, lower_margins, upper_margins, notes)


__all__ = [
    'DEFAULT_SCAN_LIMIT',
    'CAP_MARGIN',
    'NO_LOWER_BOUND',
    'BoundsResult',
    'BracketReport',
    'lower_bound',
    'upper_bound',
    'compute_bounds',
    'auto_cap',
    'bracket_check',
]
