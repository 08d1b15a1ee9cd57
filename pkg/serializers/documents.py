"""
JSON document serializers for policies, solve reports and trained networks.
"""

from typing import Any, Dict, Optional

from bounds import BoundsResult
from estimator import Mlp
from solver import SolveReport, ThresholdPolicy
from . import BaseSerializer


class PolicySerializer(BaseSerializer):
    """``{"thresholds": [...], "reject_all_sentinel": -1}``"""

    def serialize(self, policy: ThresholdPolicy) -> Dict[str, Any]:
        return policy.to_dict()

    def deserialize(self, data: Dict[str, Any]) -> ThresholdPolicy:
        return ThresholdPolicy.from_dict(data)


class SolveReportSerializer(BaseSerializer):
    """Convergence report written next to a solved grid."""

    def __init__(self, bounds: Optional[BoundsResult] = None, model: Optional[Dict[str, Any]] = None):
        self.bounds = bounds
        self.model = model

    def serialize(self, report: SolveReport) -> Dict[str, Any]:
        data = report.to_dict()
        data['policy'] = report.policy.to_dict()
        if self.bounds is not None:
            data['bounds'] = self.bounds.to_dict()
        if self.model is not None:
            data['model'] = self.model
        return data


class NetworkSerializer(BaseSerializer):
    """Shapes, row-major weights, normalization constants and activation tag."""

    def serialize(self, mlp: Mlp) -> Dict[str, Any]:
        return mlp.to_dict()

    def deserialize(self, data: Dict[str, Any]) -> Mlp:
        return Mlp.from_dict(data)


__all__ = ['PolicySerializer', 'SolveReportSerializer', 'NetworkSerializer']
