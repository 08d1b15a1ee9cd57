"""
Serializers module for result artifacts.

This module provides the base serializer class together with the JSON
document serializers (policy, solve report, trained network) and the CSV
table writers (value grid, action table, dataset).
"""

import json
from abc import ABC, abstractmethod
from typing import Dict, Any


class BaseSerializer(ABC):
    """
    Abstract base class for document serializers.

    All document serializers should inherit from this class
    and implement serialize() and deserialize().
    """

    @abstractmethod
    def serialize(self, obj: Any) -> Dict[str, Any]:
        """
        Serialize an object to a plain document.

        Args:
            obj: The object to serialize

        Returns:
            dict: JSON-compatible document
        """
        pass

    def deserialize(self, data: Dict[str, Any]) -> Any:
        raise NotImplementedError(f"{type(self).__name__} is write-only")

    def to_json(self, obj: Any) -> str:
        """
        Convert an object to a JSON string.

        Keys are sorted so the same object always yields the same bytes.
        """
        return json.dumps(self.serialize(obj), indent=2, sort_keys=True) + '\n'

    def from_json(self, content: str) -> Any:
        from errors import ConfigError
        try:
            data = json.loads(content)
        except json.JSONDecodeError as e:
            raise ConfigError([f"Invalid JSON: {str(e)}"])
        return self.deserialize(data)

    def to_yaml(self, obj: Any) -> str:
        import yaml
        return yaml.safe_dump(self.serialize(obj), default_flow_style=False, indent=2)


from .documents import PolicySerializer, SolveReportSerializer, NetworkSerializer
from .tables import grid_to_csv, action_table_to_csv, dataset_to_csv, dataset_from_csv

__all__ = [
    'BaseSerializer',
    'PolicySerializer',
    'SolveReportSerializer',
    'NetworkSerializer',
    'grid_to_csv',
    'action_table_to_csv',
    'dataset_to_csv',
    'dataset_from_csv'
]
